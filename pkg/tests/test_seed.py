from __future__ import annotations

from itertools import product

import pytest

from sl3webs.acceptance import PENTAGON, PENTAGON_T, check_octagon_seed
from sl3webs.cluster import detect_type
from sl3webs.cluster.flips import MONOCHROMATIC_FLIP_MUTATIONS, exposed_sides, flip_shape, verify_flip_mutations
from sl3webs.cluster.types import expected_type
from sl3webs.diagram import Signature
from sl3webs.errors import AlternatingSignature, NotADiagonal, PreconditionViolated
from sl3webs.seed import (
  Triangulation,
  all_three_term_relations,
  all_triangulations,
  build_seed,
  check_pairwise_compatible,
  extended_cluster,
  fan_apex,
  fan_mutable_quiver,
  fan_position,
  fan_seed,
  fan_triangulation,
  flip,
  grassmannian_labeling,
  grassmannian_labels,
  has_two_rows,
  parse_triangulation,
  quadrilateral,
  seed_for_type,
  seed_from_doc,
  seed_to_doc,
  triangles,
  zigzag_triangulation,
)
from sl3webs.special import Tautology, catalog_for, distill, verify_three_term


@pytest.fixture(scope="module")
def pentagon():
  return build_seed(PENTAGON, parse_triangulation(PENTAGON_T, PENTAGON.n))


def test_triangulation_validation():
  with pytest.raises(ValueError, match="cross"):
    Triangulation.of(6, [(1, 4), (2, 5), (1, 3)])
  with pytest.raises(ValueError, match="diagonals"):
    Triangulation.of(6, [(1, 3)])
  with pytest.raises(ValueError, match="not a diagonal"):
    Triangulation.of(5, [(1, 2), (1, 3)])


@pytest.mark.parametrize("n, count", [(4, 2), (5, 5), (6, 14), (7, 42)])
def test_triangulation_counts(n, count):
  assert len(all_triangulations(n)) == count


def test_fan_and_zigzag():
  assert str(fan_triangulation(6)) == "1-3,1-4,1-5"
  assert str(fan_triangulation(6, 4)) == "1-4,2-4,4-6"
  assert str(zigzag_triangulation(6)) == "2-5,2-6,3-5"
  assert str(zigzag_triangulation(7)) == "2-6,2-7,3-5,3-6"
  assert str(zigzag_triangulation(8)) == "2-7,2-8,3-6,3-7,4-6"
  assert parse_triangulation(" 1-3, 1-4 ,1-5", 6) == fan_triangulation(6)


def test_triangles_and_flip():
  t = fan_triangulation(6)
  assert triangles(t) == [(1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6)]
  assert quadrilateral(t, (4, 1)) == (1, 3, 4, 5)
  assert str(flip(t, (1, 4))) == "1-3,1-5,3-5"
  assert flip(flip(t, (1, 4)), (3, 5)) == t
  with pytest.raises(NotADiagonal):
    quadrilateral(t, (2, 4))


def test_grassmannian_labels_of_a_square():
  assert grassmannian_labels(Triangulation.of(4, [(1, 3)])) == [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)]


def test_fan_apex():
  assert fan_apex(Signature.parse("bbbww")) == 1
  assert fan_apex(Signature.parse("wbbbw")) == 2


def test_pentagon_extended_cluster(pentagon):
  z = pentagon.z
  assert len(z) == 3 * 5 - 8
  assert len(z.coefficients) == 5
  assert len(z.cluster) == 2
  assert set(pentagon.quiver.mutable) == {str(n) for n in z.cluster}
  assert set(pentagon.quiver.frozen) == {str(n) for n in z.coefficients}


def test_extended_cluster_needs_matching_polygon():
  with pytest.raises(ValueError):
    extended_cluster(PENTAGON, fan_triangulation(6))


def test_pentagon_relations_and_values(pentagon):
  assert len(pentagon.relations) == 2
  for rel in pentagon.relations:
    assert str(rel).startswith(str(rel.variable))
  seed = pentagon.seed
  for v in seed.quiver.vertices:
    assert not seed.polynomial(v).is_zero()


def test_seed_doc_round_trip(pentagon):
  doc = seed_to_doc(pentagon)
  assert doc.triangulation == PENTAGON_T
  assert len(doc.relations) == 2
  back = seed_from_doc(doc)
  assert back.quiver == pentagon.quiver
  assert dict(back.values) == dict(pentagon.seed.values)


def test_fan_mutable_quiver_two_row_rule():
  q = fan_mutable_quiver(Signature.parse("bbbbww"))
  assert sorted(q.vertices) == ["s3", "s4", "s5", "t4"]
  assert detect_type(q).name == "A4"
  with pytest.raises(PreconditionViolated):
    fan_mutable_quiver(Signature.parse("bbbww"))


def test_seed_for_type():
  ts = seed_for_type(PENTAGON)
  assert len(ts.quiver.mutable) == 2
  assert detect_type(ts.quiver).name == "A2"


def test_flip_matches_mutations():
  t = parse_triangulation(PENTAGON_T, PENTAGON.n)
  check = verify_flip_mutations(PENTAGON, t, (2, 4))
  assert check.ok
  assert len(check.sequence) == len(check.removed)
  assert str(check.after) == "2-5,3-5"


@pytest.mark.slow
def test_pentagon_cluster_is_compatible(pentagon):
  assert check_pairwise_compatible(pentagon) == []


@pytest.mark.slow
def test_octagon_seed():
  assert "E8" in check_octagon_seed()


@pytest.mark.parametrize("row", ["bbbww", "bbwbw"])
def test_every_three_term_instance_is_an_identity(row):
  sigma = Signature.parse(row)
  cat = catalog_for(sigma)
  instances = list(all_three_term_relations(sigma))
  assert {rel.relation_id for rel in instances} >= {"6.1", "6.2", "6.3"}
  for rel in instances:
    assert verify_three_term(rel.relation_id, rel.vertices, sigma, cat)
    out = distill(rel, cat)
    if not isinstance(out, Tautology):
      assert cat.polynomial_of(out.lhs) == cat.polynomial_of(out.m1) + cat.polynomial_of(out.m2)


def _assert_complete_seed(sigma, t):
  ts = build_seed(sigma, t)
  cat = catalog_for(sigma)
  assert len(ts.z) == 3 * sigma.n - 8
  assert {r.variable for r in ts.relations} == set(ts.z.cluster)
  assert all(r.holds(cat) for r in ts.relations)
  return ts


@pytest.mark.parametrize("t", all_triangulations(5), ids=str)
def test_every_pentagon_triangulation_has_complete_relations(t):
  sigma = Signature.parse("bbwbw")
  ts = _assert_complete_seed(sigma, t)
  assert detect_type(ts.quiver).name == "A1"


@pytest.mark.slow
@pytest.mark.parametrize(
  "row",
  ["bwbww", "bbbwbw", "bwbwww", "bbwwbw", "bbwbbw", "bbwbww", "bwwbww", "bbbbbw", "bbbbww", "bbwwww", "bwwwww"],
)
def test_every_triangulation_has_complete_relations(row):
  sigma = Signature.parse(row)
  want = expected_type(sigma)
  for t in all_triangulations(sigma.n):
    ts = _assert_complete_seed(sigma, t)
    if want is not None:
      assert detect_type(ts.quiver).name == want, str(t)


def test_fan_position_prefers_the_two_row_rotation():
  assert fan_position(Signature.parse("bbbww")) == (Signature.parse("bbbww"), 0, False)
  s, shift, swapped = fan_position(Signature.parse("wbbbww"))
  assert (s, shift, swapped) == (Signature.parse("bbbwww"), 5, False)
  assert has_two_rows(s)
  s, shift, swapped = fan_position(Signature.parse("wwbww"))
  assert swapped and s.is_black(1) and s.is_black(2)
  assert s == Signature.parse("wwbww").swapped().rotated(shift)
  with pytest.raises(AlternatingSignature):
    fan_position(Signature.parse("bwbwbw"))


def test_fan_seed_of_a_rotated_signature():
  fs = fan_seed(Signature.parse("wbbbw"))
  assert fs.normalized.is_black(1) and fs.normalized.is_black(2)
  assert fs.normalized == fs.signature.rotated(fs.shift)
  assert fs.two_row is None and not fs.matches_two_row_rule()
  assert len(fs.quiver.mutable) == 2
  assert detect_type(fs.quiver).name == "A2"


def _two_row_signatures(n):
  for middle in product("bw", repeat=n - 4):
    yield Signature.parse("bb" + "".join(middle) + "ww")


@pytest.mark.slow
@pytest.mark.parametrize("sigma", [s for n in (6, 7) for s in _two_row_signatures(n)], ids=str)
def test_fan_seed_follows_the_two_row_rule(sigma):
  fs = fan_seed(sigma)
  assert (fs.normalized, fs.shift, fs.swapped) == (sigma, 0, False)
  assert fs.matches_two_row_rule(), repr(fs.quiver)


def test_flip_shapes():
  fan = fan_triangulation(8)
  assert flip_shape(fan, (1, 3)) == "three"
  assert flip_shape(fan, (1, 4)) == "adjacent"
  assert flip_shape(parse_triangulation("1-3,3-5,5-7,1-7,1-5", 8), (1, 5)) == "none"
  assert flip_shape(parse_triangulation("2-4,4-6,2-6,1-6,6-8", 8), (2, 6)) == "one"
  zigzag = zigzag_triangulation(8)
  assert flip_shape(zigzag, (2, 7)) == "opposite"
  assert flip_shape(zigzag, (2, 8)) == "three"
  assert exposed_sides(zigzag, (2, 7)) == (True, False, True, False)
  assert flip_shape(Triangulation.of(4, [(1, 3)]), (1, 3)) == "all"
  assert set(MONOCHROMATIC_FLIP_MUTATIONS) == {"none", "one", "adjacent", "opposite", "three", "all"}


@pytest.mark.slow
@pytest.mark.parametrize(
  "text, diagonal",
  [("1-3,1-4,1-5,1-6,1-7", (1, 4)), ("2-4,4-6,2-6,1-6,6-8", (2, 6)), ("1-3,3-5,5-7,1-7,1-5", (1, 5))],
)
def test_monochromatic_flip_mutation_counts(text, diagonal):
  sigma = Signature.parse("bbbbbbbb")
  t = parse_triangulation(text, 8)
  check = verify_flip_mutations(sigma, t, diagonal)
  assert check.ok
  assert len(check.sequence) == MONOCHROMATIC_FLIP_MUTATIONS[flip_shape(t, diagonal)]


def test_plucker_labels_of_a_monochromatic_pentagon():
  t = fan_triangulation(5)
  ts = build_seed(Signature.parse("bbbbb"), t)
  labels = grassmannian_labeling(ts)
  assert sorted(labels.values()) == grassmannian_labels(t)
  frozen = {labels[v] for v in ts.quiver.frozen}
  assert frozen == {(1, 2, 3), (2, 3, 4), (3, 4, 5), (1, 4, 5), (1, 2, 5)}
  with pytest.raises(PreconditionViolated):
    grassmannian_labeling(build_seed(PENTAGON, parse_triangulation(PENTAGON_T, 5)))
