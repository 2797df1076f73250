from __future__ import annotations

from itertools import combinations

import pytest

from sl3webs.acceptance import (
  OCTAGON,
  OCTAGON_COEFFICIENTS,
  OCTAGON_FACTORIZATIONS,
  OCTAGON_VANISHING,
  PENTAGON,
)
from sl3webs.config import Settings, set_settings
from sl3webs.diagram import Signature, multidegree
from sl3webs.errors import AlternatingSignature, PreconditionViolated, ResourceLimit, ZeroInvariant
from sl3webs.evaluate import evaluate
from sl3webs.layout import draw
from sl3webs.special import (
  DistilledRelation,
  SpecialCatalog,
  SpecialName,
  Tautology,
  catalog_for,
  coefficient_set,
  distill,
  factorization_rule,
  pair_vanishes,
  parse_special_name,
  special_builder,
  special_multidegree,
  thin_triangle_value,
  three_term,
  verify_three_term,
)


@pytest.mark.parametrize("text", ["J_2^5", "J_123", "J^135", "J_12^45", "J_{1,10}^{11,12}"])
def test_names_round_trip(text):
  assert str(parse_special_name(text)) == text


def test_bad_names():
  with pytest.raises(ValueError):
    parse_special_name("J_12")
  with pytest.raises(ValueError):
    parse_special_name("K_1^2")
  with pytest.raises(ValueError):
    SpecialName.lower(1, 3, 2).check(5)


def test_signature_preconditions():
  with pytest.raises(PreconditionViolated):
    catalog_for(Signature.parse("bbbw"))
  with pytest.raises(AlternatingSignature):
    catalog_for(Signature.parse("bwbwbw"))


def test_pair_vanishing_rule():
  sigma = Signature.parse("bbbww")
  assert pair_vanishes(4, 5, sigma)  # white 4, then 5
  assert pair_vanishes(2, 1, sigma)  # black 1, J_2^1
  assert not pair_vanishes(1, 2, sigma)


def test_pentagon_multidegrees_and_zeros():
  cat = catalog_for(PENTAGON)
  for name in cat.names:
    p = cat.polynomial(name)
    if p.is_zero():
      assert cat.is_zero(name)
      with pytest.raises(ZeroInvariant):
        cat.web(name)
      continue
    assert p.multidegree() == special_multidegree(name, PENTAGON).degrees
    assert multidegree(cat.web(name).diagram) == cat.multidegree(name)


def test_pentagon_three_term_relations():
  checked = 0
  for rel_id, arity in (("6.1", 3), ("6.2", 4), ("6.3", 4), ("6.4", 4), ("6.5", 4)):
    for vs in combinations(range(1, 6), arity):
      assert verify_three_term(rel_id, vs, PENTAGON)
      checked += 1
  for rel_id in ("7.1", "7.2"):
    for p in range(1, 6):
      for s in range(1, 6):
        try:
          assert verify_three_term(rel_id, (p, s), PENTAGON)
          checked += 1
        except PreconditionViolated:
          pass
  assert checked > 40


def test_distilled_relations_are_identities():
  cat = catalog_for(PENTAGON)
  kinds = set()
  for tri in combinations(range(1, 6), 3):
    out = distill(three_term("6.1", tri, PENTAGON), cat)
    kinds.add(type(out))
    if isinstance(out, DistilledRelation):
      assert cat.polynomial_of(out.lhs) == cat.polynomial_of(out.m1) + cat.polynomial_of(out.m2)
  assert kinds <= {Tautology, DistilledRelation}


def test_name_level_rules_agree_with_polynomials():
  cat = catalog_for(PENTAGON)
  applied = 0
  for name in cat.names:
    rule = factorization_rule(name, PENTAGON)
    if rule is None or cat.is_zero(name):
      continue
    found = cat.factor_monomial(rule)
    assert found is not None
    product = cat.polynomial_of(found[0])
    assert cat.polynomial(name) in (product, -product)
    applied += 1
  assert applied


def test_thin_triangles():
  cat = catalog_for(PENTAGON)
  for tri in ((1, 2, 4), (2, 3, 5), (1, 3, 4)):
    found = cat.factor_monomial(thin_triangle_value(*tri, PENTAGON))
    assert found is not None
    rhs = cat.polynomial_of(found[0])
    assert cat.polynomial(SpecialName.upper(*tri)) in (rhs, -rhs)
  with pytest.raises(PreconditionViolated):
    thin_triangle_value(1, 3, 5, Signature.parse("bbbbbbb"))


def test_coefficients():
  assert len(coefficient_set(PENTAGON)) == 5
  assert len(coefficient_set(Signature.parse("bwbwb"))) == 6


def test_drawn_special_matches_catalog():
  cat = catalog_for(PENTAGON)
  name = parse_special_name("J_12^45")
  d, _ = draw(special_builder(name, PENTAGON), seed=3)
  assert evaluate(d) == cat.polynomial(name)


@pytest.mark.slow
def test_octagon_vanishing_coefficients_and_factorizations():
  cat = catalog_for(OCTAGON)
  for text in OCTAGON_VANISHING:
    assert cat.is_zero(parse_special_name(text))
  reps = {cat.representative(parse_special_name(t)) for t in OCTAGON_COEFFICIENTS}
  assert {cat.representative(c) for c in cat.coefficients} == reps
  for text, factors in OCTAGON_FACTORIZATIONS.items():
    f = cat.factorization(parse_special_name(text))
    assert sorted(f.names()) == sorted(cat.representative(parse_special_name(t)) for t in factors)


def test_catalog_evaluates_past_the_interactive_edge_limit():
  set_settings(Settings(max_edges=4))
  cat = SpecialCatalog(PENTAGON)
  name = parse_special_name("J_13^45")
  with pytest.raises(ResourceLimit):
    evaluate(cat.diagram(name))
  assert not cat.polynomial(name).is_zero()
