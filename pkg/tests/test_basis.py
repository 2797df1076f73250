from __future__ import annotations

import pytest

from sl3webs.basis import (
  Generator,
  GradedComponent,
  component_of,
  dimension_oracle,
  enumerate_webs,
  evaluation_rank,
  expand,
  generator_monomials,
  generators,
  is_compatible,
  multiply,
  multiply_drawn,
  structure_constants,
)
from sl3webs.diagram import Multidegree, Signature
from sl3webs.evaluate import evaluate
from sl3webs.skein import planarize
from sl3webs.special import catalog_for, parse_special_name, special_builder
from sl3webs.thicken import thicken, tripod_web


def test_component_validation():
  with pytest.raises(ValueError):
    GradedComponent.parse("bbb", "1,1")
  with pytest.raises(ValueError):
    GradedComponent(Signature.parse("bw"), Multidegree((1, -1)))
  assert GradedComponent.parse("bbw", "1,1,1").is_zero()
  assert not GradedComponent.parse("bbb", "1,1,1").is_zero()
  assert str(GradedComponent.parse("bw", "2,2")) == "bw[2,2]"


def test_generators():
  gens = generators(Signature.parse("bbbw"))
  assert Generator("P", (1, 2, 3)) in gens
  assert {str(g) for g in gens if g.kind == "Q"} == {"Q_14", "Q_24", "Q_34"}
  assert not [g for g in gens if g.kind == "P*"]


def test_generator_monomials_cover_the_multidegree():
  g = GradedComponent.parse("bbww", "1,1,1,1")
  monos = list(generator_monomials(g))
  assert len(monos) == 2
  for mono in monos:
    deg = [0] * 4
    for gen in mono:
      for v in gen.vertices:
        deg[v - 1] += 1
    assert deg == [1, 1, 1, 1]
  assert list(generator_monomials(GradedComponent.parse("bbw", "1,1,1"))) == []


@pytest.mark.parametrize(
  "sig, md, count",
  [("bbb", "1,1,1", 1), ("bbww", "1,1,1,1", 2), ("bbbbbb", "1,1,1,1,1,1", 5)],
)
def test_web_counts(sig, md, count):
  webs = enumerate_webs(GradedComponent.parse(sig, md))
  assert len(webs) == count
  assert evaluation_rank(webs) == count
  assert all(w.is_non_elliptic() for w in webs)


@pytest.mark.slow
@pytest.mark.parametrize("sig, md", [("bwbwww", "1,1,1,1,2,1"), ("bbwwww", "1,1,1,1,1,2")])
def test_five_webs_in_hexagon_components(sig, md):
  assert len(enumerate_webs(GradedComponent.parse(sig, md))) == 5


def test_dimension_oracle():
  assert dimension_oracle(3) == 1
  assert dimension_oracle(6) == 5
  assert dimension_oracle(9) == 42
  assert dimension_oracle(4) == 0


def test_expansion_matches_planarization(crossed):
  p = evaluate(crossed)
  out = expand(p, component_of(p, crossed.signature))
  assert out == planarize(crossed)


def test_expand_rejects_wrong_degree(crossed):
  p = evaluate(crossed)
  with pytest.raises(ValueError):
    expand(p, GradedComponent.parse("bbww", "2,2,2,2"))


def test_square_of_tripod_is_the_doubled_tripod():
  w = tripod_web()
  product = multiply(w, w)
  assert product.single() == (thicken(w, 2), 1)
  assert is_compatible(w, w)
  assert structure_constants(w, w) == [(thicken(w, 2), 1)]


def test_drawn_product_matches_polynomial_product():
  sigma = Signature.parse("bbbww")
  cat = catalog_for(sigma)
  a, b = parse_special_name("J_2^4"), parse_special_name("J_2^5")
  drawn = multiply_drawn([special_builder(a, sigma), special_builder(b, sigma)], seed=11)
  assert drawn == multiply(cat.web(a), cat.web(b))
  assert drawn.evaluate() == cat.polynomial(a) * cat.polynomial(b)
