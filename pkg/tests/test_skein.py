from __future__ import annotations

import random

import pytest

from sl3webs.acceptance import cube_diagram, random_drawn_diagram, theta_diagram
from sl3webs.config import Settings, set_settings
from sl3webs.diagram import WHITE, DiagramBuilder, Signature, is_non_elliptic
from sl3webs.errors import InvalidDiagram, ResourceLimit
from sl3webs.evaluate import evaluate
from sl3webs.skein import (
  DiagramCombination,
  WebExpansion,
  check_expansion,
  combination_from_doc,
  combination_to_doc,
  expansion_from_doc,
  expansion_to_doc,
  planarize,
  reduce,
  rewrite_once,
)
from sl3webs.thicken import quadripod_web, tripod_web


def test_crossing_resolves_into_two_webs(crossed):
  d = crossed
  out = planarize(d)
  assert len(out) == 2
  assert all(is_non_elliptic(w.diagram) for w, _ in out.items())
  assert check_expansion(d, out)


@pytest.mark.parametrize("make", [theta_diagram, cube_diagram])
def test_closed_webs_reduce_to_their_values(make):
  d = make()
  out = planarize(d)
  assert out.evaluate() == evaluate(d)


def test_reduced_terms_must_embed_in_the_disk():
  b = DiagramBuilder(Signature.parse("bbb"))
  c = b.vertex(WHITE, "c")
  e1, e2, e3 = (b.edge(c, p) for p in (1, 2, 3))
  b.rotate(c, [e1, e3, e2])
  with pytest.raises(InvalidDiagram, match="planar"):
    planarize(b.build())


def test_webs_are_fixed_points():
  w = quadripod_web()
  assert rewrite_once(w.diagram) is None
  assert planarize(w.diagram) == WebExpansion.of_web(w)


def test_double_edge_to_boundary_vanishes():
  b = DiagramBuilder(Signature.parse("bb"))
  c = b.vertex(WHITE, "c")
  b.rotate(c, [b.edge(c, 1), b.edge(c, 1), b.edge(c, 2)])
  d = b.build()
  assert evaluate(d).is_zero()
  assert len(planarize(d)) == 0


def test_cancellation_in_combinations(crossed):
  d = crossed
  assert len(reduce(DiagramCombination.of([(d, 2), (d, -2)]))) == 0


def test_expansion_arithmetic():
  w = tripod_web()
  x = WebExpansion.of_web(w, 2)
  assert (x + x.scaled(-1)) == WebExpansion.zero(w.signature)
  assert x.coefficient(w) == 2
  assert x.single() == (w, 2)
  assert not x.is_single_web()
  assert WebExpansion.of_web(w).is_single_web()


def test_documents_round_trip(crossed):
  d = crossed
  out = planarize(d)
  assert expansion_from_doc(expansion_to_doc(out)) == out
  combo = DiagramCombination.of([(d, 3)])
  assert reduce(combination_from_doc(combination_to_doc(combo))) == out.scaled(3)


def test_reduction_step_limit(crossed):
  set_settings(Settings(max_reduction_steps=0))
  with pytest.raises(ResourceLimit):
    planarize(crossed)


@pytest.mark.parametrize("seed", range(8))
def test_random_orders_agree_on_random_diagrams(seed):
  rng = random.Random(seed)
  d = random_drawn_diagram(rng, max_edges=12, max_crossings=2)
  base = planarize(d)
  assert check_expansion(d, base)
  for k in range(4):
    assert planarize(d, random.Random(1000 * seed + k)) == base
