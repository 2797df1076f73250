from __future__ import annotations

import random

import pytest

from sl3webs.acceptance import PENTAGON
from sl3webs.arborize import (
  Classification,
  StepKind,
  apply_step,
  arborize,
  classify,
  confluence_trial,
  find_steps,
  forest_components,
  normal_form_key,
  same_normal_form,
)
from sl3webs.diagram import BLACK, WHITE, DiagramBuilder, Signature, as_web, is_forest_diagram
from sl3webs.errors import StaleStep
from sl3webs.evaluate import evaluate
from sl3webs.special import catalog_for
from sl3webs.thicken import quadripod_web, single_cycle_web, tripod_web


@pytest.fixture
def square_web():
  """``[●●○●]``: a square through boundary vertex 1 with one leg on each of 2, 3 and 4."""
  b = DiagramBuilder(Signature.parse("bbwb"))
  x, y, z = b.vertex(WHITE, "x"), b.vertex(BLACK, "y"), b.vertex(WHITE, "z")
  e1x, e1z = b.edge(1, x), b.edge(1, z)
  exy, ezy = b.edge(x, y), b.edge(z, y)
  ex4, ez2, ey3 = b.edge(x, 4), b.edge(z, 2), b.edge(y, 3)
  b.rotate(1, [e1z, e1x])
  b.rotate(x, [e1x, exy, ex4])
  b.rotate(z, [e1z, ez2, ezy])
  b.rotate(y, [ezy, ey3, exy])
  return as_web(b.build())


def test_trees_have_no_steps():
  for w in (tripod_web(), quadripod_web()):
    assert find_steps(w.diagram) == []
    result = classify(w)
    assert result.label == Classification.CLUSTER_VARIABLE
    assert result.components == 1


def test_boundary_square_step(square_web):
  d = square_web.diagram
  (step,) = find_steps(d)
  assert step.kind == StepKind.BOUNDARY_SQUARE
  assert step.path[0] == step.path[4] == "1"
  out = apply_step(d, step)
  assert evaluate(out) == evaluate(d)
  assert len(out.edges) == len(d.edges) - 3
  assert set(out.colors) == {"z"}
  with pytest.raises(StaleStep):
    apply_step(out, step)


def test_square_web_arborizes_to_two_trees(square_web):
  d = arborize(square_web.diagram)
  assert is_forest_diagram(d)
  assert forest_components(d) == [(1, 0, 1, 0), (1, 1, 0, 1)]
  result = classify(square_web)
  assert result.label == Classification.CLUSTER_MONOMIAL
  assert result.components == 2
  assert same_normal_form(d, result.normal_form)


def test_cycle_web_is_not_arborizable():
  w = single_cycle_web(6)
  assert find_steps(w.diagram) == []
  assert classify(w).label == Classification.NOT_ARBORIZABLE


def test_normal_form_key_tells_webs_apart(square_web):
  assert normal_form_key(tripod_web().diagram) != normal_form_key(tripod_web(WHITE).diagram)
  assert normal_form_key(arborize(square_web.diagram)) == normal_form_key(arborize(square_web.diagram))


def test_steps_need_a_web(crossed):
  with pytest.raises(ValueError):
    find_steps(crossed)


def test_pentagon_specials_arborize_to_their_factors():
  cat = catalog_for(PENTAGON)
  names = [m for m in cat.names if not cat.is_zero(m) and cat.representative(m) == m]
  assert names
  for nm in names:
    d = arborize(cat.web(nm).diagram)
    assert is_forest_diagram(d)
    factors = sorted(cat.multidegree(f).degrees for f in cat.factorization(nm).names())
    assert forest_components(d) == factors


def test_random_orders_agree(square_web):
  report = confluence_trial(square_web.diagram, trials=5, rng=random.Random(3))
  assert report.agree
  assert report.distinct == 1
