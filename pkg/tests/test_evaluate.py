from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sl3webs.acceptance import cube_diagram, loop_diagram, theta_diagram
from sl3webs.algebra import IntPolynomial, coordinate_vector, determinant3, evaluate_at
from sl3webs.config import Settings, set_settings
from sl3webs.diagram import BLACK, WHITE, DiagramBuilder, Signature, TensorDiagram, color_swap
from sl3webs.errors import Inconsistent, ResourceLimit
from sl3webs.evaluate import (
  closed_web_value,
  count_proper_colorings,
  evaluate,
  evaluate_at_point,
  evaluate_closed,
  proper_labelings,
  vertex_sign,
)
from sl3webs.thicken import quadripod_web, tripod_web


def pairing(i: int, j: int, n: int) -> IntPolynomial:
  x, y = coordinate_vector("x", i, n), coordinate_vector("y", j, n)
  return x[0] * y[0] + x[1] * y[1] + x[2] * y[2]


def test_vertex_sign():
  assert vertex_sign((1, 2, 3)) == vertex_sign((3, 1, 2)) == 1
  assert vertex_sign((2, 1, 3)) == -1


def test_tripod_is_the_determinant():
  rows = [coordinate_vector("x", j, 3) for j in (1, 2, 3)]
  assert evaluate(tripod_web().diagram) == determinant3(rows)


def test_white_tripod_uses_dual_coordinates():
  rows = [coordinate_vector("y", j, 3) for j in (1, 2, 3)]
  assert evaluate(tripod_web(WHITE).diagram) == determinant3(rows)


def test_single_edge_is_the_pairing():
  b = DiagramBuilder(Signature.parse("bw"))
  b.edge(1, 2)
  assert evaluate(b.build()) == pairing(1, 2, 2)


def test_crossing_passes_strands_through(crossed):
  assert evaluate(crossed) == pairing(1, 3, 4) * pairing(2, 4, 4)


def test_closed_values():
  assert evaluate_closed(loop_diagram()) == 3
  assert evaluate_closed(theta_diagram()) == -6
  assert evaluate_closed(cube_diagram()) == 24
  assert count_proper_colorings(theta_diagram()) == 6
  with pytest.raises(ValueError):
    evaluate_closed(tripod_web().diagram)


def prism_diagram(k: int) -> TensorDiagram:
  """Two ``2k``-cycles of alternating colors joined by spokes; ``k = 2`` is the cube."""
  m = 2 * k
  b = DiagramBuilder(Signature(()))
  a = [b.vertex(BLACK if i % 2 == 0 else WHITE, f"a{i}") for i in range(m)]
  c = [b.vertex(WHITE if i % 2 == 0 else BLACK, f"b{i}") for i in range(m)]
  outer = [b.edge(a[i], a[(i + 1) % m]) for i in range(m)]
  spoke = [b.edge(a[i], c[i]) for i in range(m)]
  inner = [b.edge(c[i], c[(i + 1) % m]) for i in range(m)]
  for i in range(m):
    b.rotate(a[i], [outer[i], spoke[i], outer[i - 1]])
    b.rotate(c[i], [spoke[i], inner[i], inner[i - 1]])
  return b.build()


@pytest.mark.parametrize(
  "make, value",
  [(loop_diagram, 3), (theta_diagram, -6), (cube_diagram, 24), (lambda: prism_diagram(2), 24)],
  ids=["loop", "theta", "cube", "prism4"],
)
def test_closed_web_is_a_signed_coloring_count(make, value):
  d = make()
  whites = sum(1 for c in d.colors.values() if c == WHITE)
  assert closed_web_value(d) == (-1) ** whites * count_proper_colorings(d) == value
  assert evaluate_closed(d) == value


def test_hexagonal_prism_evaluation_agrees_with_colorings():
  d = prism_diagram(3)
  assert evaluate_closed(d) == closed_web_value(d)


def test_closed_evaluation_rejects_a_disagreeing_count(monkeypatch):
  import sl3webs.evaluate as ev

  monkeypatch.setattr(ev, "closed_web_value", lambda d: 7)
  with pytest.raises(Inconsistent, match="signed coloring count"):
    ev.evaluate_closed(theta_diagram())


def test_closed_web_value_needs_a_closed_web(crossed):
  with pytest.raises(ValueError):
    closed_web_value(tripod_web().diagram)
  with pytest.raises(ValueError):
    closed_web_value(crossed)


def test_labelings_are_proper():
  d = quadripod_web().diagram
  labelings = list(proper_labelings(d))
  assert labelings
  for lab in labelings:
    for v in d.colors:
      assert len({lab.label[e] for e, _ in d.ports(v)}) == 3


def test_color_swap_exchanges_coordinate_kinds():
  d = quadripod_web().diagram
  swapped = evaluate(color_swap(d))
  assert swapped.multidegree() == evaluate(d).multidegree()
  assert swapped.term_count() == evaluate(d).term_count()


def test_edge_limit():
  set_settings(Settings(max_edges=2))
  with pytest.raises(ResourceLimit):
    evaluate(tripod_web().diagram)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=24, max_size=24))
def test_point_evaluation_matches_polynomial(values):
  d = quadripod_web().diagram
  p = evaluate(d)
  point = dict(zip(p.variables(), values))
  assert evaluate_at_point(d, point) == evaluate_at(p, point)
