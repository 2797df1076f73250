from __future__ import annotations

import math
from fractions import Fraction

import pytest

from sl3webs.diagram import WHITE, Signature, as_web
from sl3webs.errors import UnsupportedPattern
from sl3webs.evaluate import evaluate
from sl3webs.layout import (
  DegenerateDrawing,
  Drawing,
  boundary_point,
  clockwise_order,
  draw,
  unit_point,
)
from sl3webs.thicken import tripod_web


ORIGIN = (Fraction(0), Fraction(0))


@pytest.mark.parametrize("theta", [0.0, 0.3, 1.9, 2.5, -2.8, math.pi])
def test_unit_points_are_exact_and_close(theta):
  x, y = unit_point(theta)
  assert x * x + y * y == 1
  assert math.hypot(float(x) - math.cos(theta), float(y) - math.sin(theta)) < 1e-3


def test_boundary_points_run_clockwise():
  pts = [boundary_point(p, 5) for p in range(1, 6)]
  order = clockwise_order(pts[0], pts)
  assert order == [0, 1, 2, 3, 4]


def test_drawn_tripod_is_the_tripod_web():
  dr = Drawing(Signature.parse("bbb"))
  c = dr.add_vertex(WHITE, ORIGIN, "c")
  for p in (1, 2, 3):
    dr.add_path(c, p)
  assert as_web(dr.to_diagram()) == tripod_web()


def test_chords_cross_once(crossed):
  dr = Drawing(Signature.parse("bbww"))
  dr.add_path(1, 3)
  dr.add_path(2, 4)
  d = dr.to_diagram()
  assert len(d.crossings) == 1
  assert evaluate(d) == evaluate(crossed)


def test_superposition_adds_crossings():
  a = Drawing(Signature.parse("bbww"))
  a.add_path(1, 3)
  b = Drawing(Signature.parse("bbww"))
  b.add_path(2, 4)
  assert len(a.superpose(b).to_diagram().crossings) == 1
  with pytest.raises(ValueError):
    a.superpose(Drawing(Signature.parse("bw")))


def test_shared_position_is_degenerate():
  dr = Drawing(Signature.parse("bbb"))
  dr.add_vertex(WHITE, ORIGIN, "c")
  dr.add_vertex(WHITE, ORIGIN, "d")
  with pytest.raises(DegenerateDrawing):
    dr.to_diagram()


def test_expected_rotation_is_enforced():
  dr = Drawing(Signature.parse("bbb"))
  c = dr.add_vertex(WHITE, ORIGIN, "c")
  ids = [dr.add_path(c, p) for p in (1, 2, 3)]
  dr.expect(c, [ids[0], ids[2], ids[1]])
  with pytest.raises(DegenerateDrawing):
    dr.to_diagram()


def test_draw_gives_up_after_repeated_degeneracy():
  def build(rng):
    dr = Drawing(Signature.parse("bbb"))
    dr.add_vertex(WHITE, ORIGIN, "c")
    dr.add_vertex(WHITE, ORIGIN, "d")
    return dr

  with pytest.raises(UnsupportedPattern):
    draw(build, seed=1, attempts=3)
