from __future__ import annotations

import pytest

from sl3webs.diagram import BLACK, WHITE, is_non_elliptic
from sl3webs.thicken import (
  honeycomb,
  power_check,
  power_expansion,
  power_is_thickening,
  quadripod_web,
  single_cycle_web,
  squares_to_single_web,
  thicken,
  tripod_web,
)


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_honeycomb_shape(k):
  hc = honeycomb(k, BLACK)
  ups = [v for v, c in hc.colors.items() if c == BLACK]
  downs = [v for v, c in hc.colors.items() if c == WHITE]
  assert len(ups) == k * (k + 1) // 2
  assert len(downs) == k * (k - 1) // 2
  assert hc.internal_edges == 3 * len(downs)
  assert hc.hexagons == (k - 1) * (k - 2) // 2
  assert [len(side) for side in hc.sides] == [k, k, k]
  legs = sum(1 for s in hc.slots.values() for x in s if x is None)
  assert legs == 3 * k


@pytest.mark.parametrize("k, hexagons", [(1, 0), (2, 0), (3, 1), (4, 3)])
def test_honeycomb_hexagon_count_follows_from_bipartite_legs(k, hexagons):
  # every leg leaves a vertex of the replaced color, so that color outnumbers the other by k
  hc = honeycomb(k, WHITE)
  legs = [v for v, s in hc.slots.items() for x in s if x is None]
  assert {hc.colors[v] for v in legs} == {WHITE}
  whites = sum(1 for c in hc.colors.values() if c == WHITE)
  assert whites - (len(hc.colors) - whites) == k
  assert hc.hexagons == hexagons


def test_honeycomb_rejects_bad_input():
  with pytest.raises(ValueError):
    honeycomb(0, BLACK)
  with pytest.raises(ValueError):
    honeycomb(2, "g")


def test_thickening_by_one_is_identity():
  w = tripod_web()
  assert thicken(w, 1) is w
  with pytest.raises(ValueError):
    thicken(w, 0)


def test_doubled_tripod():
  t = thicken(tripod_web(), 2)
  d = t.diagram
  assert len(d.colors) == 4
  assert len(d.edges) == 9
  assert is_non_elliptic(d)
  assert all(len(d.ports(str(p))) == 2 for p in (1, 2, 3))


@pytest.mark.parametrize("w", [tripod_web(), tripod_web(WHITE), quadripod_web()], ids=["tripod", "white", "quadripod"])
def test_square_is_the_doubled_web(w):
  assert power_check(w, 2)


def test_tripod_square_is_a_single_web():
  ok, product = squares_to_single_web(tripod_web())
  assert ok
  assert product.single() == (thicken(tripod_web(), 2), 1)


def test_single_cycle_web_needs_even_length():
  assert len(single_cycle_web(6).diagram.colors) == 6
  with pytest.raises(ValueError):
    single_cycle_web(5)
  with pytest.raises(ValueError):
    single_cycle_web(4)


@pytest.mark.slow
@pytest.mark.parametrize("w, k", [(tripod_web(), 3), (quadripod_web(), 3), (single_cycle_web(6), 2)])
def test_higher_powers(w, k):
  assert power_check(w, k)


def test_tripod_square_is_its_thickening_by_canonical_code():
  assert power_is_thickening(tripod_web(), 2)
  assert power_expansion(tripod_web(), 2).single() == (thicken(tripod_web(), 2), 1)


@pytest.mark.slow
@pytest.mark.parametrize("w, k", [(tripod_web(), 3), (quadripod_web(), 3)], ids=["tripod", "quadripod"])
def test_cube_is_its_thickening_by_canonical_code(w, k):
  assert power_is_thickening(w, k)
