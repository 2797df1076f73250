"""k-thickening of webs: honeycomb fragments in place of internal vertices, k-tuples of edges."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from sl3webs.basis import component_of, expand, multiply
from sl3webs.diagram import BLACK, WHITE, DiagramBuilder, Signature, Web, as_web, is_non_elliptic, opposite_color
from sl3webs.evaluate import evaluate
from sl3webs.skein import WebExpansion


log = logging.getLogger(__name__)

# rotation slots of an up triangle: left, upper-right, bottom; of a down one: lower-left, top, right
LEFT, HYP, BOTTOM = 0, 1, 2


@dataclass(frozen=True)
class Honeycomb:
  """The triangular-grid fragment replacing one internal vertex of ``color``.

  Up triangles carry ``color`` and own every leg; down triangles carry the other color. ``sides``
  lists, per side (left, hypotenuse, bottom: clockwise), the ``(vertex, slot)`` legs in clockwise
  order. ``slots`` maps each vertex to its three neighbors in clockwise order, ``None`` for a leg.
  """

  k: int
  color: str
  colors: dict[str, str] = field(default_factory=dict)
  slots: dict[str, list[str | None]] = field(default_factory=dict)
  sides: tuple[tuple[tuple[str, int], ...], ...] = ()

  @property
  def hexagons(self) -> int:
    """Bounded faces of the fragment (Euler: ``E - V + 1``, the grid being connected)."""
    return self.internal_edges - len(self.colors) + 1

  @property
  def internal_edges(self) -> int:
    return sum(1 for s in self.slots.values() for x in s if x is not None) // 2


def _up(prefix: str, a: int, b: int) -> str:
  return f"{prefix}u{a}.{b}"


def _down(prefix: str, a: int, b: int) -> str:
  return f"{prefix}d{a}.{b}"


def honeycomb(k: int, color: str, prefix: str = "h") -> Honeycomb:
  if k < 1:
    raise ValueError("honeycombs have k >= 1")
  if color not in (BLACK, WHITE):
    raise ValueError(f"invalid color {color!r}")
  colors: dict[str, str] = {}
  slots: dict[str, list[str | None]] = {}
  for a in range(k):
    for b in range(k - a):
      u = _up(prefix, a, b)
      colors[u] = color
      slots[u] = [
        _down(prefix, a - 1, b) if a >= 1 else None,
        _down(prefix, a, b) if a + b <= k - 2 else None,
        _down(prefix, a, b - 1) if b >= 1 else None,
      ]
  for a in range(k - 1):
    for b in range(k - 1 - a):
      dv = _down(prefix, a, b)
      colors[dv] = opposite_color(color)
      slots[dv] = [_up(prefix, a, b), _up(prefix, a, b + 1), _up(prefix, a + 1, b)]
  sides = (
    tuple((_up(prefix, 0, b), LEFT) for b in range(k)),
    tuple((_up(prefix, a, k - 1 - a), HYP) for a in range(k)),
    tuple((_up(prefix, a, 0), BOTTOM) for a in reversed(range(k))),
  )
  return Honeycomb(k, color, colors, slots, sides)


def thicken(w: Web, k: int) -> Web:
  """Replace each internal vertex by ``honeycomb(k)`` and each edge by ``k`` parallel edges."""
  if k < 1:
    raise ValueError("thickening needs k >= 1")
  if k == 1:
    return w
  d = w.diagram
  if d.crossings:
    raise ValueError("only webs can be thickened")
  b = DiagramBuilder(d.signature)
  b.loops = d.loops * k
  combs = {v: honeycomb(k, c, f"{v}.") for v, c in d.colors.items()}
  slot_edges: dict[str, list[str | None]] = {}
  for hc in combs.values():
    for v, c in hc.colors.items():
      b.vertex(c, v)
      slot_edges[v] = [None, None, None]
    for v, nbrs in hc.slots.items():
      if hc.colors[v] != hc.color:
        continue
      for s, u in enumerate(nbrs):
        if u is None:
          continue
        e = b.edge(v, u)
        slot_edges[v][s] = e
        slot_edges[u][hc.slots[u].index(v)] = e

  # per original port, the new edge ids in the clockwise order of that port's vertex
  bundles: dict[tuple[str, int], list[str]] = {}

  def legs(port: tuple[str, int]) -> list[tuple[str, int]] | None:
    v = d.end_vertex(port)
    if not d.is_internal(v):
      return None
    return list(combs[v].sides[d.ports(v).index(port)])

  for e in d.edges:
    x_port, y_port = (e, 0), (e, 1)
    x, y = d.end_vertex(x_port), d.end_vertex(y_port)
    lx, ly = legs(x_port), legs(y_port)
    new = []
    for i in range(k):
      # strand i in the clockwise order at x meets strand k-1-i at y
      ex = lx[i][0] if lx else x
      ey = ly[k - 1 - i][0] if ly else y
      eid = b.edge(ex, ey)
      new.append(eid)
      if lx:
        slot_edges[lx[i][0]][lx[i][1]] = eid
      if ly:
        slot_edges[ly[k - 1 - i][0]][ly[k - 1 - i][1]] = eid
    bundles[x_port] = new
    bundles[y_port] = new[::-1]

  for v, ids in slot_edges.items():
    if any(e is None for e in ids):
      raise ValueError(f"honeycomb vertex {v} has an unattached leg")
    b.rotate(v, ids)  # type: ignore[arg-type]
  for p in d.boundary_ids():
    b.rotate(p, [e for port in d.ports(p) for e in bundles[port]])
  out = as_web(b.build())
  if not is_non_elliptic(out.diagram):
    log.warning("%d-thickening of %r is elliptic", k, d)
  log.debug("thickened %r by %d: %r", d, k, out.diagram)
  return out


def power_check(w: Web, k: int) -> bool:
  """Does the ``k``-thickening evaluate to the ``k``-th power (exactly)?"""
  ok = evaluate(thicken(w, k).diagram) == evaluate(w.diagram) ** k
  if not ok:
    log.warning("thickening by %d is not the power for %r", k, w.diagram)
  return ok


def power_expansion(w: Web, k: int) -> WebExpansion:
  """The ``k``-th power of ``w`` expanded in the web basis of its component."""
  power = evaluate(w.diagram) ** k
  return expand(power, component_of(power, w.signature))


def power_is_thickening(w: Web, k: int) -> bool:
  """Is the ``k``-th power the single web ``thicken(w, k)``, compared by canonical code?"""
  single = power_expansion(w, k).single()
  ok = single is not None and single[1] == 1 and single[0].code == thicken(w, k).code
  if not ok:
    log.warning("power %d of %r is not its thickening: %s", k, w.diagram, single)
  return ok


# -- sample webs ------------------------------------------------------------------------------------


def tripod_web(color: str = BLACK) -> Web:
  """One internal vertex joined to three boundary vertices of ``color``."""
  b = DiagramBuilder(Signature((color,) * 3))
  c = b.vertex(opposite_color(color), "c")
  b.rotate(c, [b.edge(c, p) for p in (1, 2, 3)])
  return as_web(b.build())


def quadripod_web() -> Web:
  """``σ = [●●○○]``: a white vertex on 1, 2 joined to a black vertex on 3, 4."""
  b = DiagramBuilder(Signature.parse("bbww"))
  wv, bv = b.vertex(WHITE, "w"), b.vertex(BLACK, "k")
  e1, e2, mid = b.edge(wv, 1), b.edge(wv, 2), b.edge(wv, bv)
  e3, e4 = b.edge(bv, 3), b.edge(bv, 4)
  b.rotate(wv, [e1, e2, mid])
  b.rotate(bv, [e3, e4, mid])
  return as_web(b.build())


def single_cycle_web(n: int = 6) -> Web:
  """An ``n``-cycle of alternating internal vertices, vertex ``i`` with one leg to boundary ``i``."""
  if n < 6 or n % 2:
    raise ValueError("a non-elliptic single-cycle web has an even number n >= 6 of legs")
  b = DiagramBuilder(Signature.parse("bw" * (n // 2)))
  hs = [b.vertex(WHITE if i % 2 == 0 else BLACK, f"h{i + 1}") for i in range(n)]
  cycle = [b.edge(hs[i], hs[(i + 1) % n]) for i in range(n)]
  leg = [b.edge(hs[i], i + 1) for i in range(n)]
  for i in range(n):
    b.rotate(hs[i], [leg[i], cycle[i], cycle[i - 1]])
  return as_web(b.build())


def squares_to_single_web(w: Web) -> tuple[bool, WebExpansion]:
  """Expand the square of ``w`` in the web basis; an imaginary element gives several webs."""
  product = multiply(w, w)
  return product.is_single_web(), product
