"""Exact rational drawings of diagrams in the unit disk.

Boundary vertices sit at rational points of the unit circle, clockwise in label order. Edges are
polylines. Converting a drawing to a :class:`TensorDiagram` inserts a crossing at every transversal
intersection and reads each rotation off the exact angular order of the incident segments. Any
degenerate position (three segments through a point, a segment through a vertex, overlapping
segments) raises :class:`DegenerateDrawing`; callers redraw with fresh jitter.
"""

from __future__ import annotations

import logging
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key, lru_cache
from typing import Callable, Sequence

from sl3webs.diagram import Port, Signature, TensorDiagram, check_valid
from sl3webs.errors import UnsupportedPattern


log = logging.getLogger(__name__)

Point = tuple[Fraction, Fraction]

ANGLE_OFFSET = 0.1234
MAX_ATTEMPTS = 60


class DegenerateDrawing(UnsupportedPattern):
  pass


# -- points -----------------------------------------------------------------------------------------


def unit_point(theta: float, max_denominator: int = 4096) -> Point:
  """A rational point on the unit circle close to angle ``theta``."""
  theta = math.remainder(theta, 2 * math.pi)
  if abs(theta) > 2.0:
    x, y = unit_point(theta - math.pi, max_denominator)
    return (-x, -y)
  t = Fraction(math.tan(theta / 2)).limit_denominator(max_denominator)
  den = 1 + t * t
  return ((1 - t * t) / den, 2 * t / den)


def boundary_angle(p: int, n: int) -> float:
  return math.pi / 2 - 2 * math.pi * (p - 1) / n - ANGLE_OFFSET


@lru_cache(maxsize=None)
def boundary_point(p: int, n: int) -> Point:
  return unit_point(boundary_angle(p, n))


def angle_of(pt: Point) -> float:
  return math.atan2(float(pt[1]), float(pt[0]))


def scale(pt: Point, r: Fraction | int) -> Point:
  return (pt[0] * r, pt[1] * r)


def add(a: Point, b: Point) -> Point:
  return (a[0] + b[0], a[1] + b[1])


def sub(a: Point, b: Point) -> Point:
  return (a[0] - b[0], a[1] - b[1])


def combine(weighted: Sequence[tuple[Fraction | int, Point]]) -> Point:
  x = sum((w * p[0] for w, p in weighted), Fraction(0))
  y = sum((w * p[1] for w, p in weighted), Fraction(0))
  return (x, y)


def midpoint(a: Point, b: Point) -> Point:
  return combine([(Fraction(1, 2), a), (Fraction(1, 2), b)])


def jitter(rng: random.Random, size: Fraction = Fraction(1, 100)) -> Point:
  steps = 1000
  dx = Fraction(rng.randint(-steps, steps), steps) * size
  dy = Fraction(rng.randint(-steps, steps), steps) * size
  return (dx, dy)


def _cross(a: Point, b: Point) -> Fraction:
  return a[0] * b[1] - a[1] * b[0]


def _dot(a: Point, b: Point) -> Fraction:
  return a[0] * b[0] + a[1] * b[1]


def _orient(a: Point, b: Point, c: Point) -> int:
  v = _cross(sub(b, a), sub(c, a))
  return (v > 0) - (v < 0)


def clockwise_order(reference: Point, directions: Sequence[Point]) -> list[int]:
  """Indices of ``directions`` sorted by clockwise angle from ``reference``."""

  def half(d: Point) -> int:
    c = _cross(reference, d)
    return 0 if c < 0 or (c == 0 and _dot(reference, d) > 0) else 1

  def cmp(i: int, j: int) -> int:
    a, b = directions[i], directions[j]
    ha, hb = half(a), half(b)
    if ha != hb:
      return ha - hb
    c = _cross(a, b)
    if c == 0:
      raise DegenerateDrawing("two segments leave a vertex in the same direction")
    return -1 if c < 0 else 1

  return sorted(range(len(directions)), key=cmp_to_key(cmp))


# -- drawings ---------------------------------------------------------------------------------------


@dataclass
class Drawing:
  signature: Signature
  points: dict[str, Point] = field(default_factory=dict)
  colors: dict[str, str] = field(default_factory=dict)
  paths: dict[str, tuple[str, str, tuple[Point, ...]]] = field(default_factory=dict)
  expected: dict[str, tuple[str, ...]] = field(default_factory=dict)
  _counter: int = 0

  def __post_init__(self) -> None:
    n = self.signature.n
    for p in range(1, n + 1):
      self.points.setdefault(str(p), boundary_point(p, n))

  def _fresh(self, prefix: str) -> str:
    while True:
      self._counter += 1
      name = f"{prefix}{self._counter}"
      if name not in self.points and name not in self.paths:
        return name

  def add_vertex(self, color: str, at: Point, vid: str | None = None) -> str:
    vid = vid or self._fresh("v")
    self.points[vid] = at
    self.colors[vid] = color
    return vid

  def add_path(self, u: str | int, v: str | int, bends: Sequence[Point] = (), pid: str | None = None) -> str:
    pid = pid or self._fresh("e")
    self.paths[pid] = (str(u), str(v), tuple(bends))
    return pid

  def expect(self, v: str, path_ids: Sequence[str]) -> None:
    """Require the clockwise order of paths at ``v`` (checked when converting)."""
    self.expected[v] = tuple(path_ids)

  def superpose(self, other: "Drawing", tag: str = "s") -> "Drawing":
    if other.signature != self.signature:
      raise ValueError("superposed drawings must share a signature")
    out = Drawing(self.signature, dict(self.points), dict(self.colors), dict(self.paths), dict(self.expected))
    k = 0
    while any(name.startswith(f"{tag}{k}.") for name in out.points):
      k += 1
    pre = f"{tag}{k}."

    def m(v: str) -> str:
      return v if v.isdigit() else pre + v

    for v, c in other.colors.items():
      out.colors[m(v)] = c
      out.points[m(v)] = other.points[v]
    for pid, (a, b, bends) in other.paths.items():
      out.paths[pre + pid] = (m(a), m(b), bends)
    for v, ids in other.expected.items():
      out.expected[m(v)] = tuple(pre + i for i in ids)
    return out

  def to_diagram(self) -> TensorDiagram:
    return _planar_map(self)


@dataclass(frozen=True)
class _Segment:
  path: str
  index: int
  a: Point
  b: Point


def _planar_map(dr: Drawing) -> TensorDiagram:
  vertex_points = {pt: v for v, pt in dr.points.items()}
  if len(vertex_points) != len(dr.points):
    raise DegenerateDrawing("two vertices share a position")
  segments: list[_Segment] = []
  polyline: dict[str, list[Point]] = {}
  for pid, (u, v, bends) in dr.paths.items():
    pts = [dr.points[u], *bends, dr.points[v]]
    polyline[pid] = pts
    for k in range(len(pts) - 1):
      if pts[k] == pts[k + 1]:
        raise DegenerateDrawing(f"path {pid} has a zero-length segment")
      segments.append(_Segment(pid, k, pts[k], pts[k + 1]))

  hits: dict[tuple[str, int], list[tuple[Fraction, str]]] = {}
  crossing_points: dict[Point, str] = {}
  for i in range(len(segments)):
    s = segments[i]
    for j in range(i + 1, len(segments)):
      t = segments[j]
      hit = _intersect(s, t, vertex_points)
      if hit is None:
        continue
      pt, ts, tt = hit
      if pt in crossing_points or pt in vertex_points:
        raise DegenerateDrawing("three segments meet at one point")
      cid = f"x{len(crossing_points) + 1}"
      crossing_points[pt] = cid
      hits.setdefault((s.path, s.index), []).append((ts, cid))
      hits.setdefault((t.path, t.index), []).append((tt, cid))

  edges: dict[str, tuple[str, str]] = {}
  leaving: dict[str, list[tuple[Point, Port]]] = {}
  origin: dict[str, str] = {}
  for pid, (u, v, _) in dr.paths.items():
    pts = polyline[pid]
    nodes: list[tuple[str, int]] = [(u, 0)]
    for k in range(len(pts) - 1):
      for _, cid in sorted(hits.get((pid, k), [])):
        nodes.append((cid, k))
    nodes.append((v, len(pts) - 2))
    pieces = len(nodes) - 1
    for m in range(pieces):
      eid = pid if pieces == 1 else f"{pid}.{m}"
      (start, k_start), (end, _) = nodes[m], nodes[m + 1]
      k_end = nodes[m + 1][1] if m + 1 < pieces else len(pts) - 2
      edges[eid] = (start, end)
      origin[eid] = pid
      leaving.setdefault(start, []).append((sub(pts[k_start + 1], pts[k_start]), (eid, 0)))
      leaving.setdefault(end, []).append((sub(pts[k_end], pts[k_end + 1]), (eid, 1)))

  rotation: dict[str, tuple[Port, ...]] = {}
  for v, items in leaving.items():
    if v in dr.points and v.isdigit():
      pt = dr.points[v]
      reference = (pt[1], -pt[0])
    else:
      reference = (Fraction(1), Fraction(0))
    order = clockwise_order(reference, [d for d, _ in items])
    rotation[v] = tuple(items[i][1] for i in order)

  for v, want in dr.expected.items():
    got = tuple(origin[e] for e, _ in rotation.get(v, ()))
    if not _same_cycle(got, want):
      raise DegenerateDrawing(f"vertex {v} drawn with order {got}, expected {want}")

  d = TensorDiagram(
    signature=dr.signature,
    colors=dict(dr.colors),
    crossings=frozenset(crossing_points.values()),
    edges=edges,
    rotation=rotation,
  )
  return check_valid(d)


def _same_cycle(a: tuple[str, ...], b: tuple[str, ...]) -> bool:
  if len(a) != len(b):
    return False
  return any(a[k:] + a[:k] == b for k in range(len(a))) or not a


def _intersect(s: _Segment, t: _Segment, vertex_points: dict[Point, str]) -> tuple[Point, Fraction, Fraction] | None:
  """Transversal intersection point of two segments with parameters along each, else ``None``."""
  shared = {s.a, s.b} & {t.a, t.b}
  consecutive = s.path == t.path and abs(s.index - t.index) == 1
  if shared:
    if len(shared) == 2:
      raise DegenerateDrawing("two segments coincide")
    (c,) = shared
    if not consecutive and c not in vertex_points:
      raise DegenerateDrawing("segments meet at a bend")
    s_far = s.b if s.a == c else s.a
    t_far = t.b if t.a == c else t.a
    if _orient(c, s_far, t_far) == 0 and _dot(sub(s_far, c), sub(t_far, c)) > 0:
      raise DegenerateDrawing("segments overlap")
    return None
  o1 = _orient(s.a, s.b, t.a)
  o2 = _orient(s.a, s.b, t.b)
  o3 = _orient(t.a, t.b, s.a)
  o4 = _orient(t.a, t.b, s.b)
  if o1 == o2 and o1 != 0:
    return None
  if o3 == o4 and o3 != 0:
    return None
  if 0 in (o1, o2, o3, o4):
    if o1 == o2 == 0:
      lo = _dot(sub(t.a, s.a), sub(s.b, s.a))
      hi = _dot(sub(t.b, s.a), sub(s.b, s.a))
      span = _dot(sub(s.b, s.a), sub(s.b, s.a))
      if max(lo, hi) < 0 or min(lo, hi) > span:
        return None
    raise DegenerateDrawing("a segment touches another")
  r = sub(s.b, s.a)
  q = sub(t.b, t.a)
  denom = _cross(r, q)
  ts = _cross(sub(t.a, s.a), q) / denom
  tt = _cross(sub(t.a, s.a), r) / denom
  return add(s.a, scale(r, ts)), ts, tt


def draw(
  build: Callable[[random.Random], Drawing], seed: int, attempts: int = MAX_ATTEMPTS
) -> tuple[TensorDiagram, Drawing]:
  """Build and convert a drawing, redrawing with a new seed after each degeneracy."""
  last: Exception | None = None
  for attempt in range(attempts):
    rng = random.Random(seed * 7919 + attempt)
    drawing = build(rng)
    try:
      return drawing.to_diagram(), drawing
    except DegenerateDrawing as e:
      log.debug("redrawing after attempt %d: %s", attempt, e)
      last = e
  raise UnsupportedPattern(f"no nondegenerate drawing after {attempts} attempts: {last}")
