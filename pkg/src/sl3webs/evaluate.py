"""Invariants of tensor diagrams as sums over proper edge labelings.

Each labeling assigns one of 1, 2, 3 to every strand (an edge path running straight through
crossings) so that the three labels at each internal vertex differ. It contributes the product of
the vertex signs, read in clockwise order, times ``x_l(v)`` for every strand end at a black boundary
vertex ``v`` and ``y_l(v)`` at a white one.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from typing import Iterator, Mapping

from sl3webs.algebra import CoordVar, IntPolynomial, coordinate_ring, variable_index
from sl3webs.config import get_settings
from sl3webs.diagram import BLACK, WHITE, Port, TensorDiagram, trace_strand
from sl3webs.errors import Inconsistent, ResourceLimit


log = logging.getLogger(__name__)

_EVEN = {(1, 2, 3), (2, 3, 1), (3, 1, 2)}


def vertex_sign(labels: tuple[int, int, int]) -> int:
  return 1 if labels in _EVEN else -1


@dataclass(frozen=True)
class Strand:
  """An edge path between two real vertices; crossings are passed straight through."""

  ends: tuple[tuple[str, Port], tuple[str, Port]]
  edges: tuple[str, ...]


@dataclass(frozen=True)
class StrandSystem:
  strands: tuple[Strand, ...]
  closed: int
  """Strands that close up through crossings only, plus vertex-free loops."""


def strand_system(d: TensorDiagram) -> StrandSystem:
  seen: set[Port] = set()
  strands: list[Strand] = []
  real = list(d.colors) + [p for p in d.boundary_ids() if d.degree(p)]
  for v in real:
    for port in d.ports(v):
      if port in seen:
        continue
      traced = trace_strand(d, port)
      if traced is None:
        raise ValueError(f"strand from {v} does not reach a vertex")
      u, arrival = traced
      seen.add(port)
      seen.add(arrival)
      strands.append(Strand(((v, port), (u, arrival)), _strand_edges(d, port)))

  covered = {e for s in strands for e in s.edges}
  closed = d.loops
  remaining = [e for e in d.edges if e not in covered]
  while remaining:
    e = remaining[0]
    path = _closed_strand_edges(d, (e, 0))
    covered.update(path)
    closed += 1
    remaining = [f for f in remaining if f not in covered]
  return StrandSystem(tuple(strands), closed)


def _strand_edges(d: TensorDiagram, port: Port) -> tuple[str, ...]:
  out = [port[0]]
  current = port
  while True:
    arrival = d.far_port(current)
    v = d.end_vertex(arrival)
    if not d.is_crossing(v):
      return tuple(out)
    rot = d.rotation[v]
    current = rot[(rot.index(arrival) + 2) % 4]
    out.append(current[0])


def _closed_strand_edges(d: TensorDiagram, port: Port) -> set[str]:
  out: set[str] = set()
  current = port
  while current[0] not in out:
    out.add(current[0])
    arrival = d.far_port(current)
    v = d.end_vertex(arrival)
    rot = d.rotation[v]
    current = rot[(rot.index(arrival) + 2) % 4]
  return out


@dataclass(frozen=True)
class ProperLabeling:
  label: Mapping[str, int]
  sign: int


def _search(d: TensorDiagram, system: StrandSystem) -> Iterator[tuple[int, list[int]]]:
  """Yield ``(sign, strand_labels)`` for every proper labeling of the strands."""
  strands = system.strands
  index: dict[Port, int] = {}
  for k, s in enumerate(strands):
    for _, port in s.ends:
      index[port] = k
  vertex_strands = {v: tuple(index[p] for p in d.ports(v)) for v in d.colors}
  touching: dict[int, list[str]] = {k: [] for k in range(len(strands))}
  for v, ks in vertex_strands.items():
    for k in set(ks):
      touching[k].append(v)

  order = _strand_order(d, strands, vertex_strands, touching)
  labels = [0] * len(strands)

  def ok(k: int) -> bool:
    for v in touching[k]:
      vals = [labels[j] for j in vertex_strands[v] if labels[j]]
      if len(vals) != len(set(vals)):
        return False
    return True

  def rec(i: int) -> Iterator[tuple[int, list[int]]]:
    if i == len(order):
      sign = 1
      for v, ks in vertex_strands.items():
        sign *= vertex_sign((labels[ks[0]], labels[ks[1]], labels[ks[2]]))
      yield sign, labels
      return
    k = order[i]
    for value in (1, 2, 3):
      labels[k] = value
      if ok(k):
        yield from rec(i + 1)
    labels[k] = 0

  yield from rec(0)


def _strand_order(
  d: TensorDiagram,
  strands: tuple[Strand, ...],
  vertex_strands: Mapping[str, tuple[int, ...]],
  touching: Mapping[int, list[str]],
) -> list[int]:
  order: list[int] = []
  placed: set[int] = set()
  visited: set[str] = set()
  for root in sorted(vertex_strands):
    if root in visited:
      continue
    queue = deque([root])
    visited.add(root)
    while queue:
      v = queue.popleft()
      for k in vertex_strands[v]:
        if k in placed:
          continue
        placed.add(k)
        order.append(k)
        for u in touching[k]:
          if u not in visited:
            visited.add(u)
            queue.append(u)
  order.extend(k for k in range(len(strands)) if k not in placed)
  return order


def _check_size(d: TensorDiagram, limit: int | None = None) -> None:
  if limit is None:
    limit = get_settings().max_edges
  if len(d.edges) > limit:
    raise ResourceLimit(f"diagram has {len(d.edges)} edges, evaluation limit is {limit}")


def proper_labelings(d: TensorDiagram) -> Iterator[ProperLabeling]:
  _check_size(d)
  system = strand_system(d)
  for sign, labels in _search(d, system):
    edge_labels = {e: labels[k] for k, s in enumerate(system.strands) for e in s.edges}
    yield ProperLabeling(edge_labels, sign)


def _boundary_terms(d: TensorDiagram, system: StrandSystem) -> list[tuple[int, str, int]]:
  """``(strand, kind, vertex)`` for every strand end at a boundary vertex."""
  out = []
  for k, s in enumerate(system.strands):
    for v, _ in s.ends:
      if d.is_boundary(v):
        kind = "x" if d.vertex_color(v) == BLACK else "y"
        out.append((k, kind, int(v)))
  return out


def evaluate(d: TensorDiagram, *, max_edges: int | None = None) -> IntPolynomial:
  """The invariant of ``d`` in the coordinate ring of its boundary vertices.

  ``max_edges`` replaces the configured edge limit for this call.
  """
  _check_size(d, max_edges)
  n = d.signature.n
  ring = coordinate_ring(n)
  index = variable_index(n)
  system = strand_system(d)
  ends = _boundary_terms(d, system)
  slots = [[index[CoordVar(kind, v, a)] for a in (1, 2, 3)] for _, kind, v in ends]
  width = len(ring.gens)
  terms: dict[tuple[int, ...], int] = {}
  count = 0
  for sign, labels in _search(d, system):
    count += 1
    expv = [0] * width
    for (k, _, _), slot in zip(ends, slots):
      expv[slot[labels[k] - 1]] += 1
    key = tuple(expv)
    terms[key] = terms.get(key, 0) + sign
  scale = 3**system.closed
  element = ring.from_dict({k: c * scale for k, c in terms.items() if c})
  log.debug("evaluated %r: %d labelings, %d terms", d, count, len(element))
  return IntPolynomial(element)


def evaluate_closed(d: TensorDiagram) -> int:
  """The scalar a closed diagram evaluates to; for a web, checked against its signed coloring count."""
  if not d.is_closed():
    raise ValueError("evaluate_closed needs a diagram without boundary vertices")
  value = evaluate(d).constant_value()
  if not d.crossings:
    counted = closed_web_value(d)
    if counted != value:
      raise Inconsistent(f"closed web evaluates to {value} but its signed coloring count is {counted}")
  return value


def closed_web_value(d: TensorDiagram) -> int:
  """``(-1)^m`` times the number of proper colorings of a closed web with ``m`` white vertices."""
  if not d.is_closed() or d.crossings:
    raise ValueError("closed_web_value needs a closed web")
  whites = sum(1 for c in d.colors.values() if c == WHITE)
  return (-1) ** whites * count_proper_colorings(d)


def count_proper_colorings(d: TensorDiagram) -> int:
  """Number of proper 3-labelings of the strands, loops included."""
  _check_size(d)
  system = strand_system(d)
  return sum(1 for _ in _search(d, system)) * 3**system.closed


def evaluate_at_point(d: TensorDiagram, point: Mapping[CoordVar, int]) -> int:
  """Integer value of the invariant at an integer point, without building the polynomial."""
  _check_size(d)
  system = strand_system(d)
  ends = _boundary_terms(d, system)
  values = [[int(point.get(CoordVar(kind, v, a), 0)) for a in (1, 2, 3)] for _, kind, v in ends]

  def weight(labels: list[int]) -> int:
    out = 1
    for (k, _, _), vals in zip(ends, values):
      out *= vals[labels[k] - 1]
      if not out:
        break
    return out

  total = 0
  for sign, labels in _search(d, system):
    total += sign * weight(labels)
  return total * 3**system.closed
