"""Signatures, tensor diagrams and webs.

A diagram stores its combinatorics as ports: a port ``(edge_id, end)`` is one end of an edge, and
every vertex lists its ports in clockwise order. Internal vertices have three ports, crossings four
(opposite ports belong to the same strand), boundary vertices any number in a linear clockwise order
that starts on the side of the next boundary vertex.
"""

from __future__ import annotations

import logging
from collections import defaultdict, deque
from dataclasses import dataclass, field
from typing import Literal, Mapping, Sequence

import networkx as nx

from sl3webs.contracts import CrossingDoc, DiagramDoc, EdgeDoc, InternalVertexDoc
from sl3webs.errors import DegreeNonZero, InvalidDiagram


log = logging.getLogger(__name__)

Color = Literal["b", "w"]
BLACK: Color = "b"
WHITE: Color = "w"

Port = tuple[str, int]


def opposite_color(c: str) -> Color:
  return WHITE if c == BLACK else BLACK


@dataclass(frozen=True)
class Signature:
  colors: tuple[str, ...]

  def __post_init__(self) -> None:
    for c in self.colors:
      if c not in (BLACK, WHITE):
        raise ValueError(f"signature colors must be 'b' or 'w', got {c!r}")

  @classmethod
  def parse(cls, text: str) -> "Signature":
    cleaned = text.strip().replace("●", "b").replace("○", "w")
    return cls(tuple(cleaned))

  def __str__(self) -> str:
    return "".join(self.colors)

  def __len__(self) -> int:
    return len(self.colors)

  @property
  def n(self) -> int:
    return len(self.colors)

  def wrap(self, p: int) -> int:
    return (p - 1) % self.n + 1

  def color(self, p: int) -> Color:
    return self.colors[(p - 1) % self.n]  # type: ignore[return-value]

  def is_black(self, p: int) -> bool:
    return self.color(p) == BLACK

  def is_white(self, p: int) -> bool:
    return self.color(p) == WHITE

  @property
  def type_ab(self) -> tuple[int, int]:
    """``(a, b)``: the numbers of white and black boundary vertices."""
    return self.colors.count(WHITE), self.colors.count(BLACK)

  def is_non_alternating(self) -> bool:
    n = self.n
    if n == 0:
      return False
    return any(self.colors[i] == self.colors[(i + 1) % n] for i in range(n))

  def is_monochromatic(self) -> bool:
    return len(set(self.colors)) == 1

  def swapped(self) -> "Signature":
    return Signature(tuple(opposite_color(c) for c in self.colors))

  def rotated(self, k: int) -> "Signature":
    """Signature after relabeling vertex ``p`` as ``p + k``."""
    n = self.n
    return Signature(tuple(self.colors[(i - k) % n] for i in range(n)))

  def reflected(self) -> "Signature":
    """Signature after relabeling vertex ``p`` as ``n + 1 - p``."""
    return Signature(tuple(reversed(self.colors)))

  def without(self, p: int) -> "Signature":
    idx = self.wrap(p) - 1
    return Signature(self.colors[:idx] + self.colors[idx + 1 :])

  def with_inserted(self, p: int, color: str) -> "Signature":
    idx = p - 1
    return Signature(self.colors[:idx] + (color,) + self.colors[idx:])


@dataclass(frozen=True)
class Multidegree:
  degrees: tuple[int, ...]

  def __getitem__(self, p: int) -> int:
    return self.degrees[p - 1]

  def __add__(self, other: "Multidegree") -> "Multidegree":
    return Multidegree(tuple(a + b for a, b in zip(self.degrees, other.degrees)))

  def scaled(self, k: int) -> "Multidegree":
    return Multidegree(tuple(k * d for d in self.degrees))

  def dominated_by(self, other: "Multidegree") -> bool:
    return all(a <= b for a, b in zip(self.degrees, other.degrees))

  def total(self) -> int:
    return sum(self.degrees)

  def __str__(self) -> str:
    return ",".join(str(d) for d in self.degrees)

  @classmethod
  def parse(cls, text: str) -> "Multidegree":
    return cls(tuple(int(s) for s in text.split(",") if s.strip()))


@dataclass(frozen=True, eq=False)
class TensorDiagram:
  """A drawn tensor diagram; treat every mapping as read-only."""

  signature: Signature
  colors: Mapping[str, str]
  crossings: frozenset[str]
  edges: Mapping[str, tuple[str, str]]
  rotation: Mapping[str, tuple[Port, ...]]
  loops: int = 0

  # -- vertex classification --------------------------------------------------------------------

  def boundary_ids(self) -> list[str]:
    return [str(p) for p in range(1, self.signature.n + 1)]

  def is_boundary(self, v: str) -> bool:
    return v.isdigit() and 1 <= int(v) <= self.signature.n

  def is_crossing(self, v: str) -> bool:
    return v in self.crossings

  def is_internal(self, v: str) -> bool:
    return v in self.colors

  def vertex_color(self, v: str) -> str | None:
    if v in self.colors:
      return self.colors[v]
    if self.is_boundary(v):
      return self.signature.color(int(v))
    return None

  def ports(self, v: str) -> tuple[Port, ...]:
    return self.rotation.get(v, ())

  def degree(self, v: str) -> int:
    return len(self.ports(v))

  def end_vertex(self, port: Port) -> str:
    e, j = port
    return self.edges[e][j]

  def far_port(self, port: Port) -> Port:
    e, j = port
    return (e, 1 - j)

  def neighbors(self, v: str) -> list[str]:
    return [self.end_vertex(self.far_port(p)) for p in self.ports(v)]

  def internal_ids(self) -> list[str]:
    return sorted(self.colors)

  def is_closed(self) -> bool:
    return self.signature.n == 0

  def __repr__(self) -> str:
    return (
      f"TensorDiagram(signature={self.signature}, internal={len(self.colors)}, "
      f"crossings={len(self.crossings)}, edges={len(self.edges)}, loops={self.loops})"
    )


@dataclass
class DiagramBuilder:
  """Mutable helper for assembling diagrams by vertex and edge names."""

  signature: Signature
  colors: dict[str, str] = field(default_factory=dict)
  crossings: set[str] = field(default_factory=set)
  edges: dict[str, tuple[str, str]] = field(default_factory=dict)
  order: dict[str, list[str]] = field(default_factory=dict)
  loops: int = 0
  _counter: int = 0

  def fresh(self, prefix: str) -> str:
    while True:
      self._counter += 1
      name = f"{prefix}{self._counter}"
      if name not in self.colors and name not in self.edges and name not in self.crossings:
        return name

  def vertex(self, color: str, vid: str | None = None) -> str:
    vid = vid or self.fresh("v")
    self.colors[vid] = color
    return vid

  def crossing(self, cid: str | None = None) -> str:
    cid = cid or self.fresh("c")
    self.crossings.add(cid)
    return cid

  def edge(self, u: str | int, v: str | int, eid: str | None = None) -> str:
    eid = eid or self.fresh("e")
    u, v = str(u), str(v)
    self.edges[eid] = (u, v)
    self.order.setdefault(u, []).append(eid)
    if v != u:
      self.order.setdefault(v, []).append(eid)
    else:
      self.order[u].append(eid)
    return eid

  def rotate(self, v: str | int, edge_ids: Sequence[str]) -> None:
    """Set the clockwise order at ``v`` by edge ids (a loop edge is listed twice)."""
    self.order[str(v)] = list(edge_ids)

  def build(self) -> TensorDiagram:
    rotation = {v: ports_from_edge_ids(v, ids, self.edges) for v, ids in self.order.items()}
    return TensorDiagram(
      signature=self.signature,
      colors=dict(self.colors),
      crossings=frozenset(self.crossings),
      edges=dict(self.edges),
      rotation=rotation,
      loops=self.loops,
    )


def ports_from_edge_ids(v: str, ids: Sequence[str], edges: Mapping[str, tuple[str, str]]) -> tuple[Port, ...]:
  seen: dict[str, int] = defaultdict(int)
  out: list[Port] = []
  for e in ids:
    if e not in edges:
      raise InvalidDiagram([f"rotation at {v} names unknown edge {e}"])
    a, b = edges[e]
    if a == v and b == v:
      out.append((e, seen[e]))
      seen[e] += 1
    elif a == v:
      out.append((e, 0))
    elif b == v:
      out.append((e, 1))
    else:
      raise InvalidDiagram([f"rotation at {v} names edge {e} which is not incident to it"])
  return tuple(out)


# -- strands ----------------------------------------------------------------------------------------


def trace_strand(d: TensorDiagram, port: Port) -> tuple[str, Port] | None:
  """Follow ``port`` outward, straight through crossings, to a real vertex.

  Returns the real vertex and the port by which the strand arrives there, or ``None`` when the
  strand closes up through crossings only.
  """
  seen: set[Port] = set()
  current = port
  while True:
    arrival = d.far_port(current)
    v = d.end_vertex(arrival)
    if not d.is_crossing(v):
      return v, arrival
    if arrival in seen:
      return None
    seen.add(arrival)
    rot = d.rotation[v]
    i = rot.index(arrival)
    current = rot[(i + 2) % 4]
    if current == port:
      return None


# -- validation -------------------------------------------------------------------------------------


def validate(d: TensorDiagram) -> list[str]:
  """All violated structural invariants, as readable messages (empty when valid)."""
  violations: list[str] = []
  n = d.signature.n
  for v, c in d.colors.items():
    if c not in (BLACK, WHITE):
      violations.append(f"internal vertex {v} has invalid color {c!r}")
    if d.is_boundary(v):
      violations.append(f"internal vertex id {v} collides with a boundary label")
  for c in d.crossings:
    if c in d.colors:
      violations.append(f"crossing id {c} is also an internal vertex")
  known = set(d.colors) | set(d.crossings) | {str(p) for p in range(1, n + 1)}
  for e, (a, b) in d.edges.items():
    for v in (a, b):
      if v not in known:
        violations.append(f"edge {e} ends at unknown vertex {v}")
  if violations:
    return violations

  placed: dict[Port, str] = {}
  for v, ports in d.rotation.items():
    if v not in known:
      violations.append(f"rotation given for unknown vertex {v}")
      continue
    for port in ports:
      e, j = port
      if e not in d.edges or j not in (0, 1):
        violations.append(f"rotation at {v} names unknown port {port}")
        continue
      if d.edges[e][j] != v:
        violations.append(f"rotation at {v} lists end {j} of edge {e}, which is not at {v}")
      if port in placed:
        violations.append(f"port {port} listed twice")
      placed[port] = v
  for e in d.edges:
    for j in (0, 1):
      if (e, j) not in placed:
        violations.append(f"end {j} of edge {e} missing from the rotation at {d.edges[e][j]}")

  for v in d.colors:
    if len(d.ports(v)) != 3:
      violations.append(f"internal vertex {v} not trivalent (degree {len(d.ports(v))})")
  for c in d.crossings:
    if len(d.ports(c)) != 4:
      violations.append(f"crossing {c} does not have degree 4")
  if violations:
    return violations

  for v in list(d.colors) + d.boundary_ids():
    for port in d.ports(v):
      traced = trace_strand(d, port)
      if traced is None:
        violations.append(f"strand from {v} closes up without reaching a vertex")
        continue
      u, _ = traced
      if d.vertex_color(u) == d.vertex_color(v):
        violations.append(f"edge strand joins {v} and {u} of the same color")
  return sorted(set(violations))


def check_valid(d: TensorDiagram) -> TensorDiagram:
  problems = validate(d)
  if problems:
    raise InvalidDiagram(problems)
  return d


def multidegree(d: TensorDiagram) -> Multidegree:
  return Multidegree(tuple(d.degree(v) for v in d.boundary_ids()))


# -- faces and planarity ----------------------------------------------------------------------------


def _full_rotation(d: TensorDiagram) -> dict[str, list[Port]]:
  n = d.signature.n
  full: dict[str, list[Port]] = {}
  for v in list(d.colors) + sorted(d.crossings):
    full[v] = list(d.ports(v))
  for p in range(1, n + 1):
    ahead: Port = (f"~{p}", 0)
    behind: Port = (f"~{(p - 2) % n + 1}", 1)
    full[str(p)] = [ahead, *d.ports(str(p)), behind]
  return full


def faces(d: TensorDiagram) -> list[list[Port]]:
  """Faces of the rotation system, with the boundary closed up by a virtual cycle.

  Each face is the cyclic list of ports by which it leaves its vertices. Virtual boundary ports are
  named ``~p``.
  """
  full = _full_rotation(d)
  position: dict[Port, tuple[str, int]] = {}
  for v, ports in full.items():
    for i, port in enumerate(ports):
      position[port] = (v, i)
  used: set[Port] = set()
  out: list[list[Port]] = []
  for start in position:
    if start in used:
      continue
    face: list[Port] = []
    port = start
    while port not in used:
      used.add(port)
      face.append(port)
      e, j = port
      arrival = (e, 1 - j)
      v, i = position[arrival]
      ports = full[v]
      port = ports[(i + 1) % len(ports)]
    out.append(face)
  return out


def components(d: TensorDiagram) -> list[set[str]]:
  g = nx.MultiGraph()
  g.add_nodes_from(list(d.colors) + sorted(d.crossings) + d.boundary_ids())
  for e, (a, b) in d.edges.items():
    g.add_edge(a, b, key=e)
  n = d.signature.n
  for p in range(1, n):
    g.add_edge(str(p), str(p + 1), key=f"~{p}")
  return [set(c) for c in nx.connected_components(g)]


def is_planar(d: TensorDiagram) -> bool:
  """Euler's relation ``V - E + F = 1 + C`` for the rotation system plus boundary cycle."""
  n = d.signature.n
  vertices = len(d.colors) + len(d.crossings) + n
  edges = len(d.edges) + n
  face_count = len(faces(d))
  comp = components(d)
  return vertices - edges + face_count == 1 + len(comp)


def closed_components(d: TensorDiagram) -> list[set[str]]:
  return [c for c in components(d) if not any(d.is_boundary(v) for v in c)]


def is_non_elliptic(d: TensorDiagram) -> bool:
  """No crossings or loops, no multiple edges at an internal vertex, no internal 4-cycles."""
  if d.crossings or d.loops:
    return False
  if closed_components(d):
    return False
  pair_count: dict[frozenset[str], int] = defaultdict(int)
  for a, b in d.edges.values():
    if a == b:
      return False
    key = frozenset((a, b))
    pair_count[key] += 1
    if pair_count[key] > 1 and (d.is_internal(a) or d.is_internal(b)):
      return False
  return not internal_four_cycles(d)


def internal_four_cycles(d: TensorDiagram) -> list[tuple[str, str, str, str]]:
  """Simple 4-cycles through internal vertices only, one representative per cycle."""
  adj: dict[str, set[str]] = defaultdict(set)
  for a, b in d.edges.values():
    if d.is_internal(a) and d.is_internal(b) and a != b:
      adj[a].add(b)
      adj[b].add(a)
  found: set[frozenset[str]] = set()
  out: list[tuple[str, str, str, str]] = []
  for v1 in sorted(adj):
    for v2 in sorted(adj[v1]):
      for v4 in sorted(adj[v1]):
        if v4 <= v2:
          continue
        for v3 in sorted(adj[v2] & adj[v4]):
          if v3 in (v1, v2, v4):
            continue
          key = frozenset((v1, v2, v3, v4))
          if key in found:
            continue
          found.add(key)
          out.append((v1, v2, v3, v4))
  return out


# -- webs -------------------------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Web:
  diagram: TensorDiagram
  code: bytes

  def __eq__(self, other: object) -> bool:
    if not isinstance(other, Web):
      return NotImplemented
    return self.code == other.code

  def __hash__(self) -> int:
    return hash(self.code)

  @property
  def signature(self) -> Signature:
    return self.diagram.signature

  def is_non_elliptic(self) -> bool:
    return is_non_elliptic(self.diagram)


def as_web(d: TensorDiagram) -> Web:
  problems = validate(d)
  if d.crossings:
    problems.append("a web has no crossings")
  if not problems and not is_planar(d):
    problems.append("rotation system is not a planar disk embedding")
  if problems:
    raise InvalidDiagram(problems)
  return Web(d, canonical_code(d))


def canonical_code(d: TensorDiagram) -> bytes:
  """Boundary-anchored breadth-first code; equal iff isomorphic fixing the boundary and rotations."""
  if d.crossings:
    raise ValueError("canonical_code needs a crossing-free diagram")
  number: dict[str, str] = {p: f"b{p}" for p in d.boundary_ids()}
  arrival: dict[str, Port] = {}
  order: dict[str, tuple[Port, ...]] = {p: d.ports(p) for p in d.boundary_ids()}
  queue: deque[str] = deque(d.boundary_ids())
  counter = 0
  while queue:
    v = queue.popleft()
    if v not in order:
      rot = d.ports(v)
      i = rot.index(arrival[v])
      order[v] = rot[i:] + rot[:i]
    for port in order[v]:
      far = d.far_port(port)
      u = d.end_vertex(far)
      if u not in number:
        counter += 1
        number[u] = f"i{counter}"
        arrival[u] = far
        queue.append(u)
  unreached = set(d.colors) - set(number)
  if unreached:
    raise ValueError(f"closed components are not canonically coded: {sorted(unreached)}")

  slot: dict[Port, int] = {}
  for v, ports in order.items():
    for k, port in enumerate(ports):
      slot[port] = k
  chunks = [str(d.signature), f"L{d.loops}"]
  by_number = sorted(order, key=lambda v: (number[v][0], int(number[v][1:])))
  for v in by_number:
    color = d.vertex_color(v) or "?"
    desc = []
    for port in order[v]:
      far = d.far_port(port)
      desc.append(f"{number[d.end_vertex(far)]}.{slot[far]}")
    chunks.append(f"{number[v]}{color}[{','.join(desc)}]")
  return "|".join(chunks).encode()


# -- unclasping -------------------------------------------------------------------------------------


def unclasp(d: TensorDiagram) -> nx.MultiGraph:
  """Abstract graph with every boundary vertex split into one leaf per incident edge end."""
  if d.crossings:
    raise ValueError("unclasp needs a crossing-free diagram")
  g = nx.MultiGraph()
  for v, c in d.colors.items():
    g.add_node(v, color=c, boundary=None)

  def node_for(port: Port) -> str:
    v = d.end_vertex(port)
    if d.is_boundary(v):
      e, j = port
      name = f"{v}:{e}:{j}"
      g.add_node(name, color=d.vertex_color(v), boundary=int(v))
      return name
    return v

  for e in d.edges:
    g.add_edge(node_for((e, 0)), node_for((e, 1)), key=e)
  return g


def is_forest_diagram(d: TensorDiagram) -> bool:
  if d.loops:
    return False
  g = unclasp(d)
  if g.number_of_nodes() == 0:
    return True
  return nx.is_forest(g)


def is_tree_diagram(d: TensorDiagram) -> bool:
  if d.loops:
    return False
  g = unclasp(d)
  return g.number_of_nodes() > 0 and nx.is_tree(g)


# -- boundary transforms ----------------------------------------------------------------------------


def _relabeled(d: TensorDiagram, signature: Signature, vertex_map: Mapping[str, str]) -> TensorDiagram:
  def m(v: str) -> str:
    return vertex_map.get(v, v)

  return TensorDiagram(
    signature=signature,
    colors=dict(d.colors),
    crossings=d.crossings,
    edges={e: (m(a), m(b)) for e, (a, b) in d.edges.items()},
    rotation={m(v): ports for v, ports in d.rotation.items()},
    loops=d.loops,
  )


def rotate_diagram(d: TensorDiagram, k: int) -> TensorDiagram:
  """Relabel boundary vertex ``p`` as ``p + k``."""
  sig = d.signature
  vmap = {str(p): str(sig.wrap(p + k)) for p in range(1, sig.n + 1)}
  return _relabeled(d, sig.rotated(k), vmap)


def color_swap(d: TensorDiagram) -> TensorDiagram:
  return TensorDiagram(
    signature=d.signature.swapped(),
    colors={v: opposite_color(c) for v, c in d.colors.items()},
    crossings=d.crossings,
    edges=dict(d.edges),
    rotation=dict(d.rotation),
    loops=d.loops,
  )


def drop_vertex(sigma: Signature, p: int) -> Signature:
  return sigma.without(p)


def drop_diagram(d: TensorDiagram, p: int) -> TensorDiagram:
  if d.degree(str(p)):
    raise DegreeNonZero(f"boundary vertex {p} has degree {d.degree(str(p))}")
  sig = d.signature
  vmap = {str(q): str(q - 1) for q in range(p + 1, sig.n + 1)}
  rotation = {v: ports for v, ports in d.rotation.items() if v != str(p)}
  trimmed = TensorDiagram(sig, d.colors, d.crossings, d.edges, rotation, d.loops)
  return _relabeled(trimmed, sig.without(p), vmap)


def lift(d: TensorDiagram, sigma: Signature, p: int) -> TensorDiagram:
  """Insert an isolated boundary vertex at position ``p`` of ``sigma`` (inverse of a drop)."""
  if sigma.without(p) != d.signature:
    raise ValueError(f"{sigma} minus vertex {p} is not {d.signature}")
  vmap = {str(q): str(q + 1) for q in range(p, d.signature.n + 1)}
  return _relabeled(d, sigma, vmap)


def add_fork(d: TensorDiagram, p: int) -> TensorDiagram:
  """Replace ``p`` by two adjacent boundary vertices of the opposite color.

  Every edge end at ``p`` gets a fork vertex of ``p``'s color joined to both new vertices, with
  clockwise order (new vertex ``p``, new vertex ``p+1``, old edge).
  """
  sig = d.signature
  color = sig.color(p)
  new_color = opposite_color(color)
  new_sig = Signature(sig.colors[: p - 1] + (new_color, new_color) + sig.colors[p:])
  vmap = {str(q): str(q + 1) for q in range(p + 1, sig.n + 1)}
  base = _relabeled(
    TensorDiagram(sig, d.colors, d.crossings, d.edges, {v: r for v, r in d.rotation.items() if v != str(p)}, d.loops),
    new_sig,
    vmap,
  )
  colors = dict(base.colors)
  edges = dict(base.edges)
  rotation = dict(base.rotation)
  a, b = str(p), str(p + 1)
  a_ports: list[Port] = []
  b_ports: list[Port] = []
  taken = set(colors) | set(edges) | set(d.crossings)

  def fresh(prefix: str) -> str:
    k = 0
    while True:
      k += 1
      name = f"{prefix}{k}"
      if name not in taken:
        taken.add(name)
        return name

  for port in d.ports(str(p)):
    e, j = port
    f = fresh("f")
    colors[f] = color
    ends = list(edges[e])
    ends[j] = f
    edges[e] = (ends[0], ends[1])
    ea, eb = fresh("fa"), fresh("fb")
    edges[ea] = (f, a)
    edges[eb] = (f, b)
    rotation[f] = ((ea, 0), (eb, 0), (e, j))
    a_ports.append((ea, 1))
    b_ports.append((eb, 1))
  rotation[a] = tuple(a_ports)
  rotation[b] = tuple(b_ports)
  return TensorDiagram(new_sig, colors, base.crossings, edges, rotation, base.loops)


# -- JSON documents ---------------------------------------------------------------------------------


def diagram_from_doc(doc: DiagramDoc) -> TensorDiagram:
  sig = Signature.parse(doc.signature)
  b = DiagramBuilder(sig)
  for iv in doc.internal:
    b.vertex(iv.color, iv.id)
  for c in doc.crossings:
    b.crossing(c.id)
  for e in doc.edges:
    b.edge(e.ends[0], e.ends[1], e.id)
  for v, ids in doc.rotation.items():
    b.rotate(v, ids)
  for c in doc.crossings:
    (e1, e3), (e2, e4) = c.pairs
    b.rotate(c.id, [e1, e2, e3, e4])
  for v, ids in doc.boundary_rotation.items():
    b.rotate(v, ids)
  b.loops = doc.loops
  return check_valid(b.build())


def _cyclic_min(ids: list[str]) -> list[str]:
  if not ids:
    return ids
  k = min(range(len(ids)), key=lambda i: ids[i:] + ids[:i])
  return ids[k:] + ids[:k]


def diagram_to_doc(d: TensorDiagram) -> DiagramDoc:
  def ids(v: str) -> list[str]:
    return [e for e, _ in d.ports(v)]

  crossings = []
  for c in sorted(d.crossings):
    r = _cyclic_min(ids(c))
    crossings.append(CrossingDoc(id=c, pairs=[[r[0], r[2]], [r[1], r[3]]]))
  return DiagramDoc(
    signature=str(d.signature),
    internal=[InternalVertexDoc(id=v, color=d.colors[v]) for v in sorted(d.colors)],  # type: ignore[arg-type]
    crossings=crossings,
    edges=[EdgeDoc(id=e, ends=list(d.edges[e])) for e in sorted(d.edges)],
    rotation={v: _cyclic_min(ids(v)) for v in sorted(d.colors)},
    boundary_rotation={p: ids(p) for p in d.boundary_ids() if d.degree(p)},
    loops=d.loops,
  )


def normalize_ids(d: TensorDiagram) -> TensorDiagram:
  """Rename internal vertices ``i1, i2, ...`` and edges ``e1, e2, ...`` in boundary-first order."""
  if d.crossings:
    return d
  vmap: dict[str, str] = {}
  emap: dict[str, str] = {}
  queue: deque[str] = deque(d.boundary_ids())
  pending = sorted(d.colors)
  while queue or pending:
    if not queue:
      v = pending.pop(0)
      if v in vmap:
        continue
      vmap[v] = f"i{len(vmap) + 1}"
      queue.append(v)
    v = queue.popleft()
    for port in d.ports(v):
      e = port[0]
      if e not in emap:
        emap[e] = f"e{len(emap) + 1}"
      u = d.end_vertex(d.far_port(port))
      if d.is_internal(u) and u not in vmap:
        vmap[u] = f"i{len(vmap) + 1}"
        queue.append(u)
  for e in d.edges:
    emap.setdefault(e, f"e{len(emap) + 1}")

  def m(v: str) -> str:
    return vmap.get(v, v)

  return TensorDiagram(
    signature=d.signature,
    colors={m(v): c for v, c in d.colors.items()},
    crossings=d.crossings,
    edges={emap[e]: (m(a), m(b)) for e, (a, b) in d.edges.items()},
    rotation={m(v): tuple((emap[e], j) for e, j in ports) for v, ports in d.rotation.items()},
    loops=d.loops,
  )
