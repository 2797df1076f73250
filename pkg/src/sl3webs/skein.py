"""Skein reduction of tensor diagrams to the non-elliptic web basis.

Rules, each an identity of invariants:

- a crossing becomes a black/white vertex pair plus the uncrossed pairing of its four ends;
- a vertex-free loop is 3;
- an internal vertex with two edges to one boundary vertex is 0;
- a bigon between internal vertices is -2 (times a rotation sign) with its two legs joined;
- a square of internal vertices is the sum of the two ways of joining adjacent legs (times the
  product of the four rotation signs).
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

from sl3webs.algebra import IntPolynomial
from sl3webs.config import get_settings
from sl3webs.contracts import CombinationDoc, CombinationTermDoc, WebExpansionDoc, WebTermDoc
from sl3webs.diagram import (
  BLACK,
  WHITE,
  Port,
  Signature,
  TensorDiagram,
  Web,
  as_web,
  canonical_code,
  closed_components,
  diagram_from_doc,
  diagram_to_doc,
  faces,
  internal_four_cycles,
  normalize_ids,
  trace_strand,
)
from sl3webs.errors import Inconsistent, ResourceLimit, UnsupportedPattern


log = logging.getLogger(__name__)


# -- combinations -----------------------------------------------------------------------------------


@dataclass(frozen=True)
class DiagramCombination:
  signature: Signature
  terms: tuple[tuple[TensorDiagram, int], ...]

  @classmethod
  def single(cls, d: TensorDiagram, coef: int = 1) -> "DiagramCombination":
    return cls(d.signature, ((d, coef),))

  @classmethod
  def of(cls, terms: Iterable[tuple[TensorDiagram, int]]) -> "DiagramCombination":
    items = tuple((d, c) for d, c in terms if c)
    if not items:
      raise ValueError("a combination needs at least one nonzero term")
    sig = items[0][0].signature
    if any(d.signature != sig for d, _ in items):
      raise ValueError("all terms of a combination share one signature")
    return cls(sig, items)


@dataclass(frozen=True, eq=False)
class WebExpansion:
  """Integer combination of non-elliptic webs, keyed by canonical code."""

  signature: Signature
  terms: Mapping[Web, int] = field(default_factory=dict)

  @classmethod
  def zero(cls, signature: Signature) -> "WebExpansion":
    return cls(signature, {})

  @classmethod
  def of_web(cls, web: Web, coef: int = 1) -> "WebExpansion":
    return cls(web.signature, {web: coef} if coef else {})

  def __len__(self) -> int:
    return len(self.terms)

  def items(self) -> list[tuple[Web, int]]:
    return sorted(self.terms.items(), key=lambda kv: kv[0].code)

  def __add__(self, other: "WebExpansion") -> "WebExpansion":
    if other.signature != self.signature:
      raise ValueError("cannot add expansions over different signatures")
    out = dict(self.terms)
    for w, c in other.terms.items():
      out[w] = out.get(w, 0) + c
      if not out[w]:
        del out[w]
    return WebExpansion(self.signature, out)

  def scaled(self, k: int) -> "WebExpansion":
    if not k:
      return WebExpansion.zero(self.signature)
    return WebExpansion(self.signature, {w: k * c for w, c in self.terms.items()})

  def __eq__(self, other: object) -> bool:
    if not isinstance(other, WebExpansion):
      return NotImplemented
    return self.signature == other.signature and dict(self.terms) == dict(other.terms)

  def __hash__(self) -> int:
    return hash((self.signature, frozenset(self.terms.items())))

  def single(self) -> tuple[Web, int] | None:
    if len(self.terms) != 1:
      return None
    return next(iter(self.terms.items()))

  def is_single_web(self) -> bool:
    one = self.single()
    return one is not None and one[1] == 1

  def coefficient(self, web: Web) -> int:
    return self.terms.get(web, 0)

  def evaluate(self) -> IntPolynomial:
    from sl3webs.evaluate import evaluate

    total = IntPolynomial.zero(self.signature.n)
    for w, c in self.terms.items():
      total = total + evaluate(w.diagram) * c
    return total

  def __repr__(self) -> str:
    return f"WebExpansion({self.signature}, {len(self.terms)} webs)"


def combination_from_doc(doc: CombinationDoc) -> DiagramCombination:
  return DiagramCombination.of((diagram_from_doc(t.diagram), int(t.coef)) for t in doc.terms)


def combination_to_doc(c: DiagramCombination) -> CombinationDoc:
  return CombinationDoc(terms=[CombinationTermDoc(coef=str(k), diagram=diagram_to_doc(d)) for d, k in c.terms])


def expansion_to_doc(x: WebExpansion) -> WebExpansionDoc:
  return WebExpansionDoc(
    signature=str(x.signature),
    terms=[WebTermDoc(coef=str(c), web=diagram_to_doc(w.diagram)) for w, c in x.items()],
  )


def expansion_from_doc(doc: WebExpansionDoc) -> WebExpansion:
  out: dict[Web, int] = {}
  for t in doc.terms:
    w = as_web(diagram_from_doc(t.web))
    out[w] = out.get(w, 0) + int(t.coef)
  return WebExpansion(Signature.parse(doc.signature), {w: c for w, c in out.items() if c})


# -- mutable working copy ---------------------------------------------------------------------------


@dataclass
class _Draft:
  signature: Signature
  colors: dict[str, str]
  crossings: set[str]
  edges: dict[str, list[str]]
  rotation: dict[str, list[Port]]
  loops: int
  counter: int = 0

  @classmethod
  def of(cls, d: TensorDiagram) -> "_Draft":
    return cls(
      signature=d.signature,
      colors=dict(d.colors),
      crossings=set(d.crossings),
      edges={e: list(ends) for e, ends in d.edges.items()},
      rotation={v: list(p) for v, p in d.rotation.items()},
      loops=d.loops,
    )

  def fresh(self, prefix: str) -> str:
    while True:
      self.counter += 1
      name = f"{prefix}{self.counter}"
      if name not in self.colors and name not in self.edges and name not in self.crossings:
        return name

  def remove_vertex(self, v: str) -> None:
    self.colors.pop(v, None)
    self.crossings.discard(v)
    self.rotation.pop(v, None)

  def attach(self, v: str, ports: list[Port]) -> None:
    for e, j in ports:
      self.edges[e][j] = v
    self.rotation[v] = list(ports)

  def splice(self, pairs: list[tuple[Port, Port]]) -> None:
    """Join dangling edge ends pairwise into single edges (or free loops)."""
    pending = [list(p) for p in pairs]
    for i, (a, b) in enumerate(pending):
      (e1, j1), (e2, j2) = a, b
      if e1 == e2:
        del self.edges[e1]
        self.loops += 1
        continue
      far: Port = (e2, 1 - j2)
      w = self.edges[e2][1 - j2]
      self.edges[e1][j1] = w
      rot = self.rotation.get(w)
      if rot is not None and far in rot:
        rot[rot.index(far)] = (e1, j1)
      else:
        for later in pending[i + 1 :]:
          for k in (0, 1):
            if later[k] == far:
              later[k] = (e1, j1)
      del self.edges[e2]

  def freeze(self) -> TensorDiagram:
    return TensorDiagram(
      signature=self.signature,
      colors=dict(self.colors),
      crossings=frozenset(self.crossings),
      edges={e: (a, b) for e, (a, b) in self.edges.items()},
      rotation={v: tuple(p) for v, p in self.rotation.items()},
      loops=self.loops,
    )


def _cyclically(rot: tuple[Port, ...], triple: tuple[Port, Port, Port]) -> bool:
  return any(rot[k:] + rot[:k] == triple for k in range(3))


# -- rules ------------------------------------------------------------------------------------------


@dataclass(frozen=True)
class _Match:
  rule: str
  data: tuple


def classify_crossing_ports(d: TensorDiagram, c: str) -> dict[Port, str]:
  """``tail`` for a port whose strand runs out to a white vertex, ``head`` toward a black one.

  Closed strands are given a consistent arbitrary direction.
  """
  rot = d.rotation[c]
  kinds: dict[Port, str] = {}
  for pair in ((rot[0], rot[2]), (rot[1], rot[3])):
    for q in pair:
      traced = trace_strand(d, q)
      if traced is not None:
        kinds[q] = "tail" if d.vertex_color(traced[0]) == WHITE else "head"
  for pair in ((rot[0], rot[2]), (rot[1], rot[3])):
    if pair[0] in kinds:
      continue
    x, opp_x = pair
    kinds[x] = "head"
    y = _first_return(d, c, x)
    kinds[y] = "tail"
    if y != opp_x:
      opp_y = rot[(rot.index(y) + 2) % 4]
      kinds[opp_y] = "head"
      kinds[opp_x] = "tail"
    else:
      kinds[opp_x] = "tail"
  return kinds


def _first_return(d: TensorDiagram, c: str, port: Port) -> Port:
  current = port
  while True:
    arrival = d.far_port(current)
    v = d.end_vertex(arrival)
    if v == c:
      return arrival
    rot = d.rotation[v]
    current = rot[(rot.index(arrival) + 2) % 4]


def _resolve_crossing(d: TensorDiagram, c: str) -> list[tuple[TensorDiagram, int]]:
  rot = d.rotation[c]
  kinds = classify_crossing_ports(d, c)
  tails = [i for i in range(4) if kinds[rot[i]] == "tail"]
  if len(tails) != 2:
    raise UnsupportedPattern(f"crossing {c} does not carry one tail per strand")
  i1 = tails[0] if (tails[0] + 1) % 4 == tails[1] else tails[1]
  t1, t2 = rot[i1], rot[(i1 + 1) % 4]
  h1, h2 = rot[(i1 + 2) % 4], rot[(i1 + 3) % 4]

  joined = _Draft.of(d)
  joined.remove_vertex(c)
  b = joined.fresh("v")
  joined.colors[b] = BLACK
  w = joined.fresh("v")
  joined.colors[w] = WHITE
  f = joined.fresh("e")
  joined.edges[f] = [b, w]
  joined.attach(b, [t1, t2, (f, 0)])
  joined.attach(w, [h1, h2, (f, 1)])

  parallel = _Draft.of(d)
  parallel.remove_vertex(c)
  parallel.splice([(t2, h1), (t1, h2)])
  return [(joined.freeze(), 1), (parallel.freeze(), 1)]


def _find_zero(d: TensorDiagram) -> bool:
  for v in d.colors:
    targets = [u for u in d.neighbors(v) if d.is_boundary(u)]
    if len(targets) != len(set(targets)):
      return True
  return False


def _bigons(d: TensorDiagram) -> Iterator[tuple[str, Port, Port]]:
  for v in sorted(d.colors):
    ports = d.ports(v)
    far = [d.end_vertex(d.far_port(p)) for p in ports]
    for i in range(3):
      for j in range(i + 1, 3):
        if far[i] == far[j] and d.is_internal(far[i]):
          yield v, ports[i], ports[j]


def _apply_bigon(d: TensorDiagram, v: str, p1: Port, p2: Port) -> list[tuple[TensorDiagram, int]]:
  u = d.end_vertex(d.far_port(p1))
  (leg,) = [p for p in d.ports(v) if p not in (p1, p2)]
  q1, q2 = d.far_port(p1), d.far_port(p2)
  (other,) = [q for q in d.ports(u) if q not in (q1, q2)]
  s_v = 1 if _cyclically(d.ports(v), (leg, p1, p2)) else -1
  s_u = 1 if _cyclically(d.ports(u), (other, q2, q1)) else -1
  draft = _Draft.of(d)
  draft.remove_vertex(v)
  draft.remove_vertex(u)
  del draft.edges[p1[0]]
  del draft.edges[p2[0]]
  draft.splice([(leg, other)])
  return [(draft.freeze(), -2 * s_u * s_v)]


def _square_faces(d: TensorDiagram) -> Iterator[tuple[list[str], list[Port]]]:
  """Squares as ``(vertices, outgoing ports)`` with each port leading to the next vertex."""
  for face in faces(d):
    if len(face) != 4 or any(e.startswith("~") for e, _ in face):
      continue
    verts = [d.end_vertex(p) for p in face]
    if len(set(verts)) == 4 and all(d.is_internal(v) for v in verts):
      yield verts, list(face)


def _abstract_squares(d: TensorDiagram) -> Iterator[tuple[list[str], list[Port]]]:
  for cycle in internal_four_cycles(d):
    verts = list(cycle)
    ports = []
    for i, v in enumerate(verts):
      nxt = verts[(i + 1) % 4]
      ports.append(next(p for p in d.ports(v) if d.end_vertex(d.far_port(p)) == nxt))
    yield verts, ports


def _apply_square(d: TensorDiagram, verts: list[str], out_ports: list[Port]) -> list[tuple[TensorDiagram, int]]:
  legs: list[Port] = []
  sign = 1
  for i, v in enumerate(verts):
    nxt = out_ports[i]
    prev = d.far_port(out_ports[i - 1])
    (leg,) = [p for p in d.ports(v) if p not in (nxt, prev)]
    legs.append(leg)
    sign *= 1 if _cyclically(d.ports(v), (leg, nxt, prev)) else -1
  out = []
  for pairing in ([(legs[0], legs[1]), (legs[2], legs[3])], [(legs[0], legs[3]), (legs[1], legs[2])]):
    draft = _Draft.of(d)
    for v in verts:
      draft.remove_vertex(v)
    for p in out_ports:
      draft.edges.pop(p[0], None)
    draft.splice(pairing)
    out.append((draft.freeze(), sign))
  return out


def _strip_loops(d: TensorDiagram) -> TensorDiagram:
  return TensorDiagram(d.signature, d.colors, d.crossings, d.edges, d.rotation, 0)


def rewrite_once(d: TensorDiagram, rng: random.Random | None = None) -> list[tuple[TensorDiagram, int]] | None:
  """Apply one rule to ``d``; ``None`` when ``d`` is already a non-elliptic web.

  Without ``rng`` the first match in the fixed order is used (crossings, loops, zeros, bigons,
  squares); with ``rng`` a random crossing, or a random non-crossing match, is chosen.
  Crossings go in sorted id order rather than innermost first: each resolution is an identity,
  so any order reaches the same expansion.
  """
  if d.crossings:
    names = sorted(d.crossings)
    c = rng.choice(names) if rng else names[0]
    return _resolve_crossing(d, c)
  if rng is None:
    if d.loops:
      return [(_strip_loops(d), 3**d.loops)]
    if _find_zero(d):
      return []
    for v, p1, p2 in _bigons(d):
      return _apply_bigon(d, v, p1, p2)
    for verts, ports in _square_faces(d):
      return _apply_square(d, verts, ports)
    for verts, ports in _abstract_squares(d):
      return _apply_square(d, verts, ports)
    return None

  if _find_zero(d):
    return []
  options: list[_Match] = []
  if d.loops:
    options.append(_Match("loop", ()))
  options.extend(_Match("bigon", b) for b in _bigons(d))
  squares = list(_square_faces(d)) or list(_abstract_squares(d))
  options.extend(_Match("square", (v, p)) for v, p in squares)
  if not options:
    return None
  pick = rng.choice(options)
  if pick.rule == "loop":
    return [(_strip_loops(d), 3**d.loops)]
  if pick.rule == "bigon":
    return _apply_bigon(d, *pick.data)
  return _apply_square(d, *pick.data)


# -- driver -----------------------------------------------------------------------------------------


def reduce(c: DiagramCombination, order: random.Random | None = None) -> WebExpansion:
  """Rewrite every term to non-elliptic webs and collect the result by canonical code."""
  settings = get_settings()
  stack: list[tuple[TensorDiagram, int]] = [(d, k) for d, k in c.terms if k]
  result: dict[bytes, tuple[TensorDiagram, int]] = {}
  steps = 0
  while stack:
    d, k = stack.pop()
    out = rewrite_once(d, order)
    if out is None:
      if closed_components(d):
        raise UnsupportedPattern("closed component without bigons or squares")
      code = canonical_code(d)
      prev = result.get(code)
      result[code] = (prev[0] if prev else d, (prev[1] if prev else 0) + k)
      continue
    steps += 1
    if steps > settings.max_reduction_steps:
      raise ResourceLimit(f"skein reduction exceeded {settings.max_reduction_steps} steps")
    stack.extend((d2, k * k2) for d2, k2 in out if k2)
    if len(stack) > settings.max_terms:
      raise ResourceLimit(f"skein reduction exceeded {settings.max_terms} live terms")
  log.debug("reduced %d terms in %d steps to %d webs", len(c.terms), steps, len(result))
  terms: dict[Web, int] = {}
  for code, (d, k) in result.items():
    if not k:
      continue
    # raises InvalidDiagram for a rotation system that is not a disk embedding
    w = as_web(normalize_ids(d))
    if w.code != code:
      raise Inconsistent(f"renumbering changed the canonical code of {d!r}")
    terms[w] = k
  return WebExpansion(c.signature, terms)


def planarize(d: TensorDiagram, order: random.Random | None = None) -> WebExpansion:
  return reduce(DiagramCombination.single(d), order)


def check_expansion(d: TensorDiagram, expansion: WebExpansion) -> bool:
  from sl3webs.evaluate import evaluate

  return evaluate(d) == expansion.evaluate()
