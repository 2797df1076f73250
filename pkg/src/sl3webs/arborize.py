"""Arborization: rewriting a web into a forest diagram with the same invariant.

A step applies to a four-edge path ``p0 - p1 - p2 - p3 - p4`` of which ``p1, p2, p3`` are internal
and ``p0, p4`` carry the same vector: either ``p0 = p4`` is a boundary vertex (a quadrilateral
through the boundary), or ``p0`` and ``p4`` are siblings. The pair of vertices ``p1, p2`` is
resolved into its two pairings; the one joining ``p3`` to ``p0`` vanishes, so ``p1, p2`` are
removed, ``p0`` is joined to the third neighbor of ``p2`` and the third neighbor of ``p1`` is
joined to ``p3``. Outputs need not be planar.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from enum import Enum

import networkx as nx

from sl3webs.algebra import IntPolynomial
from sl3webs.config import get_settings
from sl3webs.diagram import Port, TensorDiagram, Web, is_forest_diagram, is_tree_diagram, unclasp
from sl3webs.errors import Inconsistent, ResourceLimit, StaleStep
from sl3webs.evaluate import evaluate


log = logging.getLogger(__name__)


class StepKind(str, Enum):
  BOUNDARY_SQUARE = "boundary-square"
  SIBLING_PATH = "sibling-path"


@dataclass(frozen=True)
class SiblingWitness:
  """``s1`` and ``s2`` are siblings away from edges ``e1`` and ``e2``; ``mapping`` pairs the
  internal vertices of the two hanging trees."""

  s1: str
  s2: str
  e1: str
  e2: str
  mapping: tuple[tuple[str, str], ...]


@dataclass(frozen=True)
class ArborizingStep:
  kind: StepKind
  path: tuple[str, str, str, str, str]
  edges: tuple[str, str, str, str]
  witness: SiblingWitness | None = None

  @property
  def sort_key(self) -> tuple[str, ...]:
    return (self.kind.value, *self.edges)

  def __str__(self) -> str:
    return f"{self.kind.value} {'-'.join(self.path)}"


# -- sibling detection ------------------------------------------------------------------------------


class _TreeCodes:
  """Rooted codes of the subtrees hanging off a port, memoized per diagram."""

  def __init__(self, d: TensorDiagram) -> None:
    self.d = d
    self._memo: dict[Port, str | None] = {}

  def hanging(self, v: str, away: Port) -> str | None:
    """Code of the tree reached from internal ``v`` without using port ``away`` (``None`` if not a tree)."""
    d = self.d
    parts = []
    for port in d.ports(v):
      if port == away:
        continue
      code = self.through(port, {v})
      if code is None:
        return None
      parts.append(code)
    return f"{d.colors[v]}({','.join(sorted(parts))})"

  def through(self, port: Port, seen: set[str]) -> str | None:
    if port in self._memo:
      return self._memo[port]
    d = self.d
    far = d.far_port(port)
    u = d.end_vertex(far)
    if d.is_boundary(u):
      code: str | None = f"b{u}"
    elif u in seen:
      code = None
    else:
      parts = []
      for q in d.ports(u):
        if q == far:
          continue
        sub = self.through(q, seen | {u})
        if sub is None:
          parts = None
          break
        parts.append(sub)
      code = None if parts is None else f"{d.colors[u]}({','.join(sorted(parts))})"
    self._memo[port] = code
    return code

  def members(self, v: str, away: Port) -> list[str]:
    out, stack = [v], [(v, away)]
    seen = {v}
    while stack:
      x, skip = stack.pop()
      for port in self.d.ports(x):
        if port == skip:
          continue
        far = self.d.far_port(port)
        u = self.d.end_vertex(far)
        if self.d.is_internal(u) and u not in seen:
          seen.add(u)
          out.append(u)
          stack.append((u, far))
    return out

  def match(self, v1: str, away1: Port, v2: str, away2: Port) -> list[tuple[str, str]]:
    """Pair internal vertices of two trees with equal codes."""
    out = [(v1, v2)]

    def children(v: str, away: Port) -> list[tuple[str, Port]]:
      kids = []
      for port in self.d.ports(v):
        if port != away:
          kids.append((self.through(port, {v}) or "", port))
      return sorted(kids)

    for (c1, p1), (c2, p2) in zip(children(v1, away1), children(v2, away2)):
      f1, f2 = self.d.far_port(p1), self.d.far_port(p2)
      u1, u2 = self.d.end_vertex(f1), self.d.end_vertex(f2)
      if self.d.is_internal(u1):
        out += self.match(u1, f1, u2, f2)
    return out


def _port_at(d: TensorDiagram, e: str, v: str) -> Port:
  return (e, 0) if d.edges[e][0] == v else (e, 1)


def sibling_witness(
  d: TensorDiagram,
  s1: str,
  e1: str,
  s2: str,
  e2: str,
  codes: _TreeCodes | None = None,
  forbid: frozenset[str] = frozenset(),
) -> SiblingWitness | None:
  if s1 == s2 or not (d.is_internal(s1) and d.is_internal(s2)):
    return None
  codes = codes or _TreeCodes(d)
  a1, a2 = _port_at(d, e1, s1), _port_at(d, e2, s2)
  c1, c2 = codes.hanging(s1, a1), codes.hanging(s2, a2)
  if c1 is None or c1 != c2:
    return None
  m1, m2 = set(codes.members(s1, a1)), set(codes.members(s2, a2))
  if m1 & m2 or (m1 | m2) & forbid:
    return None
  return SiblingWitness(s1, s2, e1, e2, tuple(codes.match(s1, a1, s2, a2)))


# -- steps ------------------------------------------------------------------------------------------


def _other_ports(d: TensorDiagram, v: str, *skip: Port) -> list[Port]:
  return [p for p in d.ports(v) if p not in skip]


def find_steps(d: TensorDiagram) -> list[ArborizingStep]:
  """Every applicable arborizing step, in canonical order."""
  if d.crossings:
    raise ValueError("arborizing steps apply to crossing-free diagrams")
  codes = _TreeCodes(d)
  found: dict[tuple[str, ...], ArborizingStep] = {}
  for p2 in d.internal_ids():
    for q21 in d.ports(p2):
      for q23 in d.ports(p2):
        if q21 == q23:
          continue
        f1, f3 = d.far_port(q21), d.far_port(q23)
        p1, p3 = d.end_vertex(f1), d.end_vertex(f3)
        if not (d.is_internal(p1) and d.is_internal(p3)) or len({p1, p2, p3}) < 3:
          continue
        (qd,) = _other_ports(d, p2, q21, q23)
        for q10 in _other_ports(d, p1, f1):
          for q34 in _other_ports(d, p3, f3):
            p0 = d.end_vertex(d.far_port(q10))
            p4 = d.end_vertex(d.far_port(q34))
            (qa,) = _other_ports(d, p1, f1, q10)
            (qc,) = _other_ports(d, p3, f3, q34)
            path = (p0, p1, p2, p3, p4)
            thirds = {d.end_vertex(d.far_port(q)) for q in (qa, qc, qd)}
            if thirds & set(path) or p0 in path[1:4] or p4 in path[1:4]:
              continue
            edges = (q10[0], q21[0], q23[0], q34[0])
            if edges[::-1] < edges:
              continue
            if p0 == p4 and d.is_boundary(p0):
              step = ArborizingStep(StepKind.BOUNDARY_SQUARE, path, edges)
            elif d.is_internal(p0) and d.is_internal(p4) and p0 != p4:
              w = sibling_witness(d, p0, q10[0], p4, q34[0], codes, frozenset(path[1:4]))
              if w is None:
                continue
              step = ArborizingStep(StepKind.SIBLING_PATH, path, edges, w)
            else:
              continue
            found[edges] = step
  return sorted(found.values(), key=lambda s: s.sort_key)


def apply_step(d: TensorDiagram, step: ArborizingStep, before: IntPolynomial | None = None) -> TensorDiagram:
  """Rewrite ``d`` by ``step``; the invariant is unchanged (checked exactly)."""
  if step not in find_steps(d):
    raise StaleStep(f"step {step} does not apply to {d!r}")
  p0, p1, p2, p3, p4 = step.path
  e01, e12, e23, _ = step.edges
  q10, q21, q32 = _port_at(d, e01, p1), _port_at(d, e12, p2), _port_at(d, e23, p3)
  (qa,) = _other_ports(d, p1, q10, _port_at(d, e12, p1))
  (qd,) = _other_ports(d, p2, q21, _port_at(d, e23, p2))
  ea, ed = qa[0], qd[0]
  far_d = d.far_port(qd)
  vd = d.end_vertex(far_d)

  edges = {e: list(ends) for e, ends in d.edges.items()}
  rotation = {v: list(ports) for v, ports in d.rotation.items()}
  colors = dict(d.colors)
  # p0 now meets d along e01
  edges[e01][q10[1]] = vd
  rotation[vd][rotation[vd].index(far_d)] = q10
  # the third neighbor of p1 now meets p3 along ea
  edges[ea][qa[1]] = p3
  rotation[p3][rotation[p3].index(q32)] = qa
  for v in (p1, p2):
    colors.pop(v)
    rotation.pop(v)
  for e in (e12, e23, ed):
    del edges[e]

  def freeze(rot: dict[str, list[Port]]) -> TensorDiagram:
    return TensorDiagram(
      signature=d.signature,
      colors=colors,
      crossings=d.crossings,
      edges={e: (a, b) for e, (a, b) in edges.items()},
      rotation={v: tuple(p) for v, p in rot.items()},
      loops=d.loops,
    )

  out = freeze(rotation)
  value = before if before is not None else evaluate(d)
  after = evaluate(out)
  if after != value:
    rotation[p3] = rotation[p3][::-1]
    out = freeze(rotation)
    if -after != value:
      raise Inconsistent(f"arborizing step {step} changed the invariant")
  log.debug("applied %s: %d -> %d edges", step, len(d.edges), len(out.edges))
  return out


def arborize(d: TensorDiagram, rng: random.Random | None = None) -> TensorDiagram:
  """Apply arborizing steps until none applies (the canonical first step, or a random one)."""
  limit = get_settings().max_reduction_steps
  value = evaluate(d)
  count = 0
  while True:
    steps = find_steps(d)
    if not steps:
      break
    step = rng.choice(steps) if rng is not None else steps[0]
    nxt = apply_step(d, step, value)
    if len(nxt.edges) >= len(d.edges):
      raise Inconsistent(f"arborizing step {step} did not shrink the diagram")
    d = nxt
    count += 1
    if count > limit:
      raise ResourceLimit(f"arborization exceeded {limit} steps")
  log.info("arborized in %d steps: %r", count, d)
  return d


# -- normal forms and classification ----------------------------------------------------------------


def _labeled_unclasp(d: TensorDiagram) -> nx.MultiGraph:
  g = unclasp(d)
  for _, data in g.nodes(data=True):
    data["label"] = f"{data['color']}{data['boundary'] or ''}"
  return g


def normal_form_key(d: TensorDiagram) -> str:
  """Isomorphism-invariant hash of the unclasped graph, boundary leaves labeled by vertex."""
  return f"L{d.loops}:" + nx.weisfeiler_lehman_graph_hash(_labeled_unclasp(d), node_attr="label")


def same_normal_form(d1: TensorDiagram, d2: TensorDiagram) -> bool:
  if d1.loops != d2.loops or normal_form_key(d1) != normal_form_key(d2):
    return False
  return nx.is_isomorphic(
    _labeled_unclasp(d1), _labeled_unclasp(d2), node_match=lambda a, b: a["label"] == b["label"]
  )


def forest_components(d: TensorDiagram) -> list[tuple[int, ...]]:
  """Boundary degrees contributed by each component of the unclasped graph."""
  g = unclasp(d)
  out = []
  for comp in nx.connected_components(g):
    degrees = [0] * d.signature.n
    for v in comp:
      b = g.nodes[v]["boundary"]
      if b is not None:
        degrees[b - 1] += 1
    out.append(tuple(degrees))
  return sorted(out)


class Classification(str, Enum):
  CLUSTER_VARIABLE = "conjectured-cluster-variable"
  CLUSTER_MONOMIAL = "conjectured-cluster-monomial"
  NOT_ARBORIZABLE = "not-arborizable"


@dataclass(frozen=True)
class ClassifiedWeb:
  label: Classification
  normal_form: TensorDiagram
  components: int


def classify(w: Web) -> ClassifiedWeb:
  """Conjectural label from the shape of the arborized diagram."""
  d = arborize(w.diagram)
  if is_tree_diagram(d):
    label = Classification.CLUSTER_VARIABLE
  elif is_forest_diagram(d):
    label = Classification.CLUSTER_MONOMIAL
  else:
    label = Classification.NOT_ARBORIZABLE
  parts = nx.number_connected_components(unclasp(d)) if d.edges else 0
  return ClassifiedWeb(label, d, parts)


@dataclass(frozen=True)
class ConfluenceReport:
  trials: int
  agree: bool
  distinct: int


def confluence_trial(d: TensorDiagram, trials: int = 20, rng: random.Random | None = None) -> ConfluenceReport:
  """Arborize under ``trials`` random step orders and compare with the canonical order."""
  rng = rng or random.Random(get_settings().rng_seed)
  reference = arborize(d)
  forms = [reference]
  for _ in range(trials):
    out = arborize(d, rng)
    if not any(same_normal_form(out, f) for f in forms):
      forms.append(out)
  if len(forms) > 1:
    log.warning("arborization gave %d distinct normal forms over %d orders", len(forms), trials)
  return ConfluenceReport(trials, len(forms) == 1, len(forms))
