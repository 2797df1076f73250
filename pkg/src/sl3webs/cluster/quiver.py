from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import networkx as nx

from sl3webs.contracts import ArrowDoc, QuiverDoc
from sl3webs.errors import FrozenVertex


log = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Quiver:
  """Vertices with a frozen flag and arrows ``(u, v) -> multiplicity``; no loops, no 2-cycles."""

  vertices: tuple[str, ...]
  frozen: frozenset[str] = frozenset()
  arrows: Mapping[tuple[str, str], int] = field(default_factory=dict)

  def __post_init__(self) -> None:
    if len(set(self.vertices)) != len(self.vertices):
      raise ValueError("quiver vertices must be distinct")
    known = set(self.vertices)
    if not self.frozen <= known:
      raise ValueError(f"unknown frozen vertices: {sorted(self.frozen - known)}")
    for (u, v), m in self.arrows.items():
      if u == v:
        raise ValueError(f"loop at {u}")
      if u not in known or v not in known:
        raise ValueError(f"arrow {u}->{v} has an unknown end")
      if m <= 0:
        raise ValueError("arrow multiplicities are positive")
      if (v, u) in self.arrows:
        raise ValueError(f"oriented 2-cycle between {u} and {v}")

  @classmethod
  def from_arrows(
    cls,
    vertices: Iterable[str],
    arrows: Iterable[tuple[str, str] | tuple[str, str, int]],
    frozen: Iterable[str] = (),
  ) -> "Quiver":
    """Build a quiver, cancelling oriented 2-cycles."""
    b: Counter[tuple[str, str]] = Counter()
    for a in arrows:
      u, v = a[0], a[1]
      m = a[2] if len(a) == 3 else 1  # type: ignore[misc]
      b[(u, v)] += m
      b[(v, u)] -= m
    return cls(tuple(vertices), frozenset(frozen), {k: m for k, m in b.items() if m > 0})

  @classmethod
  def from_b(cls, vertices: Sequence[str], b: Mapping[tuple[str, str], int], frozen: Iterable[str] = ()) -> "Quiver":
    return cls(tuple(vertices), frozenset(frozen), {k: m for k, m in b.items() if m > 0})

  def b(self, u: str, v: str) -> int:
    return self.arrows.get((u, v), 0) - self.arrows.get((v, u), 0)

  def is_frozen(self, v: str) -> bool:
    return v in self.frozen

  @property
  def mutable(self) -> list[str]:
    return [v for v in self.vertices if v not in self.frozen]

  def in_arrows(self, v: str) -> dict[str, int]:
    return {u: m for (u, w), m in self.arrows.items() if w == v}

  def out_arrows(self, v: str) -> dict[str, int]:
    return {w: m for (u, w), m in self.arrows.items() if u == v}

  def mutable_part(self) -> "Quiver":
    keep = self.mutable
    ks = set(keep)
    return Quiver(tuple(keep), frozenset(), {k: m for k, m in self.arrows.items() if k[0] in ks and k[1] in ks})

  def b_matrix(self, order: Sequence[str] | None = None) -> list[list[int]]:
    order = list(order or self.vertices)
    return [[self.b(u, v) for v in order] for u in order]

  def reversed(self) -> "Quiver":
    return Quiver(self.vertices, self.frozen, {(v, u): m for (u, v), m in self.arrows.items()})

  def relabeled(self, mapping: Mapping[str, str]) -> "Quiver":
    def m(v: str) -> str:
      return mapping.get(v, v)

    return Quiver(
      tuple(m(v) for v in self.vertices),
      frozenset(m(v) for v in self.frozen),
      {(m(u), m(v)): k for (u, v), k in self.arrows.items()},
    )

  def to_networkx(self) -> nx.DiGraph:
    g = nx.DiGraph()
    for v in self.vertices:
      g.add_node(v, frozen=v in self.frozen)
    for (u, v), m in self.arrows.items():
      g.add_edge(u, v, weight=m)
    return g

  def underlying_graph(self) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(self.vertices)
    for (u, v), m in self.arrows.items():
      g.add_edge(u, v, weight=m)
    return g

  def is_acyclic(self) -> bool:
    return nx.is_directed_acyclic_graph(self.to_networkx())

  def __eq__(self, other: object) -> bool:
    if not isinstance(other, Quiver):
      return NotImplemented
    return (
      set(self.vertices) == set(other.vertices)
      and self.frozen == other.frozen
      and dict(self.arrows) == dict(other.arrows)
    )

  def __hash__(self) -> int:
    return hash((frozenset(self.vertices), self.frozen, frozenset(self.arrows.items())))

  def __repr__(self) -> str:
    return f"Quiver({len(self.vertices)} vertices, {len(self.frozen)} frozen, {sum(self.arrows.values())} arrows)"

  def to_doc(self) -> QuiverDoc:
    return QuiverDoc(
      vertices=list(self.vertices),
      frozen=sorted(self.frozen),
      arrows=[ArrowDoc(source=u, target=v, multiplicity=m) for (u, v), m in sorted(self.arrows.items())],
    )

  @classmethod
  def from_doc(cls, doc: QuiverDoc) -> "Quiver":
    return cls.from_arrows(doc.vertices, [(a.source, a.target, a.multiplicity) for a in doc.arrows], doc.frozen)

  def to_dot(self, labels: Mapping[str, str] | None = None, name: str = "Q") -> str:
    labels = labels or {}
    lines = [f"digraph {name} {{"]
    for v in self.vertices:
      shape = "box" if v in self.frozen else "ellipse"
      text = labels.get(v, v).replace('"', '\\"')
      lines.append(f'  "{v}" [label="{text}", shape={shape}];')
    for (u, v), m in sorted(self.arrows.items()):
      attr = f' [label="{m}"]' if m > 1 else ""
      lines.append(f'  "{u}" -> "{v}"{attr};')
    lines.append("}")
    return "\n".join(lines)


def mutate_quiver(q: Quiver, k: str) -> Quiver:
  """Mutation at ``k``: compose paths through ``k`` (not between two frozen vertices), reverse, cancel."""
  if k not in q.vertices:
    raise KeyError(k)
  if k in q.frozen:
    raise FrozenVertex(f"cannot mutate frozen vertex {k}")
  b: Counter[tuple[str, str]] = Counter()
  for (u, v), m in q.arrows.items():
    b[(u, v)] += m
    b[(v, u)] -= m
  ins, outs = q.in_arrows(k), q.out_arrows(k)
  for i, a in ins.items():
    for j, c in outs.items():
      if i in q.frozen and j in q.frozen:
        continue
      b[(i, j)] += a * c
      b[(j, i)] -= a * c
  for v in list(ins) + list(outs):
    b[(k, v)], b[(v, k)] = b[(v, k)], b[(k, v)]
  return Quiver.from_b(q.vertices, b, q.frozen)


def exchange_relation_at(q: Quiver, v: str) -> tuple[dict[str, int], dict[str, int]]:
  """``(in, out)`` exponents: ``v v' = prod(in) + prod(out)``."""
  if v in q.frozen:
    raise FrozenVertex(f"frozen vertex {v} has no exchange relation")
  return q.in_arrows(v), q.out_arrows(v)


def equivalent_up_to_reversal(q1: Quiver, q2: Quiver, mapping: Mapping[str, str] | None = None) -> bool:
  """``q2`` equals ``q1`` or its reversal, after renaming ``q1`` by ``mapping`` (or up to isomorphism)."""
  if mapping is not None:
    r = q1.relabeled(mapping)
    return r == q2 or r.reversed() == q2
  return is_isomorphic(q1, q2) or is_isomorphic(q1.reversed(), q2)


def _node_match(a: Mapping, b: Mapping) -> bool:
  return a.get("frozen", False) == b.get("frozen", False)


def _edge_match(a: Mapping, b: Mapping) -> bool:
  return a.get("weight", 1) == b.get("weight", 1)


def is_isomorphic(q1: Quiver, q2: Quiver) -> bool:
  if len(q1.vertices) != len(q2.vertices) or len(q1.frozen) != len(q2.frozen):
    return False
  return nx.is_isomorphic(q1.to_networkx(), q2.to_networkx(), node_match=_node_match, edge_match=_edge_match)


def isomorphism(q1: Quiver, q2: Quiver) -> dict[str, str] | None:
  """A vertex map sending ``q1`` onto ``q2``, or ``None``."""
  matcher = nx.algorithms.isomorphism.DiGraphMatcher(
    q1.to_networkx(), q2.to_networkx(), node_match=_node_match, edge_match=_edge_match
  )
  for m in matcher.isomorphisms_iter():
    return dict(m)
  return None
