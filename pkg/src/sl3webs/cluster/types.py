"""Cluster types: a breadth-first search of the mutation class for a recognizable representative.

Finite types are orientations of Dynkin forests. Every label of the non-alternating type table
for up to eight boundary vertices is an acyclic tree, except one hexagonal quiver that is stored
explicitly.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from typing import Iterator

import networkx as nx

from sl3webs.cluster.quiver import Quiver, is_isomorphic, mutate_quiver
from sl3webs.config import get_settings
from sl3webs.diagram import Signature


log = logging.getLogger(__name__)


@dataclass(frozen=True)
class ClusterTypeLabel:
  name: str
  finite: bool = False
  determined: bool = True

  @classmethod
  def undetermined(cls, cutoff: int) -> "ClusterTypeLabel":
    return cls(f"Undetermined({cutoff})", False, False)

  def __str__(self) -> str:
    return self.name


# -- catalog ----------------------------------------------------------------------------------------


def _path(n: int) -> nx.Graph:
  return nx.path_graph(n)


def _with_legs(g: nx.Graph, attach: list[tuple[int, int]]) -> nx.Graph:
  """Attach arms of the given lengths at the given nodes."""
  g = g.copy()
  nxt = max(g.nodes) + 1
  for at, length in attach:
    prev = at
    for _ in range(length):
      g.add_edge(prev, nxt)
      prev = nxt
      nxt += 1
  return g


NAMED_TREES: dict[str, nx.Graph] = {
  "tree:bbwbbwbw": _with_legs(_path(6), [(2, 1), (3, 1)]),
  "tree:bbwwbwbw": _with_legs(_path(6), [(3, 1), (4, 1)]),
  "tree:bbwbwwbw": _with_legs(_path(5), [(2, 2), (3, 1)]),
}


def _hexagon_quiver() -> Quiver:
  return Quiver.from_arrows(
    ["a", "b", "c", "d", "e", "f"],
    [("a", "b"), ("c", "d"), ("a", "c"), ("b", "e"), ("e", "d"), ("e", "f")],
  )


NAMED_QUIVERS: dict[str, Quiver] = {"quiver:bbwbwbw": _hexagon_quiver()}

# label expected for each non-alternating signature row with 5..8 boundary vertices
TYPE_TABLE: dict[str, str] = {
  "bbbbb": "A2",
  "bbbbw": "A1+A1",
  "bbbww": "A2",
  "bbwbw": "A1",
  "bbbbbb": "D4",
  "bbbbbw": "A4",
  "bbbbww": "A4",
  "bbbwbw": "A4",
  "bbwbbw": "A2+A2",
  "bbbwww": "D4",
  "bbwbww": "A3+A1",
  "bbbbbbb": "E6",
  "bbbbbbw": "E6",
  "bbbbbww": "D6",
  "bbbbwbw": "D5^(1)",
  "bbbwbbw": "D6",
  "bbbbwww": "E6",
  "bbbwwbw": "E6",
  "bbwbbww": "D6",
  "bbwbwbw": "quiver:bbwbwbw",
  "bbbbbbbb": "E8",
  "bbbbbbbw": "E7^(1)",
  "bbbbbbww": "E8",
  "bbbbbwbw": "T433",
  "bbbbwbbw": "T433",
  "bbbwbbbw": "E8",
  "bbbbbwww": "E8",
  "bbbbwwbw": "T433",
  "bbbwwbbw": "E8",
  "bbbwbwbw": "T433",
  "bbwbbwbw": "tree:bbwbbwbw",
  "bbbbwwww": "E7^(1)",
  "bbbwwwbw": "E7^(1)",
  "bbbwwbww": "E7^(1)",
  "bbwwbbww": "D8",
  "bbwwbwbw": "tree:bbwwbwbw",
  "bbwbwwbw": "tree:bbwbwwbw",
}


def _arms(g: nx.Graph, center) -> list[int]:
  out = []
  for nb in g.neighbors(center):
    length, prev, cur = 1, center, nb
    while g.degree(cur) == 2:
      prev, cur = cur, next(u for u in g.neighbors(cur) if u != prev)
      length += 1
    if g.degree(cur) != 1:
      return []
    out.append(length)
  return sorted(out, reverse=True)


def tree_label(g: nx.Graph) -> ClusterTypeLabel:
  """Name a tree: Dynkin, affine, ``T_pqr`` or one of the named trees."""
  n = g.number_of_nodes()
  if n == 1:
    return ClusterTypeLabel("A1", True)
  degrees = dict(g.degree())
  branch = [v for v, d in degrees.items() if d >= 3]
  if not branch:
    return ClusterTypeLabel(f"A{n}", True)
  if len(branch) == 1 and degrees[branch[0]] == 3:
    arms = _arms(g, branch[0])
    p, q, r = (a + 1 for a in arms)
    if (q, r) == (2, 2):
      return ClusterTypeLabel(f"D{n}", True)
    if (q, r) == (3, 2) and p in (3, 4, 5):
      return ClusterTypeLabel(f"E{n}", True)
    affine = {(3, 3, 3): "E6^(1)", (4, 4, 2): "E7^(1)", (6, 3, 2): "E8^(1)"}
    if (p, q, r) in affine:
      return ClusterTypeLabel(affine[(p, q, r)])
    return ClusterTypeLabel(f"T{p}{q}{r}")
  if len(branch) == 1 and degrees[branch[0]] == 4 and n == 5:
    return ClusterTypeLabel("D4^(1)")
  if len(branch) == 2 and all(degrees[b] == 3 for b in branch):
    leafy = all(sum(1 for u in g.neighbors(b) if degrees[u] == 1) >= 2 for b in branch)
    if leafy:
      return ClusterTypeLabel(f"D{n - 1}^(1)")
  for name, t in NAMED_TREES.items():
    if nx.is_isomorphic(g, t):
      return ClusterTypeLabel(name)
  return ClusterTypeLabel(f"tree:{nx.weisfeiler_lehman_graph_hash(g)[:8]}")


def _join(labels: list[ClusterTypeLabel]) -> ClusterTypeLabel:
  def key(lbl: ClusterTypeLabel) -> tuple[int, str]:
    digits = "".join(c for c in lbl.name.split("^")[0] if c.isdigit())
    return (-int(digits or 0), lbl.name)

  ordered = sorted(labels, key=key)
  return ClusterTypeLabel(
    "+".join(lbl.name for lbl in ordered),
    all(lbl.finite for lbl in ordered),
    all(lbl.determined for lbl in ordered),
  )


# -- canonical hashing of mutation classes ----------------------------------------------------------


def quiver_hash(q: Quiver) -> str:
  g = q.to_networkx()
  for _, _, data in g.edges(data=True):
    data["w"] = str(data["weight"])
  for _, data in g.nodes(data=True):
    data["f"] = "f" if data["frozen"] else "m"
  return nx.weisfeiler_lehman_graph_hash(g, edge_attr="w", node_attr="f")


class QuiverSet:
  """Quivers up to isomorphism: hash buckets plus an exact check inside a bucket."""

  def __init__(self) -> None:
    self._buckets: dict[str, list[Quiver]] = {}
    self._size = 0

  def __len__(self) -> int:
    return self._size

  def add(self, q: Quiver) -> bool:
    """Insert ``q``; ``False`` if an isomorphic quiver is already present."""
    bucket = self._buckets.setdefault(quiver_hash(q), [])
    if any(is_isomorphic(q, r) for r in bucket):
      return False
    bucket.append(q)
    self._size += 1
    return True

  def __contains__(self, q: object) -> bool:
    if not isinstance(q, Quiver):
      return False
    return any(is_isomorphic(q, r) for r in self._buckets.get(quiver_hash(q), []))


def mutation_class(q: Quiver, cutoff: int | None = None) -> Iterator[Quiver]:
  """Breadth-first walk over the mutation class of ``q``, one quiver per isomorphism class."""
  cutoff = cutoff or get_settings().type_cutoff
  seen = QuiverSet()
  seen.add(q)
  queue = deque([q])
  yield q
  while queue:
    cur = queue.popleft()
    for v in cur.mutable:
      nxt = mutate_quiver(cur, v)
      if len(seen) >= cutoff:
        return
      if seen.add(nxt):
        queue.append(nxt)
        yield nxt


def mutation_class_hash(q: Quiver, cutoff: int | None = None) -> str:
  """Smallest quiver hash over the mutation class (complete classes only)."""
  return min(quiver_hash(r) for r in mutation_class(q, cutoff))


def same_mutation_class(q1: Quiver, q2: Quiver, cutoff: int | None = None) -> bool:
  target = QuiverSet()
  target.add(q2.mutable_part())
  return any(r in target for r in mutation_class(q1.mutable_part(), cutoff))


def _recognize(q: Quiver) -> ClusterTypeLabel | None:
  if all(m == 1 for m in q.arrows.values()):
    g = q.underlying_graph()
    if nx.is_tree(g):
      return tree_label(g)
  for name, ref in NAMED_QUIVERS.items():
    if is_isomorphic(q, ref) or is_isomorphic(q.reversed(), ref):
      return ClusterTypeLabel(name)
  return None


def _detect_connected(q: Quiver, cutoff: int) -> ClusterTypeLabel:
  visited = 0
  for r in mutation_class(q, cutoff):
    visited += 1
    label = _recognize(r)
    if label is not None:
      log.debug("recognized %s after %d quivers", label, visited)
      return label
  if visited >= cutoff:
    log.warning("type search stopped after %d quivers", visited)
    return ClusterTypeLabel.undetermined(cutoff)
  log.warning("mutation class of %d quivers has no recognizable representative", visited)
  return ClusterTypeLabel("Undetermined", False, False)


def detect_type(q: Quiver, cutoff: int | None = None) -> ClusterTypeLabel:
  cutoff = cutoff or get_settings().type_cutoff
  m = q.mutable_part()
  if not m.vertices:
    return ClusterTypeLabel("empty", True)
  g = m.underlying_graph()
  parts = []
  for comp in nx.connected_components(g):
    keep = [v for v in m.vertices if v in comp]
    sub = Quiver(tuple(keep), frozenset(), {k: w for k, w in m.arrows.items() if k[0] in comp})
    parts.append(_detect_connected(sub, cutoff))
  label = _join(parts)
  log.info("cluster type %s", label)
  return label


def cluster_type(sigma: Signature, cutoff: int | None = None) -> ClusterTypeLabel:
  from sl3webs.seed import seed_for_type

  seed = seed_for_type(sigma)
  return detect_type(seed.quiver, cutoff)


def table_key(sigma: Signature) -> str | None:
  """The type-table row equivalent to ``sigma`` under rotation, reflection and color swap."""
  variants = []
  for s in (sigma, sigma.swapped()):
    for r in (s, s.reflected()):
      variants += [r.rotated(k) for k in range(r.n)]
  for v in variants:
    if str(v) in TYPE_TABLE:
      return str(v)
  return None


def expected_type(sigma: Signature) -> str | None:
  key = table_key(sigma)
  return TYPE_TABLE[key] if key is not None else None
