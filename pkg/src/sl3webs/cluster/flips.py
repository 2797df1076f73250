"""Flips of triangulations as short mutation sequences between special seeds."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import permutations

from sl3webs.cluster.quiver import equivalent_up_to_reversal
from sl3webs.cluster.seeds import Seed, mutate_sequence
from sl3webs.diagram import Signature
from sl3webs.errors import UnsupportedPattern
from sl3webs.seed import Triangulation, cached_seed, flip, quadrilateral


log = logging.getLogger(__name__)

MAX_FLIP_MUTATIONS = 4

# mutations per flip in a monochromatic seed, by the exposed sides of the flipped quadrilateral
MONOCHROMATIC_FLIP_MUTATIONS = {"none": 4, "one": 3, "adjacent": 2, "opposite": 2, "three": 1, "all": 0}


@dataclass(frozen=True)
class FlipCheck:
  before: Triangulation
  after: Triangulation
  removed: tuple[str, ...]
  added: tuple[str, ...]
  sequence: tuple[str, ...]
  ok: bool

  def __str__(self) -> str:
    seq = " ".join(f"mu[{v}]" for v in self.sequence) or "(no mutation)"
    status = "ok" if self.ok else "FAILED"
    return f"{self.before} -> {self.after}: {seq} {status}"


def _vertex_map(mutated: Seed, target: Seed) -> dict[str, str] | None:
  """Rename vertices of ``mutated`` to those of ``target`` carrying the same value."""
  by_value = {target.values[v]: v for v in target.quiver.vertices}
  out = {}
  for v in mutated.quiver.vertices:
    w = by_value.get(mutated.values[v])
    if w is None:
      return None
    out[v] = w
  if len(set(out.values())) != len(out):
    return None
  return out


def verify_flip_mutations(sigma: Signature, t: Triangulation, diagonal: tuple[int, int]) -> FlipCheck:
  """Mutate the seed of ``t`` at the cluster variables that the flip removes and compare with the
  seed of the flipped triangulation, up to renaming and global reversal of the quiver."""
  t2 = flip(t, diagonal)
  s1, s2 = cached_seed(sigma, t), cached_seed(sigma, t2)
  names1 = {str(n) for n in s1.z.cluster}
  names2 = {str(n) for n in s2.z.cluster}
  removed = tuple(sorted(names1 - names2))
  added = tuple(sorted(names2 - names1))
  if len(removed) != len(added) or len(removed) > MAX_FLIP_MUTATIONS:
    raise UnsupportedPattern(f"flip of {diagonal[0]}-{diagonal[1]} in {t} replaces {removed} by {added}")
  tried = 0
  for order in permutations(removed):
    tried += 1
    end = mutate_sequence(s1.seed, order)
    if end.cluster() != s2.seed.cluster():
      continue
    mapping = _vertex_map(end, s2.seed)
    if mapping is not None and equivalent_up_to_reversal(end.quiver, s2.quiver, mapping):
      log.info("flip %s -> %s realized by %s", t, t2, list(order))
      return FlipCheck(t, t2, removed, added, tuple(order), True)
  log.warning("flip %s -> %s: none of %d mutation orders matches", t, t2, tried)
  return FlipCheck(t, t2, removed, added, (), False)


def flip_graph_check(sigma: Signature, triangulations: list[Triangulation]) -> list[FlipCheck]:
  """Check every flip between the given triangulations."""
  out = []
  for t in triangulations:
    for d in sorted(t.diagonals):
      out.append(verify_flip_mutations(sigma, t, d))
  return out


def exposed_sides(t: Triangulation, diagonal: tuple[int, int]) -> tuple[bool, bool, bool, bool]:
  """Which sides ``pq, qr, rs, sp`` of the quadrilateral around ``diagonal`` are polygon sides."""
  quad = quadrilateral(t, diagonal)
  n = t.n
  return tuple(  # type: ignore[return-value]
    quad[(i + 1) % 4] == quad[i] % n + 1 or quad[i] == quad[(i + 1) % 4] % n + 1 for i in range(4)
  )


def flip_shape(t: Triangulation, diagonal: tuple[int, int]) -> str:
  """``none``, ``one``, ``adjacent``, ``opposite``, ``three`` or ``all``, after the exposed sides."""
  exposed = exposed_sides(t, diagonal)
  count = sum(exposed)
  if count == 2:
    return "opposite" if exposed[0] == exposed[2] else "adjacent"
  return {0: "none", 1: "one", 3: "three", 4: "all"}[count]
