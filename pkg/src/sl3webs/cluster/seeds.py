from __future__ import annotations

import logging
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from sl3webs.algebra import IntPolynomial, RationalFunction, formal_ring
from sl3webs.cluster.quiver import Quiver, mutate_quiver
from sl3webs.config import get_settings
from sl3webs.errors import FrozenVertex, ZeroDivisor


log = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Seed:
  """A quiver with one rational function per vertex; ``labels`` are display names."""

  quiver: Quiver
  values: Mapping[str, RationalFunction]
  labels: Mapping[str, str] = field(default_factory=dict)

  def __post_init__(self) -> None:
    missing = set(self.quiver.vertices) - set(self.values)
    if missing:
      raise ValueError(f"seed has no values for {sorted(missing)}")
    for v in self.quiver.frozen:
      if not self.values[v].is_polynomial():
        raise ValueError(f"frozen value at {v} is not a polynomial")

  @classmethod
  def of_polynomials(
    cls, quiver: Quiver, values: Mapping[str, IntPolynomial], labels: Mapping[str, str] | None = None
  ) -> "Seed":
    return cls(quiver, {v: RationalFunction.of(p.element) for v, p in values.items()}, dict(labels or {}))

  def label(self, v: str) -> str:
    return self.labels.get(v, v)

  def cluster(self) -> frozenset[RationalFunction]:
    return frozenset(self.values[v] for v in self.quiver.mutable)

  def polynomial(self, v: str) -> IntPolynomial:
    val = self.values[v]
    if not val.is_polynomial():
      raise ValueError(f"value at {v} is not a polynomial")
    c = val.den.LC if val.den else 1
    return IntPolynomial(val.num.quo_ground(c) if c != 1 else val.num)

  def __repr__(self) -> str:
    return f"Seed({self.quiver!r})"


def exchange_binomial(seed: Seed, v: str) -> RationalFunction:
  """``prod(in) + prod(out)`` at ``v``."""
  ring = seed.values[v].ring
  ins = RationalFunction.of(ring.one)
  outs = RationalFunction.of(ring.one)
  for u, m in seed.quiver.in_arrows(v).items():
    ins = ins * seed.values[u] ** m
  for u, m in seed.quiver.out_arrows(v).items():
    outs = outs * seed.values[u] ** m
  return ins + outs


def mutate_seed(seed: Seed, v: str) -> Seed:
  if v in seed.quiver.frozen:
    raise FrozenVertex(f"cannot mutate frozen vertex {v}")
  old = seed.values[v]
  if not old.num:
    raise ZeroDivisor(f"cluster variable at {v} is zero")
  new = exchange_binomial(seed, v) / old
  values = dict(seed.values)
  values[v] = new
  labels = dict(seed.labels)
  labels[v] = seed.label(v) + "'"
  log.debug("mutated at %s: denominator has %d terms", v, len(new.den))
  return Seed(mutate_quiver(seed.quiver, v), values, labels)


def mutate_sequence(seed: Seed, sequence: Sequence[str]) -> Seed:
  for v in sequence:
    seed = mutate_seed(seed, v)
  return seed


def formal_names(quiver: Quiver) -> dict[str, str]:
  return {v: f"z{i}" for i, v in enumerate(quiver.vertices)}


def formal_seed(quiver: Quiver) -> Seed:
  """Seed whose values are independent formal variables ``z0, z1, ...``."""
  names = formal_names(quiver)
  ring = formal_ring(tuple(names[v] for v in quiver.vertices))
  values = {v: RationalFunction.of(ring.gens[i]) for i, v in enumerate(quiver.vertices)}
  return Seed(quiver, values, {v: v for v in quiver.vertices})


def laurent_check(seed: Seed, sequence: Sequence[str], target: str | None = None) -> bool:
  """After the mutations, every (or the ``target``) reduced denominator is a monomial in the
  initial cluster variables, with no coefficient variable present."""
  formal = formal_seed(seed.quiver)
  names = formal_names(seed.quiver)
  allowed = {names[v] for v in seed.quiver.mutable}
  end = mutate_sequence(formal, sequence)
  targets = [target] if target is not None else list(seed.quiver.mutable)
  for v in targets:
    val = end.values[v]
    if not val.denominator_is_monomial() or not val.denominator_support() <= allowed:
      log.warning("value at %s after %s is not Laurent in the initial cluster", v, list(sequence))
      return False
  return True


def random_sequence(quiver: Quiver, length: int, rng: random.Random) -> list[str]:
  """Mutation sequence without immediate repeats (which would undo a step)."""
  out: list[str] = []
  for _ in range(length):
    choices = [v for v in quiver.mutable if not out or v != out[-1]]
    if not choices:
      break
    out.append(rng.choice(choices))
  return out


@dataclass(frozen=True)
class MutationClosure:
  clusters: tuple[frozenset[RationalFunction], ...]
  seeds: tuple[Seed, ...]
  complete: bool


def mutation_closure(seed: Seed, limit: int | None = None) -> MutationClosure:
  """Breadth-first search over seeds, one seed per distinct cluster."""
  limit = limit or get_settings().type_cutoff
  seen = {seed.cluster(): seed}
  queue = deque([seed])
  complete = True
  while queue:
    s = queue.popleft()
    for v in s.quiver.mutable:
      nxt = mutate_seed(s, v)
      key = nxt.cluster()
      if key in seen:
        continue
      if len(seen) >= limit:
        complete = False
        queue.clear()
        break
      seen[key] = nxt
      queue.append(nxt)
  log.info("mutation closure: %d clusters (complete=%s)", len(seen), complete)
  return MutationClosure(tuple(seen), tuple(seen.values()), complete)
