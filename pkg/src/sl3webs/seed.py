"""Seeds attached to triangulations of the signature polygon.

``K(T)`` collects ``J_p^q, J_q^p`` for every side or diagonal ``pq`` and ``J_pqr`` for every
triangle. The extended cluster ``z(T)`` is the set of indecomposable factors of its nonzero members.
Exchange relations are distilled 3-term relations; the quiver is read off from them.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product
from typing import Iterable, Iterator, Mapping, Sequence

from sl3webs.cluster.quiver import Quiver, is_isomorphic
from sl3webs.cluster.seeds import Seed
from sl3webs.contracts import SeedDoc, SeedVariableDoc
from sl3webs.diagram import Signature, diagram_to_doc
from sl3webs.errors import IncompleteRelations, Inconsistent, NotADiagonal, PreconditionViolated
from sl3webs.algebra import IntPolynomial, NotDivisible, RationalFunction, from_text, poly_divide_exact, to_text
from sl3webs.special import (
  THREE_TERM_IDS,
  DistilledRelation,
  SpecialCatalog,
  SpecialMonomial,
  SpecialName,
  ThreeTermRelation,
  catalog_for,
  distill,
  require_special_signature,
  three_term,
)


log = logging.getLogger(__name__)


# -- triangulations ---------------------------------------------------------------------------------


def _chord(a: int, b: int) -> tuple[int, int]:
  return (a, b) if a < b else (b, a)


def chords_cross(c1: tuple[int, int], c2: tuple[int, int]) -> bool:
  (a, b), (c, d) = _chord(*c1), _chord(*c2)
  if len({a, b, c, d}) < 4:
    return False
  return (a < c < b < d) or (c < a < d < b)


@dataclass(frozen=True)
class Triangulation:
  n: int
  diagonals: frozenset[tuple[int, int]]

  def __post_init__(self) -> None:
    if self.n < 3:
      raise ValueError("a polygon has at least 3 vertices")
    for a, b in self.diagonals:
      if not (1 <= a < b <= self.n) or b - a == 1 or (a, b) == (1, self.n):
        raise ValueError(f"{a}-{b} is not a diagonal of an {self.n}-gon")
    if len(self.diagonals) != self.n - 3:
      raise ValueError(f"a triangulation of an {self.n}-gon has {self.n - 3} diagonals, got {len(self.diagonals)}")
    for c1, c2 in combinations(sorted(self.diagonals), 2):
      if chords_cross(c1, c2):
        raise ValueError(f"diagonals {c1[0]}-{c1[1]} and {c2[0]}-{c2[1]} cross")

  @classmethod
  def of(cls, n: int, chords: Iterable[tuple[int, int]]) -> "Triangulation":
    return cls(n, frozenset(_chord(a, b) for a, b in chords))

  def __str__(self) -> str:
    return ",".join(f"{a}-{b}" for a, b in sorted(self.diagonals))

  def sides(self) -> list[tuple[int, int]]:
    return [_chord(p, p % self.n + 1) for p in range(1, self.n + 1)]

  def chords(self) -> list[tuple[int, int]]:
    return sorted(set(self.sides()) | self.diagonals)

  def has_chord(self, a: int, b: int) -> bool:
    c = _chord(a, b)
    return c in self.diagonals or c in set(self.sides())


def parse_triangulation(text: str, n: int) -> Triangulation:
  chords = []
  for part in text.split(","):
    part = part.strip()
    if not part:
      continue
    a, _, b = part.partition("-")
    chords.append((int(a), int(b)))
  return Triangulation.of(n, chords)


def fan_triangulation(n: int, apex: int = 1) -> Triangulation:
  w = lambda p: (p - 1) % n + 1  # noqa: E731
  return Triangulation.of(n, [(apex, w(apex + j)) for j in range(2, n - 1)])


def zigzag_triangulation(n: int) -> Triangulation:
  order, lo, hi = [], 1, n
  while lo <= hi:
    order.append(lo)
    if lo != hi:
      order.append(hi)
    lo, hi = lo + 1, hi - 1
  chords = {_chord(order[i], order[i + 1]) for i in range(len(order) - 1)}
  sides = {_chord(p, p % n + 1) for p in range(1, n + 1)}
  return Triangulation.of(n, chords - sides)


def _triangulate(vs: tuple[int, ...]) -> Iterator[frozenset[tuple[int, int]]]:
  if len(vs) < 3:
    yield frozenset()
    return
  a, b = vs[0], vs[-1]
  for k in range(1, len(vs) - 1):
    c = vs[k]
    own = {_chord(a, c), _chord(c, b)}
    for left in _triangulate(vs[: k + 1]):
      for right in _triangulate(vs[k:]):
        yield frozenset(own | left | right)


def all_triangulations(n: int) -> list[Triangulation]:
  sides = {_chord(p, p % n + 1) for p in range(1, n + 1)}
  found = {t - sides for t in _triangulate(tuple(range(1, n + 1)))}
  return sorted((Triangulation(n, d) for d in found), key=lambda t: sorted(t.diagonals))


def triangles(t: Triangulation) -> list[tuple[int, int, int]]:
  """Triangles of ``t`` with vertices in clockwise (increasing) order."""
  chords = set(t.chords())
  return [
    (a, b, c)
    for a, b, c in combinations(range(1, t.n + 1), 3)
    if (a, b) in chords and (b, c) in chords and (a, c) in chords
  ]


def quadrilateral(t: Triangulation, diagonal: tuple[int, int]) -> tuple[int, int, int, int]:
  """``(p, q, r, s)`` clockwise around the two triangles sharing ``diagonal = pr``."""
  p, r = _chord(*diagonal)
  if (p, r) not in t.diagonals:
    raise NotADiagonal(f"{p}-{r} is not a diagonal of the triangulation {t}")
  thirds = [x for tri in triangles(t) if p in tri and r in tri for x in tri if x not in (p, r)]
  q = next(x for x in thirds if p < x < r)
  s = next(x for x in thirds if not p < x < r)
  return p, q, r, s


def flip(t: Triangulation, diagonal: tuple[int, int]) -> Triangulation:
  p, q, r, s = quadrilateral(t, diagonal)
  return Triangulation(t.n, (t.diagonals - {_chord(p, r)}) | {_chord(q, s)})


def alternate_triangulations(sigma: Signature, t: Triangulation) -> list[Triangulation]:
  """Triangulations with the same cluster: flips inside a quadrilateral ``q..q+3`` cut off by a
  diagonal, when the colors of ``q, q+1, q+2`` alternate."""
  n = sigma.n
  out = []
  for q in range(1, n + 1):
    a, b, c, d = (sigma.wrap(q + j) for j in range(4))
    if _chord(a, d) not in t.diagonals:
      continue
    if sigma.color(a) == sigma.color(b) or sigma.color(b) == sigma.color(c):
      continue
    inner = _chord(a, c) if _chord(a, c) in t.diagonals else _chord(b, d)
    if inner in t.diagonals:
      out.append(flip(t, inner))
  return out


# -- extended clusters ------------------------------------------------------------------------------


def k_set(t: Triangulation) -> list[SpecialName]:
  names = []
  for a, b in t.chords():
    names += [SpecialName.pair(a, b), SpecialName.pair(b, a)]
  names += [SpecialName.lower(*tri) for tri in triangles(t)]
  return names


@dataclass(frozen=True)
class ExtendedCluster:
  signature: Signature
  triangulation: Triangulation
  coefficients: tuple[SpecialName, ...]
  cluster: tuple[SpecialName, ...]
  provenance: dict[SpecialName, tuple[SpecialName, ...]] = field(default_factory=dict, compare=False)

  @property
  def members(self) -> tuple[SpecialName, ...]:
    return self.coefficients + self.cluster

  def __contains__(self, name: object) -> bool:
    return name in self.coefficients or name in self.cluster

  def __len__(self) -> int:
    return len(self.coefficients) + len(self.cluster)


def extended_cluster(sigma: Signature, t: Triangulation, catalog: SpecialCatalog | None = None) -> ExtendedCluster:
  require_special_signature(sigma)
  if t.n != sigma.n:
    raise ValueError(f"triangulation of a {t.n}-gon does not fit signature {sigma}")
  cat = catalog or catalog_for(sigma)
  origin: dict[SpecialName, list[SpecialName]] = {}
  for name in k_set(t):
    if cat.is_zero(name):
      continue
    for factor in cat.factorization(name).names():
      origin.setdefault(factor, [])
      if name not in origin[factor]:
        origin[factor].append(name)
  coefficients = tuple(sorted(cat.representative(c) for c in cat.coefficients))
  missing = [c for c in coefficients if c not in origin]
  if missing:
    raise Inconsistent(f"coefficient invariants {[str(m) for m in missing]} are not in z(T) for T={t}")
  cluster = tuple(sorted(n for n in origin if n not in coefficients))
  size = len(coefficients) + len(cluster)
  if size != 3 * sigma.n - 8:
    raise Inconsistent(f"z(T) has {size} elements, expected {3 * sigma.n - 8}")
  log.info("z(T) for %s, T=%s: %d coefficients, %d cluster variables", sigma, t, len(coefficients), len(cluster))
  return ExtendedCluster(sigma, t, coefficients, cluster, {k: tuple(v) for k, v in origin.items()})


# -- exchange relations -----------------------------------------------------------------------------


@dataclass(frozen=True)
class ExchangeRelation:
  """``variable * partner = m1 + m2`` with ``m1, m2`` monomials in the extended cluster.

  ``partner`` is ``None`` when the exchanged variable is not a special invariant; ``quotient`` then
  holds its polynomial ``(m1 + m2) / variable``.
  """

  variable: SpecialName
  partner: SpecialName | None
  m1: SpecialMonomial
  m2: SpecialMonomial
  source: str = ""
  quotient: IntPolynomial | None = field(default=None, compare=False)

  def __str__(self) -> str:
    partner = str(self.partner) if self.partner is not None else f"({self.variable})'"
    return f"{self.variable} {partner} = {self.m1} + {self.m2}"

  def partner_value(self, catalog: SpecialCatalog) -> IntPolynomial:
    if self.partner is not None:
      return catalog.polynomial(self.partner)
    assert self.quotient is not None
    return self.quotient

  def holds(self, catalog: SpecialCatalog) -> bool:
    lhs = catalog.polynomial(self.variable) * self.partner_value(catalog)
    return lhs == catalog.polynomial_of(self.m1) + catalog.polynomial_of(self.m2)


def candidate_relations(sigma: Signature, t: Triangulation) -> list[ThreeTermRelation]:
  """3-term relations whose first left-hand factor is a member of ``K(T)``."""
  out: list[ThreeTermRelation] = []

  def add(rel_id: str, vs: Sequence[int]) -> None:
    try:
      out.append(three_term(rel_id, vs, sigma))
    except PreconditionViolated:
      pass

  for tri in triangles(t):
    add("6.1", tri)
  for d in sorted(t.diagonals):
    p, q, r, s = quadrilateral(t, d)
    for a, b, c, e in ((p, q, r, s), (r, s, p, q)):
      add("6.2", (a, b, c, e))
      exposed = [x for x, y in ((a, b), (b, c), (c, a)) if y == sigma.wrap(x + 1)]
      if exposed:
        add("6.4", (a, b, c, e))
        add("6.5", (a, b, c, e))
      if len(exposed) == 2:
        # the ear (x, x+1, x+2) of the triangle abc
        x = next(v for v in (a, b, c) if sigma.wrap(v + 1) in (a, b, c) and sigma.wrap(v + 2) in (a, b, c))
        if sigma.is_white(x) and sigma.is_black(x + 1):
          add("7.1", (x, e))
        elif sigma.is_black(x) and sigma.is_white(x + 1):
          add("7.2", (x, e))
  return out


def all_three_term_relations(sigma: Signature) -> Iterator[ThreeTermRelation]:
  """Every instance of every 3-term relation whose preconditions hold for ``sigma``."""
  n = sigma.n
  for rel_id in THREE_TERM_IDS:
    if rel_id in ("7.1", "7.2"):
      tuples: Iterable[tuple[int, ...]] = ((p, s) for p in range(1, n + 1) for s in range(1, n + 1))
    elif rel_id == "6.1":
      tuples = combinations(range(1, n + 1), 3)
    else:
      tuples = (vs[k:] + vs[:k] for vs in combinations(range(1, n + 1), 4) for k in range(4))
    for vs in tuples:
      try:
        yield three_term(rel_id, vs, sigma)
      except PreconditionViolated:
        continue


def _as_exchange(d: DistilledRelation, z: ExtendedCluster) -> ExchangeRelation | None:
  lhs = d.lhs.names()
  inside = [x for x in lhs if x in z]
  outside = [x for x in lhs if x not in z]
  if len(inside) != 1 or len(outside) != 1 or inside[0] not in z.cluster:
    return None
  if any(x not in z for x in d.m1.names() + d.m2.names()):
    return None
  if inside[0] in d.m1 or inside[0] in d.m2:
    return None
  return ExchangeRelation(inside[0], outside[0], d.m1, d.m2, d.source)


def _agrees(rel: ExchangeRelation, found: Mapping[SpecialName, ExchangeRelation]) -> bool:
  """Arrow multiplicities of ``rel`` match those of the relations already found."""
  mine = _excess(rel)
  return all(abs(_excess(other).get(rel.variable, 0)) == abs(mine.get(y, 0)) for y, other in found.items())


def _relations_from(
  sigma: Signature,
  t: Triangulation,
  z: ExtendedCluster,
  cat: SpecialCatalog,
  found: dict[SpecialName, ExchangeRelation],
) -> None:
  for rel in candidate_relations(sigma, t):
    distilled = distill(rel, cat)
    if not isinstance(distilled, DistilledRelation):
      log.debug("skipping %s: %s", rel, distilled.reason)
      continue
    ex = _as_exchange(distilled, z)
    if ex is None:
      log.debug("skipping %s: not an exchange out of z(T)", distilled)
      continue
    if ex.variable not in found:
      found[ex.variable] = ex
      log.debug("exchange relation %s from %s (T=%s)", ex, distilled.source, t)


def _relations_from_instances(
  sigma: Signature, z: ExtendedCluster, cat: SpecialCatalog, found: dict[SpecialName, ExchangeRelation]
) -> None:
  """Scan all 3-term instances for the variables still lacking a relation."""
  for rel in all_three_term_relations(sigma):
    if len(found) == len(z.cluster):
      return
    try:
      distilled = distill(rel, cat)
    except Inconsistent as e:
      log.debug("skipping %s: %s", rel, e)
      continue
    if not isinstance(distilled, DistilledRelation):
      continue
    ex = _as_exchange(distilled, z)
    if ex is None or ex.variable in found or not _agrees(ex, found):
      continue
    found[ex.variable] = ex
    log.info("exchange relation %s from %s (any vertices)", ex, distilled.source)


_EXPONENT_ORDER = (0, 1, -1, 2, -2)


def _special_with_value(poly: IntPolynomial, degrees: tuple[int, ...], cat: SpecialCatalog) -> SpecialName | None:
  for m in cat.names:
    if cat.multidegree(m).degrees == degrees and not cat.is_zero(m) and cat.polynomial(m) == poly:
      return cat.representative(m)
  return None


def _complete_relation(
  x: SpecialName, z: ExtendedCluster, cat: SpecialCatalog, found: Mapping[SpecialName, ExchangeRelation]
) -> ExchangeRelation | None:
  """Search the exchange relation of ``x`` among pairs of monomials in ``z(T)``.

  Arrows to variables with a known relation are fixed up to orientation by those relations. The
  exponents of the other members range over ``-2..2`` (the sign picks the monomial) subject to
  equal multidegrees on both sides, and the pair is accepted when ``x`` divides ``m1 + m2``.
  """
  known = {y: abs(_excess(r).get(x, 0)) for y, r in found.items()}
  known = {y: e for y, e in sorted(known.items()) if e}
  free = [m for m in z.members if m != x and m not in found]
  width = cat.sigma.n
  vec = {m: cat.multidegree(m).degrees for m in list(known) + free}
  target = cat.polynomial(x)
  ys = list(known)
  # exponent 2 only when the search space stays small
  for bound in (1, 2) if len(free) <= 8 else (1,):
    values = [e for e in _EXPONENT_ORDER if abs(e) <= bound]
    reach = [[bound * sum(vec[m][i] for m in free[j:]) for i in range(width)] for j in range(len(free) + 1)]
    for signs in product((1, -1), repeat=max(len(ys) - 1, 0)):
      exps: dict[SpecialName, int] = {}
      balance = [0] * width
      for y, s in zip(ys, (1, *signs)):
        exps[y] = s * known[y]
        balance = [b + exps[y] * d for b, d in zip(balance, vec[y])]
      for choice in _balanced(free, vec, values, reach, balance, 0):
        exps_all = {**exps, **choice}
        if bound == 2 and all(abs(e) < 2 for e in choice.values()):
          continue
        m1 = SpecialMonomial.of({m: e for m, e in exps_all.items() if e > 0})
        m2 = SpecialMonomial.of({m: -e for m, e in exps_all.items() if e < 0})
        if not m1.factors or not m2.factors:
          continue
        q = poly_divide_exact(cat.polynomial_of(m1) + cat.polynomial_of(m2), target)
        if q is NotDivisible or q.is_constant():  # type: ignore[union-attr]
          continue
        degrees = tuple(a - b for a, b in zip(_degrees(m1, cat), cat.multidegree(x).degrees))
        partner = _special_with_value(q, degrees, cat)  # type: ignore[arg-type]
        if partner is not None and partner in z:
          continue
        rel = ExchangeRelation(x, partner, m1, m2, "search", None if partner is not None else q)  # type: ignore[arg-type]
        log.info("exchange relation %s found by search", rel)
        return rel
  return None


def _degrees(m: SpecialMonomial, cat: SpecialCatalog) -> tuple[int, ...]:
  out = [0] * cat.sigma.n
  for k, v in m.factors:
    out = [a + v * d for a, d in zip(out, cat.multidegree(k).degrees)]
  return tuple(out)


def _balanced(
  free: Sequence[SpecialName],
  vec: Mapping[SpecialName, tuple[int, ...]],
  values: Sequence[int],
  reach: Sequence[Sequence[int]],
  balance: list[int],
  j: int,
) -> Iterator[dict[SpecialName, int]]:
  """Exponent choices for ``free[j:]`` that bring ``balance`` to zero."""
  if any(abs(b) > r for b, r in zip(balance, reach[j])):
    return
  if j == len(free):
    yield {}
    return
  m = free[j]
  for e in values:
    nxt = [b + e * d for b, d in zip(balance, vec[m])]
    for rest in _balanced(free, vec, values, reach, nxt, j + 1):
      yield {m: e, **rest} if e else rest


def exchange_relations(
  sigma: Signature, t: Triangulation, catalog: SpecialCatalog | None = None, z: ExtendedCluster | None = None
) -> list[ExchangeRelation]:
  """One verified exchange relation per cluster variable.

  The recipe relations of ``t`` come first, then those of triangulations with the same cluster,
  then any 3-term instance, and last a search over monomial pairs in ``z(T)``.
  """
  cat = catalog or catalog_for(sigma)
  z = z or extended_cluster(sigma, t, cat)
  found: dict[SpecialName, ExchangeRelation] = {}
  seen = {t}
  queue = deque([t])
  while queue and len(found) < len(z.cluster):
    cur = queue.popleft()
    _relations_from(sigma, cur, z, cat, found)
    for alt in alternate_triangulations(sigma, cur):
      if alt not in seen:
        seen.add(alt)
        queue.append(alt)
  if len(found) < len(z.cluster):
    _relations_from_instances(sigma, z, cat, found)
  for x in z.cluster:
    if x not in found:
      rel = _complete_relation(x, z, cat, found)
      if rel is not None:
        found[x] = rel
  missing = [x for x in z.cluster if x not in found]
  if missing:
    raise IncompleteRelations(
      f"no exchange relation for {', '.join(str(m) for m in missing)} (signature {sigma}, T={t})",
      [str(m) for m in missing],
    )
  return [found[x] for x in z.cluster]


# -- quivers ----------------------------------------------------------------------------------------


def _excess(rel: ExchangeRelation) -> dict[SpecialName, int]:
  """Multiplicity in ``m2`` minus multiplicity in ``m1``."""
  out: dict[SpecialName, int] = {}
  for k, v in rel.m2.factors:
    out[k] = out.get(k, 0) + v
  for k, v in rel.m1.factors:
    out[k] = out.get(k, 0) - v
  return {k: v for k, v in out.items() if v}


def quiver_from_relations(z: ExtendedCluster, relations: Sequence[ExchangeRelation]) -> Quiver:
  """The quiver whose exchange relations are ``relations``.

  Each mutable component is oriented so that its lexicographically first relation has ``m1`` as
  the product over incoming arrows.
  """
  by_var = {r.variable: r for r in relations}
  excess = {x: _excess(r) for x, r in by_var.items()}
  for x, ex in excess.items():
    for y, e in ex.items():
      if y in by_var and abs(excess[y].get(x, 0)) != abs(e):
        raise Inconsistent(f"relations for {x} and {y} disagree on the arrows between them")
  sign: dict[SpecialName, int] = {}
  for start in sorted(by_var):
    if start in sign:
      continue
    sign[start] = 1
    queue = deque([start])
    while queue:
      x = queue.popleft()
      for y, e in excess[x].items():
        if y not in by_var:
          continue
        want = -sign[x] * e // excess[y][x]
        if y in sign:
          if sign[y] != want:
            raise Inconsistent(f"no consistent orientation between {x} and {y}")
          continue
        sign[y] = want
        queue.append(y)
  arrows: list[tuple[str, str, int]] = []
  for x, ex in excess.items():
    for y, e in ex.items():
      b = sign[x] * e
      if y in by_var and str(y) < str(x):
        continue
      if b > 0:
        arrows.append((str(x), str(y), b))
      else:
        arrows.append((str(y), str(x), -b))
  vertices = [str(v) for v in z.coefficients + z.cluster]
  return Quiver.from_arrows(vertices, arrows, [str(c) for c in z.coefficients])


@dataclass(frozen=True)
class TriangulationSeed:
  signature: Signature
  triangulation: Triangulation
  z: ExtendedCluster
  relations: tuple[ExchangeRelation, ...]
  quiver: Quiver
  seed: Seed

  def name_of(self, vertex: str) -> SpecialName:
    return next(n for n in self.z.members if str(n) == vertex)


def build_seed(sigma: Signature, t: Triangulation, catalog: SpecialCatalog | None = None) -> TriangulationSeed:
  cat = catalog or catalog_for(sigma)
  z = extended_cluster(sigma, t, cat)
  rels = exchange_relations(sigma, t, cat, z)
  q = quiver_from_relations(z, rels)
  values = {str(n): cat.polynomial(n) for n in z.members}
  seed = Seed.of_polynomials(q, values, {str(n): str(n) for n in z.members})
  log.info("seed for %s, T=%s: %r", sigma, t, q)
  return TriangulationSeed(sigma, t, z, tuple(rels), q, seed)


@lru_cache(maxsize=64)
def cached_seed(sigma: Signature, t: Triangulation) -> TriangulationSeed:
  return build_seed(sigma, t)


def quiver(sigma: Signature, t: Triangulation) -> Quiver:
  return cached_seed(sigma, t).quiver


def special_seed(sigma: Signature, t: Triangulation) -> Seed:
  return cached_seed(sigma, t).seed


def grassmannian_labels(t: Triangulation) -> list[tuple[int, int, int]]:
  """Plücker triples of the monochromatic seed: one per triangle, two per side or diagonal."""
  n = t.n
  w = lambda p: (p - 1) % n + 1  # noqa: E731
  out: set[tuple[int, int, int]] = set(triangles(t))
  for p, q in t.chords():
    for trip in ((p, w(p + 1), q), (p, q, w(q + 1))):
      if len(set(trip)) == 3:
        out.add(tuple(sorted(trip)))  # type: ignore[arg-type]
  return sorted(out)


def grassmannian_labeling(ts: TriangulationSeed) -> dict[str, tuple[int, int, int]]:
  """Plücker triple of each vertex of an all-black seed, matched by value up to sign."""
  sigma = ts.signature
  if not all(sigma.is_black(p) for p in range(1, sigma.n + 1)):
    raise PreconditionViolated(f"Plücker labels need an all-black signature, got {sigma}")
  cat = catalog_for(sigma)
  triple_of: dict[IntPolynomial, tuple[int, int, int]] = {}
  for trip in combinations(range(1, sigma.n + 1), 3):
    value = cat.polynomial(SpecialName.lower(*trip))
    triple_of[value] = triple_of[-value] = trip
  out = {}
  for name in ts.z.members:
    trip = triple_of.get(cat.polynomial(name))
    if trip is None:
      raise Inconsistent(f"{name} is not a Plücker invariant of {sigma}")
    out[str(name)] = trip
  return out


def fan_apex(sigma: Signature) -> int:
  """Apex ``a`` with ``σ(a) = σ(a+1)`` and ``σ(a-1)`` of the other color, or 1."""
  for a in range(1, sigma.n + 1):
    if sigma.color(a) == sigma.color(a + 1) and sigma.color(a - 1) != sigma.color(a):
      return a
  return 1


def has_two_rows(sigma: Signature) -> bool:
  """``σ1 = σ2 = ●`` and ``σ(N-1) = σN = ○`` with ``N >= 6``."""
  n = sigma.n
  return n >= 6 and sigma.is_black(1) and sigma.is_black(2) and sigma.is_white(n - 1) and sigma.is_white(n)


def fan_position(sigma: Signature) -> tuple[Signature, int, bool]:
  """``(σ', shift, swapped)``: ``σ`` rotated by ``shift`` (after a color swap if ``swapped``) so that
  ``σ'1 = σ'2 = ●``, preferring positions where the two-row rule applies."""
  require_special_signature(sigma)
  best: tuple[bool, bool, int, Signature] | None = None
  for swapped in (False, True):
    base = sigma.swapped() if swapped else sigma
    for shift in range(sigma.n):
      s = base.rotated(shift)
      if not (s.is_black(1) and s.is_black(2)):
        continue
      key = (not has_two_rows(s), swapped, shift, s)
      if best is None or key[:3] < best[:3]:
        best = key
  if best is None:
    raise PreconditionViolated(f"{sigma} has no two adjacent vertices of one color")
  _, swapped, shift, s = best
  return s, shift, swapped


@dataclass(frozen=True)
class FanSeed:
  """The seed of the fan at vertex 1 of ``σ`` moved to its standard position.

  Vertex ``p`` of ``signature`` is vertex ``p + shift`` of ``normalized``; colors are exchanged when
  ``swapped``. ``two_row`` is the mutable quiver predicted by the two-row rule, when it applies.
  """

  signature: Signature
  normalized: Signature
  shift: int
  swapped: bool
  seed: TriangulationSeed
  two_row: Quiver | None = None

  @property
  def quiver(self) -> Quiver:
    return self.seed.quiver

  @property
  def z(self) -> ExtendedCluster:
    return self.seed.z

  def matches_two_row_rule(self) -> bool:
    if self.two_row is None:
      return False
    mutable = self.seed.quiver.mutable_part()
    return is_isomorphic(mutable, self.two_row) or is_isomorphic(mutable.reversed(), self.two_row)


def fan_seed(sigma: Signature) -> FanSeed:
  normalized, shift, swapped = fan_position(sigma)
  ts = cached_seed(normalized, fan_triangulation(normalized.n, 1))
  two_row = fan_mutable_quiver(normalized) if has_two_rows(normalized) else None
  fs = FanSeed(sigma, normalized, shift, swapped, ts, two_row)
  if two_row is not None and not fs.matches_two_row_rule():
    log.warning("fan seed of %s does not match the two-row rule: %r", normalized, ts.quiver)
  return fs


def fan_mutable_quiver(sigma: Signature) -> Quiver:
  """Mutable part of the fan seed at 1 from the two-row rule (``σ1=σ2=●``, ``σ(N-1)=σN=○``, ``N>=6``)."""
  n = sigma.n
  if not has_two_rows(sigma):
    raise PreconditionViolated(f"two-row rule needs σ1=σ2=● and σ(N-1)=σN=○ with N>=6, got {sigma}")
  s = {i: f"s{i}" for i in range(3, n)}
  t = {i: f"t{i}" for i in range(4, n - 1)}
  arrows = [(s[i], s[i + 1]) for i in range(3, n - 1)]
  arrows += [(t[i], t[i + 1]) for i in range(4, n - 2)]
  for i in range(3, n - 2):
    arrows.append((t[i + 1], s[i]) if sigma.is_black(i) else (t[i + 1], s[i + 1]))
  for i in range(4, n - 1):
    arrows.append((s[i], t[i]) if sigma.is_black(i) else (s[i + 1], t[i]))
  return Quiver.from_arrows(list(s.values()) + list(t.values()), arrows)


def seed_for_type(sigma: Signature) -> TriangulationSeed:
  """The fan seed of ``σ`` in standard position, else the first triangulation of ``σ`` (fans first)
  whose exchange relations are complete. Rotation and color swap keep the cluster type."""
  require_special_signature(sigma)
  try:
    return fan_seed(sigma).seed
  except IncompleteRelations as e:
    log.warning("fan seed of %s: %s", sigma, e)
  n = sigma.n
  tried: list[Triangulation] = []
  apexes = [fan_apex(sigma)] + [a for a in range(1, n + 1) if a != fan_apex(sigma)]
  candidates = [fan_triangulation(n, a) for a in apexes] + all_triangulations(n)
  last: IncompleteRelations | None = None
  for t in candidates:
    if t in tried:
      continue
    tried.append(t)
    try:
      return cached_seed(sigma, t)
    except IncompleteRelations as e:
      log.warning("T=%s: %s", t, e)
      last = e
  raise IncompleteRelations(f"no triangulation of {sigma} has complete relations", last.missing if last else [])


# -- documents --------------------------------------------------------------------------------------


def cluster_seed_to_doc(seed: Seed, sigma: Signature, triangulation: str | None = None) -> SeedDoc:
  """Any seed over the coordinate ring of ``sigma``, values as reduced fractions."""
  variables = []
  for v in seed.quiver.vertices:
    val = seed.values[v]
    variables.append(
      SeedVariableDoc(
        vertex=v,
        name=seed.label(v),
        frozen=seed.quiver.is_frozen(v),
        numerator=to_text(IntPolynomial(val.num)),
        denominator=to_text(IntPolynomial(val.den)),
      )
    )
  return SeedDoc(signature=str(sigma), triangulation=triangulation, quiver=seed.quiver.to_doc(), variables=variables)


def seed_to_doc(ts: TriangulationSeed, with_webs: bool = False) -> SeedDoc:
  doc = cluster_seed_to_doc(ts.seed, ts.signature, str(ts.triangulation))
  doc.relations = [str(r) for r in ts.relations]
  if with_webs:
    cat = catalog_for(ts.signature)
    for var in doc.variables:
      var.web = diagram_to_doc(cat.web(ts.name_of(var.vertex)).diagram)
  return doc


def seed_from_doc(doc: SeedDoc) -> Seed:
  sigma = Signature.parse(doc.signature)
  q = Quiver.from_doc(doc.quiver)
  values = {}
  for var in doc.variables:
    num = from_text(var.numerator, sigma.n)
    den = from_text(var.denominator, sigma.n)
    values[var.vertex] = RationalFunction.of(num.element, den.element)
  return Seed(q, values, {v.vertex: v.name or v.vertex for v in doc.variables})


def check_pairwise_compatible(ts: TriangulationSeed, seed: int | None = None) -> list[tuple[SpecialName, SpecialName]]:
  """Pairs in ``z(T)`` whose product is not a single web (empty when the cluster is compatible)."""
  from sl3webs.basis import multiply_drawn
  from sl3webs.special import special_builder

  bad = []
  members = sorted(ts.z.members)
  for i, a in enumerate(members):
    for b in members[i:]:
      product = multiply_drawn([special_builder(a, ts.signature), special_builder(b, ts.signature)], seed)
      if not product.is_single_web():
        log.warning("%s * %s expands into %d webs", a, b, len(product))
        bad.append((a, b))
  return bad
