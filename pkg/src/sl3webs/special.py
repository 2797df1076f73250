"""Special invariants built from caterpillar trees, their factorization and 3-term relations.

For a boundary vertex ``p`` the tree ``Λ_p`` ends in a black vertex (``p`` itself or a black proxy
next to it) and ``Λ^p`` ends in a white one. Joining tree ends gives

- ``J_p^q``: ``Λ_p`` and ``Λ^q`` joined by one connector;
- ``J_pqr``: a white center joined to ``Λ_p, Λ_q, Λ_r``;
- ``J^pqr``: a black center joined to ``Λ^p, Λ^q, Λ^r``;
- ``J_pq^rs``: a white ``W`` joined to ``Λ_p, Λ_q`` and a black ``B`` joined to ``Λ^r, Λ^s``, with
  ``W`` and ``B`` adjacent.
"""

from __future__ import annotations

import logging
import random
import re
import zlib
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Callable, Iterable, Mapping, Sequence

from sl3webs.algebra import IntPolynomial, poly_divide_exact, poly_product, NotDivisible
from sl3webs.config import get_settings
from sl3webs.diagram import BLACK, WHITE, Multidegree, Signature, TensorDiagram, Web, opposite_color
from sl3webs.errors import AlternatingSignature, Inconsistent, PreconditionViolated, ZeroInvariant
from sl3webs.layout import (
  Drawing,
  add,
  angle_of,
  boundary_point,
  combine,
  draw,
  jitter,
  midpoint,
  scale,
  unit_point,
)


log = logging.getLogger(__name__)


class SpecialKind(str, Enum):
  PAIR = "pair"
  LOWER = "lower"
  UPPER = "upper"
  MIXED = "mixed"


_KIND_RANK = {SpecialKind.PAIR: 0, SpecialKind.LOWER: 1, SpecialKind.UPPER: 2, SpecialKind.MIXED: 3}
_ARITY = {SpecialKind.PAIR: 2, SpecialKind.LOWER: 3, SpecialKind.UPPER: 3, SpecialKind.MIXED: 4}


def is_clockwise(indices: Sequence[int], n: int) -> bool:
  offsets = [(i - indices[0]) % n for i in indices]
  return all(offsets[k] < offsets[k + 1] for k in range(len(offsets) - 1))


@dataclass(frozen=True)
class SpecialName:
  """``J_p^q`` (PAIR, indices ``(p, q)``), ``J_pqr``, ``J^pqr`` or ``J_pq^rs`` (indices ``(p, q, r, s)``)."""

  kind: SpecialKind
  indices: tuple[int, ...]

  def __post_init__(self) -> None:
    if len(self.indices) != _ARITY[self.kind]:
      raise ValueError(f"{self.kind.value} special needs {_ARITY[self.kind]} indices, got {self.indices}")
    if len(set(self.indices)) != len(self.indices):
      raise ValueError(f"special invariant indices must be distinct: {self.indices}")

  @classmethod
  def pair(cls, p: int, q: int) -> "SpecialName":
    return cls(SpecialKind.PAIR, (p, q))

  @classmethod
  def lower(cls, p: int, q: int, r: int) -> "SpecialName":
    return cls(SpecialKind.LOWER, _rotate_min((p, q, r)))

  @classmethod
  def upper(cls, p: int, q: int, r: int) -> "SpecialName":
    return cls(SpecialKind.UPPER, _rotate_min((p, q, r)))

  @classmethod
  def mixed(cls, p: int, q: int, r: int, s: int) -> "SpecialName":
    return cls(SpecialKind.MIXED, (p, q, r, s))

  def check(self, n: int) -> "SpecialName":
    if any(not 1 <= i <= n for i in self.indices):
      raise ValueError(f"{self} has an index outside 1..{n}")
    if self.kind != SpecialKind.PAIR and not is_clockwise(self.indices, n):
      raise ValueError(f"{self}: indices must be in clockwise order")
    return self

  @property
  def sort_key(self) -> tuple[int, tuple[int, ...]]:
    return _KIND_RANK[self.kind], self.indices

  def __lt__(self, other: "SpecialName") -> bool:
    return self.sort_key < other.sort_key

  def __str__(self) -> str:
    wide = any(i > 9 for i in self.indices)

    def grp(ix: Sequence[int]) -> str:
      if wide:
        return "{" + ",".join(str(i) for i in ix) + "}"
      return "".join(str(i) for i in ix)

    ix = self.indices
    if self.kind == SpecialKind.PAIR:
      return f"J_{grp(ix[:1])}^{grp(ix[1:])}"
    if self.kind == SpecialKind.LOWER:
      return f"J_{grp(ix)}"
    if self.kind == SpecialKind.UPPER:
      return f"J^{grp(ix)}"
    return f"J_{grp(ix[:2])}^{grp(ix[2:])}"

  def __repr__(self) -> str:
    return f"SpecialName({self})"


def _rotate_min(ix: tuple[int, ...]) -> tuple[int, ...]:
  k = ix.index(min(ix))
  return ix[k:] + ix[:k]


_NAME_RE = re.compile(r"^J(?:_(\{[\d,]+\}|\d+))?(?:\^(\{[\d,]+\}|\d+))?$")


def _parse_group(text: str | None) -> tuple[int, ...]:
  if not text:
    return ()
  if text.startswith("{"):
    return tuple(int(s) for s in text[1:-1].split(",") if s)
  return tuple(int(c) for c in text)


def parse_special_name(text: str) -> SpecialName:
  m = _NAME_RE.match(text.strip().replace(" ", ""))
  if m is None:
    raise ValueError(f"not a special invariant name: {text!r}")
  low, up = _parse_group(m.group(1)), _parse_group(m.group(2))
  shape = (len(low), len(up))
  if shape == (1, 1):
    return SpecialName.pair(low[0], up[0])
  if shape == (3, 0):
    return SpecialName.lower(*low)
  if shape == (0, 3):
    return SpecialName.upper(*up)
  if shape == (2, 2):
    return SpecialName.mixed(low[0], low[1], up[0], up[1])
  raise ValueError(f"not a special invariant name: {text!r}")


def require_special_signature(sigma: Signature) -> None:
  if sigma.n < 5:
    raise PreconditionViolated(f"special invariants need at least 5 boundary vertices, got {sigma.n}")
  if not sigma.is_non_alternating():
    raise AlternatingSignature(f"signature {sigma} is alternating")


def all_special_names(sigma: Signature) -> list[SpecialName]:
  n = sigma.n
  out = [SpecialName.pair(p, q) for p in range(1, n + 1) for q in range(1, n + 1) if p != q]
  for p, q, r in combinations(range(1, n + 1), 3):
    out.append(SpecialName.lower(p, q, r))
    out.append(SpecialName.upper(p, q, r))
  for quad in combinations(range(1, n + 1), 4):
    for k in range(4):
      out.append(SpecialName.mixed(*(quad[k:] + quad[:k])))
  return sorted(out)


# -- caterpillar trees ------------------------------------------------------------------------------


@dataclass(frozen=True)
class CaterpillarTree:
  """``Λ_p`` (``lower``) or ``Λ^p`` (``upper``); node ``j`` touches the listed boundary vertices."""

  anchor: int
  flavor: str
  colors: tuple[str, ...] = ()
  legs: tuple[tuple[int, ...], ...] = ()

  @property
  def end_color(self) -> str:
    return BLACK if self.flavor == "lower" else WHITE

  @property
  def has_proxy(self) -> bool:
    return bool(self.colors)

  def edges(self, prefix: str) -> list[tuple[str, str]]:
    """Abstract edges with nodes named ``{prefix}{j}``; the proxy is node 0."""
    out = []
    for j, legs in enumerate(self.legs):
      for b in legs:
        out.append((f"{prefix}{j}", str(b)))
      if j:
        out.append((f"{prefix}{j}", f"{prefix}{j - 1}"))
    return out


def caterpillar(sigma: Signature, p: int, flavor: str) -> CaterpillarTree:
  if flavor not in ("lower", "upper"):
    raise ValueError(f"flavor must be 'lower' or 'upper', got {flavor!r}")
  end_color = BLACK if flavor == "lower" else WHITE
  if sigma.color(p) == end_color:
    return CaterpillarTree(p, flavor)
  if not sigma.is_non_alternating():
    raise AlternatingSignature(f"caterpillar trees need a non-alternating signature, got {sigma}")
  colors: list[str] = []
  legs: list[tuple[int, ...]] = []
  j = 0
  while True:
    here, nxt = sigma.wrap(p + j), sigma.wrap(p + j + 1)
    colors.append(opposite_color(sigma.color(here)))
    if sigma.color(here) == sigma.color(nxt):
      legs.append((here, nxt))
      break
    legs.append((here,))
    j += 1
  return CaterpillarTree(p, flavor, tuple(colors), tuple(legs))


def _trees(name: SpecialName, sigma: Signature) -> list[CaterpillarTree]:
  ix = name.indices
  if name.kind == SpecialKind.PAIR:
    return [caterpillar(sigma, ix[0], "lower"), caterpillar(sigma, ix[1], "upper")]
  if name.kind == SpecialKind.LOWER:
    return [caterpillar(sigma, i, "lower") for i in ix]
  if name.kind == SpecialKind.UPPER:
    return [caterpillar(sigma, i, "upper") for i in ix]
  return [caterpillar(sigma, ix[0], "lower"), caterpillar(sigma, ix[1], "lower")] + [
    caterpillar(sigma, i, "upper") for i in ix[2:]
  ]


def special_multidegree(name: SpecialName, sigma: Signature) -> Multidegree:
  """Boundary degrees read off the tree construction, without evaluating."""
  require_special_signature(sigma)
  name.check(sigma.n)
  deg = [0] * sigma.n
  for t in _trees(name, sigma):
    if not t.has_proxy:
      deg[t.anchor - 1] += 1
    for legs in t.legs:
      for b in legs:
        deg[b - 1] += 1
  return Multidegree(tuple(deg))


# -- drawing ----------------------------------------------------------------------------------------

_TREE_RADII = (Fraction(43, 50), Fraction(39, 50), Fraction(35, 50), Fraction(31, 50))
_CONNECTOR_RADIUS = Fraction(2, 5)


@dataclass
class _DrawnTree:
  end: str
  nodes: list[str] = field(default_factory=list)
  legs: list[list[str]] = field(default_factory=list)
  chain: list[str] = field(default_factory=list)


def _draw_tree(dr: Drawing, t: CaterpillarTree, rho: Fraction, rng, tag: str) -> _DrawnTree:
  n = dr.signature.n
  if not t.has_proxy:
    return _DrawnTree(end=str(t.anchor))
  out = _DrawnTree(end="")
  for j, color in enumerate(t.colors):
    here = dr.signature.wrap(t.anchor + j)
    at = add(scale(midpoint(boundary_point(here, n), boundary_point(dr.signature.wrap(here + 1), n)), rho), jitter(rng))
    v = dr.add_vertex(color, at, f"{tag}n{j}")
    out.nodes.append(v)
    out.legs.append([dr.add_path(v, b) for b in t.legs[j]])
    if j:
      out.chain.append(dr.add_path(out.nodes[j - 1], v))
  out.end = out.nodes[0]
  return out


def _expect_tree(dr: Drawing, t: _DrawnTree, connector: str) -> None:
  k = len(t.nodes) - 1
  for j, v in enumerate(t.nodes):
    if j == 0 and k == 0:
      dr.expect(v, [t.legs[0][0], t.legs[0][1], connector])
    elif j == 0:
      dr.expect(v, [t.legs[0][0], t.chain[0], connector])
    elif j < k:
      dr.expect(v, [t.legs[j][0], t.chain[j], t.chain[j - 1]])
    else:
      dr.expect(v, [t.legs[k][0], t.legs[k][1], t.chain[k - 1]])


def _special_drawing(name: SpecialName, sigma: Signature, rng) -> Drawing:
  dr = Drawing(sigma)
  drawn = [_draw_tree(dr, t, _TREE_RADII[i], rng, f"t{i}") for i, t in enumerate(_trees(name, sigma))]

  def inner(v: str) -> tuple[Fraction, Fraction]:
    return add(scale(unit_point(angle_of(dr.points[v])), _CONNECTOR_RADIUS), jitter(rng, Fraction(1, 200)))

  bends = [inner(t.end) for t in drawn]
  connectors: list[str] = []
  if name.kind == SpecialKind.PAIR:
    c = dr.add_path(drawn[0].end, drawn[1].end, [bends[0], bends[1]], "c0")
    connectors = [c, c]
  elif name.kind in (SpecialKind.LOWER, SpecialKind.UPPER):
    color = WHITE if name.kind == SpecialKind.LOWER else BLACK
    center = add(combine([(Fraction(1, 3), b) for b in bends]), jitter(rng, Fraction(1, 500)))
    m = dr.add_vertex(color, center, "m")
    connectors = [dr.add_path(t.end, m, [b], f"c{i}") for i, (t, b) in enumerate(zip(drawn, bends))]
    dr.expect(m, connectors)
  else:
    bp, bq, br, bs = bends
    w_at = combine([(Fraction(3, 8), bp), (Fraction(3, 8), bq), (Fraction(1, 8), br), (Fraction(1, 8), bs)])
    b_at = combine([(Fraction(1, 8), bp), (Fraction(1, 8), bq), (Fraction(3, 8), br), (Fraction(3, 8), bs)])
    w = dr.add_vertex(WHITE, w_at, "W")
    b = dr.add_vertex(BLACK, b_at, "B")
    connectors = [
      dr.add_path(drawn[0].end, w, [bp], "c0"),
      dr.add_path(drawn[1].end, w, [bq], "c1"),
      dr.add_path(drawn[2].end, b, [br], "c2"),
      dr.add_path(drawn[3].end, b, [bs], "c3"),
    ]
    mid = dr.add_path(w, b, (), "c4")
    dr.expect(w, [connectors[0], connectors[1], mid])
    dr.expect(b, [connectors[2], connectors[3], mid])
  for t, c in zip(drawn, connectors):
    if t.nodes:
      _expect_tree(dr, t, c)
  return dr


def _seed_for(sigma: Signature, name: SpecialName) -> int:
  return get_settings().rng_seed + zlib.crc32(f"{sigma}|{name}".encode())


def build_special(name: SpecialName, sigma: Signature) -> TensorDiagram:
  """The drawn diagram of a special invariant (crossings included)."""
  require_special_signature(sigma)
  name.check(sigma.n)
  d, _ = draw(lambda rng: _special_drawing(name, sigma, rng), _seed_for(sigma, name))
  return d


def special_drawing(name: SpecialName, sigma: Signature) -> Drawing:
  require_special_signature(sigma)
  name.check(sigma.n)
  _, dr = draw(lambda rng: _special_drawing(name, sigma, rng), _seed_for(sigma, name))
  return dr


def special_builder(name: SpecialName, sigma: Signature) -> Callable[[random.Random], Drawing]:
  """Drawing callback for superposed products of special invariants."""
  require_special_signature(sigma)
  name.check(sigma.n)
  return lambda rng: _special_drawing(name, sigma, rng)


# -- vanishing and coefficients ---------------------------------------------------------------------


def pair_vanishes(p: int, q: int, sigma: Signature) -> bool:
  """``J_p^{p+1} = 0`` for white ``p``; ``J_{q+1}^q = 0`` for black ``q``."""
  if q == sigma.wrap(p + 1) and sigma.is_white(p):
    return True
  if p == sigma.wrap(q + 1) and sigma.is_black(q):
    return True
  return False


def is_zero_special(name: SpecialName, sigma: Signature, catalog: "SpecialCatalog | None" = None) -> bool:
  if name.kind == SpecialKind.PAIR:
    return pair_vanishes(name.indices[0], name.indices[1], sigma)
  return (catalog or catalog_for(sigma)).is_zero(name)


_PENTAGON_BASE = "bwbwb"
_PENTAGON_EXTRA = ((1, 2), (3, 2), (3, 4), (5, 4), (3, 5), (4, 2))


def coefficient_set(sigma: Signature) -> list[SpecialName]:
  """The frozen invariants: the nonzero ``J_p^{p±1}``, with the pentagon ``[●○●○●]`` exception."""
  require_special_signature(sigma)
  n = sigma.n
  if n == 5:
    for swap in (False, True):
      base = Signature.parse(_PENTAGON_BASE)
      if swap:
        base = base.swapped()
      for shift in range(5):
        if base.rotated(shift) == sigma:
          out = []
          for a, b in _PENTAGON_EXTRA:
            a2, b2 = sigma.wrap(a + shift), sigma.wrap(b + shift)
            out.append(SpecialName.pair(b2, a2) if swap else SpecialName.pair(a2, b2))
          return sorted(out)
  out = []
  for p in range(1, n + 1):
    q = sigma.wrap(p + 1)
    for a, b in ((p, q), (q, p)):
      if not pair_vanishes(a, b, sigma):
        out.append(SpecialName.pair(a, b))
  return sorted(out)


def thin_triangle_value(p: int, q: int, r: int, sigma: Signature) -> list[SpecialName]:
  """``J^pqr`` for a triangle with an exposed side, as a product of ``J_a^b`` factors."""
  n = sigma.n
  tri = (p, q, r)
  for k in range(3):
    a, b, c = tri[k:] + tri[:k]
    if c == sigma.wrap(b + 1):
      if sigma.is_white(b):
        return [SpecialName.pair(b, a)]
      return [SpecialName.pair(c, a), SpecialName.pair(b, c)]
  raise PreconditionViolated(f"triangle {tri} has no exposed side in an {n}-gon")


def factorization_rule(name: SpecialName, sigma: Signature) -> list[SpecialName] | None:
  """One step of the name-level factorization rules, or ``None`` when none applies."""
  w = sigma.wrap
  white, black = sigma.is_white, sigma.is_black
  ix = name.indices

  def starts(p: int, reverse: bool) -> bool:
    return (black(p) and white(p + 1)) if reverse else (white(p) and black(p + 1))

  for rev in (False, True):
    if name.kind == SpecialKind.PAIR:
      a, b = ix if not rev else (ix[1], ix[0])
      if b == w(a + 2) and starts(a, rev):
        f = [SpecialName.pair(w(a + 2), a), SpecialName.pair(w(a + 1), w(a + 2))]
        return f if not rev else [SpecialName.pair(y, x) for x, y in (fn.indices for fn in f)]
      if b == w(a + 3) and starts(a, rev) and sigma.color(a + 2) == sigma.color(a):
        f = [SpecialName.pair(w(a + 1), w(a + 3)), SpecialName.pair(w(a + 2), a)]
        return f if not rev else [SpecialName.pair(y, x) for x, y in (fn.indices for fn in f)]
    elif name.kind == (SpecialKind.LOWER if not rev else SpecialKind.UPPER):
      for k in range(3):
        p, p2, q = ix[k], ix[(k + 1) % 3], ix[(k + 2) % 3]
        if p2 == w(p + 2) and starts(p, rev):
          if not rev:
            return [SpecialName.pair(p2, p), SpecialName.pair(q, w(p + 1))]
          return [SpecialName.pair(p, p2), SpecialName.pair(w(p + 1), q)]
    elif name.kind == SpecialKind.MIXED:
      a, b, c, d = ix
      if not rev and c == w(b + 1) and starts(b, rev):
        return [SpecialName.pair(a, c), SpecialName.pair(b, d)]
      if rev and a == w(d + 1) and starts(d, rev):
        return [SpecialName.pair(a, c), SpecialName.pair(b, d)]
      if not rev and b == w(a + 2) and starts(a, rev) and sigma.color(a + 2) == sigma.color(a):
        return [SpecialName.pair(b, a), SpecialName.upper(w(a + 1), c, d)]
      if rev and d == w(c + 2) and starts(c, rev) and sigma.color(c + 2) == sigma.color(c):
        return [SpecialName.pair(c, d), SpecialName.lower(w(c + 1), a, b)]
  return None


# -- monomials in special names ---------------------------------------------------------------------


@dataclass(frozen=True)
class SpecialMonomial:
  factors: tuple[tuple[SpecialName, int], ...] = ()

  @classmethod
  def of(cls, counts: Mapping[SpecialName, int] | Iterable[SpecialName]) -> "SpecialMonomial":
    c = Counter(counts) if not isinstance(counts, Mapping) else Counter(dict(counts))
    return cls(tuple(sorted((k, v) for k, v in c.items() if v > 0)))

  def counts(self) -> Counter[SpecialName]:
    return Counter(dict(self.factors))

  def names(self) -> list[SpecialName]:
    return [k for k, v in self.factors for _ in range(v)]

  def degree(self) -> int:
    return sum(v for _, v in self.factors)

  def __mul__(self, other: "SpecialMonomial") -> "SpecialMonomial":
    return SpecialMonomial.of(self.counts() + other.counts())

  def without(self, other: "SpecialMonomial") -> "SpecialMonomial":
    return SpecialMonomial.of(self.counts() - other.counts())

  def gcd(self, other: "SpecialMonomial") -> "SpecialMonomial":
    return SpecialMonomial.of(self.counts() & other.counts())

  def __contains__(self, name: object) -> bool:
    return any(k == name for k, _ in self.factors)

  def __str__(self) -> str:
    return " ".join(str(k) for k in self.names()) or "1"


@dataclass(frozen=True)
class Factorization:
  monomial: SpecialMonomial
  unit: int = 1

  def names(self) -> list[SpecialName]:
    return self.monomial.names()

  def __str__(self) -> str:
    sign = "-" if self.unit < 0 else ""
    return f"{sign}{self.monomial}"


# -- the catalog ------------------------------------------------------------------------------------


class SpecialCatalog:
  """Per-signature cache of special invariant drawings, polynomials and factorizations."""

  def __init__(self, sigma: Signature) -> None:
    require_special_signature(sigma)
    self.sigma = sigma
    self.names = all_special_names(sigma)
    self.coefficients = coefficient_set(sigma)
    self._coefficient_set = set(self.coefficients)
    self._diagram: dict[SpecialName, TensorDiagram] = {}
    self._poly: dict[SpecialName, IntPolynomial] = {}
    self._md: dict[SpecialName, Multidegree] = {}
    self._rep: dict[SpecialName, SpecialName] = {}
    self._fact: dict[SpecialName, Factorization] = {}
    self._web: dict[SpecialName, Web] = {}

  def __repr__(self) -> str:
    return f"SpecialCatalog({self.sigma}, {len(self._poly)} evaluated)"

  def diagram(self, name: SpecialName) -> TensorDiagram:
    if name not in self._diagram:
      self._diagram[name] = build_special(name, self.sigma)
    return self._diagram[name]

  def polynomial(self, name: SpecialName) -> IntPolynomial:
    if name not in self._poly:
      from sl3webs.evaluate import evaluate

      # special diagrams are tree-sized, the interactive edge limit does not apply
      self._poly[name] = evaluate(self.diagram(name), max_edges=get_settings().max_catalog_edges)
    return self._poly[name]

  def multidegree(self, name: SpecialName) -> Multidegree:
    if name not in self._md:
      self._md[name] = special_multidegree(name, self.sigma)
    return self._md[name]

  def is_zero(self, name: SpecialName) -> bool:
    if name.kind == SpecialKind.PAIR and pair_vanishes(*name.indices, self.sigma):
      return True
    return self.polynomial(name).is_zero()

  def web(self, name: SpecialName) -> Web:
    """The single web a nonzero special invariant planarizes to."""
    if name not in self._web:
      from sl3webs.skein import planarize

      if self.is_zero(name):
        raise ZeroInvariant(f"{name} vanishes for {self.sigma}")
      expansion = planarize(self.diagram(name))
      single = expansion.single()
      if single is None or single[1] != 1:
        raise Inconsistent(f"{name} planarizes to {len(expansion)} webs, expected one with coefficient 1")
      self._web[name] = single[0]
    return self._web[name]

  def is_coefficient(self, name: SpecialName) -> bool:
    return self.representative(name) in self._coefficient_set or name in self._coefficient_set

  def representative(self, name: SpecialName) -> SpecialName:
    """The preferred name among specials with the same polynomial (coefficients first)."""
    if name in self._rep:
      return self._rep[name]
    target = self.polynomial(name)
    md = self.multidegree(name)
    same = [m for m in self.names if self.multidegree(m) == md and self.polynomial(m) == target]
    best = min(same, key=lambda m: (m not in self._coefficient_set, m.sort_key))
    for m in same:
      self._rep[m] = best
    return best

  def polynomial_of(self, monomial: SpecialMonomial) -> IntPolynomial:
    return poly_product((self.polynomial(k) ** v for k, v in monomial.factors), self.sigma.n)

  def factorization(self, name: SpecialName) -> Factorization:
    if name in self._fact:
      return self._fact[name]
    if self.is_zero(name):
      raise ZeroInvariant(f"{name} vanishes for {self.sigma}")
    rep = self.representative(name)
    if rep != name:
      self._fact[name] = self.factorization(rep)
      return self._fact[name]
    md = self.multidegree(name)
    total = md.total()
    remaining = self.polynomial(name)
    left = list(md.degrees)
    counts: Counter[SpecialName] = Counter()
    candidates = sorted(
      (m for m in self.names if self.multidegree(m).total() < total and self.multidegree(m).dominated_by(md)),
      key=lambda m: (self.multidegree(m).total(), m.sort_key),
    )
    for m in candidates:
      if remaining.is_constant():
        break
      m_deg = self.multidegree(m).degrees
      if any(a > b for a, b in zip(m_deg, left)) or self.is_zero(m):
        continue
      if self.representative(m) != m or not self.is_indecomposable(m):
        continue
      while all(a <= b for a, b in zip(m_deg, left)):
        q = poly_divide_exact(remaining, self.polynomial(m))
        if q is NotDivisible:
          break
        remaining = q  # type: ignore[assignment]
        counts[m] += 1
        left = [b - a for a, b in zip(m_deg, left)]
    if not counts:
      result = Factorization(SpecialMonomial.of({name: 1}))
    elif remaining.is_constant() and abs(remaining.constant_value()) == 1:
      result = Factorization(SpecialMonomial.of(counts), remaining.constant_value())
    else:
      raise Inconsistent(f"{name} has a factor that is not a special invariant")
    if result.unit != 1:
      log.warning("%s factors with unit %d", name, result.unit)
    log.debug("%s = %s", name, result)
    self._fact[name] = result
    return result

  def is_indecomposable(self, name: SpecialName) -> bool:
    f = self.factorization(name)
    return f.monomial.factors == ((self.representative(name), 1),)

  def factor_monomial(self, names: Iterable[SpecialName]) -> tuple[SpecialMonomial, int] | None:
    """Product of the factorizations, or ``None`` when some factor vanishes."""
    total: Counter[SpecialName] = Counter()
    unit = 1
    for nm in names:
      if self.is_zero(nm):
        return None
      f = self.factorization(nm)
      total += f.monomial.counts()
      unit *= f.unit
    return SpecialMonomial.of(total), unit


@lru_cache(maxsize=32)
def catalog_for(sigma: Signature) -> SpecialCatalog:
  return SpecialCatalog(sigma)


def factor_special(name: SpecialName, sigma: Signature) -> Factorization:
  return catalog_for(sigma).factorization(name)


# -- 3-term relations -------------------------------------------------------------------------------


THREE_TERM_IDS = ("6.1", "6.2", "6.3", "6.4", "6.5", "7.1", "7.2")


@dataclass(frozen=True)
class ThreeTermRelation:
  """``lhs = rhs1 + rhs2`` with each side a product of special names."""

  relation_id: str
  vertices: tuple[int, ...]
  lhs: tuple[SpecialName, ...]
  rhs1: tuple[SpecialName, ...]
  rhs2: tuple[SpecialName, ...]

  def __str__(self) -> str:
    def side(ns: Sequence[SpecialName]) -> str:
      return " ".join(str(n) for n in ns)

    return f"{side(self.lhs)} = {side(self.rhs1)} + {side(self.rhs2)}"


def three_term(relation_id: str, vertices: Sequence[int], sigma: Signature) -> ThreeTermRelation:
  n = sigma.n
  J = SpecialName.pair
  vs = tuple(sigma.wrap(v) for v in vertices)
  if relation_id in ("7.1", "7.2"):
    if len(vs) != 2:
      raise PreconditionViolated(f"relation {relation_id} takes (p, s)")
    p, s = vs
    p1, p2 = sigma.wrap(p + 1), sigma.wrap(p + 2)
    if len({p, p1, p2, s}) != 4:
      raise PreconditionViolated(f"vertices p, p+1, p+2, s must be distinct, got {vs}")
    if relation_id == "7.1":
      if not (sigma.is_white(p) and sigma.is_black(p1)):
        raise PreconditionViolated(f"relation 7.1 needs p white and p+1 black (p={p}, {sigma})")
      return ThreeTermRelation(relation_id, vs, (J(p2, p), J(p1, s)), (J(p1, p), J(p2, s)), (J(p, s),))
    if not (sigma.is_black(p) and sigma.is_white(p1)):
      raise PreconditionViolated(f"relation 7.2 needs p black and p+1 white (p={p}, {sigma})")
    return ThreeTermRelation(relation_id, vs, (J(p, p2), J(s, p1)), (J(p, p1), J(s, p2)), (J(s, p),))

  arity = 3 if relation_id == "6.1" else 4
  if relation_id not in THREE_TERM_IDS:
    raise ValueError(f"unknown relation {relation_id!r}")
  if len(vs) != arity or len(set(vs)) != arity:
    raise PreconditionViolated(f"relation {relation_id} takes {arity} distinct vertices, got {vs}")
  if not is_clockwise(vs, n):
    raise PreconditionViolated(f"vertices {vs} are not in clockwise order")
  low, up, mixed = SpecialName.lower, SpecialName.upper, SpecialName.mixed
  if relation_id == "6.1":
    p, q, r = vs
    return ThreeTermRelation(
      relation_id, vs, (low(p, q, r), up(p, q, r)), (J(r, p), J(q, r), J(p, q)), (J(r, q), J(p, r), J(q, p))
    )
  p, q, r, s = vs
  if relation_id == "6.2":
    return ThreeTermRelation(relation_id, vs, (J(p, r), low(q, r, s)), (J(q, r), low(p, r, s)), (J(s, r), low(p, q, r)))
  if relation_id == "6.3":
    return ThreeTermRelation(relation_id, vs, (J(p, r), J(s, q)), (J(s, r), J(p, q)), (mixed(s, p, q, r),))
  if relation_id == "6.4":
    return ThreeTermRelation(
      relation_id, vs, (J(p, r), mixed(r, s, p, q)), (J(p, q), J(r, p), J(s, r)), (low(p, r, s), up(p, q, r))
    )
  return ThreeTermRelation(
    relation_id, vs, (J(r, p), mixed(s, p, q, r)), (J(r, q), J(s, p), J(p, r)), (low(p, r, s), up(p, q, r))
  )


def verify_three_term(
  relation_id: str, vertices: Sequence[int], sigma: Signature, catalog: SpecialCatalog | None = None
) -> bool:
  rel = three_term(relation_id, vertices, sigma)
  cat = catalog or catalog_for(sigma)
  lhs = cat.polynomial_of(SpecialMonomial.of(rel.lhs))
  rhs = cat.polynomial_of(SpecialMonomial.of(rel.rhs1)) + cat.polynomial_of(SpecialMonomial.of(rel.rhs2))
  ok = lhs == rhs
  if not ok:
    log.warning("relation %s at %s fails for %s: %s", relation_id, rel.vertices, sigma, rel)
  return ok


@dataclass(frozen=True)
class Tautology:
  reason: str


@dataclass(frozen=True)
class DistilledRelation:
  """``lhs = m1 + m2`` in indecomposable special invariants, common factors removed."""

  lhs: SpecialMonomial
  m1: SpecialMonomial
  m2: SpecialMonomial
  source: str = ""

  def __str__(self) -> str:
    return f"{self.lhs} = {self.m1} + {self.m2}"


def distill(rel: ThreeTermRelation, catalog: SpecialCatalog) -> Tautology | DistilledRelation:
  lhs = catalog.factor_monomial(rel.lhs)
  r1 = catalog.factor_monomial(rel.rhs1)
  r2 = catalog.factor_monomial(rel.rhs2)
  if lhs is None or r1 is None or r2 is None:
    return Tautology(f"{rel} has a vanishing term")
  (ml, ul), (m1, u1), (m2, u2) = lhs, r1, r2
  # ul*ml - u1*m1 - u2*m2 = 0: the term whose sign differs from the other two is the product side
  terms = [(ul, ml), (-u1, m1), (-u2, m2)]
  odd = [k for k, (s, _) in enumerate(terms) if sum(1 for t, _ in terms if t == s) == 1]
  if not odd:
    return Tautology(f"{rel} has three terms of one sign after factoring")
  if odd[0] != 0:
    log.debug("%s: units move term %d to the left-hand side", rel, odd[0])
  ml = terms[odd[0]][1]
  m1, m2 = (m for k, (_, m) in enumerate(terms) if k != odd[0])
  g = ml.gcd(m1).gcd(m2)
  ml, m1, m2 = ml.without(g), m1.without(g), m2.without(g)
  if m1 == ml or m2 == ml or not ml.factors:
    return Tautology(f"{rel} cancels out")
  out = DistilledRelation(ml, m1, m2, f"({rel.relation_id}) at {rel.vertices}")
  left = catalog.polynomial_of(ml)
  right = catalog.polynomial_of(m1) + catalog.polynomial_of(m2)
  if left != right:
    raise Inconsistent(f"distilled relation {out} is not an identity")
  return out
