"""Exact sparse integer polynomials in the coordinates of boundary vectors and covectors.

A black boundary vertex ``v`` carries a vector with coordinates ``x1(v), x2(v), x3(v)``; a white
one carries a covector ``y1(v), y2(v), y3(v)``. Every identity checked anywhere in the package is
an equality of :class:`IntPolynomial` values, so arithmetic here is exact over ``ZZ``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Literal, Mapping, Sequence

from sympy.polys.domains import ZZ
from sympy.polys.orderings import grlex
from sympy.polys.polyerrors import ExactQuotientFailed
from sympy.polys.rings import PolyElement, PolyRing

from sl3webs.errors import ZeroDivisor


Kind = Literal["x", "y"]


@dataclass(frozen=True, order=True)
class CoordVar:
  kind: Kind
  vertex: int
  axis: int

  def __post_init__(self) -> None:
    if self.kind not in ("x", "y"):
      raise ValueError(f"CoordVar kind must be 'x' or 'y', got {self.kind!r}")
    if self.axis not in (1, 2, 3):
      raise ValueError(f"CoordVar axis must be 1, 2 or 3, got {self.axis}")
    if self.vertex < 1:
      raise ValueError(f"CoordVar vertex must be positive, got {self.vertex}")

  @property
  def symbol_name(self) -> str:
    return f"{self.kind}{self.axis}_{self.vertex}"

  def __str__(self) -> str:
    return f"{self.kind}{self.axis}({self.vertex})"


def x(axis: int, vertex: int) -> CoordVar:
  return CoordVar("x", vertex, axis)


def y(axis: int, vertex: int) -> CoordVar:
  return CoordVar("y", vertex, axis)


@lru_cache(maxsize=None)
def coordinate_variables(n: int) -> tuple[CoordVar, ...]:
  variables = [CoordVar(kind, v, a) for kind in ("x", "y") for v in range(1, n + 1) for a in (1, 2, 3)]
  return tuple(sorted(variables))


@lru_cache(maxsize=None)
def coordinate_ring(n: int) -> PolyRing:
  """The ring ZZ[x_a(v), y_a(v) : 1 <= v <= n] with graded lexicographic term order."""
  names = [v.symbol_name for v in coordinate_variables(n)] or ["_unit"]
  return PolyRing(names, ZZ, grlex)


@lru_cache(maxsize=None)
def variable_index(n: int) -> dict[CoordVar, int]:
  return {v: i for i, v in enumerate(coordinate_variables(n))}


@lru_cache(maxsize=None)
def formal_ring(names: tuple[str, ...]) -> PolyRing:
  """A polynomial ring on arbitrary named symbols (seed variables, Laurent checks)."""
  return PolyRing(list(names) or ["_unit"], ZZ, grlex)


_SYMBOL_RE = re.compile(r"^([xy])([123])_(\d+)$")


def _parse_symbol(name: str) -> CoordVar | str:
  m = _SYMBOL_RE.match(name)
  if m is None:
    return name
  return CoordVar(m.group(1), int(m.group(3)), int(m.group(2)))  # type: ignore[arg-type]


@dataclass(frozen=True)
class Monomial:
  """A finite map from variables to positive exponents."""

  exponents: tuple[tuple[CoordVar | str, int], ...]

  def __post_init__(self) -> None:
    for _, e in self.exponents:
      if e <= 0:
        raise ValueError("Monomial exponents must be positive")

  def degree(self) -> int:
    return sum(e for _, e in self.exponents)

  def __str__(self) -> str:
    parts = []
    for var, e in self.exponents:
      parts.append(f"{var}" if e == 1 else f"{var}^{e}")
    return " * ".join(parts)


@dataclass(frozen=True, eq=False)
class IntPolynomial:
  """Immutable wrapper around a sparse sympy ring element over ``ZZ``."""

  element: PolyElement
  _hash: list[int] = field(default_factory=list, repr=False, compare=False)

  # -- constructors -----------------------------------------------------------------------------

  @classmethod
  def zero(cls, n: int) -> "IntPolynomial":
    return cls(coordinate_ring(n).zero)

  @classmethod
  def one(cls, n: int) -> "IntPolynomial":
    return cls(coordinate_ring(n).one)

  @classmethod
  def constant(cls, c: int, n: int) -> "IntPolynomial":
    return cls(coordinate_ring(n)(c))

  @classmethod
  def variable(cls, var: CoordVar, n: int) -> "IntPolynomial":
    if var.vertex > n:
      raise ValueError(f"{var} is not a variable of the ring with {n} boundary vertices")
    return cls(coordinate_ring(n).gens[variable_index(n)[var]])

  @classmethod
  def from_terms(cls, terms: Mapping[Monomial, int] | Iterable[tuple[Monomial, int]], n: int) -> "IntPolynomial":
    ring = coordinate_ring(n)
    index = variable_index(n)
    items = terms.items() if isinstance(terms, Mapping) else terms
    data: dict[tuple[int, ...], int] = {}
    for mono, coef in items:
      expv = [0] * ring.ngens
      for var, e in mono.exponents:
        if not isinstance(var, CoordVar):
          raise ValueError(f"Not a coordinate variable: {var}")
        expv[index[var]] += e
      key = tuple(expv)
      data[key] = data.get(key, 0) + int(coef)
    return cls(ring.from_dict({k: ZZ(v) for k, v in data.items() if v}))

  # -- structure --------------------------------------------------------------------------------

  @property
  def ring(self) -> PolyRing:
    return self.element.ring

  @property
  def n_vertices(self) -> int:
    return sum(1 for s in self.ring.symbols if str(s).startswith("x1_"))

  def is_zero(self) -> bool:
    return not self.element

  def is_constant(self) -> bool:
    return self.element.is_ground

  def constant_value(self) -> int:
    if not self.is_constant():
      raise ValueError("polynomial is not constant")
    return int(self.element.get(self.ring.zero_monom, 0))

  def term_count(self) -> int:
    return len(self.element)

  def variables(self) -> tuple[CoordVar | str, ...]:
    return tuple(_parse_symbol(str(s)) for s in self.ring.symbols)

  def terms(self) -> Iterator[tuple[Monomial, int]]:
    """Terms in canonical order: graded, then lexicographic on (kind, vertex, axis)."""
    names = self.variables()
    for expv, coef in self.element.terms():
      mono = Monomial(tuple((names[i], e) for i, e in enumerate(expv) if e))
      yield mono, int(coef)

  def multidegree(self) -> tuple[int, ...] | None:
    """Per-vertex degree when homogeneous in each boundary vertex, else ``None``."""
    n = self.n_vertices
    names = self.variables()
    seen: tuple[int, ...] | None = None
    for expv in self.element.keys():
      deg = [0] * n
      for i, e in enumerate(expv):
        var = names[i]
        if e and isinstance(var, CoordVar):
          deg[var.vertex - 1] += e
      cur = tuple(deg)
      if seen is None:
        seen = cur
      elif cur != seen:
        return None
    return seen if seen is not None else tuple([0] * n)

  # -- arithmetic -------------------------------------------------------------------------------

  def _coerce(self, other: "IntPolynomial | int") -> PolyElement:
    if isinstance(other, int):
      return self.ring(other)
    if other.ring == self.ring:
      return other.element
    if other.is_constant():
      return self.ring(other.constant_value())
    if self.is_constant():
      raise _SwapRing()
    raise ValueError("polynomials live in different rings")

  def _binary(self, other: "IntPolynomial | int", op: str) -> "IntPolynomial":
    try:
      rhs = self._coerce(other)
    except _SwapRing:
      assert isinstance(other, IntPolynomial)
      lhs = other.ring(self.constant_value())
      return IntPolynomial(getattr(lhs, op)(other.element))
    return IntPolynomial(getattr(self.element, op)(rhs))

  def __add__(self, other: "IntPolynomial | int") -> "IntPolynomial":
    return self._binary(other, "__add__")

  __radd__ = __add__

  def __sub__(self, other: "IntPolynomial | int") -> "IntPolynomial":
    return self._binary(other, "__sub__")

  def __rsub__(self, other: int) -> "IntPolynomial":
    return IntPolynomial(self.ring(other) - self.element)

  def __mul__(self, other: "IntPolynomial | int") -> "IntPolynomial":
    return self._binary(other, "__mul__")

  __rmul__ = __mul__

  def __neg__(self) -> "IntPolynomial":
    return IntPolynomial(-self.element)

  def __pow__(self, k: int) -> "IntPolynomial":
    if k < 0:
      raise ValueError("negative powers are not polynomials")
    return IntPolynomial(self.element**k)

  def __eq__(self, other: object) -> bool:
    if isinstance(other, int):
      return self.is_constant() and self.constant_value() == other
    if not isinstance(other, IntPolynomial):
      return NotImplemented
    if self.ring == other.ring:
      return self.element == other.element
    if self.is_constant() and other.is_constant():
      return self.constant_value() == other.constant_value()
    return False

  def __hash__(self) -> int:
    if not self._hash:
      self._hash.append(hash(frozenset(self.element.items())))
    return self._hash[0]

  def __str__(self) -> str:
    return to_text(self)

  def __repr__(self) -> str:
    text = to_text(self)
    if len(text) > 80:
      text = text[:77] + "..."
    return f"IntPolynomial({text})"


class _SwapRing(Exception):
  pass


class _NotDivisible:
  _instance: "_NotDivisible | None" = None

  def __new__(cls) -> "_NotDivisible":
    if cls._instance is None:
      cls._instance = super().__new__(cls)
    return cls._instance

  def __repr__(self) -> str:
    return "NotDivisible"

  def __bool__(self) -> bool:
    return False


NotDivisible = _NotDivisible()


def poly_add(p: IntPolynomial, q: IntPolynomial) -> IntPolynomial:
  return p + q


def poly_sub(p: IntPolynomial, q: IntPolynomial) -> IntPolynomial:
  return p - q


def poly_neg(p: IntPolynomial) -> IntPolynomial:
  return -p


def poly_mul(p: IntPolynomial, q: IntPolynomial) -> IntPolynomial:
  return p * q


def poly_scale(p: IntPolynomial, c: int) -> IntPolynomial:
  return p * c


def poly_pow(p: IntPolynomial, k: int) -> IntPolynomial:
  return p**k


def poly_product(factors: Iterable[IntPolynomial], n: int) -> IntPolynomial:
  out = IntPolynomial.one(n)
  for f in factors:
    out = out * f
  return out


def poly_divide_exact(p: IntPolynomial, q: IntPolynomial) -> IntPolynomial | _NotDivisible:
  """Return ``r`` with ``q * r == p`` exactly, or :data:`NotDivisible`."""
  if q.is_zero():
    raise ZeroDivisor("division by the zero polynomial")
  if p.is_zero():
    return IntPolynomial(p.ring.zero)
  if q.ring != p.ring:
    if q.is_constant():
      q = IntPolynomial(p.ring(q.constant_value()))
    else:
      return NotDivisible
  try:
    return IntPolynomial(p.element.exquo(q.element))
  except ExactQuotientFailed:
    return NotDivisible


def divides(q: IntPolynomial, p: IntPolynomial) -> bool:
  return poly_divide_exact(p, q) is not NotDivisible


def evaluate_at(p: IntPolynomial, point: Mapping[CoordVar | str, int]) -> int:
  """Integer value of ``p`` at an integer point; missing variables count as 0."""
  names = p.variables()
  values = [int(point.get(v, 0)) for v in names]
  total = 0
  for expv, coef in p.element.items():
    term = int(coef)
    for i, e in enumerate(expv):
      if e:
        term *= values[i] ** e
        if term == 0:
          break
    total += term
  return total


def substitute(
  p: IntPolynomial,
  mapping: Mapping[CoordVar, IntPolynomial],
  n_target: int,
  rename: Mapping[int, int] | None = None,
) -> IntPolynomial:
  """Ring-changing substitution into the coordinate ring with ``n_target`` vertices.

  Variables in ``mapping`` are replaced by the given polynomials; every other coordinate variable
  of vertex ``v`` becomes the same coordinate of vertex ``rename.get(v, v)``.
  """
  rename = rename or {}
  names = p.variables()
  images: list[IntPolynomial] = []
  for var in names:
    if not isinstance(var, CoordVar):
      raise ValueError(f"cannot substitute into non-coordinate variable {var}")
    if var in mapping:
      images.append(mapping[var])
    else:
      target = CoordVar(var.kind, rename.get(var.vertex, var.vertex), var.axis)
      images.append(IntPolynomial.variable(target, n_target))
  out = IntPolynomial.zero(n_target)
  for expv, coef in p.element.items():
    term = IntPolynomial.constant(int(coef), n_target)
    for i, e in enumerate(expv):
      if e:
        term = term * images[i] ** e
    out = out + term
  return out


def to_text(p: IntPolynomial) -> str:
  """Canonical text: terms sorted, each ``coef * x{axis}({vertex}) * ...``."""
  if p.is_zero():
    return "0"
  parts = []
  for mono, coef in p.terms():
    if not mono.exponents:
      parts.append(str(coef))
    else:
      parts.append(f"{coef} * {mono}")
  return " + ".join(parts)


_TERM_VAR_RE = re.compile(r"^([xy])([123])\((\d+)\)(?:\^(\d+))?$")


def from_text(text: str, n: int) -> IntPolynomial:
  text = text.strip()
  if text == "0":
    return IntPolynomial.zero(n)
  terms: list[tuple[Monomial, int]] = []
  for chunk in text.split(" + "):
    pieces = [s.strip() for s in chunk.split("*")]
    coef = int(pieces[0])
    exps: dict[CoordVar, int] = {}
    for piece in pieces[1:]:
      m = _TERM_VAR_RE.match(piece)
      if m is None:
        raise ValueError(f"cannot parse polynomial factor {piece!r}")
      var = CoordVar(m.group(1), int(m.group(3)), int(m.group(2)))  # type: ignore[arg-type]
      exps[var] = exps.get(var, 0) + int(m.group(4) or 1)
    terms.append((Monomial(tuple(sorted(exps.items()))), coef))
  return IntPolynomial.from_terms(terms, n)


def cross_product(u: Sequence[IntPolynomial], v: Sequence[IntPolynomial]) -> tuple[IntPolynomial, ...]:
  """Coordinates of ``u x v`` with ``(u x v)_k = sum eps(i, j, k) u_i v_j``."""
  return (
    u[1] * v[2] - u[2] * v[1],
    u[2] * v[0] - u[0] * v[2],
    u[0] * v[1] - u[1] * v[0],
  )


def coordinate_vector(kind: Kind, vertex: int, n: int) -> tuple[IntPolynomial, ...]:
  return tuple(IntPolynomial.variable(CoordVar(kind, vertex, a), n) for a in (1, 2, 3))


def determinant3(rows: Sequence[Sequence[IntPolynomial]]) -> IntPolynomial:
  (a, b, c), (d, e, f), (g, h, i) = rows
  return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


@dataclass(frozen=True, eq=False)
class RationalFunction:
  """A reduced fraction of polynomials in one ring; the denominator is never zero."""

  num: PolyElement
  den: PolyElement

  @classmethod
  def of(cls, num: PolyElement, den: PolyElement | None = None) -> "RationalFunction":
    if den is None:
      den = num.ring.one
    if not den:
      raise ZeroDivisor("zero denominator")
    p, q = num.cancel(den)
    return cls(p, q)

  @property
  def ring(self) -> PolyRing:
    return self.num.ring

  def is_polynomial(self) -> bool:
    return self.den.is_ground

  def __add__(self, other: "RationalFunction") -> "RationalFunction":
    return RationalFunction.of(self.num * other.den + other.num * self.den, self.den * other.den)

  def __mul__(self, other: "RationalFunction") -> "RationalFunction":
    return RationalFunction.of(self.num * other.num, self.den * other.den)

  def __truediv__(self, other: "RationalFunction") -> "RationalFunction":
    if not other.num:
      raise ZeroDivisor("division by zero rational function")
    return RationalFunction.of(self.num * other.den, self.den * other.num)

  def __pow__(self, k: int) -> "RationalFunction":
    return RationalFunction.of(self.num**k, self.den**k)

  def __eq__(self, other: object) -> bool:
    if not isinstance(other, RationalFunction):
      return NotImplemented
    return self.num * other.den == other.num * self.den

  def __hash__(self) -> int:
    return hash((frozenset(self.num.items()), frozenset(self.den.items())))

  def denominator_support(self) -> set[str]:
    """Names of the variables that occur in the denominator."""
    names = [str(s) for s in self.ring.symbols]
    out: set[str] = set()
    for expv in self.den.keys():
      out.update(names[i] for i, e in enumerate(expv) if e)
    return out

  def denominator_is_monomial(self) -> bool:
    return len(self.den) == 1
