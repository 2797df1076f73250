"""The non-elliptic web basis of a graded component: enumeration, expansion and products."""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import factorial
from typing import Callable, Iterator, Sequence

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from sl3webs.algebra import IntPolynomial
from sl3webs.config import get_settings
from sl3webs.diagram import BLACK, WHITE, Multidegree, Signature, TensorDiagram, Web
from sl3webs.errors import Inconsistent, NonIntegral, ResourceLimit
from sl3webs.evaluate import evaluate
from sl3webs.layout import Drawing, add, boundary_point, combine, draw, jitter, midpoint, scale
from sl3webs.skein import WebExpansion, planarize


log = logging.getLogger(__name__)


@dataclass(frozen=True)
class GradedComponent:
  signature: Signature
  multidegree: Multidegree

  def __post_init__(self) -> None:
    if len(self.multidegree.degrees) != self.signature.n:
      raise ValueError(f"multidegree {self.multidegree} does not match signature {self.signature}")
    if any(d < 0 for d in self.multidegree.degrees):
      raise ValueError("multidegrees are nonnegative")

  @classmethod
  def parse(cls, signature: str, multidegree: str) -> "GradedComponent":
    return cls(Signature.parse(signature), Multidegree.parse(multidegree))

  @property
  def white_degree(self) -> int:
    return sum(d for p, d in enumerate(self.multidegree.degrees, 1) if self.signature.is_white(p))

  @property
  def black_degree(self) -> int:
    return sum(d for p, d in enumerate(self.multidegree.degrees, 1) if self.signature.is_black(p))

  def is_zero(self) -> bool:
    return (self.white_degree - self.black_degree) % 3 != 0

  def __str__(self) -> str:
    return f"{self.signature}[{self.multidegree}]"


# -- first fundamental theorem generators -----------------------------------------------------------


@dataclass(frozen=True, order=True)
class Generator:
  """``Q`` pairs black ``i`` with white ``j``; ``P`` and ``P*`` join three black or three white vertices."""

  kind: str
  vertices: tuple[int, ...]

  def __str__(self) -> str:
    return f"{self.kind}_{''.join(str(v) for v in self.vertices)}"


def generators(sigma: Signature) -> list[Generator]:
  n = sigma.n
  black = [p for p in range(1, n + 1) if sigma.is_black(p)]
  white = [p for p in range(1, n + 1) if sigma.is_white(p)]
  out = [Generator("Q", (i, j)) for i in black for j in white]
  out += [Generator("P", t) for t in combinations(black, 3)]
  out += [Generator("P*", t) for t in combinations(white, 3)]
  return sorted(out)


def generator_monomials(g: GradedComponent) -> Iterator[tuple[Generator, ...]]:
  """Multisets of generators whose degrees add up to the component's multidegree."""
  if g.is_zero():
    return
  gens = generators(g.signature)
  left = list(g.multidegree.degrees)

  def rec(start: int, chosen: list[Generator]) -> Iterator[tuple[Generator, ...]]:
    first = next((p for p, d in enumerate(left, 1) if d), None)
    if first is None:
      yield tuple(chosen)
      return
    for k in range(start, len(gens)):
      gen = gens[k]
      if any(not left[v - 1] for v in gen.vertices):
        continue
      # the lowest open vertex must be covered by some later generator
      if first not in gen.vertices and not any(first in h.vertices for h in gens[k + 1 :]):
        return
      for v in gen.vertices:
        left[v - 1] -= 1
      chosen.append(gen)
      yield from rec(k, chosen)
      chosen.pop()
      for v in gen.vertices:
        left[v - 1] += 1

  yield from rec(0, [])


def _monomial_drawing(sigma: Signature, monomial: Sequence[Generator], rng: random.Random) -> Drawing:
  n = sigma.n
  dr = Drawing(sigma)
  for k, gen in enumerate(monomial):
    pts = [boundary_point(v, n) for v in gen.vertices]
    if gen.kind == "Q":
      bend = add(scale(midpoint(*pts), Fraction(4, 5)), jitter(rng, Fraction(1, 20)))
      dr.add_path(str(gen.vertices[0]), str(gen.vertices[1]), [bend], f"g{k}")
      continue
    center_color = WHITE if gen.kind == "P" else BLACK
    at = add(scale(combine([(Fraction(1, 3), p) for p in pts]), Fraction(9, 10)), jitter(rng, Fraction(1, 20)))
    c = dr.add_vertex(center_color, at, f"g{k}")
    for j, v in enumerate(gen.vertices):
      dr.add_path(c, str(v), (), f"g{k}.{j}")
  return dr


def draw_monomial(sigma: Signature, monomial: Sequence[Generator], seed: int | None = None) -> TensorDiagram:
  seed = get_settings().rng_seed if seed is None else seed
  d, _ = draw(lambda rng: _monomial_drawing(sigma, monomial, rng), seed)
  return d


def enumerate_webs(g: GradedComponent) -> list[Web]:
  """Every non-elliptic web of the component, sorted by canonical code.

  Products of generators span the component, so every basis web occurs in the reduction of one of
  them with a nonzero coefficient.
  """
  limit = get_settings().max_terms
  found: dict[bytes, Web] = {}
  count = 0
  for mono in generator_monomials(g):
    count += 1
    if count > limit:
      raise ResourceLimit(f"component {g} has more than {limit} generator monomials")
    for web, _ in planarize(draw_monomial(g.signature, mono, get_settings().rng_seed + count)).items():
      found.setdefault(web.code, web)
  webs = [found[c] for c in sorted(found)]
  log.info("component %s: %d monomials, %d webs", g, count, len(webs))
  return webs


def dimension_oracle(n: int) -> int:
  """Number of standard Young tableaux of shape ``3 x (n/3)`` (0 unless ``3 | n``)."""
  if n % 3:
    return 0
  k = n // 3
  return factorial(3 * k) * 2 // (factorial(k) * factorial(k + 1) * factorial(k + 2))


# -- exact expansion --------------------------------------------------------------------------------


def _coefficient_matrix(columns: Sequence[IntPolynomial], extra: IntPolynomial | None = None) -> DomainMatrix:
  keys = sorted({k for p in [*columns, *([extra] if extra is not None else [])] for k in p.element.keys()})
  polys = list(columns) + ([extra] if extra is not None else [])
  rows = [[QQ(int(p.element.get(k, 0))) for p in polys] for k in keys]
  if not rows:
    rows = [[QQ(0)] * len(polys)]
  return DomainMatrix(rows, (len(rows), len(polys)), QQ)


def evaluation_rank(webs: Sequence[Web]) -> int:
  """Rank of the coefficient matrix of the web invariants."""
  if not webs:
    return 0
  return _coefficient_matrix([evaluate(w.diagram) for w in webs]).rank()


def _to_fraction(v) -> Fraction:
  return Fraction(int(v.p), int(v.q))


def expand(p: IntPolynomial, g: GradedComponent, webs: Sequence[Web] | None = None) -> WebExpansion:
  """The unique integer expansion of ``p`` in the web basis of ``g``."""
  if p.is_zero():
    return WebExpansion.zero(g.signature)
  md = p.multidegree()
  if md is None or md != g.multidegree.degrees:
    raise ValueError(f"polynomial is not homogeneous of multidegree {g.multidegree}")
  webs = list(webs) if webs is not None else enumerate_webs(g)
  if not webs:
    raise Inconsistent(f"nonzero polynomial in component {g} without webs")
  values = [evaluate(w.diagram) for w in webs]
  k = len(webs)
  reduced, pivots = _coefficient_matrix(values, p).rref()
  if k in pivots:
    raise Inconsistent(f"polynomial is outside the span of the {k} webs of {g}")
  if len(pivots) != k:
    raise Inconsistent(f"the {k} webs of {g} are linearly dependent")
  table = reduced.to_Matrix().tolist()
  coefs: dict[Web, int] = {}
  for row, col in enumerate(pivots):
    c = _to_fraction(table[row][k])
    if c.denominator != 1:
      raise NonIntegral(f"coefficient {c} of web {col} is not an integer")
    if c:
      coefs[webs[col]] = int(c)
  out = WebExpansion(g.signature, coefs)
  total = IntPolynomial.zero(g.signature.n)
  for w, c in coefs.items():
    total = total + values[webs.index(w)] * c
  if total != p:
    raise Inconsistent(f"expansion in {g} does not reproduce the polynomial")
  return out


def component_of(p: IntPolynomial, sigma: Signature) -> GradedComponent:
  md = p.multidegree()
  if md is None:
    raise ValueError("polynomial is not multihomogeneous")
  return GradedComponent(sigma, Multidegree(md))


def multiply(w1: Web, w2: Web) -> WebExpansion:
  if w1.signature != w2.signature:
    raise ValueError("multiplied webs must share a signature")
  product = evaluate(w1.diagram) * evaluate(w2.diagram)
  return expand(product, component_of(product, w1.signature))


def multiply_drawn(builders: Sequence[Callable[[random.Random], Drawing]], seed: int | None = None) -> WebExpansion:
  """Product of drawn invariants: superpose the drawings, then reduce the crossings away."""
  if not builders:
    raise ValueError("nothing to multiply")
  seed = get_settings().rng_seed if seed is None else seed

  def build(rng: random.Random) -> Drawing:
    out = builders[0](rng)
    for b in builders[1:]:
      out = out.superpose(b(rng))
    return out

  d, _ = draw(build, seed)
  return planarize(d)


def structure_constants(w1: Web, w2: Web) -> list[tuple[Web, int]]:
  return multiply(w1, w2).items()


def is_compatible(w1: Web, w2: Web) -> bool:
  product = multiply(w1, w2)
  log.debug("product of %s and %s: %r", w1.code, w2.code, product)
  return product.is_single_web()
