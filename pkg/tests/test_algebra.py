from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sl3webs.algebra import (
  CoordVar,
  IntPolynomial,
  RationalFunction,
  coordinate_vector,
  cross_product,
  determinant3,
  divides,
  evaluate_at,
  from_text,
  poly_divide_exact,
  to_text,
  x,
  y,
)
from sl3webs.errors import ZeroDivisor


N = 3


def var(v: CoordVar) -> IntPolynomial:
  return IntPolynomial.variable(v, N)


def test_coordinate_variable_validation():
  with pytest.raises(ValueError):
    CoordVar("z", 1, 1)  # type: ignore[arg-type]
  with pytest.raises(ValueError):
    x(4, 1)
  with pytest.raises(ValueError):
    y(1, 0)
  assert str(x(2, 3)) == "x2(3)"


def test_arithmetic_and_constants():
  p = var(x(1, 1)) + var(x(2, 1))
  assert (p - p).is_zero()
  assert (p * 0).is_zero()
  assert IntPolynomial.constant(5, N).constant_value() == 5
  assert (p**2).term_count() == 3
  assert -(-p) == p


def test_text_round_trip_with_negative_coefficients():
  p = var(x(1, 1)) * var(y(2, 3)) * 3 - var(x(3, 2)) ** 2 + 7
  assert from_text(to_text(p), N) == p
  assert to_text(IntPolynomial.zero(N)) == "0"


def test_multidegree_per_vertex():
  p = var(x(1, 1)) * var(y(2, 3)) + var(x(2, 1)) * var(y(1, 3))
  assert p.multidegree() == (1, 0, 1)
  assert (p + var(x(1, 2))).multidegree() is None


def test_determinant_of_standard_basis_vectors():
  rows = [coordinate_vector("x", j, N) for j in (1, 2, 3)]
  det = determinant3(rows)
  assert det.term_count() == 6
  point = {x(1, 1): 1, x(2, 2): 1, x(3, 3): 1}
  assert evaluate_at(det, point) == 1
  swapped = determinant3([rows[1], rows[0], rows[2]])
  assert swapped == -det


def test_cross_product_is_orthogonal():
  u, v = coordinate_vector("x", 1, N), coordinate_vector("x", 2, N)
  w = cross_product(u, v)
  dot = sum((a * b for a, b in zip(w, u)), IntPolynomial.zero(N))
  assert dot.is_zero()


def test_exact_division():
  a, b = var(x(1, 1)) + var(x(2, 2)), var(y(3, 3)) - 2
  assert poly_divide_exact(a * b, b) == a
  assert divides(a, a * b)
  assert not divides(a * a, a * b)
  with pytest.raises(ZeroDivisor):
    poly_divide_exact(a, IntPolynomial.zero(N))


def test_rational_functions_cancel():
  a, b = var(x(1, 1)), var(x(2, 1)) + 1
  f = RationalFunction.of((a * b).element, b.element)
  assert f.is_polynomial()
  assert f == RationalFunction.of(a.element)
  g = RationalFunction.of(a.element, (a * a).element)
  assert g.denominator_is_monomial()
  assert g.denominator_support() == {x(1, 1).symbol_name}
  with pytest.raises(ZeroDivisor):
    RationalFunction.of(a.element, IntPolynomial.zero(N).element)


small = st.integers(min_value=-5, max_value=5)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(small, st.integers(1, 3), st.integers(1, 3)), min_size=1, max_size=5))
def test_text_round_trip_property(terms):
  p = IntPolynomial.zero(N)
  for coef, axis, vertex in terms:
    p = p + var(x(axis, vertex)) * var(y(axis, vertex)) * coef
  assert from_text(to_text(p), N) == p
