import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from spincouple.exactnum import (
    ONE, ZERO, CQSqrt, QSqrt, UnsupportedDivisorError, divide_by_radical,
    sqrt_of_rational, squarefree_decompose, to_float,
)

r2, r3 = QSqrt.sqrt(2), QSqrt.sqrt(3)


def as_sympy(q: QSqrt):
    return sum((sympy.Rational(c.numerator, c.denominator) * sympy.sqrt(d) for d, c in q.items()),
               sympy.Integer(0))


# ring operations

def test_square_of_radical():
    assert r2 * r2 == QSqrt(2)


def test_cancellation():
    assert (ONE + r2) + (ONE - r2) == QSqrt(2)


def test_coprime_radicands_multiply():
    assert r2 * r3 == QSqrt.sqrt(6)


def test_zero_is_empty():
    assert QSqrt(0).terms == {}
    assert QSqrt(0).to_json_obj() == []
    assert ZERO == r2 - r2


# sqrt_of_rational

@pytest.mark.parametrize("r, expected", [
    (Fraction(4, 9), QSqrt(Fraction(2, 3))),
    (8, 2 * r2),
    (Fraction(3, 2), Fraction(1, 2) * QSqrt.sqrt(6)),
])
def test_sqrt_of_rational_examples(r, expected):
    assert sqrt_of_rational(r) == expected


# division

def test_divide_examples():
    assert divide_by_radical(QSqrt(2), r2) == r2
    assert divide_by_radical(QSqrt.sqrt(6), r2) == r3


def test_multi_term_divisor_rejected():
    a = ONE + r2
    with pytest.raises(UnsupportedDivisorError):
        divide_by_radical(a, a)


# to_float

def test_to_float_examples():
    assert to_float(QSqrt(Fraction(2, 3))) == pytest.approx(2 / 3, rel=1e-15)
    assert to_float(r2) == pytest.approx(math.sqrt(2), rel=1e-15)
    assert to_float(ZERO) == 0.0


def test_json_round_trip():
    q = Fraction(-3, 7) * QSqrt.sqrt(30) + Fraction(1, 2)
    assert QSqrt.from_json(q.to_json()) == q
    assert q.to_json() == QSqrt.from_json(q.to_json()).to_json()


def test_complex_parts():
    z = CQSqrt(r2, -r3)
    assert z.conjugate() == CQSqrt(r2, r3)
    assert z.to_complex() == pytest.approx(complex(math.sqrt(2), -math.sqrt(3)))


# properties

rationals = st.fractions(min_value=-10**6, max_value=10**6, max_denominator=10**6)
small = st.fractions(min_value=-50, max_value=50, max_denominator=50)
radicands = st.integers(min_value=1, max_value=10**4)


@st.composite
def qsqrts(draw, n=3):
    terms = {}
    for _ in range(draw(st.integers(0, n))):
        terms[draw(st.integers(1, 60))] = draw(small)
    return QSqrt.from_terms(terms)


@given(st.fractions(min_value=0, max_value=10**6, max_denominator=10**6))
def test_sqrt_squares_back(r):
    assert sqrt_of_rational(r).square() == QSqrt(r)


@given(st.lists(radicands, min_size=1, max_size=6))
def test_products_are_canonical(ds):
    prod = ONE
    for d in ds:
        prod = prod * QSqrt.sqrt(d)
    again = QSqrt.from_terms(dict(prod.items()))
    assert again == prod
    for d, c in prod.items():
        assert c != 0
        assert squarefree_decompose(d) == (1, d)
    ref = sympy.sqrt(sympy.Integer(math.prod(ds)))
    assert sympy.simplify(as_sympy(prod) - ref) == 0


@given(qsqrts(), qsqrts(), qsqrts())
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a


@given(qsqrts(), qsqrts())
def test_agrees_with_sympy(a, b):
    assert sympy.expand(as_sympy(a * b) - as_sympy(a) * as_sympy(b)) == 0


@given(qsqrts(), qsqrts())
def test_float_is_multiplicative(a, b):
    x, y = to_float(a), to_float(b)
    assert to_float(a * b) == pytest.approx(x * y, rel=1e-12, abs=1e-12 * (1 + abs(x * y)))


@given(st.integers(1, 10**7))
def test_squarefree_decompose(n):
    k, d = squarefree_decompose(n)
    assert k * k * d == n
    assert sympy.factorint(d) == {p: 1 for p in sympy.factorint(d)}
