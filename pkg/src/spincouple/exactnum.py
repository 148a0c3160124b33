"""Exact arithmetic over the rationals extended by square roots.

A :class:`QSqrt` is a finite sum ``sum_d c_d * sqrt(d)`` with rational
coefficients ``c_d`` and square-free positive radicands ``d``.  Since the
square roots of distinct square-free integers are linearly independent over
Q, the mapping ``d -> c_d`` is a canonical form and equality is structural.

Products of CG coefficients, 6j symbols and reduced matrix elements all stay
inside this ring, which is what makes exact identity checks possible.
"""
from __future__ import annotations

import json
import math
import random
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Mapping

__all__ = [
    "QSqrt",
    "CQSqrt",
    "ExactDomainError",
    "UnsupportedDivisorError",
    "sqrt_of_rational",
    "sqrt_of_prime_powers",
    "divide_by_radical",
    "to_float",
    "squarefree_decompose",
    "ZERO",
    "ONE",
    "I",
]

TRIAL_DIVISION_BOUND = 10**6


class ExactDomainError(ValueError):
    """Raised for inputs outside the domain of an exact operation."""


class UnsupportedDivisorError(ZeroDivisionError):
    """Raised when dividing by zero or by a sum of several radicals."""


# ---------------------------------------------------------------------------
# square-free factorisation

def _is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for p in small:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    if n % 2 == 0:
        return 2
    rng = random.Random(n)
    while True:
        c = rng.randrange(1, n)
        f = lambda v: (v * v + c) % n  # noqa: E731
        x = y = rng.randrange(2, n)
        d = 1
        while d == 1:
            x = f(x)
            y = f(f(y))
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d


def _factor_large(n: int, out: dict[int, int]) -> None:
    if n == 1:
        return
    if _is_probable_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    d = _pollard_rho(n)
    _factor_large(d, out)
    _factor_large(n // d, out)


def factorize(n: int, bound: int = TRIAL_DIVISION_BOUND) -> dict[int, int]:
    """Prime factorisation of a positive integer.

    Trial division up to ``bound``; any cofactor left over is split with
    Pollard's rho.
    """
    if n < 1:
        raise ExactDomainError(f"cannot factor {n}")
    out: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    p = 5
    step = 2
    while p * p <= n and p <= bound:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += step
        step = 6 - step
    if n > 1:
        if p * p > n:
            out[n] = out.get(n, 0) + 1
        else:
            _factor_large(n, out)
    return out


@lru_cache(maxsize=1 << 16)
def squarefree_decompose(n: int) -> tuple[int, int]:
    """Return ``(s, d)`` with ``n == s*s*d`` and ``d`` square-free."""
    if n < 1:
        raise ExactDomainError(f"squarefree_decompose needs n >= 1, got {n}")
    s = d = 1
    for p, e in factorize(n).items():
        s *= p ** (e // 2)
        if e % 2:
            d *= p
    return s, d


# ---------------------------------------------------------------------------
# QSqrt

def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    raise TypeError(f"expected a rational, got {type(x).__name__}")


class QSqrt:
    """Exact number ``sum_d c_d sqrt(d)``; immutable and hashable."""

    __slots__ = ("_t", "_hash")

    def __init__(self, value=0):
        if isinstance(value, QSqrt):
            self._t = value._t
        else:
            c = _as_fraction(value)
            self._t = ((1, c),) if c else ()
        self._hash = None

    @classmethod
    def _raw(cls, items: Iterable[tuple[int, Fraction]]) -> "QSqrt":
        # items must already be canonical: square-free keys, nonzero values
        obj = object.__new__(cls)
        obj._t = tuple(sorted(items))
        obj._hash = None
        return obj

    @classmethod
    def from_terms(cls, terms: Mapping[int, object]) -> "QSqrt":
        """Build from ``{radicand: coefficient}``; radicands need not be square-free."""
        acc: dict[int, Fraction] = {}
        for d, c in terms.items():
            d = int(d)
            c = _as_fraction(c)
            if d < 1:
                raise ExactDomainError(f"radicand must be positive, got {d}")
            if not c:
                continue
            s, r = squarefree_decompose(d)
            acc[r] = acc.get(r, 0) + c * s
        return cls._raw((d, c) for d, c in acc.items() if c)

    @classmethod
    def sqrt(cls, r) -> "QSqrt":
        return sqrt_of_rational(r)

    # -- inspection ---------------------------------------------------------
    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(self._t)

    def items(self) -> tuple[tuple[int, Fraction], ...]:
        return self._t

    def is_zero(self) -> bool:
        return not self._t

    def is_rational(self) -> bool:
        return not self._t or (len(self._t) == 1 and self._t[0][0] == 1)

    def is_single_term(self) -> bool:
        return len(self._t) == 1

    def rational(self) -> Fraction:
        if not self._t:
            return Fraction(0)
        if not self.is_rational():
            raise ExactDomainError(f"{self} is irrational")
        return self._t[0][1]

    def square(self) -> "QSqrt":
        return self * self

    # -- arithmetic ---------------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self._t)

    def __neg__(self) -> "QSqrt":
        return QSqrt._raw((d, -c) for d, c in self._t)

    def __pos__(self) -> "QSqrt":
        return self

    def __add__(self, other) -> "QSqrt":
        if not isinstance(other, QSqrt):
            try:
                other = QSqrt(other)
            except TypeError:
                return NotImplemented
        if not other._t:
            return self
        if not self._t:
            return other
        acc = dict(self._t)
        for d, c in other._t:
            v = acc.get(d)
            if v is None:
                acc[d] = c
            else:
                v += c
                if v:
                    acc[d] = v
                else:
                    del acc[d]
        return QSqrt._raw(acc.items())

    __radd__ = __add__

    def __sub__(self, other) -> "QSqrt":
        if not isinstance(other, QSqrt):
            try:
                other = QSqrt(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "QSqrt":
        return (-self) + other

    def __mul__(self, other) -> "QSqrt":
        if not isinstance(other, QSqrt):
            if isinstance(other, CQSqrt):
                return NotImplemented
            try:
                f = _as_fraction(other)
            except TypeError:
                return NotImplemented
            if not f:
                return ZERO
            return QSqrt._raw((d, c * f) for d, c in self._t)
        a, b = self._t, other._t
        if not a or not b:
            return ZERO
        if len(a) == 1 and len(b) == 1:
            (d1, c1), (d2, c2) = a[0], b[0]
            if d1 == 1 or d2 == 1:
                return QSqrt._raw(((d1 * d2, c1 * c2),))
            g = math.gcd(d1, d2)
            return QSqrt._raw((((d1 // g) * (d2 // g), c1 * c2 * g),))
        acc: dict[int, Fraction] = {}
        for d1, c1 in a:
            for d2, c2 in b:
                g = math.gcd(d1, d2)
                d = (d1 // g) * (d2 // g)
                acc[d] = acc.get(d, 0) + c1 * c2 * g
        return QSqrt._raw((d, c) for d, c in acc.items() if c)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "QSqrt":
        if isinstance(other, QSqrt):
            return divide_by_radical(self, other)
        try:
            f = _as_fraction(other)
        except TypeError:
            return NotImplemented
        if not f:
            raise UnsupportedDivisorError("division by zero")
        return QSqrt._raw((d, c / f) for d, c in self._t)

    def __rtruediv__(self, other) -> "QSqrt":
        return divide_by_radical(QSqrt(other), self)

    def __eq__(self, other) -> bool:
        if isinstance(other, QSqrt):
            return self._t == other._t
        if isinstance(other, CQSqrt):
            return other == self
        try:
            return self._t == QSqrt(other)._t
        except TypeError:
            return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._t)
        return self._hash

    def __float__(self) -> float:
        return to_float(self)

    def __complex__(self) -> complex:
        return complex(to_float(self))

    def sign(self) -> int:
        if not self._t:
            return 0
        v = to_float(self)
        return 1 if v > 0 else -1

    def __abs__(self) -> "QSqrt":
        return -self if self.sign() < 0 else self

    def conjugate(self) -> "QSqrt":
        return self

    # -- presentation -------------------------------------------------------
    def __repr__(self) -> str:
        return f"QSqrt({str(self)!r})"

    def __str__(self) -> str:
        if not self._t:
            return "0"
        parts = []
        for d, c in self._t:
            parts.append(str(c) if d == 1 else f"{c}*sqrt({d})")
        return " + ".join(parts).replace("+ -", "- ")

    def to_json_obj(self) -> list[dict]:
        return [{"c": str(c), "d": d} for d, c in self._t]

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"))

    @classmethod
    def from_json_obj(cls, obj) -> "QSqrt":
        terms: dict[int, Fraction] = {}
        for item in obj:
            d = int(item["d"])
            terms[d] = terms.get(d, 0) + Fraction(item["c"])
        return cls.from_terms(terms)

    @classmethod
    def from_json(cls, text: str) -> "QSqrt":
        return cls.from_json_obj(json.loads(text))


ZERO = QSqrt(0)
ONE = QSqrt(1)


def sqrt_of_rational(r) -> QSqrt:
    """Exact square root of a non-negative rational, as ``(s/q) sqrt(d)``."""
    r = _as_fraction(r)
    if r < 0:
        raise ExactDomainError(f"square root of negative number {r}")
    if not r:
        return ZERO
    p, q = r.numerator, r.denominator
    s, d = squarefree_decompose(p * q)
    return QSqrt._raw(((d, Fraction(s, q)),))


def sqrt_of_prime_powers(exps: Mapping[int, int], sign: int = 1) -> QSqrt:
    """``sign * sqrt(prod p**e)`` for a factored rational (exponents may be negative)."""
    num = den = 1
    d = 1
    for p, e in exps.items():
        if not e:
            continue
        h = e // 2  # floor, also for negative odd e
        if e % 2:
            d *= p
        if h > 0:
            num *= p ** h
        elif h < 0:
            den *= p ** (-h)
    return QSqrt._raw(((d, Fraction(sign * num, den)),))


def divide_by_radical(a: QSqrt, b: QSqrt) -> QSqrt:
    """Exact ``a / b`` for a single-term divisor ``b = c sqrt(d)``."""
    if not isinstance(b, QSqrt):
        b = QSqrt(b)
    if len(b._t) != 1:
        raise UnsupportedDivisorError(
            f"divisor must be a single nonzero radical term, got {b}")
    d, c = b._t[0]
    # 1/(c sqrt d) = sqrt(d) / (c d)
    inv = QSqrt._raw(((d, 1 / (c * d)),))
    return a * inv


def to_float(a: QSqrt) -> float:
    """Double approximation with relative error well below 2**-50.

    Multi-term values are summed in fixed point with enough guard bits to
    survive cancellation between terms.
    """
    t = a._t
    if not t:
        return 0.0
    if len(t) == 1:
        d, c = t[0]
        if d == 1:
            return float(c)
        num, den = c.numerator, c.denominator
        v = _sqrt_ratio(num * num * d, den * den)
        return v if num > 0 else -v
    # bound on sum of |c_d| sqrt(d) sets the scale of the fixed-point grid
    scale = max(abs(c).numerator.bit_length() - abs(c).denominator.bit_length()
                + d.bit_length() // 2 + 2 for d, c in t)
    bits = 96 - min(scale, 0)
    while True:
        total = 0
        slack = 0
        for d, c in t:
            root = math.isqrt(d << (2 * bits))
            total += (c.numerator * root) // c.denominator
            slack += abs(c.numerator) // c.denominator + 2
        if abs(total) > slack << 56:
            return float(Fraction(total, 1 << bits))
        bits *= 2
        if bits > 1 << 20:  # a genuine nonzero value cannot be this small here
            return float(Fraction(total, 1 << bits))


def _sqrt_ratio(p: int, q: int) -> float:
    """sqrt(p/q) for positive ints, accurate for huge operands."""
    shift = max(0, 2 * (q.bit_length() - p.bit_length()) + 120)
    shift += shift % 2
    r = math.isqrt((p << shift) // q)
    return math.ldexp(float(r >> max(r.bit_length() - 62, 0)),
                      max(r.bit_length() - 62, 0) - shift // 2)


# ---------------------------------------------------------------------------
# complex extension

class CQSqrt:
    """Complex exact number ``re + i*im`` with :class:`QSqrt` parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if isinstance(re, QSqrt) else QSqrt(re)
        self.im = im if isinstance(im, QSqrt) else QSqrt(im)

    @staticmethod
    def _coerce(x) -> "CQSqrt | None":
        if isinstance(x, CQSqrt):
            return x
        if isinstance(x, QSqrt):
            return CQSqrt(x, ZERO)
        try:
            return CQSqrt(QSqrt(x), ZERO)
        except TypeError:
            return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CQSqrt(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CQSqrt(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return CQSqrt(-self.re, -self.im)

    def __mul__(self, other):
        if isinstance(other, CQSqrt):
            a, b, c, d = self.re, self.im, other.re, other.im
            if not b and not d:
                return CQSqrt(a * c, ZERO)
            return CQSqrt(a * c - b * d, a * d + b * c)
        if isinstance(other, (QSqrt, int, Fraction)):
            return CQSqrt(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, CQSqrt):
            if other.im:
                if other.re:
                    raise UnsupportedDivisorError("complex divisor with both parts")
                # (a+ib)/(i y) = (b - i a)/y
                return CQSqrt(self.im / other.im, -self.re / other.im)
            other = other.re
        return CQSqrt(self.re / other, self.im / other)

    def conjugate(self) -> "CQSqrt":
        return CQSqrt(self.re, -self.im)

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    def __complex__(self) -> complex:
        return complex(to_float(self.re), to_float(self.im))

    def to_complex(self) -> complex:
        return complex(self)

    def is_real(self) -> bool:
        return not self.im

    def __repr__(self) -> str:
        return f"CQSqrt({self.re}, {self.im})"

    def to_json_obj(self) -> dict:
        return {"re": self.re.to_json_obj(), "im": self.im.to_json_obj()}


I = CQSqrt(0, 1)
