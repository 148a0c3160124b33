"""Clebsch-Gordan coefficients and 6j symbols in exact arithmetic.

Angular momenta are handled internally as twice their value ("2j"), so that
half-integers are plain ints.  The public functions accept ints, Fractions,
floats that are multiples of 1/2, or strings such as ``"3/2"``.

Square roots of factorial ratios are built from prime-exponent vectors, so
no large integer is ever factored.
"""
from __future__ import annotations

import os
import threading
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .exactnum import QSqrt, ZERO, sqrt_of_rational

__all__ = [
    "HalfInt",
    "two",
    "half",
    "cg",
    "cg2",
    "sixj",
    "sixj2",
    "recouple_check",
    "cg_zero_closed",
    "triangle2",
    "set_cache_size",
    "cache_size",
    "cache_info",
    "clear_caches",
]


class QuantumNumberError(ValueError):
    """Raised for values that are not multiples of 1/2."""


class HalfInt(int):
    """An angular momentum stored as the integer ``2j``.

    ``HalfInt(3)`` is 3/2.  Use :meth:`of` to build from a value.
    """

    @classmethod
    def of(cls, x) -> "HalfInt":
        return cls(two(x))

    @property
    def value(self) -> Fraction:
        return Fraction(int(self), 2)

    def __repr__(self) -> str:
        return f"HalfInt({half(int(self))})"


def two(x) -> int:
    """Twice the value of a half-integer given as int/Fraction/float/str."""
    if isinstance(x, HalfInt):
        return int(x)
    if isinstance(x, bool):
        raise QuantumNumberError("booleans are not quantum numbers")
    if isinstance(x, int):
        return 2 * x
    if isinstance(x, str):
        x = x.strip()
        try:
            f = Fraction(x)
        except ValueError as exc:
            raise QuantumNumberError(f"cannot parse {x!r}") from exc
    elif isinstance(x, float):
        f = Fraction(x)
    else:
        f = Fraction(x)
    t = 2 * f
    if t.denominator != 1:
        raise QuantumNumberError(f"{x!r} is not a multiple of 1/2")
    return int(t)


def half(t: int) -> str:
    """Human-readable form of a twice-value."""
    return str(t // 2) if t % 2 == 0 else f"{t}/2"


# ---------------------------------------------------------------------------
# factorial prime exponents

def _primes_upto(n: int) -> np.ndarray:
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, int(n ** 0.5) + 1):
        if sieve[p]:
            sieve[p * p::p] = False
    return np.nonzero(sieve)[0]


class _FactorialTable:
    """Exponent vectors of n! over the primes <= nmax, plus exact n! values."""

    def __init__(self, nmax: int = 4 * (2 * 256 + 1)):
        self._lock = threading.Lock()
        self._build(nmax)

    def _build(self, nmax: int) -> None:
        primes = _primes_upto(max(nmax, 2))
        exps = np.zeros((nmax + 1, len(primes)), dtype=np.int64)
        for i, p in enumerate(primes):
            p = int(p)
            n = np.arange(nmax + 1)
            e = np.zeros(nmax + 1, dtype=np.int64)
            pk = p
            while pk <= nmax:
                e += n // pk
                pk *= p
            exps[:, i] = e
        facts = [1] * (nmax + 1)
        for k in range(2, nmax + 1):
            facts[k] = facts[k - 1] * k
        self.nmax = nmax
        self.primes = [int(p) for p in primes]
        self.exps = exps
        self.facts = facts

    def ensure(self, n: int) -> None:
        if n > self.nmax:
            with self._lock:
                if n > self.nmax:
                    self._build(max(n, 2 * self.nmax))

    def sqrt_ratio(self, num: list[int], den: list[int]) -> QSqrt:
        """``sqrt(prod num! / prod den!)`` as a single-term QSqrt."""
        top = max(max(num, default=0), max(den, default=0))
        self.ensure(top)
        e = self.exps
        acc = np.zeros(e.shape[1], dtype=np.int64)
        for n in num:
            acc += e[n]
        for n in den:
            acc -= e[n]
        nz = np.nonzero(acc)[0]
        r_num = r_den = d = 1
        primes = self.primes
        for i in nz:
            k = int(acc[i])
            p = primes[i]
            h = k // 2
            if k & 1:
                d *= p
            if h > 0:
                r_num *= p ** h
            elif h < 0:
                r_den *= p ** (-h)
        return QSqrt._raw(((d, Fraction(r_num, r_den)),))


_FT = _FactorialTable()


def fact(n: int) -> int:
    _FT.ensure(n)
    return _FT.facts[n]


def triangle2(a: int, b: int, c: int) -> bool:
    """Triangle rule for twice-values, including integer perimeter."""
    return (c <= a + b and c >= abs(a - b) and (a + b + c) % 2 == 0)


# ---------------------------------------------------------------------------
# Racah sums

def _cg2_raw(j1: int, m1: int, j2: int, m2: int, j: int, m: int) -> QSqrt:
    if m1 + m2 != m:
        return ZERO
    if abs(m1) > j1 or abs(m2) > j2 or abs(m) > j:
        return ZERO
    if (j1 - m1) % 2 or (j2 - m2) % 2 or (j - m) % 2:
        return ZERO
    if not triangle2(j1, j2, j):
        return ZERO
    # all quantities below are integers (halved twice-values)
    a = (j1 + j2 - j) // 2
    b = (j1 - j2 + j) // 2
    c = (-j1 + j2 + j) // 2
    big = (j1 + j2 + j) // 2 + 1
    p1, q1 = (j1 + m1) // 2, (j1 - m1) // 2
    p2, q2 = (j2 + m2) // 2, (j2 - m2) // 2
    p, q = (j + m) // 2, (j - m) // 2
    e1 = (j - j2 + m1) // 2
    e2 = (j - j1 - m2) // 2
    kmin = max(0, -e1, -e2)
    kmax = min(a, q1, p2)
    if kmin > kmax:
        return ZERO
    _FT.ensure(big)
    F = _FT.facts
    total = Fraction(0)
    for k in range(kmin, kmax + 1):
        den = F[k] * F[a - k] * F[q1 - k] * F[p2 - k] * F[e1 + k] * F[e2 + k]
        total += Fraction(-1 if k & 1 else 1, den)
    if not total:
        return ZERO
    root = _FT.sqrt_ratio([a, b, c, p1, q1, p2, q2, p, q], [big])
    # (2j+1) factor
    root = root * sqrt_of_rational(j + 1)
    return root * total


def _delta2(a: int, b: int, c: int) -> tuple[list[int], list[int]]:
    return ([(a + b - c) // 2, (a - b + c) // 2, (-a + b + c) // 2],
            [(a + b + c) // 2 + 1])


def _sixj2_raw(a: int, b: int, c: int, d: int, e: int, f: int) -> QSqrt:
    # {a b c; d e f}, triads (a,b,c) (a,e,f) (d,b,f) (d,e,c)
    if not (triangle2(a, b, c) and triangle2(a, e, f)
            and triangle2(d, b, f) and triangle2(d, e, c)):
        return ZERO
    t1 = (a + b + c) // 2
    t2 = (a + e + f) // 2
    t3 = (d + b + f) // 2
    t4 = (d + e + c) // 2
    u1 = (a + b + d + e) // 2
    u2 = (a + c + d + f) // 2
    u3 = (b + c + e + f) // 2
    kmin = max(t1, t2, t3, t4)
    kmax = min(u1, u2, u3)
    if kmin > kmax:
        return ZERO
    _FT.ensure(kmax + 1)
    F = _FT.facts
    total = Fraction(0)
    for k in range(kmin, kmax + 1):
        num = F[k + 1] * (-1 if k & 1 else 1)
        den = (F[k - t1] * F[k - t2] * F[k - t3] * F[k - t4]
               * F[u1 - k] * F[u2 - k] * F[u3 - k])
        total += Fraction(num, den)
    if not total:
        return ZERO
    num: list[int] = []
    den: list[int] = []
    for tri in ((a, b, c), (a, e, f), (d, b, f), (d, e, c)):
        n_, d_ = _delta2(*tri)
        num += n_
        den += d_
    return _FT.sqrt_ratio(num, den) * total


# ---------------------------------------------------------------------------
# caching

def _default_cache_size() -> int:
    env = os.environ.get("SPINCOUPLE_CACHE")
    if env is None or env.strip() == "":
        return 1 << 20
    return max(0, int(env))


_cg_cached = None
_sixj_cached = None
_cache_size = 0
_cg_impl = _cg2_raw
_sixj_impl = _sixj2_raw


def set_cache_size(size: int) -> None:
    """Resize (and clear) the cg/6j memo caches; 0 disables caching."""
    global _cg_cached, _sixj_cached, _cg_impl, _sixj_impl, _cache_size
    size = _cache_size = max(0, int(size))
    if size <= 0:
        _cg_cached = _sixj_cached = None
        _cg_impl, _sixj_impl = _cg2_raw, _sixj2_raw
    else:
        # functools.lru_cache is internally locked, so concurrent use is safe
        _cg_cached = lru_cache(maxsize=size)(_cg2_raw)
        _sixj_cached = lru_cache(maxsize=size)(_sixj2_raw)
        _cg_impl, _sixj_impl = _cg_cached, _sixj_cached


def cache_size() -> int:
    return _cache_size


def cache_info() -> dict:
    out = {}
    for name, fn in (("cg", _cg_cached), ("sixj", _sixj_cached)):
        out[name] = None if fn is None else fn.cache_info()._asdict()
    return out


def clear_caches() -> None:
    for fn in (_cg_cached, _sixj_cached):
        if fn is not None:
            fn.cache_clear()


set_cache_size(_default_cache_size())


def cg2(j1: int, m1: int, j2: int, m2: int, j: int, m: int) -> QSqrt:
    """CG coefficient with all arguments given as twice-values."""
    return _cg_impl(j1, m1, j2, m2, j, m)


def sixj2(a: int, b: int, c: int, d: int, e: int, f: int) -> QSqrt:
    """6j symbol with all arguments given as twice-values."""
    return _sixj_impl(a, b, c, d, e, f)


# ---------------------------------------------------------------------------
# public API

def cg(j1, m1, j2, m2, j, m) -> QSqrt:
    """<j1 m1; j2 m2 | j m> with Condon-Shortley phases.

    Zero outside the physical domain (non-conserved m, broken triangle, or
    |m| > j).
    """
    return cg2(two(j1), two(m1), two(j2), two(m2), two(j), two(m))


def sixj(j1, j2, j3, j4, j5, j6) -> QSqrt:
    """Wigner 6j symbol {j1 j2 j3; j4 j5 j6}."""
    return sixj2(two(j1), two(j2), two(j3), two(j4), two(j5), two(j6))


def sign2(t: int) -> int:
    """(-1)**(t/2) for an even twice-value t."""
    if t % 2:
        raise QuantumNumberError(f"phase exponent {half(t)} is not an integer")
    return -1 if (t // 2) % 2 else 1


def recouple_check(j1, m1, j2, m2, j3, m3, jp, j, m) -> tuple[QSqrt, QSqrt]:
    """Both sides of the 6j recoupling identity for three angular momenta.

    lhs = <j1 m1; j2 m2|j' m1+m2> <j' m1+m2; j3 m3|j m>
    rhs = sum_j'' sqrt((2j'+1)(2j''+1)) (-1)^(j1+j2+j3+j) {j1 j2 j'; j3 j j''}
          <j1 m1; j'' m2+m3|j m> <j2 m2; j3 m3|j'' m2+m3>
    """
    J1, M1, J2, M2, J3, M3 = map(two, (j1, m1, j2, m2, j3, m3))
    JP, J, M = two(jp), two(j), two(m)
    lhs = cg2(J1, M1, J2, M2, JP, M1 + M2) * cg2(JP, M1 + M2, J3, M3, J, M)
    rhs = ZERO
    if (J1 + J2 + J3 + J) % 2:
        return lhs, rhs  # no admissible coupling; every term vanishes
    ph = sign2(J1 + J2 + J3 + J)
    for JPP in range(abs(J2 - J3), J2 + J3 + 1, 2):
        w = sixj2(J1, J2, JP, J3, J, JPP)
        if not w:
            continue
        c = cg2(J1, M1, JPP, M2 + M3, J, M) * cg2(J2, M2, J3, M3, JPP, M2 + M3)
        if not c:
            continue
        rhs = rhs + sqrt_of_rational((JP + 1) * (JPP + 1)) * w * c * ph
    return lhs, rhs


def _dfact(n: int) -> int:
    out = 1
    for k in range(n, 0, -2):
        out *= k
    return out


def cg_zero_closed(l: int, n: int, t: int, sign: int) -> QSqrt:
    """Closed form of <l 0; n+t 0 | l_n 0> with l_n = l + sign*n.

    Vanishes for odd t; for even t it is a product of factorial ratios.
    """
    if sign not in (1, -1) or n < 0 or t < 0:
        raise QuantumNumberError("need sign = +-1 and n, t >= 0")
    ln = l + sign * n
    if ln < 0:
        raise QuantumNumberError("l_n must be non-negative")
    if t % 2 or ln + l < n + t:
        return ZERO
    a = Fraction(_dfact(2 * n + t - 1) * _dfact(t - 1), fact(n + t // 2) * fact(t // 2))
    b = Fraction(fact((ln + l + n + t) // 2), fact((ln + l - n - t) // 2))
    c = Fraction(_dfact(ln + l - n - t - 1), _dfact(ln + l + n + t + 1))
    val = sqrt_of_rational(a * (2 * ln + 1) * b * c)
    return -val if ((t // 2) + n * (sign < 0)) % 2 else val
