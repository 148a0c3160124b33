"""Products of two CG coefficients with a common total angular momentum.

    S(j, l', l, s', s) = <l' l'_z; s' s'_z | j j_z> <l l_z; s s_z | j j_z>

evaluated four ways:

* ``s_direct``        the raw product,
* ``s_factorized``    6j expansion into an orbital CG times a spin CG,
* ``s_operator_form`` coefficients C times orbital and spin matrix elements of
                      irreducible products of (r, L) and (T, S),
* ``s_kappa``         coefficients kappa times cg(l l_z; D dl_z | l' l'_z)
                      cg(s' s'_z; D dl_z | s s_z).

The closed-form tables cover (s', s) in {(1/2,1/2), (1,1), (3/2,3/2), (1,0),
(0,1), (3/2,1/2), (1/2,3/2)}.  Everything else goes through the general
6j expressions.  Quantum numbers are stored as twice-values.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterator

from .exactnum import CQSqrt, ExactDomainError, QSqrt, ZERO, sqrt_of_rational
from .redmat import redmat_spin_analog, redmat_word
from .spinops import UnsupportedCaseError, spin_me_closed, spin_me_matrix
from .wigner import QuantumNumberError, cg2, sign2, sixj2, triangle2, two

__all__ = [
    "CouplingCase",
    "UndefinedCoefficientError",
    "UnsupportedCaseError",
    "TABLE_PAIRS",
    "s_direct",
    "s_factorized",
    "s_operator_form",
    "s_kappa",
    "coeff_C_general",
    "coeff_C_table",
    "coeff_kappa_general",
    "coeff_kappa_table",
    "allowed_j",
    "delta_range",
    "iter_cases",
    "alt_ratio_check",
]


class UndefinedCoefficientError(ZeroDivisionError):
    """A coefficient whose defining reduced matrix element vanishes."""


# (2s', 2s) pairs with closed-form tables
TABLE_PAIRS = ((1, 1), (2, 2), (3, 3), (2, 0), (0, 2), (3, 1), (1, 3))


@dataclass(frozen=True)
class CouplingCase:
    """All labels of S as twice-values (orbital ones are even)."""

    j2: int
    lp2: int
    l2: int
    sp2: int
    s2: int
    lpz2: int
    lz2: int
    spz2: int
    sz2: int

    @classmethod
    def make(cls, j, lp, l, sp, s, lpz, lz, spz, sz) -> "CouplingCase":
        c = cls(two(j), two(lp), two(l), two(sp), two(s),
                two(lpz), two(lz), two(spz), two(sz))
        c.validate()
        return c

    def validate(self) -> None:
        if self.lp2 % 2 or self.l2 % 2:
            raise QuantumNumberError("orbital angular momenta must be integers")
        for a, m in ((self.lp2, self.lpz2), (self.l2, self.lz2),
                     (self.sp2, self.spz2), (self.s2, self.sz2)):
            if a < 0 or abs(m) > a or (a - m) % 2:
                raise QuantumNumberError(f"projection {m}/2 invalid for {a}/2")
        if self.j2 < 0:
            raise QuantumNumberError("j must be non-negative")

    @property
    def lp(self) -> int:
        return self.lp2 // 2

    @property
    def l(self) -> int:
        return self.l2 // 2

    @property
    def dl(self) -> int:
        return (self.lp2 - self.l2) // 2

    @property
    def dlz2(self) -> int:
        return self.lpz2 - self.lz2

    @property
    def conserves_jz(self) -> bool:
        return self.lpz2 + self.spz2 == self.lz2 + self.sz2


def delta_range(lp2: int, l2: int, sp2: int, s2: int) -> range:
    """Integer D from max(|dl|, |ds|) to min(l'+l, s'+s) (may be empty)."""
    lo = max(abs(lp2 - l2), abs(sp2 - s2)) // 2
    hi = min(lp2 + l2, sp2 + s2) // 2
    return range(lo, hi + 1)


# ---------------------------------------------------------------------------
# direct and 6j-factorized products

def s_direct(case: CouplingCase) -> QSqrt:
    c = case
    if not c.conserves_jz:
        return ZERO
    jz2 = c.lz2 + c.sz2
    a = cg2(c.lp2, c.lpz2, c.sp2, c.spz2, c.j2, jz2)
    if not a:
        return ZERO
    return a * cg2(c.l2, c.lz2, c.s2, c.sz2, c.j2, jz2)


def s_factorized(case: CouplingCase) -> QSqrt:
    c = case
    if not c.conserves_jz:
        return ZERO
    dlz2 = c.dlz2
    total = ZERO
    for d in delta_range(c.lp2, c.l2, c.sp2, c.s2):
        w = sixj2(c.lp2, 2 * d, c.l2, c.s2, c.j2, c.sp2)
        if not w:
            continue
        a = cg2(c.l2, c.lz2, 2 * d, dlz2, c.lp2, c.lpz2)
        if not a:
            continue
        b = cg2(c.s2, c.sz2, 2 * d, -dlz2, c.sp2, c.spz2)
        if not b:
            continue
        total = total + w * a * b * (2 * d + 1)
    if not total:
        return ZERO
    ph = sign2(c.spz2 + c.sz2) * sign2(c.l2 + c.sp2 - c.j2)
    return total * (ph * Fraction(c.j2 + 1)) / sqrt_of_rational(
        Fraction((c.lp2 + 1) * (c.sp2 + 1)))


# ---------------------------------------------------------------------------
# general coefficients

def _orbital_word(d: int, a: int) -> str:
    return "R" * a + "L" * (d - a)


def _spin_word(d: int, a: int) -> str:
    return "T" * a + "S" * (d - a)


@lru_cache(maxsize=None)
def _coeff_C_general2(sp2: int, s2: int, d: int, lp2: int, l2: int, j2: int) -> QSqrt:
    w = sixj2(lp2, 2 * d, l2, s2, j2, sp2)
    orb = redmat_word(Fraction(lp2, 2), Fraction(l2, 2), _orbital_word(d, abs(lp2 - l2) // 2))
    spn = redmat_spin_analog(Fraction(sp2, 2), Fraction(s2, 2), _spin_word(d, abs(sp2 - s2) // 2))
    den = orb * spn
    if not den:
        raise UndefinedCoefficientError(
            f"reduced matrix elements vanish for D={d}, l'={lp2}/2, l={l2}/2, "
            f"s'={sp2}/2, s={s2}/2")
    if not w:
        return ZERO
    ph = sign2(2 * sp2) * sign2(l2 + sp2 - j2)
    num = w * (ph * Fraction((j2 + 1) * (2 * d + 1)))
    num = num / sqrt_of_rational(Fraction((lp2 + 1) * (sp2 + 1)))
    return num / den


def coeff_C_general(sp, s, d: int, lp, l, j) -> QSqrt:
    """C^{s' s D}_{l' l j} from the 6j symbol and the reduced matrix elements."""
    sp2, s2, lp2, l2, j2 = two(sp), two(s), two(lp), two(l), two(j)
    _check_delta(sp2, s2, d, lp2, l2)
    return _coeff_C_general2(sp2, s2, int(d), lp2, l2, j2)


@lru_cache(maxsize=None)
def _coeff_kappa_general2(sp2: int, s2: int, d: int, lp2: int, l2: int, j2: int) -> QSqrt:
    w = sixj2(lp2, 2 * d, l2, s2, j2, sp2)
    if not w:
        return ZERO
    ph = sign2(2 * s2) * sign2(l2 + sp2 - j2) * sign2(sp2 - s2)
    out = w * (ph * Fraction((j2 + 1) * (2 * d + 1)))
    return out / sqrt_of_rational(Fraction((lp2 + 1) * (s2 + 1)))


def coeff_kappa_general(sp, s, d: int, lp, l, j) -> QSqrt:
    """kappa^{s' s D}_{l' l j}, the weight of cg(l,l_z;D,dl_z|l',l'_z) cg(s',s'_z;D,dl_z|s,s_z)."""
    sp2, s2, lp2, l2, j2 = two(sp), two(s), two(lp), two(l), two(j)
    _check_delta(sp2, s2, d, lp2, l2)
    return _coeff_kappa_general2(sp2, s2, int(d), lp2, l2, j2)


def _check_delta(sp2, s2, d, lp2, l2) -> None:
    if (lp2 - l2) % 2:
        raise QuantumNumberError("l' - l must be an integer")
    if d < 0 or int(d) != d:
        raise QuantumNumberError("D must be a non-negative integer")
    if 2 * d < max(abs(lp2 - l2), abs(sp2 - s2)):
        raise QuantumNumberError("D below max(|dl|, |ds|)")


# ---------------------------------------------------------------------------
# closed-form tables

def _r(x) -> QSqrt:
    x = Fraction(x)
    if x < 0:
        raise UndefinedCoefficientError("negative radicand in closed form")
    return sqrt_of_rational(x)


def _div(x) -> Fraction:
    x = Fraction(x)
    if x == 0:
        raise UndefinedCoefficientError("vanishing denominator in closed form")
    return 1 / x


def _sgn(k: Fraction) -> int:
    """(-1)^k for integer-valued k."""
    if k.denominator != 1:
        raise ExactDomainError("sign exponent must be an integer")
    return -1 if k.numerator % 2 else 1


@dataclass(frozen=True)
class _Args:
    j: Fraction
    l: Fraction
    lp: Fraction
    dl: int
    ds: int

    @property
    def avg(self) -> Fraction:
        return (self.l + self.lp) / 2

    @property
    def dj(self) -> Fraction:
        return self.j - self.l

    @property
    def dja(self) -> Fraction:
        return self.j - self.avg


Table = dict[tuple[int, int, int, int], Callable[[_Args], QSqrt]]


def _half_half() -> Table:
    def c0(a):
        return QSqrt((a.j + Fraction(1, 2)) / (2 * a.l + 1))

    def c1(a):
        return QSqrt(2 * a.dj * _div(a.l + Fraction(1, 2)))

    return {
        (1, 1, 0, 0): c0,
        (1, 1, 0, 1): c1,
        (1, 1, 1, 1): lambda a: QSqrt(-2),
    }


def _one_one() -> Table:
    def D(a):
        x = a.dj
        return _sgn(x - 1) * (x * x + 1) * (a.j + a.l + 2) * (a.j + a.l + 1) * (a.j + a.l)

    def c0(a):
        return QSqrt((2 * a.j + 1) / (3 * (2 * a.l + 1)))

    def c1(a):
        return QSqrt(2 * (2 * a.j + 1) * (a.dj * (a.j + a.l + 1) + 1) * _div(D(a)))

    def c2(a):
        return QSqrt(4 * (2 * a.j + 1) * _div(D(a)))

    def c1_1(a):
        L = a.avg
        return -_r(2 * a.j + 1) * _r(2 * a.j - L + Fraction(1, 2)) * _div(2 * L + 1)

    def c2_1(a):
        L = a.avg
        return (_r((2 * a.j + 1) * _div(2 * a.j - L + Fraction(1, 2)))
                * (-4 * a.dja * _div(2 * L + 1)))

    def c2_2(a):
        return _r(_div(a.j * (a.j + 1))) * (2 * a.j + 1)

    return {
        (2, 2, 0, 0): c0, (2, 2, 0, 1): c1, (2, 2, 0, 2): c2,
        (2, 2, 1, 1): c1_1, (2, 2, 1, 2): c2_1,
        (2, 2, 2, 2): c2_2,
    }


def _three_halves() -> Table:
    h = Fraction(1, 2)

    def poly(a):
        x = a.dj
        return Fraction(2, 3) * (x - Fraction(3, 2)) * (x + h) * (x + 1)

    def Dt(a):
        return a.l + 1 + poly(a)

    def D(a):
        return Dt(a) * (a.j - poly(a))

    def c0(a):
        return QSqrt(Fraction(1, 4) * (2 * a.j + 1) / (2 * a.l + 1))

    def c1(a):
        x = a.dj
        v = (Fraction(2, 5) * x / (2 * a.l + 1)
             * (a.j + h + 4 * (x - Fraction(3, 2)) * x * (x + Fraction(3, 2))) * _div(Dt(a)))
        return QSqrt(v)

    def c2(a):
        x = a.dj
        v = (-h / (2 * a.l + 1) * (Fraction(5, 4) - x * x)
             * (a.j + h - 2 * x ** 3 + Fraction(9, 2) * x) * _div(D(a)))
        return QSqrt(v)

    def c3(a):
        x = a.dj
        v = -h * _sgn(x - h) * _div(abs(x) * (2 * a.l + 1)) * _div(D(a))
        return QSqrt(v)

    def roots(a):
        L = a.avg
        return _r((a.j + L + 1) ** 2 - 4) * _r(4 - a.dja ** 2)

    def c1_1(a):
        L = a.avg
        return (roots(a) * _r(_div(L * (L + 1)))
                * (-Fraction(1, 5) * (a.j + h) * _div(2 * L + 1)))

    def c2_1(a):
        L, x = a.avg, a.dja
        rt = roots(a)
        if not rt:
            raise UndefinedCoefficientError("vanishing denominator in closed form")
        num = (-2 * (3 * L - a.j + 1) * _div(2 * L + 1)
               * (x * (a.j + h) + h) * (5 * x * x - 4))
        return _r(_div(L * (L + 1))) * num / rt

    def c3_1(a):
        L, x = a.avg, a.dja
        rt = roots(a)
        if not rt:
            raise UndefinedCoefficientError("vanishing denominator in closed form")
        num = (-4 * _div((2 * L + 1) * a.j * (a.j + 1))
               * (3 * a.j - L + 1) * (Fraction(3, 2) * x * x - 1))
        return _r(L * (L + 1)) * num / rt

    def c2_2(a):
        L = a.avg
        return (_r(_div(3 * (2 * a.j - 1) * (2 * a.j + 3)))
                * (2 * (3 * a.j - 2 * L + h)))

    def c3_2(a):
        L = a.avg
        return _r(_div(3 * (2 * a.j - 1) * (2 * a.j + 3))) * (8 * (a.j - L))

    def c3_3(a):
        return _r(a.j * (a.j + 1) * _div((2 * a.j - 1) * (2 * a.j + 3))) * Fraction(-8, 3)

    return {
        (3, 3, 0, 0): c0, (3, 3, 0, 1): c1, (3, 3, 0, 2): c2, (3, 3, 0, 3): c3,
        (3, 3, 1, 1): c1_1, (3, 3, 1, 2): c2_1, (3, 3, 1, 3): c3_1,
        (3, 3, 2, 2): c2_2, (3, 3, 2, 3): c3_2,
        (3, 3, 3, 3): c3_3,
    }


def _one_zero() -> Table:
    def c_0(a):
        return _r(3 * _div(a.l * (a.l + 1)))

    def c10_1(a):
        return _r((2 * a.l + 1) * _div(2 * a.avg + 1)) * (-a.dl) * _r(6)

    def c01_1(a):
        return _r((2 * a.lp + 1) * _div(2 * a.avg + 1)) * a.dl * _r(6)

    return {
        (2, 0, 0, 1): c_0, (0, 2, 0, 1): c_0,
        (2, 0, 1, 1): c10_1, (0, 2, 1, 1): c01_1,
    }


def _mixed_halves() -> Table:
    h = Fraction(1, 2)

    def c1_0(a):
        return _r((2 * a.j - a.l + h) * _div(2 * a.l - a.j + h)) * _div(Fraction(2 * a.l + 1, 2))

    def c2_0(a):
        return (_r(_div((2 * a.j - a.l + h) * (2 * a.l - a.j + h)))
                * (8 * a.dj * _div(2 * a.l + 1)))

    def c1_1(a):
        L, x, e = a.avg, a.dja, a.ds * a.dl
        return (_r(2 * (2 * a.j + 1) * _div(2 * L + 1))
                * _r((2 * a.j - L + e + h) * _div(2 * L - e + 1))
                * _r(1 - 2 * e * x) * (-e))

    def c2_1(a):
        L, x, e = a.avg, a.dja, a.ds * a.dl
        return (_r((Fraction(3, 2) + e * x) * _div(3 * (2 * L - e + 1)))
                * _r(_div(a.j + h + e))
                * (-8 * (1 + 2 * e * x)))

    def c2_2(a):
        L = a.avg
        return (_r((2 * a.j + 1) * (2 * L + 1) * _div(3 * L * (L + 1)))
                * (2 * a.ds * a.dl))

    out: Table = {}
    for key in ((3, 1), (1, 3)):
        out[key + (0, 1)] = c1_0
        out[key + (0, 2)] = c2_0
        out[key + (1, 1)] = c1_1
        out[key + (1, 2)] = c2_1
        out[key + (2, 2)] = c2_2
    return out


_C_TABLE: Table = {}
for _t in (_half_half(), _one_one(), _three_halves(), _one_zero(), _mixed_halves()):
    _C_TABLE.update(_t)


def _kappa_table() -> dict:
    """kappa as a function of (args, C); keyed like the C table."""
    h = Fraction(1, 2)

    def lsq(a):  # sqrt(l(l+1))
        return _r(a.l * (a.l + 1))

    def quad(a):  # sqrt((2l-1)(2l+3))
        return _r((2 * a.l - 1) * (2 * a.l + 3))

    def ratio(a):  # sqrt((2<l>+1)/(2l_1+1)), l_1 = l'
        return _r((2 * a.avg + 1) * _div(2 * a.lp + 1))

    def avgpoly(a, *shifts):
        out = Fraction(1)
        for s in shifts:
            out *= 2 * a.avg + s
        return out

    k = {}
    # s' = s = 1/2
    k[(1, 1, 0, 0)] = lambda a, c: c
    k[(1, 1, 0, 1)] = lambda a, c: _r(Fraction(3, 4)) * lsq(a) * c
    k[(1, 1, 1, 1)] = lambda a, c: _r(Fraction(3, 2)) * ratio(a) * (-a.dl)
    # s' = s = 1
    k[(2, 2, 0, 0)] = lambda a, c: c
    k[(2, 2, 0, 1)] = lambda a, c: _r(2) * lsq(a) * c
    k[(2, 2, 0, 2)] = lambda a, c: _r(Fraction(10, 36)) * lsq(a) * quad(a) * c
    k[(2, 2, 1, 1)] = lambda a, c: ratio(a) * c * a.dl
    k[(2, 2, 1, 2)] = lambda a, c: (ratio(a) * _r(Fraction(5, 48))
                                    * _r(avgpoly(a, -1, 3)) * c * a.dl)
    k[(2, 2, 2, 2)] = lambda a, c: (_r(Fraction(5, 3)) * _r(a.j * (a.j + 1)
                                    * _div((2 * a.j + 1) * (2 * a.lp + 1))) * c)
    # s' = s = 3/2
    k[(3, 3, 0, 0)] = lambda a, c: c
    k[(3, 3, 0, 1)] = lambda a, c: _r(Fraction(15, 4)) * lsq(a) * c
    k[(3, 3, 0, 2)] = lambda a, c: _r(Fraction(5, 4)) * lsq(a) * quad(a) * c
    k[(3, 3, 0, 3)] = lambda a, c: (_r(Fraction(9, 4) * Fraction(7, 20))
                                    * _r((a.l - 1) * a.l * (a.l + 1) * (a.l + 2)) * quad(a) * c)

    def inv_l1(a):
        return _r(_div(2 * a.lp + 1))

    k[(3, 3, 1, 1)] = lambda a, c: (_r(Fraction(15, 8)) * inv_l1(a)
                                    * _r(avgpoly(a, 1)) * c * a.dl)
    k[(3, 3, 1, 2)] = lambda a, c: (_r(Fraction(15, 32)) * inv_l1(a)
                                    * _r(avgpoly(a, -1, 1, 3)) * c * a.dl)
    k[(3, 3, 1, 3)] = lambda a, c: (_r(Fraction(21, 320)) * inv_l1(a)
                                    * _r(avgpoly(a, -2, -1, 1, 3, 4)) * c * a.dl)

    def frac2(a):
        L = a.avg
        return L * (L + 1) * _div(avgpoly(a, -1, 1, 3))

    k[(3, 3, 2, 2)] = lambda a, c: (_r(Fraction(15, 2)) * _r(2 * a.l + 1)
                                    * _r(frac2(a)) * c)
    k[(3, 3, 2, 3)] = lambda a, c: (_r(Fraction(21, 8)) * _r(2 * a.l + 1)
                                    * _r((a.avg - 1) * a.avg * (a.avg + 1) * (a.avg + 2)
                                         * _div(avgpoly(a, -1, 1, 3))) * c)
    k[(3, 3, 3, 3)] = lambda a, c: (_r(Fraction(7, 1024)) * _r((2 * a.l + 1) * _div(a.avg + 2))
                                    * _r(avgpoly(a, -1, 1, 3)
                                         * _div((a.avg - 1) * a.avg * (a.avg + 1)))
                                    * c * a.dl)
    # (1, 0) and (0, 1): printed as complete weights
    k[(2, 0, 0, 1)] = lambda a, c: -_r(3)
    k[(0, 2, 0, 1)] = lambda a, c: QSqrt(1)
    k[(2, 0, 1, 1)] = lambda a, c: _r(3 * (2 * a.l + 1) * _div(2 * a.lp + 1))
    k[(0, 2, 1, 1)] = lambda a, c: QSqrt(1)
    # (3/2, 1/2)
    k[(3, 1, 0, 1)] = lambda a, c: -_r(Fraction(3, 4)) * lsq(a) * c
    k[(3, 1, 0, 2)] = lambda a, c: -_r(Fraction(5, 64)) * lsq(a) * quad(a) * c
    k[(3, 1, 1, 1)] = lambda a, c: -_r(Fraction(3, 8)) * ratio(a) * c * a.dl
    k[(3, 1, 1, 2)] = lambda a, c: (-_r(Fraction(30, 1024)) * ratio(a)
                                    * _r(avgpoly(a, -1, 3)) * c * a.dl)
    k[(3, 1, 2, 2)] = lambda a, c: (-_r(Fraction(30, 64)) * _r(2 * a.l + 1)
                                    * _r(frac2(a)) * c)
    # (1/2, 3/2)
    k[(1, 3, 0, 1)] = lambda a, c: _r(Fraction(3, 8)) * lsq(a) * c
    k[(1, 3, 0, 2)] = lambda a, c: _r(Fraction(5, 128)) * lsq(a) * quad(a) * c
    k[(1, 3, 1, 1)] = lambda a, c: _r(Fraction(3, 16)) * ratio(a) * c * a.dl
    k[(1, 3, 1, 2)] = lambda a, c: (_r(Fraction(15, 1024)) * ratio(a)
                                    * _r(avgpoly(a, -1, 3)) * c * a.dl)
    k[(1, 3, 2, 2)] = lambda a, c: (_r(Fraction(15, 64)) * _r(2 * a.l + 1)
                                    * _r(frac2(a)) * c)
    del h
    return k


_KAPPA_TABLE = _kappa_table()


def allowed_j(sp2: int, s2: int, lp2: int, l2: int) -> list[int]:
    """Twice-values of j for which the closed-form tables claim S can be nonzero."""
    if (sp2, s2) not in TABLE_PAIRS:
        raise UnsupportedCaseError(f"no closed-form table for s'={sp2}/2, s={s2}/2")
    dl2 = lp2 - l2
    a = abs(dl2) // 2
    if a > (sp2 + s2) // 2:
        return []
    avg2 = (lp2 + l2) // 2  # 2<l>
    key = (sp2, s2, a)
    if key == (1, 1, 0):
        cand = [l2 + 1, l2 - 1]
    elif key == (1, 1, 1):
        cand = [avg2]
    elif key == (2, 2, 0):
        cand = [l2 + 2, l2, l2 - 2]
    elif key == (2, 2, 1):
        cand = [avg2 + 1, avg2 - 1]
    elif key == (2, 2, 2):
        cand = [avg2]
    elif key == (3, 3, 0):
        cand = [l2 + 3, l2 + 1, l2 - 1, l2 - 3]
    elif key == (3, 3, 1):
        cand = [avg2 + 2, avg2, avg2 - 2]
    elif key == (3, 3, 2):
        cand = [avg2 + 1, avg2 - 1]
    elif key == (3, 3, 3):
        cand = [avg2]
    elif key in ((2, 0, 0), (2, 0, 1)):
        cand = [l2]
    elif key in ((0, 2, 0), (0, 2, 1)):
        cand = [lp2]
    elif key in ((3, 1, 0), (3, 1, 1)):
        cand = [l2 + 1, l2 - 1]
    elif key == (3, 1, 2):
        cand = [l2 + dl2 // 4]
    elif key in ((1, 3, 0), (1, 3, 1)):
        cand = [lp2 + 1, lp2 - 1]
    elif key == (1, 3, 2):
        cand = [lp2 - dl2 // 4]
    else:  # pragma: no cover - every table key is listed above
        raise UnsupportedCaseError(str(key))
    return [j2 for j2 in cand
            if j2 >= 0 and triangle2(l2, s2, j2) and triangle2(lp2, sp2, j2)]


def _table_args(sp2, s2, lp2, l2, j2) -> _Args:
    return _Args(Fraction(j2, 2), Fraction(l2, 2), Fraction(lp2, 2),
                 (lp2 - l2) // 2, (sp2 - s2) // 2)


def _table_lookup(table, sp2, s2, d, lp2, l2, j2):
    if (sp2, s2) not in TABLE_PAIRS:
        raise UnsupportedCaseError(f"no closed-form table for s'={sp2}/2, s={s2}/2")
    if (lp2 - l2) % 2:
        raise QuantumNumberError("l' - l must be an integer")
    key = (sp2, s2, abs(lp2 - l2) // 2, d)
    if key not in table:
        raise UnsupportedCaseError(
            f"no closed form for s'={sp2}/2, s={s2}/2, |dl|={key[2]}, D={d}")
    if j2 not in allowed_j(sp2, s2, lp2, l2):
        raise UnsupportedCaseError(f"j={j2}/2 outside the tabulated set")
    return key


@lru_cache(maxsize=None)
def _coeff_C_table2(sp2, s2, d, lp2, l2, j2) -> QSqrt:
    key = _table_lookup(_C_TABLE, sp2, s2, d, lp2, l2, j2)
    return _C_TABLE[key](_table_args(sp2, s2, lp2, l2, j2))


def coeff_C_table(sp, s, d: int, lp, l, j) -> QSqrt:
    """Closed-form C^{s' s D}_{l' l j} for the tabulated spin pairs."""
    return _coeff_C_table2(two(sp), two(s), int(d), two(lp), two(l), two(j))


@lru_cache(maxsize=None)
def _coeff_kappa_table2(sp2, s2, d, lp2, l2, j2) -> QSqrt:
    key = _table_lookup(_KAPPA_TABLE, sp2, s2, d, lp2, l2, j2)
    a = _table_args(sp2, s2, lp2, l2, j2)
    c = _C_TABLE[key](a) if key in _C_TABLE else None
    return _KAPPA_TABLE[key](a, c)


def coeff_kappa_table(sp, s, d: int, lp, l, j) -> QSqrt:
    """Closed-form kappa^{s' s D}_{l' l j} for the tabulated spin pairs."""
    return _coeff_kappa_table2(two(sp), two(s), int(d), two(lp), two(l), two(j))


# ---------------------------------------------------------------------------
# operator and kappa forms

@lru_cache(maxsize=None)
def _spin_me(method: str, sp2, spz2, word, m, s2, sz2) -> CQSqrt:
    f = spin_me_closed if method == "closed" else spin_me_matrix
    return f(Fraction(sp2, 2), Fraction(spz2, 2), word, m, Fraction(s2, 2), Fraction(sz2, 2))


@lru_cache(maxsize=None)
def _orbital_red(lp2: int, l2: int, word: str) -> QSqrt:
    return redmat_word(lp2 // 2, l2 // 2, word)


def _use_table(case: CouplingCase, source: str) -> bool:
    if source == "table":
        if (case.sp2, case.s2) not in TABLE_PAIRS:
            raise UnsupportedCaseError(
                f"no closed-form table for s'={case.sp2}/2, s={case.s2}/2")
        return True
    if source == "general":
        return False
    if source == "auto":
        return (case.sp2, case.s2) in TABLE_PAIRS
    raise ValueError(f"unknown coefficient source {source!r}")


def _trivially_zero(c: CouplingCase) -> bool:
    return (not c.conserves_jz or not triangle2(c.l2, c.s2, c.j2)
            or not triangle2(c.lp2, c.sp2, c.j2) or (c.j2 - c.l2 - c.s2) % 2)


def s_operator_form(case: CouplingCase, source: str = "auto") -> QSqrt:
    """Sum over D of C times <l'|eps(dl_z).O_orb|l> times <s'|eps(dl_z)^*.O_spin|s>.

    With the closed-form tables the spin matrix elements come from the
    spinor expressions; otherwise from explicit spin-matrix products.
    """
    c = case
    table = _use_table(c, source)
    if c.sp2 > 3 or c.s2 > 3:
        raise UnsupportedCaseError("operator form implemented for s, s' <= 3/2")
    if _trivially_zero(c):
        return ZERO
    if table and c.j2 not in allowed_j(c.sp2, c.s2, c.lp2, c.l2):
        return ZERO
    a_orb = abs(c.dl)
    a_spin = abs(c.sp2 - c.s2) // 2
    mu2 = c.dlz2
    total = CQSqrt(ZERO, ZERO)
    for d in delta_range(c.lp2, c.l2, c.sp2, c.s2):
        if abs(mu2) > 2 * d:
            continue
        orb_cg = cg2(c.l2, c.lz2, 2 * d, mu2, c.lp2, c.lpz2)
        if not orb_cg:
            continue
        word_s = _spin_word(d, a_spin)
        sme = _spin_me("closed" if table else "matrix",
                       c.sp2, c.spz2, word_s, mu2 // 2, c.s2, c.sz2)
        if not sme:
            continue
        if table:
            coef = _coeff_C_table2(c.sp2, c.s2, d, c.lp2, c.l2, c.j2)
        else:
            coef = _coeff_C_general2(c.sp2, c.s2, d, c.lp2, c.l2, c.j2)
        orb = _orbital_red(c.lp2, c.l2, _orbital_word(d, a_orb)) * orb_cg
        total = total + sme * (coef * orb)
    if total.im:
        raise ArithmeticError("operator form produced a non-real value")
    return total.re


def s_kappa(case: CouplingCase, source: str = "auto") -> QSqrt:
    """Sum over D of kappa cg(l,l_z;D,dl_z|l',l'_z) cg(s',s'_z;D,dl_z|s,s_z)."""
    c = case
    table = _use_table(c, source)
    if _trivially_zero(c):
        return ZERO
    if table and c.j2 not in allowed_j(c.sp2, c.s2, c.lp2, c.l2):
        return ZERO
    mu2 = c.dlz2
    total = ZERO
    for d in delta_range(c.lp2, c.l2, c.sp2, c.s2):
        a = cg2(c.l2, c.lz2, 2 * d, mu2, c.lp2, c.lpz2)
        if not a:
            continue
        b = cg2(c.sp2, c.spz2, 2 * d, mu2, c.s2, c.sz2)
        if not b:
            continue
        if table:
            k = _coeff_kappa_table2(c.sp2, c.s2, d, c.lp2, c.l2, c.j2)
        else:
            k = _coeff_kappa_general2(c.sp2, c.s2, d, c.lp2, c.l2, c.j2)
        total = total + k * a * b
    return total


# ---------------------------------------------------------------------------
# enumeration and small checks

def iter_cases(sp, s, lp, l, j) -> Iterator[CouplingCase]:
    """Every projection tuple with l'_z + s'_z = l_z + s_z."""
    sp2, s2, lp2, l2, j2 = two(sp), two(s), two(lp), two(l), two(j)
    for lz2 in range(-l2, l2 + 1, 2):
        for sz2 in range(-s2, s2 + 1, 2):
            for spz2 in range(-sp2, sp2 + 1, 2):
                lpz2 = lz2 + sz2 - spz2
                if abs(lpz2) <= lp2:
                    yield CouplingCase(j2, lp2, l2, sp2, s2, lpz2, lz2, spz2, sz2)


def alt_ratio_check(l, j) -> tuple[QSqrt, QSqrt]:
    """(2<l>+1)/(2l_1+1) against (2j+1)/(2j+1+dl) for s = s' = 1/2, |dl| = 1.

    The sign of dl follows from j: j = l + 1/2 pairs with l' = l + 1 and
    j = l - 1/2 with l' = l - 1.
    """
    l2, j2 = two(l), two(j)
    if abs(j2 - l2) != 1:
        raise QuantumNumberError("j must be l +- 1/2")
    dl = 1 if j2 > l2 else -1
    lp2 = l2 + 2 * dl
    if lp2 < 0:
        raise QuantumNumberError("l' would be negative")
    lhs = Fraction((l2 + lp2) // 2 + 1, lp2 + 1)
    rhs = Fraction(j2 + 1, j2 + 1 + dl)
    return QSqrt(lhs), QSqrt(rhs)
