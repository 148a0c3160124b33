"""Closed-form reduced matrix elements.

Convention (Wigner-Eckart):

    <l', l'_z | eps^{i1..in}(m) A^{i1..in} | l, l_z> = <l'||eps A||l> <l l_z; n m | l' l'_z>

Operator words are strings over ``R`` (position versor), ``L`` (orbital
angular momentum), ``T`` (spin transition operator) and ``S`` (spin).  The
leftmost letter acts last, so ``"RL"`` means ``r^i L^j``.  All formulas take
their angular momenta as twice-values internally, which lets the same code
serve the spin analogs with half-integer labels.
"""
from __future__ import annotations

import math
from fractions import Fraction

from .exactnum import CQSqrt, QSqrt, ZERO, sqrt_of_rational, ExactDomainError
from .wigner import cg2, two

__all__ = [
    "redmat_J_power",
    "redmat_Y",
    "redmat_Y_value",
    "redmat_r_power",
    "redmat_r_power_general",
    "redmat_r_power_explicit",
    "redmat_r_L_mixed",
    "redmat_r_L_explicit",
    "redmat_cross",
    "redmat_spin_analog",
    "redmat_word",
    "sign_carrier",
    "RedMatKey",
]


def _rsqrt(x) -> QSqrt:
    return sqrt_of_rational(Fraction(x))


def _poch(a: Fraction, n: int) -> Fraction:
    """Rising factorial a (a+1) ... (a+n-1); exact for half-integer a."""
    out = Fraction(1)
    for k in range(n):
        out *= a + k
    return out


def _dfact(n: int) -> int:
    """Double factorial with (-1)!! = 0!! = 1."""
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


# ---------------------------------------------------------------------------
# angular momentum powers

def _j_power2(j2: int, n: int) -> QSqrt:
    if n < 0:
        raise ExactDomainError("n must be non-negative")
    if j2 < n:
        return ZERO
    pref = Fraction(math.factorial(n) ** 2, 2 ** n * math.factorial(2 * n))
    return _rsqrt(pref * Fraction(math.factorial(j2 + n + 1),
                                  (j2 + 1) * math.factorial(j2 - n)))


def redmat_J_power(j, n: int) -> QSqrt:
    """<j||eps^{i1..in} J^{i1}..J^{in}||j> for any angular momentum J."""
    return _j_power2(two(j), n)


# ---------------------------------------------------------------------------
# spherical harmonics and versor powers

def redmat_Y(lp: int, L: int, l: int) -> QSqrt:
    """Exact part c of <l'||Y_L||l> = c / sqrt(4 pi)."""
    c = cg2(2 * l, 0, 2 * L, 0, 2 * lp, 0)
    if not c:
        return ZERO
    return _rsqrt(Fraction((2 * l + 1) * (2 * L + 1), 2 * lp + 1)) * c


def redmat_Y_value(lp: int, L: int, l: int) -> float:
    return float(redmat_Y(lp, L, l)) / math.sqrt(4 * math.pi)


def redmat_r_power_general(lp: int, n: int, l: int) -> QSqrt:
    """<l'||eps r^(x n)||l> for any l' through the l,0;n,0 CG coefficient."""
    c = cg2(2 * l, 0, 2 * n, 0, 2 * lp, 0)
    if not c:
        return ZERO
    return _rsqrt(Fraction(math.factorial(n), _dfact(2 * n - 1))
                  * Fraction(2 * l + 1, 2 * lp + 1)) * c


def _r_power2(l2: int, n: int, sign: int) -> QSqrt:
    """<l_n||eps r^(x n)||l> with l_n = l + sign*n via Gamma-function ratios."""
    lp2 = l2 + 2 * sign * n
    if lp2 < 0:
        raise ExactDomainError("final angular momentum would be negative")
    if n == 0:
        return QSqrt(1)
    lo2 = min(l2, lp2)  # 2(<l> - n/2)
    # Gamma(<l>-n/2+1/2)/Gamma(<l>+n/2+1/2) = 1/poch(lo+1/2, n)
    g1 = 1 / _poch(Fraction(lo2 + 1, 2), n)
    # Gamma(<l>+n/2+1)/Gamma(<l>-n/2+1) = poch(lo+1, n)
    g2 = _poch(Fraction(lo2 + 2, 2), n)
    avg2 = (l2 + lp2) // 2  # 2<l>
    val = _rsqrt(Fraction(l2 + 1, avg2 + n + 1) * g1 * g2 / 2 ** n)
    dl = sign * n
    return -val if ((n - dl) // 2) % 2 else val


def redmat_r_power(l, n: int, sign: int) -> QSqrt:
    """<l+sign*n||eps^{i1..in} r^{i1}..r^{in}||l> in the |dl| = n case."""
    if sign not in (1, -1):
        raise ExactDomainError("sign must be +1 or -1")
    return _r_power2(two(l), n, sign)


def sign_carrier(dl: int) -> int:
    """(dl/|dl|)^|dl|, equal to (-1)^((|dl|-dl)/2)."""
    if dl == 0:
        return 1
    return (1 if dl > 0 else -1) ** abs(dl)


def redmat_r_power_explicit(l, n: int, sign: int) -> QSqrt:
    """The n = 1, 2, 3 specializations written in terms of <l> and dl."""
    l2 = two(l)
    dl = sign * n
    lp2 = l2 + 2 * dl
    if lp2 < 0:
        raise ExactDomainError("final angular momentum would be negative")
    avg = Fraction(l2 + lp2, 4)
    l1 = Fraction(l2, 2) + sign  # l_1
    if n == 1:
        return _rsqrt(Fraction(1, 2) * (2 * avg + 1) / (2 * l1 + 1)) * dl
    if n == 2:
        return _rsqrt((Fraction(l2 + 1)) * avg * (avg + 1)
                      / ((2 * avg - 1) * (2 * avg + 1) * (2 * avg + 3)))
    if n == 3:
        pre = Fraction(dl, 24) * _rsqrt(Fraction(1, 2))
        return pre * _rsqrt(Fraction(l2 + 1) / (avg + 2)
                            * (2 * avg - 1) * (2 * avg + 1) * (2 * avg + 3)
                            / ((avg - 1) * avg * (avg + 1)))
    raise ExactDomainError("explicit forms exist for n = 1, 2, 3")


# ---------------------------------------------------------------------------
# mixed versor / angular momentum products

def _r_L_mixed2(l2: int, n: int, dl: int) -> QSqrt:
    a = abs(dl)
    if a > n:
        raise ExactDomainError("|dl| cannot exceed the word length")
    lp2 = l2 + 2 * dl
    if lp2 < 0:
        raise ExactDomainError("final angular momentum would be negative")
    avg2 = l2 + dl  # 2<l>
    if avg2 - n < 0:
        return ZERO
    lo2 = min(l2, lp2)
    # (n+|dl|)!(n-|dl|)!/(2n)! / 2^n / 4^|dl| * (2l+1) * (2<l>+n+1)!/(2<l>-n)!
    rad = Fraction(math.factorial(n + a) * math.factorial(n - a),
                   math.factorial(2 * n) * 2 ** n * 4 ** a)
    rad *= (l2 + 1) * Fraction(math.factorial(avg2 + n + 1), math.factorial(avg2 - n))
    # Gamma(<l>-|dl|/2+1/2)/Gamma(<l>+|dl|/2+1/2) = 1/poch(lo+1/2, |dl|)
    rat = Fraction(1, avg2 + a + 1) / _poch(Fraction(lo2 + 1, 2), a)
    return _rsqrt(rad) * (rat * sign_carrier(dl))


def redmat_r_L_mixed(l, n: int, dl: int) -> QSqrt:
    """<l+dl||eps^{i1..in} r^{i1}..r^{i|dl|} L^{..}..L^{in}||l>."""
    return _r_L_mixed2(two(l), n, dl)


def redmat_r_L_explicit(kind: str, l, dl: int) -> QSqrt:
    """Specializations: ``"RL"`` (|dl| = 1), ``"RLL"`` (|dl| = 1), ``"RRL"`` (|dl| = 2)."""
    l2 = two(l)
    lp2 = l2 + 2 * dl
    if lp2 < 0:
        raise ExactDomainError("final angular momentum would be negative")
    avg = Fraction(l2 + lp2, 4)
    if kind == "RL":
        if abs(dl) != 1:
            raise ExactDomainError("RL form needs |dl| = 1")
        return (Fraction(dl, 4) * _rsqrt(Fraction(1, lp2 + 1))
                * _rsqrt((2 * avg - 1) * (2 * avg + 1) * (2 * avg + 3)))
    if kind == "RLL":
        if abs(dl) != 1:
            raise ExactDomainError("RLL form needs |dl| = 1")
        return (Fraction(dl, 2) * _rsqrt(Fraction(1, 30 * (lp2 + 1)))
                * _rsqrt((2 * avg - 2) * (2 * avg - 1) * (2 * avg + 1)
                         * (2 * avg + 3) * (2 * avg + 4)))
    if kind == "RRL":
        if abs(dl) != 2:
            raise ExactDomainError("RRL form needs |dl| = 2")
        return (_rsqrt(Fraction(1, 3)) * _rsqrt(Fraction(l2 + 1))
                * _rsqrt((avg - 1) * avg * (avg + 1) * (avg + 2)
                         / ((2 * avg - 1) * (2 * avg + 1) * (2 * avg + 3))))
    raise ExactDomainError(f"unknown explicit form {kind!r}")


# ---------------------------------------------------------------------------
# cross-product forms

def redmat_cross(kind: str, l, dl: int) -> CQSqrt:
    """Reduced elements of (r ^ L)-type operators; purely imaginary.

    ``C11a``: eps^i (r^L)^i,          l' = l1
    ``C11b``: eps^{ij} (r^L)^i L^j,   l' = l1
    ``C11c``: eps^{ij} r^i (r^L)^j,   l' = l2 (formula carries l1 as printed)
    """
    l2_ = two(l)
    lf = Fraction(l2_, 2)
    if kind in ("C11a", "C11b"):
        if abs(dl) != 1:
            return CQSqrt(ZERO, ZERO)
        l1 = lf + dl
        if l1 < 0:
            raise ExactDomainError("final angular momentum would be negative")
        b = (l1 + lf + 1) - 2 * dl
        if kind == "C11a":
            val = (-b / 2) * _rsqrt(Fraction(1, 2)) * _rsqrt((l1 + lf + 1) / (2 * l1 + 1))
        else:
            val = (-b / 8) * _rsqrt((l1 + lf - 1) * (l1 + lf + 1) * (l1 + lf + 3) / (2 * l1 + 1))
        return CQSqrt(ZERO, val)
    if kind == "C11c":
        if abs(dl) != 2:
            return CQSqrt(ZERO, ZERO)
        sgn = 1 if dl > 0 else -1
        l1 = lf + sgn
        lt = lf + 2 * sgn
        if lt < 0:
            raise ExactDomainError("final angular momentum would be negative")
        val = (-((l1 - lf) * (2 * l1 + 1) - 3) / 2) * _rsqrt(
            l1 * (l1 + 1) / ((2 * l1 + 1) * (2 * lt + 1)))
        return CQSqrt(ZERO, val)
    raise ExactDomainError(f"unknown cross form {kind!r}")


# ---------------------------------------------------------------------------
# spin analogs and generic word dispatch

class RedMatKey(tuple):
    """(bra twice-value, ket twice-value, word)."""

    def __new__(cls, bra, ket, word: str):
        return super().__new__(cls, (two(bra), two(ket), word.upper()))

    @property
    def n(self) -> int:
        return len(self[2])


def _split_word(word: str, first: str, second: str) -> tuple[int, int]:
    word = word.upper()
    a = len(word) - len(word.lstrip(first))
    rest = word[a:]
    if rest.strip(second):
        raise ExactDomainError(
            f"word {word!r} must be {first}...{first}{second}...{second}")
    return a, len(rest)


def redmat_word(lp, l, word: str) -> QSqrt:
    """<l'||eps R^a L^b||l> for orbital words with a = |l'-l|."""
    lp2, l2 = two(lp), two(l)
    a, b = _split_word(word, "R", "L")
    dl2 = lp2 - l2
    if dl2 % 2 or abs(dl2) // 2 != a:
        return ZERO
    n = a + b
    if n == 0:
        return QSqrt(1) if lp2 == l2 else ZERO
    return _r_L_mixed2(l2, n, dl2 // 2)


def redmat_spin_analog(s_to, s_from, word: str) -> QSqrt:
    """<s'||eps T^a S^b||s>, the orbital formulas with l -> s, r -> T, L -> S."""
    s2p, s2 = two(s_to), two(s_from)
    a, b = _split_word(word, "T", "S")
    ds2 = s2p - s2
    if ds2 % 2 or abs(ds2) // 2 != a:
        return ZERO
    n = a + b
    if n == 0:
        return QSqrt(1) if s2p == s2 else ZERO
    return _r_L_mixed2(s2, n, ds2 // 2)
