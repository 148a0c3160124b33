"""Spin-space matrix elements for s, s' <= 3/2 and the spin transition operator.

Matrices are exact object arrays indexed by projections in the order
s_z = s, s-1, ..., -s.  Component matrices carry a leading Cartesian axis.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import numpy as np

from .exactnum import CQSqrt, QSqrt, ZERO, ExactDomainError, sqrt_of_rational
from .redmat import redmat_spin_analog
from .tensorbasis import (
    CI, CONE, CZERO, LEVI_CIVITA, PAULI, _pauli_spinor, _spinor, _tensor, _vec,
    conj, contract, spin_operator, zeros, irreducible_part, to_numeric,
)
from .wigner import cg2, two, half

__all__ = [
    "UnsupportedCaseError",
    "spin_matrix",
    "t_matrix",
    "word_operator",
    "spin_me",
    "spin_me_matrix",
    "spin_me_closed",
    "symtrace_contract_equiv",
    "commutator_check",
    "t_squared",
    "index_of",
]


class UnsupportedCaseError(ValueError):
    """Raised for spin or word combinations without an implementation."""


def index_of(s2: int, m2: int) -> int:
    """Row of projection m (twice-value) in a spin-s block (twice-value)."""
    if abs(m2) > s2 or (s2 - m2) % 2:
        raise ExactDomainError(f"projection {half(m2)} invalid for spin {half(s2)}")
    return (s2 - m2) // 2


@lru_cache(maxsize=None)
def spin_matrix2(s2: int) -> np.ndarray:
    if s2 == 0:
        out = zeros((3, 1, 1))
        out.flags.writeable = False
        return out
    return spin_operator(Fraction(s2, 2))


def spin_matrix(s) -> np.ndarray:
    """Exact S^k matrices (shape (3, 2s+1, 2s+1)); zero for s = 0."""
    return spin_matrix2(two(s))


@lru_cache(maxsize=None)
def t_matrix2(s2_to: int, s2_from: int) -> np.ndarray:
    out = zeros((3, s2_to + 1, s2_from + 1))
    if abs(s2_to - s2_from) != 2 or s2_to < 0 or s2_from < 0:
        out.flags.writeable = False
        return out
    red = redmat_spin_analog(Fraction(s2_to, 2), Fraction(s2_from, 2), "T")
    for a in range(s2_to + 1):
        mp = s2_to - 2 * a
        for b in range(s2_from + 1):
            m = s2_from - 2 * b
            mu = (mp - m) // 2
            if abs(mu) > 1:
                continue
            c = cg2(s2_from, m, 2, 2 * mu, s2_to, mp)
            if not c:
                continue
            coef = red * c
            ev = conj(_vec(mu))
            for i in range(3):
                out[i, a, b] = ev[i] * coef
    out.flags.writeable = False
    return out


def t_matrix(s_to, s_from) -> np.ndarray:
    """<s', s'_z | T^i | s, s_z> = <s'||eps T||s> sum_m eps^i(m)^* <s s_z; 1 m|s' s'_z>."""
    return t_matrix2(two(s_to), two(s_from))


def _parse_word(word: str) -> tuple[int, int]:
    word = word.upper()
    a = len(word) - len(word.lstrip("T"))
    rest = word[a:]
    if rest.strip("S"):
        raise UnsupportedCaseError(f"spin word {word!r} must read T..TS..S")
    return a, len(rest)


@lru_cache(maxsize=None)
def word_operator2(s2_to: int, word: str, s2_from: int) -> np.ndarray:
    """Tensor of matrices O^{h1}..O^{hn}: axes h1..hn, row, column."""
    a, b = _parse_word(word)
    ds2 = s2_to - s2_from
    if abs(ds2) != 2 * a:
        raise UnsupportedCaseError(
            f"word {word!r} needs |s'-s| = {a}, got {half(abs(ds2))}")
    step = 0 if a == 0 else ds2 // a
    if a + b == 0:
        d = s2_from + 1
        out = zeros((d, d))
        for k in range(d):
            out[k, k] = CONE
        out.flags.writeable = False
        return out
    # T's to the left step from s_from to s_to; S's on the right act on s_from
    t_factors = []
    cur = s2_from
    for _ in range(a):
        t_factors.append(t_matrix2(cur + step, cur))
        cur += step
    factors = t_factors[::-1] + [spin_matrix2(s2_from)] * b
    op = factors[0]
    for f in factors[1:]:
        # (h.., r, x) x (h, x, y) -> (h.., h, r, y)
        op = np.moveaxis(contract(op, f, ([op.ndim - 1], [1])), -2, -3)
    op.flags.writeable = False
    return op


def word_operator(s_to, word: str, s_from) -> np.ndarray:
    return word_operator2(two(s_to), word, two(s_from))


def _eps_conj(n: int, m: int) -> np.ndarray:
    return conj(_tensor(n, m)) if n else np.array(CONE, dtype=object)


def spin_me_matrix(s_to, spz, word: str, m, s_from, sz) -> CQSqrt:
    """<s', s'_z | eps^{h..}(m)^* O^{h1}..O^{hn} | s, s_z> by matrix products."""
    s2p, s2 = two(s_to), two(s_from)
    a = index_of(s2p, two(spz))
    b = index_of(s2, two(sz))
    mm = two(m)
    if mm % 2:
        raise ExactDomainError("m must be an integer")
    op = word_operator2(s2p, word.upper(), s2)
    n = len(word)
    if n == 0:
        return op[a, b] if mm == 0 else CZERO
    if abs(mm // 2) > n:
        return CZERO
    elem = op[..., a, b]
    return contract(_eps_conj(n, mm // 2), elem, (list(range(n)), list(range(n)))).item()


def _chi(n: int, s2z: int) -> np.ndarray:
    if abs(s2z) > 2 * n + 1:
        return zeros((3,) * n + (2,))
    return _spinor(n, s2z)


def spin_me_closed(s_to, spz, word: str, m, s_from, sz) -> CQSqrt:
    """Same matrix element from the compact standard-tensor/spinor expressions."""
    s2p, s2 = two(s_to), two(s_from)
    sp2z, s2z = two(spz), two(sz)
    index_of(s2p, sp2z)
    index_of(s2, s2z)
    mm = two(m)
    if mm % 2:
        raise ExactDomainError("m must be an integer")
    m = mm // 2
    w = word.upper()
    n = len(w)
    if n == 0:
        return CONE if (s2p == s2 and sp2z == s2z and m == 0) else CZERO
    if abs(m) > n:
        return CZERO
    e = _eps_conj(n, m)
    key = (s2p, s2, w)
    h = Fraction(1, 2)
    if key == (1, 1, "S"):
        # eps^h(m)^* chi(s'z)^+ (sigma^h / 2) chi(sz)
        chip = conj(_pauli_spinor(sp2z))
        v = contract(PAULI, _pauli_spinor(s2z), ([2], [0]))  # h, A
        v = contract(v, chip, ([1], [0]))  # h
        return contract(e, v, ([0], [0])).item() * h
    if s2p == 2 and s2 == 2:
        ep = conj(_vec(sp2z // 2))
        ek = _vec(s2z // 2)
        if w == "S":
            # -i eps^h(m)^* (eps(s'z)^* x eps(sz))^h
            cross = contract(contract(LEVI_CIVITA, ep, ([1], [0])), ek, ([1], [0]))
            return contract(e, cross, ([0], [0])).item() * (-CI)
        if w == "SS":
            t = np.multiply.outer(ep, ek)
            return -contract(e, t, ([0, 1], [0, 1])).item()
    if s2p == 3 and s2 == 3:
        cp = conj(_chi(1, sp2z))  # i, A
        ck = _chi(1, s2z)
        if w == "S":
            # (3/2) eps^k(m)^* chi^i(s'z)^+ sigma^k chi^i(sz)
            v = contract(PAULI, ck, ([2], [1]))  # k, B->(A of sigma), i : k, A, i
            v = contract(v, cp, ([2, 1], [0, 1]))  # k
            return contract(e, v, ([0], [0])).item() * Fraction(3, 2)
        if w == "SS":
            # -3 eps^{ij}(m)^* chi^i(s'z)^+ chi^j(sz)
            t = contract(cp, ck, ([1], [1]))  # i, j
            return contract(e, t, ([0, 1], [0, 1])).item() * (-3)
        if w == "SSS":
            # -(3/2) eps^{ijk}(m)^* chi^i(s'z)^+ sigma^j chi^k(sz)
            v = contract(PAULI, ck, ([2], [1]))  # j, A, k
            v = contract(cp, v, ([1], [1]))  # i, j, k
            return contract(e, v, ([0, 1, 2], [0, 1, 2])).item() * Fraction(-3, 2)
    r3 = sqrt_of_rational(Fraction(1, 3))
    if key == (2, 0, "T"):
        ep = conj(_vec(sp2z // 2))
        return contract(e, ep, ([0], [0])).item() * r3
    if key == (0, 2, "T"):
        ek = _vec(s2z // 2)
        return contract(e, ek, ([0], [0])).item() * r3
    c32 = sqrt_of_rational(Fraction(3, 2))
    if s2p == 3 and s2 == 1:
        cp = conj(_chi(1, sp2z))  # h, A
        ck = _pauli_spinor(s2z)
        if w == "T":
            v = contract(cp, ck, ([1], [0]))  # h
            return contract(e, v, ([0], [0])).item() * (c32 * h)
        if w == "TS":
            v = contract(PAULI, ck, ([2], [0]))  # h2, A
            v = contract(cp, v, ([1], [1]))  # h1, h2
            return contract(e, v, ([0, 1], [0, 1])).item() * (c32 * Fraction(1, 4))
    if s2p == 1 and s2 == 3:
        cp = conj(_pauli_spinor(sp2z))
        ck = _chi(1, s2z)  # h, B
        if w == "T":
            v = contract(ck, cp, ([1], [0]))  # h
            return contract(e, v, ([0], [0])).item() * (c32 * h)
        if w == "TS":
            v = contract(PAULI, ck, ([2], [1]))  # h2, A, h1
            v = contract(v, cp, ([1], [0]))  # h2, h1
            return contract(e, v, ([0, 1], [1, 0])).item() * (c32 * Fraction(1, 4))
    raise UnsupportedCaseError(
        f"no closed form for s'={half(s2p)}, s={half(s2)}, word={w!r}")


def spin_me(s_to, spz, word: str, m, s_from, sz, method: str = "matrix") -> CQSqrt:
    """<s', s'_z | eps(m)^* . (word) | s, s_z>, via ``matrix`` or ``closed`` route."""
    if two(s_to) > 3 or two(s_from) > 3:
        raise UnsupportedCaseError("spin matrix elements implemented for s <= 3/2")
    if len(word) > 3:
        raise UnsupportedCaseError("words of length <= 3 only")
    if method == "matrix":
        return spin_me_matrix(s_to, spz, word, m, s_from, sz)
    if method == "closed":
        return spin_me_closed(s_to, spz, word, m, s_from, sz)
    raise ValueError(f"unknown method {method!r}")


def t_squared(s) -> np.ndarray:
    """T.T on spin s, summing over the intermediate spins s +- 1, exactly."""
    s2 = two(s)
    out = zeros((s2 + 1, s2 + 1))
    for mid in (s2 - 2, s2 + 2):
        if mid < 0:
            continue
        a, b = t_matrix2(s2, mid), t_matrix2(mid, s2)
        for i in range(3):
            out = out + a[i].dot(b[i])
    return out


def commutator_check(s2_to: int, s2_from: int) -> bool:
    """[S^i, T^j] = i eps^{ijk} T^k on the (s_to <- s_from) block, exactly."""
    T = t_matrix2(s2_to, s2_from)
    St = spin_matrix2(s2_to)
    Sf = spin_matrix2(s2_from)
    for i in range(3):
        for j in range(3):
            lhs = St[i].dot(T[j]) - T[j].dot(Sf[i])
            rhs = zeros(T[0].shape)
            for k in range(3):
                if LEVI_CIVITA[i, j, k]:
                    rhs = rhs + T[k] * (LEVI_CIVITA[i, j, k] * CI)
            if not all(x == y for x, y in zip(lhs.flat, rhs.flat)):
                return False
    return True


def symtrace_contract_equiv(orbital: np.ndarray, spin: np.ndarray, mu: int | None = None):
    """Compare the standard-tensor contraction with the irreducible contraction.

    ``orbital`` is the Cartesian tensor <l'|A^{k1..kn}|l> and ``spin`` the
    tensor <s'|B^{h1..hn}|s>.  Returns (lhs, rhs) with

        lhs = sum_mu (eps(mu) . A) (eps(mu)^* . B)     (only mu given if set)
        rhs = (irreducible part of A) . B

    Both are exact when the inputs are exact arrays.
    """
    n = orbital.ndim
    exact = orbital.dtype == object and spin.dtype == object
    if n == 0:
        v = orbital.item() * spin.item()
        return v, v
    mus = range(-n, n + 1) if mu is None else [mu]
    ax = list(range(n))
    lhs = CZERO if exact else 0j
    for m in mus:
        e = _tensor(n, m)
        if not exact:
            e = to_numeric(e)
        a = contract(e, orbital, (ax, ax)).item()
        b = contract(conj(e), spin, (ax, ax)).item()
        lhs = lhs + a * b
    irr = irreducible_part(orbital).data
    rhs = contract(irr, spin, (ax, ax)).item()
    return lhs, rhs
