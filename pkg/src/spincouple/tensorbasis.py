"""Standard bases of irreducible Cartesian tensors and spinors.

Tensors are numpy arrays of shape ``(3,)*n`` (plus a trailing ``(2,)`` for a
spinor index).  Exact arrays have ``dtype=object`` with :class:`CQSqrt`
entries; numeric arrays are ``complex128``.  Axis 0, 1, 2 stand for x, y, z.

Projections and spins in the public functions are given as values (ints,
Fractions, or strings like ``"3/2"``); functions with a trailing ``2`` in
their name take twice-values.
"""
from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .exactnum import CQSqrt, QSqrt, ZERO, ONE, sqrt_of_rational, ExactDomainError
from .wigner import cg2, two

__all__ = [
    "CTensor",
    "CZERO",
    "CONE",
    "LEVI_CIVITA",
    "PAULI",
    "DELTA",
    "standard_vector",
    "standard_tensor",
    "standard_tensor_closed",
    "f_coefficient",
    "standard_spinor",
    "sym_projector",
    "sym_projector_closed",
    "spinor_projector",
    "spinor_projector_closed",
    "spin_operator",
    "spin_operator_ladder",
    "irreducible_part",
    "detrace",
    "symmetrize",
    "sph_harm",
    "to_numeric",
    "conj",
    "exact_equal",
    "contract",
]

CZERO = CQSqrt(ZERO, ZERO)
CONE = CQSqrt(ONE, ZERO)
CI = CQSqrt(ZERO, ONE)

_conj = np.frompyfunc(lambda z: z.conjugate(), 1, 1)
_to_c = np.frompyfunc(complex, 1, 1)
_lift = np.frompyfunc(lambda z: z if isinstance(z, CQSqrt) else CQSqrt._coerce(z), 1, 1)


def zeros(shape) -> np.ndarray:
    a = np.empty(shape, dtype=object)
    a.fill(CZERO)
    return a


def lift(a) -> np.ndarray:
    """Convert an array of ints/Fractions/QSqrt to exact CQSqrt entries."""
    a = np.asarray(a, dtype=object)
    if a.ndim == 0:
        return np.array(_lift(a.item()), dtype=object)
    return _lift(a).astype(object)


def to_numeric(a) -> np.ndarray:
    a = a.data if isinstance(a, CTensor) else a
    if a.dtype != object:
        return np.asarray(a, dtype=complex)
    if a.ndim == 0:
        return np.array(complex(a.item()))
    return _to_c(a).astype(complex)


def conj(a: np.ndarray) -> np.ndarray:
    if a.dtype != object:
        return np.conj(a)
    if a.ndim == 0:
        return np.array(a.item().conjugate(), dtype=object)
    return _conj(a).astype(object)


def exact_equal(a: np.ndarray, b: np.ndarray) -> bool:
    if a.shape != b.shape:
        return False
    return all(x == y for x, y in zip(a.flat, b.flat))


def contract(a: np.ndarray, b: np.ndarray, axes) -> np.ndarray:
    """``np.tensordot`` that keeps 0-d results as arrays."""
    return np.asarray(np.tensordot(a, b, axes=axes))


class CTensor:
    """Rank-n tensor over 3-d Cartesian indices with optional spinor axis.

    ``nspin`` is the number of trailing spinor axes of size 2.
    """

    __slots__ = ("data", "nspin")

    def __init__(self, data, nspin: int = 0):
        self.data = np.asarray(data)
        self.nspin = nspin

    @property
    def rank(self) -> int:
        return self.data.ndim - self.nspin

    @property
    def exact(self) -> bool:
        return self.data.dtype == object

    def numeric(self) -> "CTensor":
        return CTensor(to_numeric(self.data), self.nspin)

    def conj(self) -> "CTensor":
        return CTensor(conj(self.data), self.nspin)

    def __getitem__(self, idx):
        return self.data[idx]

    def __eq__(self, other) -> bool:
        if not isinstance(other, CTensor):
            return NotImplemented
        if self.exact and other.exact:
            return exact_equal(self.data, other.data)
        return bool(np.array_equal(to_numeric(self.data), to_numeric(other.data)))

    def allclose(self, other, atol=1e-12) -> bool:
        o = other.data if isinstance(other, CTensor) else other
        return bool(np.allclose(to_numeric(self.data), to_numeric(o), atol=atol, rtol=0))

    def __repr__(self) -> str:
        kind = "exact" if self.exact else "numeric"
        return f"CTensor(rank={self.rank}, nspin={self.nspin}, {kind})"


# ---------------------------------------------------------------------------
# module constants

def _levi_civita() -> np.ndarray:
    e = np.zeros((3, 3, 3), dtype=int)
    for (i, j, k), s in (((0, 1, 2), 1), ((1, 2, 0), 1), ((2, 0, 1), 1),
                         ((0, 2, 1), -1), ((2, 1, 0), -1), ((1, 0, 2), -1)):
        e[i, j, k] = s
    return e


LEVI_CIVITA_INT = _levi_civita()
LEVI_CIVITA = lift(LEVI_CIVITA_INT)
DELTA = lift(np.eye(3, dtype=int))
DELTA2 = lift(np.eye(2, dtype=int))

_PAULI_C = np.array([
    [[0, 1], [1, 0]],
    [[0, -1j], [1j, 0]],
    [[1, 0], [0, -1]],
], dtype=complex)


def _pauli_exact() -> np.ndarray:
    p = zeros((3, 2, 2))
    p[0, 0, 1] = p[0, 1, 0] = CONE
    p[1, 0, 1] = -CI
    p[1, 1, 0] = CI
    p[2, 0, 0] = CONE
    p[2, 1, 1] = -CONE
    return p


PAULI = _pauli_exact()
PAULI_NUMERIC = _PAULI_C


# ---------------------------------------------------------------------------
# standard vectors and tensors

@lru_cache(maxsize=None)
def _vec(m: int) -> np.ndarray:
    v = zeros((3,))
    r = sqrt_of_rational(Fraction(1, 2))
    if m == 0:
        v[2] = CONE
    elif m == 1:
        v[0] = CQSqrt(-r, ZERO)
        v[1] = CQSqrt(ZERO, -r)
    elif m == -1:
        v[0] = CQSqrt(r, ZERO)
        v[1] = CQSqrt(ZERO, -r)
    v.flags.writeable = False
    return v


def standard_vector(m) -> CTensor:
    """Spherical unit vector eps(m), m in {-1, 0, 1}; zero otherwise."""
    return CTensor(_vec(two(m) // 2 if two(m) % 2 == 0 else 99))


@lru_cache(maxsize=None)
def _tensor(n: int, m: int) -> np.ndarray:
    """Exact standard tensor by the CG recursion (integer n, m)."""
    if abs(m) > n:
        out = zeros((3,) * n)
    elif n == 0:
        out = np.array(CONE, dtype=object)
    elif n == 1:
        out = _vec(m).copy()
    else:
        out = zeros((3,) * n)
        for sz in (-1, 0, 1):
            mp = m - sz
            if abs(mp) > n - 1:
                continue
            c = cg2(2 * (n - 1), 2 * mp, 2, 2 * sz, 2 * n, 2 * m)
            if not c:
                continue
            out = out + np.multiply.outer(_tensor(n - 1, mp), _vec(sz)) * c
    out.flags.writeable = False
    return out


@lru_cache(maxsize=512)
def _tensor_numeric(n: int, m: int) -> np.ndarray:
    if abs(m) > n:
        out = np.zeros((3,) * n, dtype=complex)
    elif n <= 4:
        out = to_numeric(_tensor(n, m))
    else:
        out = np.zeros((3,) * n, dtype=complex)
        for sz in (-1, 0, 1):
            mp = m - sz
            if abs(mp) > n - 1:
                continue
            c = float(cg2(2 * (n - 1), 2 * mp, 2, 2 * sz, 2 * n, 2 * m))
            if c:
                out += c * np.multiply.outer(_tensor_numeric(n - 1, mp),
                                             to_numeric(_vec(sz)))
    out.flags.writeable = False
    return out


def standard_tensor(n: int, m, exact: bool = True) -> CTensor:
    """Standard irreducible rank-n tensor eps^{i1..in}(m).

    Built from the recursion that couples eps(n-1) with a standard vector to
    total spin n.  Exact mode is limited to n <= 6.
    """
    mm = two(m)
    if mm % 2:
        raise ExactDomainError("tensor projections are integers")
    if n < 0:
        raise ExactDomainError("rank must be non-negative")
    if exact:
        if n > 6:
            raise ExactDomainError("exact standard tensors limited to rank <= 6")
        return CTensor(_tensor(n, mm // 2))
    return CTensor(_tensor_numeric(n, mm // 2))


def f_coefficient(ss) -> QSqrt:
    """Closed-form product coefficient f_n(s_1..s_n) of the expanded tensor."""
    n = len(ss)
    m = sum(ss)
    num = Fraction(2 ** n * math.factorial(n + m) * math.factorial(n - m),
                   math.factorial(2 * n))
    for s in ss:
        num /= math.factorial(1 + s) * math.factorial(1 - s)
    return sqrt_of_rational(num)


def standard_tensor_closed(n: int, m) -> CTensor:
    """Standard tensor as an explicit sum over products of standard vectors."""
    m = two(m) // 2
    out = zeros((3,) * n)
    if abs(m) > n:
        return CTensor(out)
    for ss in itertools.product((-1, 0, 1), repeat=n):
        if sum(ss) != m:
            continue
        term = np.array(CONE, dtype=object)
        for s in ss:
            term = np.multiply.outer(term, _vec(s))
        out = out + term * f_coefficient(ss)
    return CTensor(out)


# ---------------------------------------------------------------------------
# spinors

@lru_cache(maxsize=None)
def _pauli_spinor(sz2: int) -> np.ndarray:
    v = zeros((2,))
    if sz2 == 1:
        v[0] = CONE
    elif sz2 == -1:
        v[1] = CONE
    v.flags.writeable = False
    return v


@lru_cache(maxsize=None)
def _spinor(n: int, sz2: int) -> np.ndarray:
    if n == 0:
        return _pauli_spinor(sz2)
    out = zeros((3,) * n + (2,))
    for s2 in (-1, 1):
        m2 = sz2 - s2
        if abs(m2) > 2 * n:
            continue
        c = cg2(2 * n, m2, 1, s2, 2 * n + 1, sz2)
        if c:
            out = out + np.multiply.outer(_tensor(n, m2 // 2), _pauli_spinor(s2)) * c
    out.flags.writeable = False
    return out


def standard_spinor(n: int, sz) -> CTensor:
    """Standard spin-(n+1/2) spinor chi^{i1..in}_A(sz); spinor axis last."""
    sz2 = two(sz)
    if sz2 % 2 == 0:
        raise ExactDomainError("spinor projections are half-odd")
    if abs(sz2) > 2 * n + 1:
        return CTensor(zeros((3,) * n + (2,)), nspin=1)
    return CTensor(_spinor(n, sz2), nspin=1)


# ---------------------------------------------------------------------------
# projectors

@lru_cache(maxsize=None)
def _sym_projector(n: int) -> np.ndarray:
    out = zeros((3,) * (2 * n))
    for m in range(-n, n + 1):
        e = _tensor(n, m)
        out = out + np.multiply.outer(e, conj(e))
    out.flags.writeable = False
    return out


def sym_projector(n: int) -> CTensor:
    """X^{i1..in; j1..jn} = sum_m eps(m) eps(m)^*, exact for n <= 4."""
    if n < 0 or n > 4:
        raise ExactDomainError("exact projector supports 0 <= n <= 4")
    return CTensor(_sym_projector(n))


def _delta_int(i, j) -> int:
    return 1 if i == j else 0


def sym_projector_closed(n: int) -> CTensor:
    """Explicit delta-product form of the symmetric traceless projector, n <= 3."""
    d = _delta_int
    if n == 1:
        return CTensor(lift(np.eye(3, dtype=int)))
    out = np.zeros((3,) * (2 * n), dtype=object)
    out.fill(Fraction(0))
    if n == 2:
        for i1, i2, j1, j2 in itertools.product(range(3), repeat=4):
            out[i1, i2, j1, j2] = Fraction(1, 2) * (
                d(i1, j1) * d(i2, j2) + d(i1, j2) * d(i2, j1)
                - Fraction(2, 3) * d(i1, i2) * d(j1, j2))
        return CTensor(lift(out))
    if n == 3:
        a, b = Fraction(2, 5), Fraction(1, 10)
        for idx in itertools.product(range(3), repeat=6):
            i1, i2, i3 = idx[:3]
            js = idx[3:]
            tot = Fraction(0)
            for s in itertools.permutations(range(3)):
                j1, j2, j3 = js[s[0]], js[s[1]], js[s[2]]
                tot += d(i1, j1) * d(i2, j2) * d(i3, j3)
                tot -= d(i1, i2) * (a * d(j1, j2) * d(i3, j3)
                                    - b * d(j2, j3) * d(i3, j1)
                                    - b * d(j1, j3) * d(i3, j2))
                # the printed first term here repeats j_sigma3; the remaining
                # free index i2 must pair with j_sigma2
                tot -= d(i1, i3) * (a * d(j1, j3) * d(i2, j2)
                                    - b * d(j2, j3) * d(i2, j1)
                                    - b * d(j1, j2) * d(i2, j3))
                tot -= d(i2, i3) * (a * d(j2, j3) * d(i1, j1)
                                    - b * d(j1, j3) * d(i1, j2)
                                    - b * d(j1, j2) * d(i1, j3))
            out[idx] = tot / 6
        return CTensor(lift(out))
    raise ExactDomainError("closed form available for n <= 3")


@lru_cache(maxsize=None)
def _spinor_projector(n: int) -> np.ndarray:
    """Shape (3,)*n + (3,)*n + (2, 2): indices i..., j..., A, B."""
    out = zeros((3,) * (2 * n) + (2, 2))
    for sz2 in range(-(2 * n + 1), 2 * n + 2, 2):
        c = _spinor(n, sz2)
        outer = np.multiply.outer(c, conj(c))  # i.., A, j.., B
        outer = np.moveaxis(outer, n, 2 * n)   # i.., j.., A, B
        out = out + outer
    out.flags.writeable = False
    return out


def spinor_projector(n: int) -> CTensor:
    """X^{i..;j..}_{AB} = sum_sz chi(sz) chi(sz)^*, for spin n+1/2."""
    if n < 1 or n > 3:
        raise ExactDomainError("exact spinor projector supports 1 <= n <= 3")
    return CTensor(_spinor_projector(n), nspin=2)


def spinor_projector_closed(n: int) -> CTensor:
    """Spinor projector as X [ (n+1)/(2n+1) 1 + n/(2n+1) i eps sigma ] X."""
    if n < 1 or n > 3:
        raise ExactDomainError("closed spinor projector supports 1 <= n <= 3")
    X = _sym_projector(n)
    # middle kernel M^{k..;h..}_{AB}
    rest = np.array(CONE, dtype=object)
    for _ in range(n - 1):
        rest = np.multiply.outer(rest, DELTA)
    # rest has axes (k2,h2,k3,h3,...); bring to (k2..kn, h2..hn)
    if n > 1:
        order = [2 * p for p in range(n - 1)] + [2 * p + 1 for p in range(n - 1)]
        rest = np.transpose(rest, order)
    ident = np.multiply.outer(np.multiply.outer(DELTA, rest), DELTA2)
    # i eps^{k1 r h1} sigma^r_{AB}
    eps_sig = contract(LEVI_CIVITA, PAULI, ([1], [0])) * CI  # k1, h1, A, B
    spin = np.multiply.outer(eps_sig, rest)  # k1, h1, A, B, k2.., h2..
    spin = np.moveaxis(spin, [2, 3], [-2, -1])  # k1, h1, k2.., h2.., A, B
    ident_axes = ident  # k1, h1, k2.., h2.., A, B
    # reorder both to k1,k2..,h1,h2..,A,B
    perm = [0] + list(range(2, 2 + n - 1)) + [1] + list(range(1 + n, 2 * n)) + [2 * n, 2 * n + 1]
    ident_axes = np.transpose(ident_axes, perm)
    spin = np.transpose(spin, perm)
    M = ident_axes * Fraction(n + 1, 2 * n + 1) + spin * Fraction(n, 2 * n + 1)
    # X^{i;k} M^{k;h}_{AB} X^{h;j}
    left = contract(X, M, (list(range(n, 2 * n)), list(range(n))))
    out = contract(left, X, (list(range(n, 2 * n)), list(range(n))))
    # out axes: i.., A, B, j..  -> i.., j.., A, B
    out = np.moveaxis(out, [n, n + 1], [-2, -1])
    return CTensor(out, nspin=2)


# ---------------------------------------------------------------------------
# spin matrices

def _spin_tensor_operator(n: int) -> np.ndarray:
    """(S^j_(n))^{i1..in;k1..kn} with axes j, i1..in, k1..kn."""
    out = zeros((3,) + (3,) * (2 * n))
    for q in range(n):
        # i eps^{i_q j k_q} prod_{p != q} delta^{i_p k_p}
        for idx in itertools.product(range(3), repeat=2 * n + 1):
            j = idx[0]
            ii = idx[1:n + 1]
            kk = idx[n + 1:]
            e = LEVI_CIVITA_INT[ii[q], j, kk[q]]
            if not e:
                continue
            if all(ii[p] == kk[p] for p in range(n) if p != q):
                out[idx] = out[idx] + CQSqrt(ZERO, QSqrt(e))
    return out


@lru_cache(maxsize=None)
def _spin_matrices(s2: int) -> np.ndarray:
    dim = s2 + 1
    mats = zeros((3, dim, dim))
    if s2 % 2 == 0:
        n = s2 // 2
        op = _spin_tensor_operator(n)
        basis = [_tensor(n, (s2 - 2 * a) // 2) for a in range(dim)]
        for a, bra in enumerate(basis):
            cb = conj(bra)
            for b, ket in enumerate(basis):
                for j in range(3):
                    v = contract(contract(op[j], ket, (list(range(n, 2 * n)), list(range(n)))),
                                 cb, (list(range(n)), list(range(n))))
                    mats[j, a, b] = v.item()
    else:
        n = (s2 - 1) // 2
        if n == 0:
            half_ = Fraction(1, 2)
            for j in range(3):
                for a in range(2):
                    for b in range(2):
                        mats[j, a, b] = PAULI[j, a, b] * half_
        else:
            opn = _spin_tensor_operator(n)  # j, i.., k..
            eye_n = np.array(CONE, dtype=object)
            for _ in range(n):
                eye_n = np.multiply.outer(eye_n, DELTA)
            order = [2 * p for p in range(n)] + [2 * p + 1 for p in range(n)]
            eye_n = np.transpose(eye_n, order)  # i.., k..
            basis = [_spinor(n, s2 - 2 * a) for a in range(dim)]
            for j in range(3):
                full = (np.multiply.outer(opn[j], DELTA2)
                        + np.multiply.outer(eye_n, PAULI[j]) * Fraction(1, 2))
                # axes i.., k.., A, B
                for b, ket in enumerate(basis):
                    act = contract(full, ket, (list(range(n, 2 * n)) + [2 * n + 1],
                                               list(range(n)) + [n]))
                    for a, bra in enumerate(basis):
                        mats[j, a, b] = contract(conj(bra), act,
                                                 (list(range(n + 1)), list(range(n + 1)))).item()
    mats.flags.writeable = False
    return mats


def spin_operator(s) -> np.ndarray:
    """Spin matrices S^k, k = x, y, z, in the basis s_z = s, s-1, ..., -s.

    Returns an exact object array of shape (3, 2s+1, 2s+1).  Integer spins
    use the tensor representation, half-integer spins the spinor one.
    """
    s2 = two(s)
    if s2 < 1:
        raise ExactDomainError("spin_operator needs 2s >= 1")
    if s2 > 7:
        raise ExactDomainError("exact spin matrices limited to s <= 7/2")
    return _spin_matrices(s2)


@lru_cache(maxsize=None)
def spin_operator_ladder(s2: int) -> np.ndarray:
    """Spin matrices from the Condon-Shortley ladder operators (twice-value s)."""
    dim = s2 + 1
    mats = zeros((3, dim, dim))
    ms = [s2 - 2 * a for a in range(dim)]
    for a, mp in enumerate(ms):
        for b, m in enumerate(ms):
            if mp == m:
                mats[2, a, b] = CQSqrt(QSqrt(Fraction(m, 2)), ZERO)
            elif mp == m + 2:
                # <m+1|S+|m> = sqrt(s(s+1) - m(m+1)) (twice-values)
                v = sqrt_of_rational(Fraction(s2 * (s2 + 2) - m * (m + 2), 4))
                mats[0, a, b] = CQSqrt(v / 2, ZERO)
                mats[1, a, b] = CQSqrt(ZERO, -v / 2)
            elif mp == m - 2:
                v = sqrt_of_rational(Fraction(s2 * (s2 + 2) - m * (m - 2), 4))
                mats[0, a, b] = CQSqrt(v / 2, ZERO)
                mats[1, a, b] = CQSqrt(ZERO, v / 2)
    mats.flags.writeable = False
    return mats


# ---------------------------------------------------------------------------
# irreducible parts

def irreducible_part(t) -> CTensor:
    """Symmetric traceless component via contraction with the projector."""
    a = t.data if isinstance(t, CTensor) else np.asarray(t)
    n = a.ndim
    if n == 0:
        return CTensor(a)
    if n > 4:
        if a.dtype == object:
            raise ExactDomainError("exact irreducible_part supports rank <= 4")
        # numeric projector built from the float standard tensors
        X = 0
        for m in range(-n, n + 1):
            e = standard_tensor(n, m, exact=False).data
            X = X + np.multiply.outer(e, np.conj(e))
        return CTensor(np.tensordot(X, a, (list(range(n, 2 * n)), list(range(n)))))
    if a.dtype == object:
        X = _sym_projector(n)
        a = lift(a)
    else:
        X = to_numeric(_sym_projector(n))
    return CTensor(contract(X, a, (list(range(n, 2 * n)), list(range(n)))))


def symmetrize(a: np.ndarray) -> np.ndarray:
    """Sum over all index permutations (no 1/n! factor)."""
    n = a.ndim
    out = None
    for p in itertools.permutations(range(n)):
        t = np.transpose(a, p)
        out = t if out is None else out + t
    return out


def detrace(a: np.ndarray) -> np.ndarray:
    """Traceless part of a symmetric-or-not rank 2 or 3 tensor (explicit formulas)."""
    n = a.ndim
    exact = a.dtype == object
    delta = DELTA if exact else np.eye(3)
    if n == 1 or n == 0:
        return a
    if n == 2:
        tr = sum(a[k, k] for k in range(3))
        return a - delta * tr * Fraction(1, 3) if exact else a - delta * tr / 3
    if n == 3:
        def tr(ax1, ax2):
            return np.trace(a, axis1=ax1, axis2=ax2)
        f25 = Fraction(2, 5) if exact else 0.4
        f110 = Fraction(1, 10) if exact else 0.1
        # A^{pjj}, A^{iqi}, A^{iir}
        t_p = tr(1, 2)
        t_q = tr(0, 2)
        t_r = tr(0, 1)
        out = a.copy()
        # -2/5 (A^{pjj} d^{qr} + A^{iqi} d^{pr} + A^{iir} d^{pq})
        term1 = (_ein(t_p, delta, "p,qr", exact) + _ein(t_q, delta, "q,pr", exact)
                 + _ein(t_r, delta, "r,pq", exact))
        # +1/10 (A^{qjj} d^{pr} + A^{rjj} d^{pq} + A^{ipi} d^{qr} + A^{iri} d^{pq}
        #        + A^{iip} d^{qr} + A^{iiq} d^{pr})
        term2 = (_ein(t_p, delta, "q,pr", exact) + _ein(t_p, delta, "r,pq", exact)
                 + _ein(t_q, delta, "p,qr", exact) + _ein(t_q, delta, "r,pq", exact)
                 + _ein(t_r, delta, "p,qr", exact) + _ein(t_r, delta, "q,pr", exact))
        return out - term1 * f25 + term2 * f110
    raise ExactDomainError("explicit detrace formulas exist for rank 2 and 3")


def _ein(v, d, spec: str, exact: bool):
    """Build the rank-3 tensor v^x d^{yz} with output axes ordered p, q, r."""
    vx, dd = spec.split(",")
    if not exact:
        return np.einsum(f"{vx},{dd}->pqr", v, d)
    raw = np.multiply.outer(v, d)  # axes vx, dd[0], dd[1]
    labels = vx + dd
    return np.transpose(raw, [labels.index(c) for c in "pqr"])


# ---------------------------------------------------------------------------
# spherical harmonics

def sph_harm(l: int, m, rhat) -> complex:
    """Y_lm(rhat) from the standard tensor contracted with rhat^(x l)."""
    r = np.asarray(rhat, dtype=float)
    if r.shape != (3,) or abs(float(np.dot(r, r)) - 1.0) > 1e-12:
        raise ExactDomainError("rhat must be a unit 3-vector")
    mm = two(m)
    if mm % 2:
        raise ExactDomainError("m must be an integer")
    m = mm // 2
    if abs(m) > l or l < 0:
        return 0j
    t = _tensor_numeric(l, m)
    for _ in range(l):
        t = t @ r
    df = 1
    for k in range(2 * l + 1, 0, -2):
        df *= k
    norm = math.sqrt(df / math.factorial(l)) / (2 * math.sqrt(math.pi))
    return complex(norm * t)
