"""Configuration-space matrix elements of the orbital angular momentum projector.

The kernel of P_l is <b|P_l|a> = (2l+1)/(4 pi) P_l(a.b).  The functions below
give closed forms for P_l' O P_l between direction eigenstates, where O is an
irreducible power of L, of the unit vector r, or a mixed product r..r L..L.

Conventions used throughout:

* a frame holds a ket direction ``rhat`` and a bra direction ``rhatp``;
  x = rhat.rhatp and v = rhat ^ rhatp;
* Z-monomials put the ket direction in the first index family and the bra
  direction in the second;
* {..}_0 sums over all index permutations and then removes traces, so for a
  rank-n tensor it is n! times the orthogonal projection onto spin n.

The same evaluators run on float arrays and on object arrays of Fractions
(or dual numbers), which is how the recursion identity is checked exactly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

import numpy as np

from .tensorbasis import _sym_projector, to_numeric

__all__ = [
    "RatPoly",
    "legendre",
    "legendre_relation",
    "GeomFrame",
    "brace0",
    "proj_kernel",
    "c_pq",
    "a_n",
    "a_n_alt",
    "me_L_power",
    "me_r_power",
    "me_mixed",
    "me_L_power_special",
    "me_r_power_special",
    "me_mixed_special",
    "oracle_sum",
    "oracle_irreducible",
    "projected_dot_check",
    "rational_unit_vector",
    "recursion_check",
    "seed_check",
]

FOUR_PI = 4 * math.pi


# ---------------------------------------------------------------------------
# exact polynomials

class RatPoly:
    """Polynomial with Fraction coefficients in ascending degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        c = [Fraction(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def deriv(self, k: int = 1) -> "RatPoly":
        c = list(self.coeffs)
        for _ in range(k):
            c = [i * a for i, a in enumerate(c)][1:]
        return RatPoly(c)

    def __call__(self, x):
        # Horner; works for floats, Fractions and anything with + and *
        acc = 0
        for a in reversed(self.coeffs):
            acc = acc * x + a
        return acc

    def __add__(self, other) -> "RatPoly":
        o = other if isinstance(other, RatPoly) else RatPoly([other])
        n = max(len(self.coeffs), len(o.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = o.coeffs + (Fraction(0),) * (n - len(o.coeffs))
        return RatPoly([x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self) -> "RatPoly":
        return RatPoly([-a for a in self.coeffs])

    def __sub__(self, other) -> "RatPoly":
        return self + (-other if isinstance(other, RatPoly) else -Fraction(other))

    def __mul__(self, other) -> "RatPoly":
        if not isinstance(other, RatPoly):
            f = Fraction(other)
            return RatPoly([a * f for a in self.coeffs])
        if self.is_zero() or other.is_zero():
            return RatPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return RatPoly(out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatPoly):
            other = RatPoly([other])
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"RatPoly({[str(c) for c in self.coeffs]})"


X = RatPoly([0, 1])


@lru_cache(maxsize=None)
def _legendre(l: int) -> RatPoly:
    if l == 0:
        return RatPoly([1])
    if l == 1:
        return X
    # Bonnet: n P_n = (2n-1) x P_{n-1} - (n-1) P_{n-2}
    return (X * _legendre(l - 1) * (2 * l - 1) - _legendre(l - 2) * (l - 1)) * Fraction(1, l)


@lru_cache(maxsize=None)
def legendre(l: int, k: int = 0) -> RatPoly:
    """k-th derivative of the Legendre polynomial P_l, exactly."""
    if l < 0 or k < 0:
        raise ValueError("l and k must be non-negative")
    return _legendre(l).deriv(k)


def legendre_relation(l: int, n: int, k: int, sign: int):
    """Both sides of x P'_{l_k} - (n-k) P_{l_k} + (l_{n+1}-l_n)(l_{n+1}+l_n+1)/2 P_{l_k} = P'_{l_{k+1}}.

    Here l_k = l + sign*k for one sign throughout.
    """
    lk = lambda k_: l + sign * k_  # noqa: E731
    if not 0 <= k <= n or lk(n + 1) < 0:
        raise ValueError("need 0 <= k <= n and l_{n+1} >= 0")
    p = legendre(lk(k))
    half = Fraction((lk(n + 1) - lk(n)) * (lk(n + 1) + lk(n) + 1), 2)
    lhs = X * p.deriv() - p * (n - k) + p * half
    return lhs, legendre(lk(k + 1), 1)


# ---------------------------------------------------------------------------
# frames and tensor helpers

@dataclass(frozen=True, eq=False)
class GeomFrame:
    """Ket direction ``rhat`` and bra direction ``rhatp`` (unit 3-vectors)."""

    rhat: np.ndarray
    rhatp: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.rhat, dtype=float)
        b = np.asarray(self.rhatp, dtype=float)
        for v in (a, b):
            if v.shape != (3,) or abs(float(v @ v) - 1.0) > 1e-12:
                raise ValueError("frame vectors must be unit 3-vectors")
        object.__setattr__(self, "rhat", a)
        object.__setattr__(self, "rhatp", b)

    @property
    def x(self) -> float:
        return float(min(1.0, max(-1.0, self.rhat @ self.rhatp)))

    @property
    def v(self) -> np.ndarray:
        return np.cross(self.rhat, self.rhatp)

    @classmethod
    def random(cls, rng: np.random.Generator) -> "GeomFrame":
        a = rng.normal(size=3)
        b = rng.normal(size=3)
        return cls(a / np.linalg.norm(a), b / np.linalg.norm(b))


def _cross(a, b):
    return np.array([a[1] * b[2] - a[2] * b[1],
                     a[2] * b[0] - a[0] * b[2],
                     a[0] * b[1] - a[1] * b[0]], dtype=a.dtype)


def _dot(a, b):
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


@lru_cache(maxsize=None)
def _projector_float(n: int) -> np.ndarray:
    return np.ascontiguousarray(to_numeric(_sym_projector(n)).real)


@lru_cache(maxsize=None)
def _projector_fraction(n: int) -> np.ndarray:
    src = _sym_projector(n)
    out = np.empty(src.shape, dtype=object)
    for idx in np.ndindex(*src.shape):
        e = src[idx]
        if not e.im.is_zero() or not e.re.is_rational():
            raise ArithmeticError("projector entry is not rational")
        out[idx] = e.re.rational()
    return out


def brace0(t):
    """{t}_0: sum over index permutations, then remove traces (rank <= 4)."""
    t = np.asarray(t)
    n = t.ndim
    if n <= 1:
        return t
    X_ = _projector_fraction(n) if t.dtype == object else _projector_float(n)
    out = np.tensordot(X_, t, axes=(list(range(n, 2 * n)), list(range(n))))
    return out * math.factorial(n)


def _monomial(vectors, dtype):
    """Outer product of a list of 3-vectors; the empty product is 1."""
    out = np.array(Fraction(1), dtype=object) if dtype == object else np.array(1.0)
    for vec in vectors:
        out = np.multiply.outer(out, vec)
    return out


def _double_factorial(n: int) -> int:
    return math.prod(range(n, 0, -2)) if n > 0 else 1


def c_pq(p: int, q: int) -> int:
    """C_{p,q} = (2q-1)!! binom(p, 2q)."""
    return _double_factorial(2 * q - 1) * math.comb(p, 2 * q)


def _lk(l: int, sign: int, k: int) -> int:
    return l + sign * k


def a_n(n: int, sign: int, l: int) -> Fraction:
    """4 pi A_n = (l_1 - l)^n (2l+1) / prod_{k<n} (2 l_k + 1)."""
    den = math.prod(2 * _lk(l, sign, k) + 1 for k in range(n))
    return Fraction(sign ** n * (2 * l + 1), den)


def a_n_alt(n: int, sign: int, l: int) -> Fraction:
    """Double-factorial form of 4 pi A_n; agrees with a_n for n >= 1."""
    ln = _lk(l, sign, n)
    s = Fraction(ln - l, n)
    num = _double_factorial(ln + l - n - int(s))
    den = _double_factorial(ln + l + n - int(s))
    return s ** n * (2 * l + 1) * Fraction(num, den)


def _check_sign(sign: int) -> None:
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")


# ---------------------------------------------------------------------------
# closed forms, generic in the scalar type

def _core_L(p: int, l: int, ket, bra):
    """(4 pi / i^p) <bra|{L..L}_0 P_l|ket>."""
    dtype = ket.dtype
    x = _dot(ket, bra)
    v = _cross(ket, bra)
    out = 0
    for q in range(p // 2 + 1):
        z = _monomial([ket] * q + [bra] * q + [v] * (p - 2 * q), dtype)
        out = out + brace0(z) * (c_pq(p, q) * legendre(l, p - q)(x))
    return out * (2 * l + 1)


def _core_r(n: int, sign: int, l: int, ket, bra):
    """4 pi <bra|P_{l_n} r..r P_l|ket>."""
    dtype = ket.dtype
    x = _dot(ket, bra)
    out = 0
    for k1 in range(n + 1):
        k2 = n - k1
        z = _monomial([ket] * k2 + [bra] * k1, dtype)
        f = Fraction((-1) ** k2, math.factorial(k1) * math.factorial(k2))
        out = out + brace0(z) * (f * legendre(_lk(l, sign, k1), n)(x))
    return out * a_n(n, sign, l)


def _core_mixed(n: int, t: int, sign: int, l: int, ket, bra):
    """(4 pi / i^t) <bra|P_{l_n} {r..r L..L}_0 P_l|ket>."""
    dtype = ket.dtype
    x = _dot(ket, bra)
    v = _cross(ket, bra)
    out = 0
    for k1 in range(n + 1):
        k2 = n - k1
        for q in range(t // 2 + 1):
            z = _monomial([ket] * (k2 + q) + [bra] * (k1 + q) + [v] * (t - 2 * q), dtype)
            f = (-1) ** k2 * math.comb(n, k1) * c_pq(t, q)
            out = out + brace0(z) * (f * legendre(_lk(l, sign, k1), n + t - q)(x))
    return out * a_n(n, sign, l)


def proj_kernel(l: int, frame: GeomFrame) -> float:
    """<rhatp|P_l|rhat> = (2l+1)/(4 pi) P_l(x)."""
    return (2 * l + 1) / FOUR_PI * float(legendre(l)(frame.x))


def me_L_power(p: int, l: int, frame: GeomFrame) -> np.ndarray:
    """<rhatp|{L^{h1}..L^{hp}}_0 P_l|rhat>, rank p, for 1 <= p <= 4."""
    if not 1 <= p <= 4:
        raise ValueError("need 1 <= p <= 4")
    return np.asarray((1j) ** p / FOUR_PI * _core_L(p, l, frame.rhat, frame.rhatp), dtype=complex)


def me_r_power(n: int, sign: int, l: int, frame: GeomFrame) -> np.ndarray:
    """<rhatp|P_{l_n} r^{i1}..r^{in} P_l|rhat> with l_n = l + sign*n."""
    _check_sign(sign)
    if not 1 <= n <= 4 or _lk(l, sign, n) < 0:
        raise ValueError("need 1 <= n <= 4 and l_n >= 0")
    return np.asarray(_core_r(n, sign, l, frame.rhat, frame.rhatp) / FOUR_PI, dtype=float)


def me_mixed(n: int, t: int, sign: int, l: int, frame: GeomFrame) -> np.ndarray:
    """<rhatp|P_{l_n} {r^{i1}..r^{in} L^{h1}..L^{ht}}_0 P_l|rhat>."""
    _check_sign(sign)
    if n < 1 or t < 1 or n + t > 4 or _lk(l, sign, n) < 0:
        raise ValueError("need n, t >= 1, n + t <= 4 and l_n >= 0")
    return np.asarray((1j) ** t / FOUR_PI * _core_mixed(n, t, sign, l, frame.rhat, frame.rhatp), dtype=complex)


# ---------------------------------------------------------------------------
# the low-order cases written out term by term

def _sym(*vecs):
    return brace0(_monomial(list(vecs), float))


def me_L_power_special(p: int, l: int, frame: GeomFrame) -> np.ndarray:
    """Explicit p = 1, 2, 3 forms."""
    a, b, v, x = frame.rhat, frame.rhatp, frame.v, frame.x
    P = lambda k: float(legendre(l, k)(x))  # noqa: E731
    c = (2 * l + 1) / FOUR_PI
    if p == 1:
        return 1j * c * v * P(1)
    if p == 2:
        return -c * (_sym(v, v) * P(2) + _sym(a, b) * P(1))
    if p == 3:
        return -1j * c * (_sym(v, v, v) * P(3) + 3 * _sym(b, a, v) * P(2))
    raise ValueError("explicit forms exist for p = 1, 2, 3")


def me_r_power_special(n: int, sign: int, l: int, frame: GeomFrame) -> np.ndarray:
    """Explicit n = 1, 2, 3 forms; rhat plays r', rhatp plays r''."""
    _check_sign(sign)
    a, b, x = frame.rhat, frame.rhatp, frame.x
    ls = [_lk(l, sign, k) for k in range(n + 1)]
    P = lambda k, d: float(legendre(ls[k], d)(x))  # noqa: E731
    d1 = ls[1] - l
    if n == 1:
        return d1 / FOUR_PI * (-a * P(0, 1) + b * P(1, 1))
    if n == 2:
        return 1 / (FOUR_PI * (2 * ls[1] + 1)) * (
            0.5 * _sym(a, a) * P(0, 2) - _sym(a, b) * P(1, 2) + 0.5 * _sym(b, b) * P(2, 2))
    if n == 3:
        return d1 / (FOUR_PI * (2 * ls[2] + 1) * (2 * ls[1] + 1)) * (
            -_sym(a, a, a) * P(0, 3) / 6 + _sym(a, a, b) * P(1, 3) / 2
            - _sym(a, b, b) * P(2, 3) / 2 + _sym(b, b, b) * P(3, 3) / 6)
    raise ValueError("explicit forms exist for n = 1, 2, 3")


def me_mixed_special(n: int, t: int, sign: int, l: int, frame: GeomFrame) -> np.ndarray:
    """Explicit (n, t) = (1, 1), (2, 1), (1, 2) forms."""
    _check_sign(sign)
    a, b, v, x = frame.rhat, frame.rhatp, frame.v, frame.x
    ls = [_lk(l, sign, k) for k in range(n + 1)]
    P = lambda k, d: float(legendre(ls[k], d)(x))  # noqa: E731
    d1 = ls[1] - l
    if (n, t) == (1, 1):
        return 1j * d1 / FOUR_PI * (_sym(b, v) * P(1, 2) - _sym(a, v) * P(0, 2))
    if (n, t) == (2, 1):
        return 1j / (FOUR_PI * (2 * ls[1] + 1)) * (
            _sym(b, b, v) * P(2, 3) - 2 * _sym(b, a, v) * P(1, 3) + _sym(a, a, v) * P(0, 3))
    if (n, t) == (1, 2):
        return -d1 / FOUR_PI * (
            _sym(b, v, v) * P(1, 3) - _sym(a, v, v) * P(0, 3)
            + _sym(b, b, a) * P(1, 2) - _sym(b, a, a) * P(0, 2))
    raise ValueError("explicit forms exist for (n, t) = (1, 1), (2, 1), (1, 2)")


# ---------------------------------------------------------------------------
# brute-force reference

@lru_cache(maxsize=8)
def _space(lmax: int):
    from .oracles import OrbitalSpace
    return OrbitalSpace(lmax)


@lru_cache(maxsize=512)
def _word_block(word: str, lp: int, l: int) -> np.ndarray:
    need = max(lp, l) + len(word)
    lmax = max(8, 4 * math.ceil(need / 4))
    return _space(lmax).word(word, lp, l)


def _angles(r):
    return math.acos(max(-1.0, min(1.0, float(r[2])))), math.atan2(float(r[1]), float(r[0]))


def oracle_sum(word: str, lp: int, l: int, frame: GeomFrame) -> np.ndarray:
    """sum_{m', m} Y_{l'm'}(rhatp) <l'm'|O|lm> Y_{lm}(rhat)^*.

    ``word`` is a string over R (unit vector), L and X (= r ^ L); the empty
    word is the identity.  Matrix elements of L come from ladder operators,
    those of r from quadrature.
    """
    from .oracles import ylm_block
    block = _word_block(word, lp, l)
    yb = ylm_block(lp, *_angles(frame.rhatp))[:, 0]
    yk = ylm_block(l, *_angles(frame.rhat))[:, 0]
    return np.einsum("...ab,a,b->...", block, yb, np.conj(yk))


def oracle_irreducible(word: str, lp: int, l: int, frame: GeomFrame) -> np.ndarray:
    """{oracle_sum}_0, the reference for the braced matrix elements."""
    return brace0(oracle_sum(word, lp, l, frame))


def projected_dot_check(l: int, sign: int, frame: GeomFrame):
    """<rhatp|P_{l1} rhatp.r P_l|rhat> by brute force, and (l1+l+1)/(2(2l+1)) <rhatp|P_l|rhat>."""
    _check_sign(sign)
    l1 = l + sign
    if l1 < 0:
        raise ValueError("l_1 must be non-negative")
    m = oracle_sum("R", l1, l, frame)
    lhs = complex(frame.rhatp @ m)
    rhs = 0.5 * (l1 + l + 1) / (2 * l + 1) * proj_kernel(l, frame)
    return lhs.real, rhs


# ---------------------------------------------------------------------------
# exact recursion check at rational points of the sphere

class _Dual:
    """a + b eps with eps^2 = 0."""

    __slots__ = ("a", "b")

    def __init__(self, a, b=0):
        self.a, self.b = a, b

    def __add__(self, o):
        if isinstance(o, _Dual):
            return _Dual(self.a + o.a, self.b + o.b)
        return _Dual(self.a + o, self.b)

    __radd__ = __add__

    def __neg__(self):
        return _Dual(-self.a, -self.b)

    def __sub__(self, o):
        return self + (-o)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        if isinstance(o, _Dual):
            return _Dual(self.a * o.a, self.a * o.b + self.b * o.a)
        return _Dual(self.a * o, self.b * o)

    __rmul__ = __mul__


def rational_unit_vector(u, w) -> np.ndarray:
    """Inverse stereographic image of the rational point (u, w): an exact unit vector."""
    u, w = Fraction(u), Fraction(w)
    d = u * u + w * w + 1
    return np.array([2 * u / d, 2 * w / d, (u * u + w * w - 1) / d], dtype=object)


def _tangential_gradient(f, ket, bra):
    """Gradient of f(ket, bra) in bra along the unit sphere; new index last."""
    grads = []
    for i in range(3):
        t = [(1 if k == i else 0) - bra[i] * bra[k] for k in range(3)]
        bd = np.array([_Dual(bra[k], t[k]) for k in range(3)], dtype=object)
        kd = np.array([_Dual(c) for c in ket], dtype=object)
        val = np.asarray(f(kd, bd), dtype=object)
        grads.append(np.vectorize(lambda e: e.b, otypes=[object])(val))
    return np.stack(grads, axis=-1)


def recursion_check(n: int, sign: int, l: int, ket, bra):
    """Both sides of the step n -> n+1 of the recursion for the r-power elements.

    Left: the closed form at rank n+1.  Right:
    -1/(2 l_n + 1) [(l_{n+1} - l_n) grad'' - (l_{n+1} + l_n + 1)/2 rhat''] applied
    to the rank-n closed form, with the gradient taken in the bra direction on
    the sphere.  ``ket`` and ``bra`` must be exact rational unit vectors; the
    common 1/(4 pi) is dropped on both sides.
    """
    _check_sign(sign)
    ket = np.asarray(ket, dtype=object)
    bra = np.asarray(bra, dtype=object)
    ln, ln1 = _lk(l, sign, n), _lk(l, sign, n + 1)
    if ln1 < 0:
        raise ValueError("l_{n+1} must be non-negative")
    lhs = _core_r(n + 1, sign, l, ket, bra)
    f = lambda a, b: _core_r(n, sign, l, a, b)  # noqa: E731
    g = _tangential_gradient(f, ket, bra)
    base = np.asarray(f(ket, bra), dtype=object)
    rhs = (g * (ln1 - ln) - np.multiply.outer(base, bra) * Fraction(ln1 + ln + 1, 2)) \
        * Fraction(-1, 2 * ln + 1)
    return lhs, rhs


def seed_check(sign: int, l: int, ket, bra):
    """Closed form at n = 1 against (l_1 - l)(rhat'' P'_{l_1} - rhat' P'_l), exactly."""
    ket = np.asarray(ket, dtype=object)
    bra = np.asarray(bra, dtype=object)
    l1 = _lk(l, sign, 1)
    x = _dot(ket, bra)
    rhs = (bra * legendre(l1, 1)(x) - ket * legendre(l, 1)(x)) * (l1 - l)
    return _core_r(1, sign, l, ket, bra), rhs
