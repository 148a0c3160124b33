"""Brute-force reference computations used to check the closed forms.

Nothing here goes through the Racah sums or the tensor-basis machinery except
where noted: spherical harmonics come from the associated-Legendre
recurrence, angular integrals from a Gauss-Legendre x uniform-phi grid, and
angular-momentum matrices from the ladder operators.
"""
from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from .tensorbasis import (
    CZERO, LEVI_CIVITA_INT, _tensor, _tensor_numeric, contract, spin_operator_ladder,
    to_numeric,
)

__all__ = [
    "ylm",
    "ylm_block",
    "sphere_grid",
    "r_tensor",
    "l_matrices",
    "OrbitalSpace",
    "we_ratios",
    "we_ratios_exact",
    "gaunt",
    "cg_ladder",
]


# ---------------------------------------------------------------------------
# spherical harmonics

def ylm_block(l: int, theta, phi) -> np.ndarray:
    """Y_{l m}(theta, phi) for m = l, l-1, ..., -l (rows) at each point (columns).

    Normalized associated-Legendre recurrence with the Condon-Shortley phase.
    """
    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    phi = np.atleast_1d(np.asarray(phi, dtype=float))
    ct, st = np.cos(theta), np.sin(theta)
    # pbar[m] holds the normalized P_l^m for the current l, m >= 0
    pmm = np.full_like(ct, 1.0 / math.sqrt(4 * math.pi))
    diag = [pmm]
    for m in range(1, l + 1):
        pmm = -math.sqrt((2 * m + 1) / (2 * m)) * st * pmm
        diag.append(pmm)
    out = np.zeros((2 * l + 1, ct.size), dtype=complex)
    for m in range(l + 1):
        p_prev = diag[m]
        if l == m:
            p = p_prev
        else:
            p_cur = math.sqrt(2 * m + 3) * ct * p_prev
            p_2, p_1 = p_prev, p_cur
            for ll in range(m + 2, l + 1):
                a = math.sqrt((4 * ll * ll - 1) / (ll * ll - m * m))
                b = math.sqrt(((ll - 1) ** 2 - m * m) / (4 * (ll - 1) ** 2 - 1))
                p_2, p_1 = p_1, a * (ct * p_1 - b * p_2)
            p = p_1
        y = p * np.exp(1j * m * phi)
        out[l - m] = y
        if m:
            out[l + m] = (-1) ** m * np.conj(y)
    return out


def ylm(l: int, m: int, rhat) -> complex:
    """Single Y_lm at a unit vector."""
    if abs(m) > l:
        return 0j
    x, y, z = (float(c) for c in rhat)
    theta = math.acos(max(-1.0, min(1.0, z)))
    phi = math.atan2(y, x)
    return complex(ylm_block(l, theta, phi)[l - m, 0])


@lru_cache(maxsize=64)
def sphere_grid(n_theta: int, n_phi: int):
    """Nodes (theta, phi), weights and unit vectors of a product quadrature."""
    x, w = np.polynomial.legendre.leggauss(n_theta)
    phi = 2 * math.pi * np.arange(n_phi) / n_phi
    th = np.arccos(x)
    T, P = np.meshgrid(th, phi, indexing="ij")
    W = np.outer(w, np.full(n_phi, 2 * math.pi / n_phi))
    T, P, W = T.ravel(), P.ravel(), W.ravel()
    rhat = np.stack([np.sin(T) * np.cos(P), np.sin(T) * np.sin(P), np.cos(T)])
    return T, P, W, rhat


def _grid_for(degree: int):
    return sphere_grid(degree // 2 + 2, degree + 4)


def r_tensor(lp: int, l: int, n: int) -> np.ndarray:
    """<l' m'| r^{i1}..r^{in} |l m> by quadrature; axes i1..in, row m', column m."""
    T, P, W, rhat = _grid_for(lp + l + n)
    yp = ylm_block(lp, T, P)
    y = ylm_block(l, T, P)
    out = np.zeros((3,) * n + (2 * lp + 1, 2 * l + 1), dtype=complex)
    for idx in np.ndindex(*(3,) * n):
        f = W.copy()
        for i in idx:
            f = f * rhat[i]
        out[idx] = (np.conj(yp) * f) @ y.T
    return out


def gaunt(lp: int, mp: int, L: int, M: int, l: int, m: int) -> float:
    """Integral of Y_{l'm'}^* Y_{LM} Y_{lm} over the sphere."""
    T, P, W, _ = _grid_for(lp + L + l)
    a = ylm_block(lp, T, P)[lp - mp]
    b = ylm_block(L, T, P)[L - M]
    c = ylm_block(l, T, P)[l - m]
    return float(np.real(np.sum(W * np.conj(a) * b * c)))


def l_matrices(l: int, exact: bool = False) -> np.ndarray:
    """Orbital angular momentum matrices (3, 2l+1, 2l+1) from ladder operators."""
    mats = spin_operator_ladder(2 * l)
    return mats if exact else to_numeric(mats)


class OrbitalSpace:
    """Vector operators r and L on the direct sum of l = 0..lmax.

    Products of these matrices are exact operator products as long as the
    blocks read out stay at least word-length below lmax.
    """

    def __init__(self, lmax: int):
        self.lmax = lmax
        self.offsets = np.cumsum([0] + [2 * l + 1 for l in range(lmax + 1)])
        dim = int(self.offsets[-1])
        self.R = np.zeros((3, dim, dim), dtype=complex)
        self.L = np.zeros((3, dim, dim), dtype=complex)
        for l in range(lmax + 1):
            self.L[:, self._sl(l), self._sl(l)] = l_matrices(l)
            for lp in (l - 1, l + 1):
                if 0 <= lp <= lmax:
                    self.R[:, self._sl(lp), self._sl(l)] = r_tensor(lp, l, 1)
        # (r ^ L)^i = eps^{ijk} r^j L^k
        lc = LEVI_CIVITA_INT.astype(float)
        self.X = np.einsum("ijk,jab,kbc->iac", lc, self.R, self.L)

    def _sl(self, l: int) -> slice:
        return slice(int(self.offsets[l]), int(self.offsets[l + 1]))

    def word(self, letters: str, lp: int, l: int) -> np.ndarray:
        """Block <l'| O1^{i1} O2^{i2} .. |l>; letters from R, L, X (= r ^ L)."""
        if max(lp, l) + len(letters) > self.lmax:
            raise ValueError("lmax too small for this word")
        ops = {"R": self.R, "L": self.L, "X": self.X}
        # accumulate from the right: acc has axes (i_k.., row, col=l block)
        acc = np.eye(self.R.shape[1], dtype=complex)[:, self._sl(l)]
        for ch in reversed(letters):
            acc = np.einsum("iab,...bc->i...ac", ops[ch], acc)
        return acc[..., self._sl(lp), :]


def we_ratios(M: np.ndarray, lp2: int, l2: int, n: int):
    """Wigner-Eckart extraction from a numeric tensor of matrices.

    Returns (ratios, leak): the ME / CG ratios where the CG is nonzero, and the
    largest |ME| where the CG vanishes.  Labels are twice-values.
    """
    from .wigner import cg2
    ratios, leak = [], 0.0
    for m in range(-n, n + 1):
        eps = _tensor_numeric(n, m)
        me = np.tensordot(eps, M, axes=(list(range(n)), list(range(n)))) if n else M
        for a in range(lp2 + 1):
            for b in range(l2 + 1):
                c = float(cg2(l2, l2 - 2 * b, 2 * n, 2 * m, lp2, lp2 - 2 * a))
                if c:
                    ratios.append(me[a, b] / c)
                else:
                    leak = max(leak, abs(me[a, b]))
    return ratios, leak


def we_ratios_exact(M: np.ndarray, lp2: int, l2: int, n: int):
    """Exact counterpart of we_ratios for object arrays of CQSqrt.

    Returns (set of distinct ratios, True if every CG-forbidden entry is zero).
    """
    from .wigner import cg2
    ratios, clean = set(), True
    for m in range(-n, n + 1):
        eps = _tensor(n, m)
        me = contract(eps, M, (list(range(n)), list(range(n)))) if n else M
        for a in range(lp2 + 1):
            for b in range(l2 + 1):
                c = cg2(l2, l2 - 2 * b, 2 * n, 2 * m, lp2, lp2 - 2 * a)
                v = me[a, b]
                if c:
                    ratios.add(v / c)
                elif v != CZERO:
                    clean = False
    return ratios, clean


def cg_ladder(j1: int, j2: int) -> dict:
    """CG coefficients by lowering from the stretched state and Gram-Schmidt.

    Integer or half-integer inputs as twice-values; returns a dict keyed by
    twice-values (m1, m2, j, m) with float values.
    """
    m1s = [j1 - 2 * a for a in range(j1 + 1)]
    m2s = [j2 - 2 * a for a in range(j2 + 1)]
    basis = [(a, b) for a in m1s for b in m2s]
    pos = {k: i for i, k in enumerate(basis)}
    dim = len(basis)

    def lower(vec):
        out = np.zeros(dim)
        for (a, b), c in zip(basis, vec):
            if c == 0:
                continue
            if a > -j1:
                f = math.sqrt((j1 * (j1 + 2) - a * (a - 2)) / 4)
                out[pos[(a - 2, b)]] += f * c
            if b > -j2:
                f = math.sqrt((j2 * (j2 + 2) - b * (b - 2)) / 4)
                out[pos[(a, b - 2)]] += f * c
        return out

    states = {}
    for j in range(j1 + j2, abs(j1 - j2) - 1, -2):
        # top state: orthogonal to all higher-j states with m = j, positive on m1 = j1
        cand = [i for i, (a, b) in enumerate(basis) if a + b == j]
        vecs = [np.zeros(dim) for _ in cand]
        for v, i in zip(vecs, cand):
            v[i] = 1.0
        top = None
        for v in vecs:
            w = v.copy()
            for (_, mm), u in states.items():
                if mm == j:
                    w -= np.dot(u, w) * u
            if np.linalg.norm(w) > 1e-9:
                top = w / np.linalg.norm(w)
                break
        if top[pos[(j1, j - j1)]] < 0:
            top = -top
        vec = top
        m = j
        states[(j, m)] = vec
        while m > -j:
            vec = lower(vec)
            vec /= np.linalg.norm(vec)
            m -= 2
            states[(j, m)] = vec
    out = {}
    for (j, m), vec in states.items():
        for (a, b), c in zip(basis, vec):
            if a + b == m:
                out[(a, b, j, m)] = float(c)
    return out
