"""Invariant suites behind ``spincouple check``.

Each suite runs a family of identities and records, per identity, how many
instances were checked and how many failed, together with the inputs of the
first failures.  Suites are deterministic for a given seed.
"""
from __future__ import annotations

import itertools
import math
import time
from fractions import Fraction

import numpy as np

from . import cgfactor as cgf
from . import projector as pj
from . import redmat as rm
from . import spinops as so
from . import tensorbasis as tb
from . import wigner as wg
from .exactnum import CQSqrt, QSqrt, ZERO, sqrt_of_rational, to_float
from .oracles import (
    OrbitalSpace, cg_ladder, gaunt, l_matrices, r_tensor, we_ratios, we_ratios_exact, ylm,
)

MAX_COUNTEREXAMPLES = 10


class SuiteResult:
    """Per-identity counts plus the first few counterexamples."""

    def __init__(self, name: str):
        self.name = name
        self.counts: dict[str, list[int]] = {}
        self.counterexamples: list[dict] = []
        self.seconds = 0.0

    def check(self, identity: str, ok: bool, **inputs) -> bool:
        c = self.counts.setdefault(identity, [0, 0])
        c[0] += 1
        if not ok:
            c[1] += 1
            if len(self.counterexamples) < MAX_COUNTEREXAMPLES:
                self.counterexamples.append(
                    {"identity": identity, "inputs": {k: _jsonable(v) for k, v in inputs.items()}})
        return ok

    @property
    def passed(self) -> bool:
        return all(f == 0 for _, f in self.counts.values())

    def to_dict(self, timing: bool = True) -> dict:
        out = {"suite": self.name, "passed": self.passed}
        if timing:
            out["seconds"] = round(self.seconds, 3)
        out["identities"] = {k: {"checked": n, "failed": f} for k, (n, f) in self.counts.items()}
        out["counterexamples"] = self.counterexamples
        return out


def _jsonable(v):
    if isinstance(v, (bool, int, str)) or v is None:
        return v
    if isinstance(v, float):
        return float(repr(v)) if math.isfinite(v) else str(v)
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, np.ndarray):
        return [_jsonable(x) for x in v.tolist()]
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return str(v)


def _twice_range(j2: int):
    return range(-j2, j2 + 1, 2)


# ---------------------------------------------------------------------------
# wigner

def suite_wigner(seed: int = 0, n_recouple: int = 500) -> SuiteResult:
    res = SuiteResult("wigner")
    rng = np.random.default_rng(seed)

    for j1, j2 in itertools.product(range(7), repeat=2):
        js = range(abs(j1 - j2), j1 + j2 + 1, 2)
        for j, jp in itertools.product(js, repeat=2):
            # terms with m != m' vanish term by term
            for m in _twice_range(min(j, jp)):
                tot = ZERO
                for m1 in _twice_range(j1):
                    tot = tot + wg.cg2(j1, m1, j2, m - m1, j, m) * wg.cg2(j1, m1, j2, m - m1, jp, m)
                want = 1 if j == jp else 0
                res.check("cg_orthogonality", tot == QSqrt(want), j1=j1, j2=j2, j=j, jp=jp, m=m)

    done = 0
    while done < n_recouple:
        J1, J2, J3 = (int(x) for x in rng.integers(0, 9, size=3))
        M1, M2, M3 = (int(rng.choice(list(_twice_range(x)))) for x in (J1, J2, J3))
        jps = list(range(abs(J1 - J2), J1 + J2 + 1, 2))
        JP = int(rng.choice(jps))
        jlist = [x for x in range(abs(JP - J3), JP + J3 + 1, 2) if x <= 8]
        if not jlist:
            continue
        J = int(rng.choice(jlist))
        M = M1 + M2 + M3
        if abs(M) > J:
            continue
        args = [Fraction(x, 2) for x in (J1, M1, J2, M2, J3, M3, JP, J, M)]
        lhs, rhs = wg.recouple_check(*args)
        res.check("recoupling", lhs == rhs, args=[str(a) for a in args])
        done += 1

    for j1, j2, j3 in itertools.product(range(7), repeat=3):
        v = wg.sixj2(j1, j2, j3, 0, j3, j2)
        if wg.triangle2(j1, j2, j3):
            want = sqrt_of_rational(Fraction(1, (j2 + 1) * (j3 + 1))) * wg.sign2(j1 + j2 + j3)
        else:
            want = ZERO
        res.check("sixj_zero_column", v == want, j1=j1, j2=j2, j3=j3)

    for j1, j2 in itertools.product(range(5), repeat=2):
        table = cg_ladder(j1, j2)
        for (m1, m2, j, m), val in table.items():
            res.check("cg_vs_ladder", abs(to_float(wg.cg2(j1, m1, j2, m2, j, m)) - val) < 1e-12,
                      j1=j1, m1=m1, j2=j2, m2=m2, j=j, m=m)

    for n in range(1, 6):
        for ss in itertools.product((-1, 0, 1), repeat=n):
            prod = QSqrt(1)
            acc = ss[0]
            for k in range(1, n):
                prod = prod * wg.cg2(2, 2 * ss[k], 2 * k, 2 * acc, 2 * (k + 1), 2 * (acc + ss[k]))
                acc += ss[k]
            res.check("f_n_product", prod == tb.f_coefficient(ss), ss=list(ss))

    for l in range(11):
        for n in range(5):
            for t in range(7):
                for sign in (1, -1):
                    if l + sign * n < 0:
                        continue
                    a = wg.cg_zero_closed(l, n, t, sign)
                    b = wg.cg2(2 * l, 0, 2 * (n + t), 0, 2 * (l + sign * n), 0)
                    name = "zero_projection_odd_t" if t % 2 else "zero_projection_closed"
                    ok = (b == ZERO) if t % 2 else (a == b)
                    res.check(name, ok, l=l, n=n, t=t, sign=sign)

    res.check("convention_zero", wg.cg(1, 1, 1, 1, 1, 2) == ZERO)
    return res


# ---------------------------------------------------------------------------
# tensorbasis

def _eq(a, b) -> bool:
    return tb.exact_equal(np.asarray(a, dtype=object), np.asarray(b, dtype=object))


def _is_zero(a) -> bool:
    return all(x == tb.CZERO for x in np.asarray(a).flat)


def suite_tensorbasis(seed: int = 0, n_pairs: int = 100) -> SuiteResult:
    res = SuiteResult("tensorbasis")
    rng = np.random.default_rng(seed)
    one, zero = tb.CONE, tb.CZERO

    # vectors and tensors: conjugation, orthonormality, completeness, closed form
    for n in range(1, 5):
        for m in range(-n, n + 1):
            e = tb._tensor(n, m)
            ph = -1 if m % 2 else 1
            res.check("conjugation", _eq(tb.conj(e), tb._tensor(n, -m) * ph), n=n, m=m)
            res.check("closed_form", tb.standard_tensor(n, m) == tb.standard_tensor_closed(n, m), n=n, m=m)
            for mp in range(-n, n + 1):
                v = np.sum(tb.conj(e) * tb._tensor(n, mp))
                res.check("orthonormality", v == (one if m == mp else zero), n=n, m=m, mp=mp)
            if n >= 2:
                sym = all(_eq(e, np.transpose(e, p)) for p in itertools.permutations(range(n)))
                res.check("symmetric", sym, n=n, m=m)
                res.check("traceless", _is_zero(np.trace(e, axis1=0, axis2=1)), n=n, m=m)
    comp = sum((np.multiply.outer(tb._vec(m), tb.conj(tb._vec(m))) for m in (-1, 0, 1)),
               tb.zeros((3, 3)))
    res.check("vector_completeness", _eq(comp, tb.DELTA))
    res.check("top_projection_product",
              _eq(tb._tensor(2, 2), np.multiply.outer(tb._vec(1), tb._vec(1))))

    # maximal coupling of two standard tensors
    for n in range(2, 5):
        for q in range(1, n):
            for m in range(-n, n + 1):
                out = tb.zeros((3,) * n)
                for mq in range(-q, q + 1):
                    mp = m - mq
                    if abs(mp) > n - q:
                        continue
                    c = wg.cg2(2 * (n - q), 2 * mp, 2 * q, 2 * mq, 2 * n, 2 * m)
                    if c:
                        out = out + np.multiply.outer(tb._tensor(n - q, mp), tb._tensor(q, mq)) * c
                res.check("maximal_coupling", _eq(out, tb._tensor(n, m)), n=n, q=q, m=m)

    # projectors
    for n in (1, 2, 3):
        res.check("projector_closed", tb.sym_projector(n) == tb.sym_projector_closed(n), n=n)
    X3 = tb._sym_projector(3)
    res.check("projector_idempotent", _eq(tb.contract(X3, X3, ([3, 4, 5], [0, 1, 2])), X3), n=3)
    for n in (1, 2):
        res.check("spinor_projector_closed", tb.spinor_projector(n) == tb.spinor_projector_closed(n), n=n)
    P1 = tb._spinor_projector(1)
    tr = sum(P1[i, i, a, a] for i in range(3) for a in range(2))
    res.check("spinor_projector_trace", tr == CQSqrt(4))

    # Pauli contraction
    for m in (-1, 0, 1):
        for sz2 in (1, -1):
            lhs = np.einsum("k,kab,b->a", tb._vec(m), tb.PAULI, tb._pauli_spinor(sz2))
            f = sqrt_of_rational(Fraction(1, 1 + m * m)) * Fraction(sz2 - m)
            rhs = tb._pauli_spinor(sz2 * (-1) ** m) * f
            res.check("pauli_contraction", _eq(lhs, rhs), m=m, sz2=sz2)

    # spinors: orthonormality, conjugation, transversality
    isig2 = tb.PAULI[1] * tb.CI
    for n in range(1, 4):
        szs = list(range(-(2 * n + 1), 2 * n + 2, 2))
        for sz2 in szs:
            c = tb._spinor(n, sz2)
            for sp2 in szs:
                v = np.sum(tb.conj(tb._spinor(n, sp2)) * c)
                res.check("spinor_orthonormality", v == (one if sp2 == sz2 else zero), n=n, sz2=sz2, sp2=sp2)
            lhs = np.einsum("ab,...b->...a", isig2, c)
            ph = -1 if ((1 + sz2) // 2) % 2 else 1
            res.check("spinor_conjugation", _eq(lhs, tb.conj(tb._spinor(n, -sz2)) * ph), n=n, sz2=sz2)
            for k in range(n):
                moved = np.moveaxis(c, k, 0)
                t = np.einsum("kab,k...b->...a", tb.PAULI, moved)
                res.check("transversality", _is_zero(t), n=n, sz2=sz2, index=k)

    # spinor identities for n = 1, 2
    ieps = tb.LEVI_CIVITA * tb.CI
    for n in (1, 2):
        s2 = 2 * n + 1
        S = tb.spin_operator(Fraction(s2, 2))
        szs = list(range(-s2, s2 + 1, 2))
        for sz2 in szs:
            c = tb._spinor(n, sz2)
            a = np.einsum("ikh,kab,h...b->i...a", ieps, tb.PAULI, c)
            res.check("spinor_identity_1", _eq(a, c), n=n, sz2=sz2)
            t1 = np.einsum("kab,...b->k...a", tb.PAULI, c)
            t2 = np.einsum("iab,k...b->ki...a", tb.PAULI, c)
            t3 = np.einsum("kih,h...a->ki...a", ieps, c)
            res.check("spinor_identity_2", _is_zero(t1 - t2 + t3), n=n, sz2=sz2)
            for sp2 in szs:
                cp = tb.conj(tb._spinor(n, sp2))
                if n == 1:
                    lhs = np.einsum("ha,kab,hb->k", cp, tb.PAULI, c)
                    rhs = np.einsum("pa,pkq,qa->k", cp, ieps, c)
                else:
                    lhs = np.einsum("iha,kab,jhb->ikj", cp, tb.PAULI, c)
                    rhs = np.einsum("ipa,pkq,jqa->ikj", cp, ieps, c)
                res.check("spinor_identity_3", _eq(lhs, rhs), n=n, sz2=sz2, sp2=sp2)
                a_, b_ = (s2 - sp2) // 2, (s2 - sz2) // 2
                me = S[:, a_, b_]
                half_ = Fraction(2 * n + 1, 2)
                cpf = cp.reshape(-1, 2)
                cf = c.reshape(-1, 2)
                sig = np.einsum("xa,kab,xb->k", cpf, tb.PAULI, cf) * half_
                cpp = cp.reshape(-1, 3, 2)
                cq = c.reshape(-1, 3, 2)
                eps_form = np.einsum("xpa,pkq,xqa->k", cpp, ieps, cq) * half_
                res.check("spinor_identity_4", _eq(me, sig) and _eq(me, eps_form), n=n, sz2=sz2, sp2=sp2)

    # spin matrices
    for s2 in range(1, 8):
        S = tb.spin_operator(Fraction(s2, 2))
        res.check("spin_matrices_vs_ladder", _eq(S, tb.spin_operator_ladder(s2)), s2=s2)
        cas = sum((S[k].dot(S[k]) for k in range(3)), tb.zeros((s2 + 1, s2 + 1)))
        want = np.diag([CQSqrt(Fraction(s2 * (s2 + 2), 4))] * (s2 + 1))
        want = np.where(np.eye(s2 + 1, dtype=bool), want, tb.CZERO)
        res.check("casimir", _eq(cas, want), s2=s2)

    # irreducible part against the explicit detrace formulas
    for n in (2, 3):
        for trial in range(5):
            t = rng.normal(size=(3,) * n)
            a = tb.irreducible_part(t).data
            b = tb.detrace(tb.symmetrize(t)) / math.factorial(n)
            res.check("irreducible_vs_detrace", bool(np.allclose(a, b, atol=1e-12, rtol=0)), n=n, trial=trial)

    # addition relation and spherical harmonics
    for trial in range(n_pairs):
        r1 = rng.normal(size=3)
        r2 = rng.normal(size=3)
        r1 /= np.linalg.norm(r1)
        r2 /= np.linalg.norm(r2)
        x = float(r1 @ r2)
        for l in range(7):
            tot = 0j
            for m in range(-l, l + 1):
                e = tb._tensor_numeric(l, m)
                a = e
                b = np.conj(e)
                for _ in range(l):
                    a = a @ r1
                    b = b @ r2
                tot += complex(a) * complex(b)
            want = math.factorial(l) / _dfact(2 * l - 1) * float(pj.legendre(l)(x))
            res.check("addition_relation", abs(tot - want) < 1e-12, l=l, r1=r1, r2=r2)
            if trial < 10:
                err = max(abs(tb.sph_harm(l, m, r1) - ylm(l, m, r1)) for m in range(-l, l + 1))
                res.check("sph_harm_vs_recurrence", err < 1e-12, l=l, r=r1)
    return res


def _dfact(n: int) -> int:
    return math.prod(range(n, 0, -2)) if n > 0 else 1


# ---------------------------------------------------------------------------
# redmat

def suite_redmat(seed: int = 0, lmax: int = 6) -> SuiteResult:
    res = SuiteResult("redmat")
    space = OrbitalSpace(lmax + 7)

    def we(lp, l, word, val):
        rs, leak = we_ratios(space.word(word, lp, l), 2 * lp, 2 * l, len(word))
        v = complex(val)
        err = max((abs(x - v) for x in rs), default=0.0)
        return max(err, leak)

    for l in range(lmax + 1):
        for n in range(1, 4):
            for dl in range(-n, n + 1):
                lp = l + dl
                if lp < 0:
                    continue
                w = "R" * abs(dl) + "L" * (n - abs(dl))
                err = we(lp, l, w, to_float(rm.redmat_word(lp, l, w)))
                res.check("we_orbital_words", err < 1e-10, lp=lp, l=l, word=w, err=err)
        for dl in (1, -1):
            if l + dl >= 0:
                for kind, w in (("C11a", "X"), ("C11b", "XL")):
                    err = we(l + dl, l, w, complex(rm.redmat_cross(kind, l, dl)))
                    res.check("we_cross", err < 1e-10, kind=kind, l=l, dl=dl, err=err)
        for dl in (2, -2):
            if l + dl >= 0:
                err = we(l + dl, l, "RX", complex(rm.redmat_cross("C11c", l, dl)))
                res.check("we_cross", err < 1e-10, kind="C11c", l=l, dl=dl, err=err)
        res.check("cross_forbidden", rm.redmat_cross("C11a", l, 2) == CQSqrt(0), l=l)

        # exact ladder-operator oracle for L-only words
        Lm = l_matrices(l, exact=True)
        M = None
        for n in range(1, 4):
            M = Lm if n == 1 else np.moveaxis(tb.contract(M, Lm, ([M.ndim - 1], [1])), -2, -3)
            rs, clean = we_ratios_exact(M, 2 * l, 2 * l, n)
            want = CQSqrt(rm.redmat_J_power(l, n), 0)
            res.check("we_angular_momentum_exact", clean and (not rs or rs == {want}), l=l, n=n)

    # spin words through the explicit T and S matrices
    for s2 in range(6):
        for s2p in (s2 - 2, s2, s2 + 2):
            if s2p < 0 or s2p > 5:
                continue
            a = abs(s2p - s2) // 2
            for b in range(0, 4 - a):
                w = "T" * a + "S" * b
                if not w:
                    continue
                M = so.word_operator2(s2p, w, s2)
                rs, clean = we_ratios_exact(M, s2p, s2, len(w))
                want = CQSqrt(rm.redmat_spin_analog(Fraction(s2p, 2), Fraction(s2, 2), w), 0)
                res.check("we_spin_words_exact", clean and (not rs or rs == {want}), s2p=s2p, s2=s2, word=w)

    # closed forms against each other
    for l in range(11):
        for n in range(1, 4):
            for sg in (1, -1):
                if l + sg * n < 0:
                    continue
                a = rm.redmat_r_power(l, n, sg)
                ok = (a == rm.redmat_r_power_general(l + sg * n, n, l)
                      == rm.redmat_r_power_explicit(l, n, sg) == rm.redmat_r_L_mixed(l, n, sg * n))
                res.check("r_power_forms", ok, l=l, n=n, sign=sg)
            res.check("mixed_reduces_to_J", rm.redmat_r_L_mixed(l, n, 0) == rm.redmat_J_power(l, n), l=l, n=n)
        for dl in (1, -1):
            if l + dl >= 0:
                for kind, nn in (("RL", 2), ("RLL", 3)):
                    res.check("mixed_explicit", rm.redmat_r_L_explicit(kind, l, dl) == rm.redmat_r_L_mixed(l, nn, dl),
                              kind=kind, l=l, dl=dl)
        for dl in (2, -2):
            if l + dl >= 0:
                res.check("mixed_explicit", rm.redmat_r_L_explicit("RRL", l, dl) == rm.redmat_r_L_mixed(l, 3, dl),
                          kind="RRL", l=l, dl=dl)
    for dl in range(-3, 4):
        if dl:
            res.check("sign_carrier", rm.sign_carrier(dl) == (-1) ** ((abs(dl) - dl) // 2), dl=dl)

    for lp, L, l in [(1, 1, 0), (3, 2, 1), (4, 2, 2), (2, 2, 2), (5, 3, 2)]:
        c = to_float(rm.redmat_Y(lp, L, l)) / math.sqrt(4 * math.pi)
        err = 0.0
        for mp in range(-lp, lp + 1):
            for M in range(-L, L + 1):
                if abs(mp - M) <= l:
                    cgv = to_float(wg.cg2(2 * l, 2 * (mp - M), 2 * L, 2 * M, 2 * lp, 2 * mp))
                    err = max(err, abs(gaunt(lp, mp, L, M, l, mp - M) - c * cgv))
        res.check("gaunt", err < 1e-12, lp=lp, L=L, l=l, err=err)
    return res


# ---------------------------------------------------------------------------
# spinops

SPIN_ME_KEYS = [(1, 1, "S"), (2, 2, "S"), (2, 2, "SS"), (3, 3, "S"), (3, 3, "SS"), (3, 3, "SSS"),
                (2, 0, "T"), (0, 2, "T"), (3, 1, "T"), (3, 1, "TS"), (1, 3, "T"), (1, 3, "TS")]


def suite_spinops(seed: int = 0) -> SuiteResult:
    res = SuiteResult("spinops")
    rng = np.random.default_rng(seed)
    for s2p, s2, w in SPIN_ME_KEYS:
        for spz in _twice_range(s2p):
            for sz in _twice_range(s2):
                for m in range(-len(w), len(w) + 1):
                    args = (Fraction(s2p, 2), Fraction(spz, 2), w, m, Fraction(s2, 2), Fraction(sz, 2))
                    a = so.spin_me(*args)
                    b = so.spin_me(*args, method="closed")
                    res.check("closed_vs_matrix", a == b, s2p=s2p, spz=spz, word=w, m=m, s2=s2, sz=sz)
    for a, b in [(2, 0), (0, 2), (3, 1), (1, 3), (4, 2), (2, 4), (5, 3), (3, 5)]:
        res.check("commutator", so.commutator_check(a, b), s2_to=a, s2_from=b)
        T1 = so.t_matrix2(a, b)
        T2 = so.t_matrix2(b, a)
        res.check("hermitian", _eq(T1, tb.conj(np.transpose(T2, (0, 2, 1)))), s2_to=a, s2_from=b)
    for s2 in range(6):
        t2 = so.t_squared(Fraction(s2, 2))
        v = Fraction(3, 4) if s2 == 1 else 1
        want = np.where(np.eye(s2 + 1, dtype=bool), CQSqrt(v), tb.CZERO)
        res.check("t_squared", _eq(t2, want), s2=s2)
    # replacing sum_m eps eps^* by the projector, with exact L^i L^j and S^i S^j
    L2 = l_matrices(2, exact=True)
    S1 = so.spin_matrix(1)
    for trial in range(10):
        a, b = (int(x) for x in rng.integers(0, 5, size=2))
        c, d = (int(x) for x in rng.integers(0, 3, size=2))
        orb = np.einsum("iab,jbc->ijac", L2, L2)[:, :, a, b]
        spin = np.einsum("iab,jbc->ijac", S1, S1)[:, :, c, d]
        lhs, rhs = so.symtrace_contract_equiv(orb, spin)
        res.check("projector_replacement", lhs == rhs, a=a, b=b, c=c, d=d)
    # the l' != l matrix element of r r is traceless
    for l in range(5):
        m = r_tensor(l + 2, l, 2)
        res.check("rr_traceless", float(np.abs(np.trace(m, axis1=0, axis2=1)).max()) < 1e-12, l=l)
    return res


# ---------------------------------------------------------------------------
# cgfactor

def suite_cgfactor(seed: int = 0, lmax: int = 8, table_lmax: int = 12) -> SuiteResult:
    res = SuiteResult("cgfactor")
    for sp2, s2 in cgf.TABLE_PAIRS:
        for l in range(lmax + 1):
            for lp in range(max(0, l - 3), l + 4):
                aj = cgf.allowed_j(sp2, s2, 2 * lp, 2 * l)
                for j2 in range(abs(2 * l - s2), 2 * l + s2 + 1, 2):
                    for case in cgf.iter_cases(Fraction(sp2, 2), Fraction(s2, 2), lp, l, Fraction(j2, 2)):
                        d = cgf.s_direct(case)
                        key = dict(sp2=sp2, s2=s2, lp=lp, l=l, j2=j2, lpz2=case.lpz2, lz2=case.lz2,
                                   spz2=case.spz2, sz2=case.sz2)
                        if j2 not in aj:
                            res.check("selection_rule", d == ZERO, **key)
                            continue
                        res.check("factorized", cgf.s_factorized(case) == d, **key)
                        res.check("kappa_general", cgf.s_kappa(case, "general") == d, **key)
                        res.check("kappa_table", cgf.s_kappa(case, "table") == d, **key)
                        res.check("operator_general", cgf.s_operator_form(case, "general") == d, **key)
                        res.check("operator_table", cgf.s_operator_form(case, "table") == d, **key)
    for sp2, s2 in cgf.TABLE_PAIRS:
        for l in range(table_lmax + 1):
            for lp in range(max(0, l - 3), l + 4):
                for j2 in cgf.allowed_j(sp2, s2, 2 * lp, 2 * l):
                    for dd in cgf.delta_range(2 * lp, 2 * l, sp2, s2):
                        args = (Fraction(sp2, 2), Fraction(s2, 2), dd, lp, l, Fraction(j2, 2))
                        try:
                            ok_c = cgf.coeff_C_table(*args) == cgf.coeff_C_general(*args)
                            ok_k = cgf.coeff_kappa_table(*args) == cgf.coeff_kappa_general(*args)
                        except cgf.UndefinedCoefficientError:
                            continue
                        key = dict(sp2=sp2, s2=s2, delta=dd, lp=lp, l=l, j2=j2)
                        res.check("C_table_vs_general", ok_c, **key)
                        res.check("kappa_table_vs_general", ok_k, **key)
    for l in range(1, 9):
        for j2 in range(2 * l - 3, 2 * l + 4, 2):
            if j2 < 0:
                continue
            try:
                a, b = cgf.alt_ratio_check(l, Fraction(j2, 2))
            except (cgf.UndefinedCoefficientError, ValueError):
                continue
            res.check("alternative_ratio", a == b, l=l, j2=j2)
    return res


# ---------------------------------------------------------------------------
# projector

def suite_projector(seed: int = 0, n_frames: int = 50, lmax: int = 6) -> SuiteResult:
    res = SuiteResult("projector")
    rng = np.random.default_rng(seed)
    frames = [pj.GeomFrame.random(rng) for _ in range(n_frames)]
    for fi, f in enumerate(frames):
        for l in range(lmax + 1):
            err = abs(pj.proj_kernel(l, f) - pj.oracle_sum("", l, l, f))
            res.check("kernel_vs_harmonics", err < 1e-12, l=l, frame=fi)
            for p in (1, 2, 3):
                a = pj.me_L_power(p, l, f)
                err = float(np.abs(a - pj.oracle_irreducible("L" * p, l, l, f)).max())
                res.check("L_power_vs_oracle", err < 1e-10, p=p, l=l, frame=fi, err=err)
                err = float(np.abs(a - pj.me_L_power_special(p, l, f)).max())
                res.check("L_power_explicit", err < 1e-12, p=p, l=l, frame=fi, err=err)
                res.check("irreducible_output", _sym_traceless(a), kind="L", p=p, l=l, frame=fi)
            for sign in (1, -1):
                for n in (1, 2, 3):
                    if l + sign * n < 0:
                        continue
                    a = pj.me_r_power(n, sign, l, f)
                    err = float(np.abs(a - pj.oracle_sum("R" * n, l + sign * n, l, f)).max())
                    res.check("r_power_vs_oracle", err < 1e-10, n=n, sign=sign, l=l, frame=fi, err=err)
                    err = float(np.abs(a - pj.me_r_power_special(n, sign, l, f)).max())
                    res.check("r_power_explicit", err < 1e-12, n=n, sign=sign, l=l, frame=fi, err=err)
                    res.check("irreducible_output", _sym_traceless(a), kind="r", n=n, l=l, frame=fi)
                for n, t in ((1, 1), (2, 1), (1, 2)):
                    if l + sign * n < 0:
                        continue
                    a = pj.me_mixed(n, t, sign, l, f)
                    ref = pj.oracle_irreducible("R" * n + "L" * t, l + sign * n, l, f)
                    err = float(np.abs(a - ref).max())
                    res.check("mixed_vs_oracle", err < 1e-10, n=n, t=t, sign=sign, l=l, frame=fi, err=err)
                    err = float(np.abs(a - pj.me_mixed_special(n, t, sign, l, f)).max())
                    res.check("mixed_explicit", err < 1e-12, n=n, t=t, sign=sign, l=l, frame=fi, err=err)
                    res.check("irreducible_output", _sym_traceless(a), kind="mixed", n=n, t=t, l=l, frame=fi)
                if l + sign >= 0 and fi < 10:
                    lhs, rhs = pj.projected_dot_check(l, sign, f)
                    res.check("projected_dot", abs(lhs - rhs) < 1e-10, l=l, sign=sign, frame=fi)

    for l in range(13):
        for sign in (1, -1):
            for n in range(5):
                for k in range(n + 1):
                    try:
                        lhs, rhs = pj.legendre_relation(l, n, k, sign)
                    except ValueError:
                        continue
                    res.check("legendre_relation", lhs == rhs, l=l, n=n, k=k, sign=sign)

    for n in range(1, 5):
        for sign in (1, -1):
            for l in range(n, 13):
                res.check("A_n_forms", pj.a_n(n, sign, l) == pj.a_n_alt(n, sign, l), n=n, sign=sign, l=l)

    pts = [(Fraction(1, 3), Fraction(-2, 5)), (Fraction(3, 4), Fraction(1, 7)),
           (Fraction(-5, 2), Fraction(2, 3)), (Fraction(0), Fraction(1, 2))]
    vecs = [pj.rational_unit_vector(u, w) for u, w in pts]
    for ket, bra in ((vecs[0], vecs[1]), (vecs[2], vecs[3])):
        for l in range(9):
            for sign in (1, -1):
                if l + sign >= 0:
                    a, b = pj.seed_check(sign, l, ket, bra)
                    res.check("recursion_seed", bool(np.all(a == b)), l=l, sign=sign)
                for n in range(3):
                    if l + sign * (n + 1) < 0:
                        continue
                    a, b = pj.recursion_check(n, sign, l, ket, bra)
                    res.check("recursion_exact", bool(np.all(a == b)), n=n, sign=sign, l=l)
    return res


def _sym_traceless(t, tol: float = 1e-10) -> bool:
    t = np.asarray(t)
    n = t.ndim
    scale = max(1.0, float(np.abs(t).max()))
    for p in itertools.permutations(range(n)):
        if np.abs(t - np.transpose(t, p)).max() > tol * scale:
            return False
    if n >= 2 and np.abs(np.trace(t, axis1=0, axis2=1)).max() > tol * scale:
        return False
    return True


SUITES = {
    "wigner": suite_wigner,
    "tensorbasis": suite_tensorbasis,
    "redmat": suite_redmat,
    "spinops": suite_spinops,
    "cgfactor": suite_cgfactor,
    "projector": suite_projector,
}


def run_suite(name: str, seed: int = 0) -> SuiteResult:
    t0 = time.perf_counter()
    res = SUITES[name](seed=seed)
    res.seconds = time.perf_counter() - t0
    return res
