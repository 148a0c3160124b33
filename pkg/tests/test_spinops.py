from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, strategies as st

from spincouple import spinops as so
from spincouple import tensorbasis as tb
from spincouple.checks import SPIN_ME_KEYS, suite_spinops
from spincouple.exactnum import CQSqrt, QSqrt, sqrt_of_rational

h = F(1, 2)


def eye_exact(n, v=1):
    out = np.empty((n, n), dtype=object)
    for a in range(n):
        for b in range(n):
            out[a, b] = CQSqrt(v) if a == b else tb.CZERO
    return out


def test_t_from_singlet():
    T = so.t_matrix(1, 0)  # (h, s'_z row, s_z col)
    inv3 = CQSqrt(sqrt_of_rational(F(1, 3)))
    for row, spz in enumerate((1, 0, -1)):
        eps = tb.conj(tb.standard_vector(spz).data)
        for k in range(3):
            assert T[k, row, 0] == eps[k] * inv3


def test_t_squared_spin_one_is_identity():
    assert tb.exact_equal(so.t_squared(1), eye_exact(3))


def test_t_squared_spin_half():
    assert tb.exact_equal(so.t_squared(h), eye_exact(2, F(3, 4)))


@pytest.mark.parametrize("s", [F(0), F(3, 2), F(2), F(5, 2)])
def test_t_squared_other_spins(s):
    assert tb.exact_equal(so.t_squared(s), eye_exact(int(2 * s + 1)))


@pytest.mark.parametrize("spz", [1, 0, -1])
@pytest.mark.parametrize("sz", [1, 0, -1])
@pytest.mark.parametrize("m", [1, 0, -1])
def test_spin_one_cross_product_form(spz, sz, m):
    a = tb.conj(tb.standard_vector(spz).data)
    b = tb.standard_vector(sz).data
    cross = np.empty(3, dtype=object)
    for k in range(3):
        cross[k] = sum((tb.LEVI_CIVITA[k, i, j] * a[i] * b[j] for i in range(3) for j in range(3)), tb.CZERO)
    em = tb.conj(tb.standard_vector(m).data)
    ref = CQSqrt(0, -1) * sum((em[k] * cross[k] for k in range(3)), tb.CZERO)
    assert so.spin_me(1, spz, "S", m, 1, sz) == ref


@pytest.mark.parametrize("sz", [h, -h])
def test_diagonal_s3_on_spin_half(sz):
    assert so.spin_me(h, sz, "S", 0, h, sz) == CQSqrt(sz)


@pytest.mark.parametrize("key", SPIN_ME_KEYS)
def test_closed_forms_match_matrices(key):
    s2p, s2, w = key
    for spz in range(-s2p, s2p + 1, 2):
        for sz in range(-s2, s2 + 1, 2):
            for m in range(-len(w), len(w) + 1):
                args = (F(s2p, 2), F(spz, 2), w, m, F(s2, 2), F(sz, 2))
                assert so.spin_me_closed(*args) == so.spin_me_matrix(*args)


@pytest.mark.parametrize("pair", [(2, 0), (0, 2), (3, 1), (1, 3), (4, 2), (2, 4), (5, 3), (3, 5)])
def test_commutator(pair):
    assert so.commutator_check(*pair)


def test_rank1_replacement():
    # sum_m eps(m) eps(m)^* = delta at rank 1
    tot = np.zeros((3, 3), dtype=object)
    tot[:] = tb.CZERO
    for m in (-1, 0, 1):
        e = tb.standard_vector(m).data
        tot = tot + np.multiply.outer(e, tb.conj(e))
    assert tb.exact_equal(tot, tb.DELTA)


@given(st.integers(0, 4), st.integers(0, 4), st.integers(0, 2), st.integers(0, 2))
def test_projector_replacement_l2_s1(a, b, c, d):
    L2 = so.spin_matrix(2)
    S1 = so.spin_matrix(1)
    orb = np.einsum("iab,jbc->ijac", L2, L2)[:, :, a, b]
    spin = np.einsum("iab,jbc->ijac", S1, S1)[:, :, c, d]
    lhs, rhs = so.symtrace_contract_equiv(orb, spin)
    assert lhs == rhs


def test_unsupported_word_order():
    with pytest.raises(so.UnsupportedCaseError):
        so.word_operator(F(3, 2), "ST", h)


def test_invariant_suite_passes():
    res = suite_spinops(seed=4)
    assert res.passed, res.counterexamples
