import math
from fractions import Fraction as F

import numpy as np
import pytest

from spincouple import redmat as rm
from spincouple import wigner as wg
from spincouple.checks import suite_redmat
from spincouple.exactnum import QSqrt, sqrt_of_rational
from spincouple.oracles import OrbitalSpace, gaunt, l_matrices, r_tensor, we_ratios, we_ratios_exact
from spincouple.spinops import word_operator

h = F(1, 2)


@pytest.fixture(scope="module")
def space():
    return OrbitalSpace(10)


def we_single(M, lp, l, n):
    ratios, leak = we_ratios(M, 2 * lp, 2 * l, n)
    assert leak < 1e-10
    ratios = np.asarray(ratios)
    assert np.max(np.abs(ratios - ratios[0])) < 1e-10
    return complex(ratios[0])


# J powers

@pytest.mark.parametrize("j", [h, 1, F(3, 2), 2, F(7, 2)])
def test_j_power_n1(j):
    assert rm.redmat_J_power(j, 1) == sqrt_of_rational(F(j) * (F(j) + 1))


def test_j_power_vanishes_when_rank_too_high():
    assert rm.redmat_J_power(h, 2) == 0


def test_j_power_j1_n2_against_ladder():
    L = l_matrices(1, exact=True)
    M = np.empty((3, 3, 3, 3), dtype=object)
    for i in range(3):
        for k in range(3):
            M[i, k] = L[i].dot(L[k])
    ratios, clean = we_ratios_exact(M, 2, 2, 2)
    assert clean and len(ratios) == 1
    (val,) = ratios
    assert val.im == 0 and val.re == rm.redmat_J_power(1, 2)


# spherical harmonics

def test_y_parity():
    for l in range(5):
        for L in (1, 3, 5):
            assert rm.redmat_Y(l, L, l) == 0


@pytest.mark.parametrize("lp, L, l", [(1, 1, 0), (3, 2, 1), (2, 2, 2), (4, 3, 1)])
def test_y_against_gaunt(lp, L, l):
    for m in range(-l, l + 1):
        for M in range(-L, L + 1):
            c = float(wg.cg(l, m, L, M, lp, m + M)) if abs(m + M) <= lp else 0.0
            if c:
                assert gaunt(lp, m + M, L, M, l, m) / c == pytest.approx(rm.redmat_Y_value(lp, L, l), abs=1e-12)


def test_y_value_is_c_over_sqrt_4pi():
    assert rm.redmat_Y(1, 1, 0) == QSqrt(1)
    assert rm.redmat_Y_value(1, 1, 0) == pytest.approx(1 / math.sqrt(4 * math.pi))


# r-hat powers

@pytest.mark.parametrize("l", range(8))
@pytest.mark.parametrize("sign", [1, -1])
def test_r_power_n1_formula(l, sign):
    l1 = l + sign
    if l1 < 0:
        return
    avg = F(l + l1, 2)
    ref = sign * sqrt_of_rational(h) * sqrt_of_rational((2 * avg + 1) / (2 * l1 + 1))
    assert rm.redmat_r_power(l, 1, sign) == ref


def test_r_power_zero_to_one():
    assert rm.redmat_r_power(0, 1, 1) == sqrt_of_rational(F(1, 3))
    M = r_tensor(1, 0, 1)
    assert we_single(M, 1, 0, 1).real == pytest.approx(3 ** -0.5, abs=1e-13)


def test_r_power_n2_against_quadrature():
    M = r_tensor(3, 1, 2)
    assert we_single(M, 3, 1, 2).real == pytest.approx(float(rm.redmat_r_power(1, 2, 1)), abs=1e-12)


@pytest.mark.parametrize("l", range(11))
@pytest.mark.parametrize("n", [1, 2, 3])
def test_r_power_forms_agree(l, n):
    for sign in (1, -1):
        if l + sign * n < 0:
            continue
        a = rm.redmat_r_power(l, n, sign)
        assert a == rm.redmat_r_power_general(l + sign * n, n, l)
        assert a == rm.redmat_r_power_explicit(l, n, sign)
        assert a == rm.redmat_r_L_mixed(l, n, sign * n)


# mixed words

@pytest.mark.parametrize("l", range(11))
@pytest.mark.parametrize("n", [1, 2, 3])
def test_mixed_reduces_to_j_power(l, n):
    assert rm.redmat_r_L_mixed(l, n, 0) == rm.redmat_J_power(l, n)


@pytest.mark.parametrize("l", range(1, 8))
@pytest.mark.parametrize("dl", [1, -1])
def test_mixed_rl_closed_form(l, dl):
    l1 = l + dl
    avg = F(l + l1, 2)
    ref = QSqrt(F(dl, 4)) * sqrt_of_rational((2 * avg - 1) * (2 * avg + 1) * (2 * avg + 3) / (2 * l1 + 1))
    assert rm.redmat_r_L_mixed(l, 2, dl) == ref
    assert rm.redmat_r_L_explicit("RL", l, dl) == ref


def test_mixed_l2_n3_against_operators(space):
    M = space.word("RLL", 3, 2)
    assert we_single(M, 3, 2, 3).real == pytest.approx(float(rm.redmat_word(3, 2, "RLL")), abs=1e-10)


# cross products

@pytest.mark.parametrize("l", range(1, 6))
@pytest.mark.parametrize("dl", [1, -1])
def test_cross_c11a_formula(l, dl):
    l1 = l + dl
    b = (l1 + l + 1) - 2 * dl
    ref = QSqrt(F(-b, 2)) * sqrt_of_rational(h) * sqrt_of_rational(F(l1 + l + 1, 2 * l1 + 1))
    got = rm.redmat_cross("C11a", l, dl)
    assert got.re == 0 and got.im == ref


def test_cross_forbidden_dl():
    assert rm.redmat_cross("C11a", 3, 0).is_zero()
    assert rm.redmat_cross("C11c", 3, 1).is_zero()


@pytest.mark.parametrize("kind, word, dl", [("C11a", "X", 1), ("C11b", "XL", -1), ("C11c", "RX", 2)])
def test_cross_against_operators(space, kind, word, dl):
    l = 3
    M = space.word(word, l + dl, l)
    got = we_single(M, l + dl, l, len(word))
    assert got == pytest.approx(rm.redmat_cross(kind, l, dl).to_complex(), abs=1e-10)


# spin analogs

@pytest.mark.parametrize("s", [F(0), h, F(1), F(3, 2), F(2)])
def test_spin_t_formula(s):
    sp = s + 1
    avg = (s + sp) / 2
    ref = sqrt_of_rational(h) * sqrt_of_rational((2 * avg + 1) / (2 * sp + 1))
    assert rm.redmat_spin_analog(sp, s, "T") == ref


@pytest.mark.parametrize("s", [h, 1, F(5, 2)])
def test_spin_s_word(s):
    assert rm.redmat_spin_analog(s, s, "S") == sqrt_of_rational(F(s) * (F(s) + 1))


def test_spin_ts_against_t_matrices():
    M = word_operator(F(3, 2), "TS", h)
    ratios, clean = we_ratios_exact(M, 3, 1, 2)
    assert clean and len(ratios) == 1
    (val,) = ratios
    assert val.im == 0 and val.re == rm.redmat_spin_analog(F(3, 2), h, "TS")


@pytest.mark.parametrize("dl", [-3, -2, -1, 1, 2, 3])
def test_sign_carrier(dl):
    assert rm.sign_carrier(dl) == (-1) ** ((abs(dl) - dl) // 2) == (1 if dl > 0 else -1) ** abs(dl)


def test_invariant_suite_passes():
    res = suite_redmat(seed=2)
    assert res.passed, res.counterexamples
