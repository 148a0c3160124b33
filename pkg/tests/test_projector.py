import math
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, strategies as st

from spincouple import projector as pj
from spincouple.oracles import ylm_block
from spincouple.projector import GeomFrame, RatPoly, legendre

FOUR_PI = 4 * math.pi


def frames(seed, n):
    rng = np.random.default_rng(seed)
    return [GeomFrame.random(rng) for _ in range(n)]


def angles(v):
    return math.acos(max(-1.0, min(1.0, v[2]))), math.atan2(v[1], v[0])


# Legendre polynomials

def test_low_legendre():
    assert legendre(0) == RatPoly([1])
    assert legendre(1) == RatPoly([0, 1])
    assert legendre(2) == RatPoly([F(-1, 2), 0, F(3, 2)])


@pytest.mark.parametrize("l", range(13))
def test_legendre_normalization_and_parity(l):
    p = legendre(l)
    assert p(F(1)) == 1 and p(F(-1)) == (-1) ** l


@pytest.mark.parametrize("l", range(13))
@pytest.mark.parametrize("sign", [1, -1])
def test_legendre_relation_exact(l, sign):
    for n in range(1, 5):
        if l + sign * (n + 1) < 0:
            continue
        for k in range(n + 1):
            lhs, rhs = pj.legendre_relation(l, n, k, sign)
            assert lhs == rhs


# kernel

def test_kernel_l0():
    f = frames(0, 1)[0]
    assert pj.proj_kernel(0, f) == pytest.approx(1 / FOUR_PI, rel=1e-15)


@pytest.mark.parametrize("l", range(7))
def test_kernel_coincident(l):
    v = np.array([0.48, 0.6, 0.64])
    assert pj.proj_kernel(l, GeomFrame(v, v)) == pytest.approx((2 * l + 1) / FOUR_PI, rel=1e-14)


def test_kernel_l4_against_harmonic_sum():
    for f in frames(1, 5):
        yb = ylm_block(4, *angles(f.rhatp))[:, 0]
        yk = ylm_block(4, *angles(f.rhat))[:, 0]
        assert pj.proj_kernel(4, f) == pytest.approx(np.sum(yb * np.conj(yk)).real, abs=1e-14)


# L powers

@pytest.mark.parametrize("l", range(1, 7))
def test_l_power_p1_closed_form(l):
    for f in frames(2, 5):
        want = 1j * (2 * l + 1) / FOUR_PI * f.v * float(legendre(l).deriv()(f.x))
        assert np.allclose(pj.me_L_power(1, l, f), want, atol=1e-13)


def test_l_power_p2_l1_single_structure():
    for f in frames(3, 5):
        got = pj.me_L_power(2, 1, f)
        base = pj.brace0(np.multiply.outer(f.rhat, f.rhatp))
        c = np.vdot(base, got) / np.vdot(base, base)
        assert np.allclose(got, c * base, atol=1e-13)


def test_l_power_p3_l5_against_oracle():
    for f in frames(4, 3):
        assert np.allclose(pj.me_L_power(3, 5, f), pj.oracle_irreducible("LLL", 5, 5, f), atol=1e-10)


# r-hat powers

@pytest.mark.parametrize("l", range(0, 7))
@pytest.mark.parametrize("sign", [1, -1])
def test_r_power_n1_closed_form(l, sign):
    l1 = l + sign
    if l1 < 0:
        return
    dp, dp1 = legendre(l).deriv(), legendre(l1).deriv()
    for f in frames(5, 5):
        want = (l1 - l) / FOUR_PI * (-f.rhat * float(dp(f.x)) + f.rhatp * float(dp1(f.x)))
        assert np.allclose(pj.me_r_power(1, sign, l, f), want, atol=1e-13)


@pytest.mark.parametrize("l", range(0, 7))
def test_a1(l):
    for sign in (1, -1):
        if l + sign >= 0:
            assert pj.a_n(1, sign, l) == sign
    for n in range(1, 5):
        for sign in (1, -1):
            if l + sign * n >= 0:
                assert pj.a_n(n, sign, l) == pj.a_n_alt(n, sign, l)


def test_r_power_n2_l3_against_oracle():
    for f in frames(6, 3):
        assert np.allclose(pj.me_r_power(2, 1, 3, f), pj.oracle_sum("RR", 5, 3, f), atol=1e-10)


def test_r_power_single_matches_oracle_sum():
    for f in frames(7, 3):
        assert np.allclose(pj.oracle_sum("R", 4, 3, f), pj.me_r_power(1, 1, 3, f), atol=1e-12)


# mixed

@pytest.mark.parametrize("nt", [(1, 1), (2, 1), (1, 2)])
@pytest.mark.parametrize("l", range(1, 6))
def test_mixed_special_forms(nt, l):
    n, t = nt
    for sign in (1, -1):
        if l + sign * n < 0:
            continue
        for f in frames(8, 4):
            assert np.allclose(pj.me_mixed_special(n, t, sign, l, f), pj.me_mixed(n, t, sign, l, f), atol=1e-12)


def test_mixed_12_l4_against_oracle():
    for f in frames(9, 3):
        for sign in (1, -1):
            got = pj.me_mixed(1, 2, sign, 4, f)
            assert np.allclose(got, pj.oracle_irreducible("RLL", 4 + sign, 4, f), atol=1e-10)


# oracle sanity

def test_oracle_identity_word():
    for f in frames(10, 3):
        assert pj.oracle_sum("", 3, 3, f) == pytest.approx(pj.proj_kernel(3, f), abs=1e-14)
        assert abs(pj.oracle_sum("", 2, 3, f)) < 1e-15


@pytest.mark.parametrize("l", [1, 3, 6])
def test_projected_dot(l):
    for f in frames(11, 3):
        for sign in (1, -1):
            if l + sign < 0:
                continue
            lhs, rhs = pj.projected_dot_check(l, sign, f)
            assert lhs == pytest.approx(rhs, abs=1e-10)


# properties

seeds = st.integers(0, 2**32 - 1)


@given(seeds, st.integers(0, 6), st.sampled_from([(1, 0), (2, 0), (3, 0), (0, 1), (0, 2), (0, 3)]),
       st.sampled_from([1, -1]))
def test_outputs_symmetric_traceless(seed, l, pn, sign):
    f = GeomFrame.random(np.random.default_rng(seed))
    p, n = pn
    if p:
        out = pj.me_L_power(p, max(l, 1), f)
    else:
        if l + sign * n < 0:
            return
        out = pj.me_r_power(n, sign, l, f)
    r = out.ndim
    if r >= 2:
        assert np.allclose(out, np.swapaxes(out, 0, 1), atol=1e-12)
        assert np.allclose(np.trace(out, axis1=0, axis2=1), 0, atol=1e-12)


@given(seeds, st.integers(1, 6))
def test_special_l_forms_match_general(seed, l):
    f = GeomFrame.random(np.random.default_rng(seed))
    for p in (1, 2, 3):
        assert np.allclose(pj.me_L_power_special(p, l, f), pj.me_L_power(p, l, f), atol=1e-12)
    for n in (1, 2, 3):
        for sign in (1, -1):
            if l + sign * n >= 0:
                assert np.allclose(pj.me_r_power_special(n, sign, l, f), pj.me_r_power(n, sign, l, f),
                                   atol=1e-12)


small = st.fractions(min_value=-3, max_value=3, max_denominator=7)


@given(small, small, small, small, st.integers(0, 6), st.integers(1, 3), st.sampled_from([1, -1]))
def test_recursion_exact(u1, w1, u2, w2, l, n, sign):
    if l + sign * (n + 1) < 0:
        return
    ket, bra = pj.rational_unit_vector(u1, w1), pj.rational_unit_vector(u2, w2)
    lhs, rhs = pj.recursion_check(n, sign, l, ket, bra)
    assert np.all(lhs == rhs)


@given(small, small, small, small, st.integers(0, 8), st.sampled_from([1, -1]))
def test_seed_exact(u1, w1, u2, w2, l, sign):
    if l + sign < 0:
        return
    lhs, rhs = pj.seed_check(sign, l, pj.rational_unit_vector(u1, w1), pj.rational_unit_vector(u2, w2))
    assert np.all(lhs == rhs)
