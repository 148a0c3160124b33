from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, strategies as st

from spincouple import cgfactor as cgf
from spincouple import wigner as wg
from spincouple.exactnum import QSqrt, sqrt_of_rational
from spincouple.oracles import l_matrices
from spincouple.tensorbasis import spin_operator

h = F(1, 2)
case = cgf.CouplingCase.make


def rsqrt(x):
    return sqrt_of_rational(F(x))


def all_four(c):
    d = cgf.s_direct(c)
    return d, [cgf.s_factorized(c), cgf.s_operator_form(c), cgf.s_kappa(c)]


# direct evaluation

@pytest.mark.parametrize("l", range(4))
def test_spinless(l):
    for lp in range(4):
        for lpz in range(-lp, lp + 1):
            for lz in range(-l, l + 1):
                want = int(lp == l and lpz == lz)
                assert cgf.s_direct(case(l, lp, l, 0, 0, lpz, lz, 0, 0)) == QSqrt(want)


def test_l0_spin_half():
    for spz in (h, -h):
        for sz in (h, -h):
            assert cgf.s_direct(case(h, 0, 0, h, h, 0, 0, spz, sz)) == QSqrt(int(spz == sz))


# factorization forms

@st.composite
def random_cases(draw):
    sp2, s2 = draw(st.sampled_from(cgf.TABLE_PAIRS))
    l = draw(st.integers(0, 6))
    lp = draw(st.integers(max(0, l - 3), l + 3))
    js = cgf.allowed_j(sp2, s2, 2 * lp, 2 * l)
    if not js:
        return None
    j2 = draw(st.sampled_from(js))
    cases = list(cgf.iter_cases(F(sp2, 2), F(s2, 2), lp, l, F(j2, 2)))
    return draw(st.sampled_from(cases)) if cases else None


@given(random_cases())
def test_four_way_equality_random(c):
    if c is None:
        return
    d, others = all_four(c)
    assert all(o == d for o in others)


@given(st.integers(0, 6), st.data())
def test_general_spins_factorize(l, data):
    sp2 = data.draw(st.integers(0, 5))
    s2 = data.draw(st.sampled_from([x for x in range(0, 6) if (x - sp2) % 2 == 0]))
    lp = data.draw(st.integers(max(0, l - 2), l + 2))
    j2 = data.draw(st.sampled_from(range(abs(2 * l - s2), 2 * l + s2 + 1, 2)))
    cases = list(cgf.iter_cases(F(sp2, 2), F(s2, 2), lp, l, F(j2, 2)))
    if not cases:
        return
    c = data.draw(st.sampled_from(cases))
    d = cgf.s_direct(c)
    assert cgf.s_factorized(c) == d
    assert cgf.s_kappa(c, "general") == d
    if max(sp2, s2) <= 3:
        assert cgf.s_operator_form(c, "general") == d
    else:
        with pytest.raises(cgf.UnsupportedCaseError):
            cgf.s_operator_form(c, "general")


def test_empty_delta_range_gives_zero():
    # l' = l + 3 cannot couple through spin-1/2 with D <= 1
    assert len(cgf.delta_range(8, 2, 1, 1)) == 0
    for c in cgf.iter_cases(h, h, 4, 1, F(3, 2)):
        assert cgf.s_direct(c) == 0 and cgf.s_factorized(c) == 0


@pytest.mark.parametrize("l", range(0, 6))
def test_spin_half_two_term_forms(l):
    L = l_matrices(l, exact=True)
    Sh = spin_operator(h)
    for j in {abs(l - h), l + h}:
        c0 = QSqrt(F(j + h, 2 * l + 1))
        c1 = F(2 * (j - l), 1) / (l + h)
        for c in cgf.iter_cases(h, h, l, l, j):
            lpz, lz, spz, sz = (F(x, 2) for x in (c.lpz2, c.lz2, c.spz2, c.sz2))
            dlz = lpz - lz
            delta = QSqrt(1) if (lpz == lz and spz == sz) else QSqrt(0)
            # operator form with eps eps^* replaced by delta
            dot = sum((L[k][int(l - lpz), int(l - lz)] * Sh[k][int(h - spz), int(h - sz)]
                       for k in range(3)), start=L[0][0, 0] * 0)
            assert dot.im == 0
            op = c0 * delta + QSqrt(c1) * dot.re
            # WE-reduced two-CG form
            we = c0 * delta + QSqrt(c1) * rsqrt(F(3, 4) * l * (l + 1)) \
                * wg.cg(l, lz, 1, dlz, l, lpz) * wg.cg(h, spz, 1, dlz, h, sz)
            d = cgf.s_direct(c)
            assert op == d and we == d


# coefficients

@pytest.mark.parametrize("l", range(0, 8))
def test_c_spin_half_d0(l):
    for j in {abs(l - h), l + h}:
        assert cgf.coeff_C_general(h, h, 0, l, l, j) == QSqrt(F(j + h, 2 * l + 1))


@pytest.mark.parametrize("l", range(0, 8))
@pytest.mark.parametrize("dl", [1, -1])
def test_c_spin_half_d1_off_diagonal(l, dl):
    lp = l + dl
    if lp < 0:
        return
    for j2 in cgf.allowed_j(1, 1, 2 * lp, 2 * l):
        assert cgf.coeff_C_general(h, h, 1, lp, l, F(j2, 2)) == QSqrt(-2)


@pytest.mark.parametrize("l", range(0, 8))
@pytest.mark.parametrize("dl", [2, -2])
def test_c_spin_one_d2(l, dl):
    lp = l + dl
    if lp < 0:
        return
    for j2 in cgf.allowed_j(2, 2, 2 * lp, 2 * l):
        j = F(j2, 2)
        want = QSqrt(2 * j + 1) / rsqrt(j * (j + 1))
        assert cgf.coeff_C_general(1, 1, 2, lp, l, j) == want
        assert cgf.coeff_C_table(1, 1, 2, lp, l, j) == want


@pytest.mark.parametrize("l", range(0, 8))
@pytest.mark.parametrize("dl", [3, -3])
def test_c_spin_three_halves_d3(l, dl):
    lp = l + dl
    if lp < 0:
        return
    for j2 in cgf.allowed_j(3, 3, 2 * lp, 2 * l):
        j = F(j2, 2)
        want = QSqrt(F(-8, 3)) * rsqrt(j * (j + 1) / ((2 * j - 1) * (2 * j + 3)))
        assert cgf.coeff_C_table(F(3, 2), F(3, 2), 3, lp, l, j) == want


@pytest.mark.parametrize("l", range(1, 9))
def test_c_101(l):
    assert cgf.coeff_C_table(1, 0, 1, l, l, l) == rsqrt(F(3, l * (l + 1)))


@pytest.mark.parametrize("l", range(0, 8))
@pytest.mark.parametrize("dl", [2, -2])
def test_c_three_halves_half_d2(l, dl):
    lp = l + dl
    if lp < 0:
        return
    avg = F(l + lp, 2)
    for j2 in cgf.allowed_j(3, 1, 2 * lp, 2 * l):
        j = F(j2, 2)
        want = QSqrt(F(2 * dl)) / rsqrt(3) * rsqrt(2 * j + 1) * rsqrt((2 * avg + 1) / (avg * (avg + 1)))
        assert cgf.coeff_C_table(F(3, 2), h, 2, lp, l, j) == want


@pytest.mark.parametrize("l", range(0, 8))
def test_kappa_equals_c_for_d0(l):
    t = F(3, 2)
    for j2 in cgf.allowed_j(3, 3, 2 * l, 2 * l):
        j = F(j2, 2)
        assert cgf.coeff_kappa_table(t, t, 0, l, l, j) == cgf.coeff_C_table(t, t, 0, l, l, j)


@pytest.mark.parametrize("l", range(0, 8))
@pytest.mark.parametrize("dl", [1, -1])
def test_kappa_spin_half_d1(l, dl):
    lp = l + dl
    if lp < 0:
        return
    avg = F(l + lp, 2)
    want = QSqrt(-dl) * rsqrt(F(3, 2)) * rsqrt((2 * avg + 1) / (2 * lp + 1))
    for j2 in cgf.allowed_j(1, 1, 2 * lp, 2 * l):
        assert cgf.coeff_kappa_table(h, h, 1, lp, l, F(j2, 2)) == want


# operator form and selection rules

def test_operator_form_spin_half_l1():
    for c in cgf.iter_cases(h, h, 1, 1, F(3, 2)):
        assert cgf.s_operator_form(c) == cgf.s_direct(c)


def test_operator_form_three_halves_half_dl2():
    for l in range(0, 5):
        for j2 in cgf.allowed_j(3, 1, 2 * l + 4, 2 * l):
            for c in cgf.iter_cases(F(3, 2), h, l + 2, l, F(j2, 2)):
                assert cgf.s_operator_form(c) == cgf.s_direct(c)


@pytest.mark.parametrize("l", range(0, 7))
def test_spin_one_dl2_only_j_l_plus_1(l):
    assert cgf.allowed_j(2, 2, 2 * l + 4, 2 * l) == [2 * l + 2]
    for j in (l, l + 2):
        if j < 0:
            continue
        for c in cgf.iter_cases(1, 1, l + 2, l, j):
            assert cgf.s_direct(c) == 0


def test_table_rejects_unlisted_spins():
    c = case(F(5, 2), 1, 1, F(5, 2), F(5, 2), 0, 0, h, h)
    with pytest.raises(cgf.UnsupportedCaseError):
        cgf.s_operator_form(c, "table")


@pytest.mark.parametrize("l", [1, 2, 5])
def test_alternative_ratio(l):
    for j in (l - h, l + h):
        a, b = cgf.alt_ratio_check(l, j)
        assert a == b
