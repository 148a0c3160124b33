from fractions import Fraction as F

import pytest
import sympy
from hypothesis import given, strategies as st
from sympy.physics.wigner import clebsch_gordan, wigner_6j

from spincouple import wigner as wg
from spincouple.exactnum import QSqrt, sqrt_of_rational
from spincouple.oracles import cg_ladder

h = F(1, 2)


def sym(q: QSqrt):
    return sum((sympy.Rational(c.numerator, c.denominator) * sympy.sqrt(d) for d, c in q.items()),
               sympy.Integer(0))


def S(x):
    return sympy.Rational(F(x).numerator, F(x).denominator)


# examples

@pytest.mark.parametrize("l", range(6))
def test_singlet_coupling_is_one(l):
    for lz in range(-l, l + 1):
        assert wg.cg(l, lz, 0, 0, l, lz) == QSqrt(1)


def test_triplet_zero_component():
    assert wg.cg(h, h, h, -h, 1, 0) == sqrt_of_rational(h)


def test_vector_singlet_frozen_and_ladder():
    # frozen value, confirmed by the lowering/Gram-Schmidt construction
    assert wg.cg(1, 1, 1, -1, 0, 0) == sqrt_of_rational(F(1, 3))
    assert cg_ladder(2, 2)[(2, -2, 0, 0)] == pytest.approx(3 ** -0.5, abs=1e-14)


def test_projection_out_of_range_is_zero():
    assert wg.cg(1, 1, 1, 1, 1, 2) == 0


def test_sixj_unit_frozen():
    assert wg.sixj(1, 1, 1, 1, 1, 1) == QSqrt(F(1, 6))
    assert wigner_6j(1, 1, 1, 1, 1, 1) == sympy.Rational(1, 6)


def test_sixj_with_zero_entry():
    half = [F(k, 2) for k in range(7)]
    for j1 in half:
        for j2 in half:
            for j3 in half:
                if not wg.triangle2(wg.two(j1), wg.two(j2), wg.two(j3)):
                    continue
                got = wg.sixj(j1, j2, j3, 0, j3, j2)
                ref = (-1) ** int(j1 + j2 + j3) * sympy.sqrt(S(1 / ((2 * j2 + 1) * (2 * j3 + 1))))
                assert sympy.simplify(sym(got) - ref) == 0


def test_sixj_triangle_violation():
    assert wg.sixj(1, 1, 3, 1, 1, 1) == 0
    assert wg.sixj(h, h, 2, 1, 1, 1) == 0


def test_recoupling_all_half():
    for m1 in (h, -h):
        for m2 in (h, -h):
            for m3 in (h, -h):
                for jp in (0, 1):
                    for j in (h, F(3, 2)):
                        m = m1 + m2 + m3
                        if abs(m) > j:
                            continue
                        lhs, rhs = wg.recouple_check(h, m1, h, m2, h, m3, jp, j, m)
                        assert lhs == rhs


def test_recoupling_out_of_triangle():
    lhs, rhs = wg.recouple_check(h, h, h, h, h, -h, 2, h, h)
    assert lhs == 0 and rhs == 0


def test_half_integer_parsing():
    assert wg.two("3/2") == 3 and wg.two("1.5") == 3 and wg.two(F(-1, 2)) == -1
    with pytest.raises(ValueError):
        wg.two("0.3")


def test_cache_toggle_keeps_values():
    old = wg.cache_size()
    try:
        wg.set_cache_size(0)
        a = wg.cg(3, 1, F(3, 2), h, F(5, 2), F(3, 2))
        wg.set_cache_size(16)
        assert wg.cg(3, 1, F(3, 2), h, F(5, 2), F(3, 2)) == a
    finally:
        wg.set_cache_size(old)


# properties

spins = st.integers(0, 6)  # twice-values


@given(spins, spins, st.data())
def test_cg_matches_sympy(j1, j2, data):
    j = data.draw(st.sampled_from(range(abs(j1 - j2), j1 + j2 + 1, 2)))
    m1 = data.draw(st.sampled_from(range(-j1, j1 + 1, 2)))
    m2 = data.draw(st.sampled_from(range(-j2, j2 + 1, 2)))
    if abs(m1 + m2) > j:
        return
    ref = clebsch_gordan(S(F(j1, 2)), S(F(j2, 2)), S(F(j, 2)), S(F(m1, 2)), S(F(m2, 2)), S(F(m1 + m2, 2)))
    assert sympy.simplify(sym(wg.cg2(j1, m1, j2, m2, j, m1 + m2)) - ref) == 0


@pytest.mark.parametrize("j1", range(7))
@pytest.mark.parametrize("j2", range(7))
def test_orthogonality(j1, j2):
    js = range(abs(j1 - j2), j1 + j2 + 1, 2)
    for j in js:
        for jp in js:
            for m in range(-min(j, jp), min(j, jp) + 1, 2):
                tot = QSqrt(0)
                for m1 in range(-j1, j1 + 1, 2):
                    tot = tot + wg.cg2(j1, m1, j2, m - m1, j, m) * wg.cg2(j1, m1, j2, m - m1, jp, m)
                assert tot == QSqrt(1 if j == jp else 0)


@given(st.integers(0, 8), st.integers(0, 8), st.integers(0, 8), st.data())
def test_recoupling_random(j1, j2, j3, data):
    m1 = data.draw(st.sampled_from(range(-j1, j1 + 1, 2)))
    m2 = data.draw(st.sampled_from(range(-j2, j2 + 1, 2)))
    m3 = data.draw(st.sampled_from(range(-j3, j3 + 1, 2)))
    jp = data.draw(st.sampled_from(range(abs(j1 - j2), j1 + j2 + 1, 2)))
    js = [j for j in range(abs(jp - j3), jp + j3 + 1, 2) if abs(m1 + m2 + m3) <= j]
    if not js:
        return
    j = data.draw(st.sampled_from(js))
    lhs, rhs = wg.recouple_check(F(j1, 2), F(m1, 2), F(j2, 2), F(m2, 2), F(j3, 2), F(m3, 2),
                                 F(jp, 2), F(j, 2), F(m1 + m2 + m3, 2))
    assert lhs == rhs


@given(st.integers(0, 8), st.integers(0, 8), st.integers(0, 8), st.integers(0, 8),
       st.integers(0, 8), st.integers(0, 8))
def test_sixj_matches_sympy(a, b, c, d, e, f):
    got = wg.sixj2(a, b, c, d, e, f)
    if any((x + y + z) % 2 for x, y, z in ((a, b, c), (a, e, f), (d, b, f), (d, e, c))):
        assert got == 0
        return
    ref = wigner_6j(*(S(F(x, 2)) for x in (a, b, c, d, e, f)))
    assert sympy.simplify(sym(got) - ref) == 0


@pytest.mark.parametrize("l", range(11))
@pytest.mark.parametrize("n", range(1, 5))
def test_zero_projection_closed_form(l, n):
    for t in range(7):
        for sign in (1, -1):
            ln = l + sign * n
            if ln < 0:
                continue
            direct = wg.cg2(2 * l, 0, 2 * (n + t), 0, 2 * ln, 0)
            assert wg.cg_zero_closed(l, n, t, sign) == direct
            if t % 2:
                assert direct == 0
