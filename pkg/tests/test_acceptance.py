"""End-to-end acceptance checks; each prints a single PASS/FAIL line."""
import random
import time
from fractions import Fraction as F

from conftest import ACCEPTANCE
from spincouple import bench, checks
from spincouple import wigner as wg


def report(n, ok, seconds, limit, detail=""):
    ok_time = seconds < limit
    line = (f"criterion {n}: {'PASS' if ok and ok_time else 'FAIL'} "
            f"({seconds:.1f} s, limit {limit} s) {detail}").rstrip()
    ACCEPTANCE[n] = line
    print(line)
    return ok and ok_time


def failed_identities(res, names):
    missing = [n for n in names if n not in res.counts]
    bad = [n for n in names if n in res.counts and res.counts[n][1]]
    return missing, bad


def test_criterion_1_four_way_equality():
    t0 = time.perf_counter()
    res = checks.suite_cgfactor(lmax=8)
    dt = time.perf_counter() - t0
    names = ["factorized", "kappa_general", "kappa_table", "operator_general", "operator_table",
             "selection_rule", "C_table_vs_general", "kappa_table_vs_general"]
    missing, bad = failed_identities(res, names)
    n = res.counts["factorized"][0]
    ok = report(1, not missing and not bad, dt, 120, f"{n} projection tuples per route; failing={bad}")
    assert ok, res.counterexamples


def test_criterion_2_recoupling():
    rng = random.Random(2024)
    t0 = time.perf_counter()
    done, bad = 0, []
    while done < 500:
        j1, j2, j3 = (rng.randint(0, 8) for _ in range(3))
        jp = rng.choice(range(abs(j1 - j2), j1 + j2 + 1, 2))
        j = rng.choice(range(abs(jp - j3), jp + j3 + 1, 2))
        if j > 8 or jp > 8:
            continue
        m1, m2, m3 = (rng.choice(range(-x, x + 1, 2)) for x in (j1, j2, j3))
        m = m1 + m2 + m3
        if abs(m) > j:
            continue
        args = [F(x, 2) for x in (j1, m1, j2, m2, j3, m3, jp, j, m)]
        lhs, rhs = wg.recouple_check(*args)
        if lhs != rhs:
            bad.append(args)
        done += 1
    dt = time.perf_counter() - t0
    assert report(2, not bad, dt, 10, f"500 tuples, {len(bad)} mismatches"), bad[:10]


def test_criterion_3_basis_invariants():
    t0 = time.perf_counter()
    res = checks.suite_tensorbasis(seed=3)
    dt = time.perf_counter() - t0
    names = ["orthonormality", "conjugation", "spinor_orthonormality", "spinor_conjugation",
             "transversality", "projector_closed", "spinor_projector_closed", "maximal_coupling",
             "pauli_contraction", "addition_relation"]
    missing, bad = failed_identities(res, names)
    assert report(3, not missing and not bad and res.passed, dt, 30,
                  f"missing={missing} failing={bad}"), res.counterexamples


def test_criterion_4_reduced_matrix_elements():
    t0 = time.perf_counter()
    res = checks.suite_redmat(seed=4)
    dt = time.perf_counter() - t0
    names = ["we_orbital_words", "we_cross", "we_angular_momentum_exact", "we_spin_words_exact"]
    missing, bad = failed_identities(res, names)
    assert report(4, not missing and not bad and res.passed, dt, 60,
                  f"missing={missing} failing={bad}"), res.counterexamples


def test_criterion_5_projector_elements():
    t0 = time.perf_counter()
    res = checks.suite_projector(seed=5, n_frames=50, lmax=6)
    dt = time.perf_counter() - t0
    names = ["L_power_vs_oracle", "r_power_vs_oracle", "mixed_vs_oracle", "L_power_explicit",
             "r_power_explicit", "mixed_explicit", "projected_dot", "legendre_relation"]
    missing, bad = failed_identities(res, names)
    assert report(5, not missing and not bad and res.passed, dt, 120,
                  f"missing={missing} failing={bad}"), res.counterexamples


def test_criterion_6_benchmark_trend():
    t0 = time.perf_counter()
    rows = bench.run_bench(bench.DEFAULT_LS, reps=3, cache="both")
    dt = time.perf_counter() - t0
    on = bench.trend_summary(rows, cached=True)
    off = bench.trend_summary(rows, cached=False)
    fmt = lambda t: " ".join(f"{l}:{r:.2f}" for l, r in t["ratios"].items())
    print(bench.to_csv(rows))
    print("reference ratios (reported only):", on["reference"])
    print("cache on :", fmt(on))
    print("cache off:", fmt(off))
    ok = on["nonincreasing"] and on["first_above_last"] and on["crosses_below_one"]
    detail = (f"ratios cached [{fmt(on)}] uncached [{fmt(off)}]; "
              f"nonincreasing={on['nonincreasing']} crosses_below_one={on['crosses_below_one']}")
    assert report(6, ok, dt, 600, detail)
