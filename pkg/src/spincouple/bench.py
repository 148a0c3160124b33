"""Timing of the direct CG product against the kappa-factorized form.

The case is s' = s = 3/2 with l' = l.  For each l the sweep evaluates every
projection tuple with l'_z + s'_z = l_z + s_z, for every j allowed by the
selection rules, once as the two-CG product and once as the
sum_D kappa cg(l..) cg(s..) right-hand side.  Both sides go through the same
exact arithmetic and the same CG routine; the CG memo is cleared before
every timed repetition so that each repetition starts cold.
"""
from __future__ import annotations

import csv
import io
import statistics
import time
from fractions import Fraction

from . import cgfactor as cgf
from . import wigner as wg

DEFAULT_LS = (1, 2, 5, 10, 20, 50, 100, 200)
# ratios quoted for a computer-algebra implementation; reported, not asserted
REFERENCE_RATIOS = {1: 2.0, 20: 1.0, 100: 0.5, 200: 0.25}

S2 = 3  # twice the spin


def sweep_cases(l: int) -> list:
    cases = []
    for j2 in cgf.allowed_j(S2, S2, 2 * l, 2 * l):
        cases.extend(cgf.iter_cases(Fraction(S2, 2), Fraction(S2, 2), l, l, Fraction(j2, 2)))
    return cases


def _direct(case):
    return cgf.s_direct(case)


def _factorized(case):
    return cgf.s_kappa(case, "table")


def _clear() -> None:
    wg.clear_caches()
    cgf._coeff_kappa_table2.cache_clear()
    cgf._coeff_C_table2.cache_clear()


def _time_sweep(fn, cases) -> int:
    _clear()
    t0 = time.perf_counter_ns()
    for c in cases:
        fn(c)
    return time.perf_counter_ns() - t0


def run_bench(ls=DEFAULT_LS, reps: int = 3, cache: str = "both", verify: bool = True) -> list[dict]:
    """Median wall time of both sweeps per l.

    ``cache`` is "on", "off" or "both".  Returns rows with keys
    l, j, mode, median_ns, ratio; ``j`` is "all" since a row covers every
    allowed j, and ``ratio`` is tau_factorized / tau_direct on the factorized
    rows.
    """
    if reps < 3:
        raise ValueError("need at least 3 repetitions")
    if cache not in ("on", "off", "both"):
        raise ValueError("cache must be on, off or both")
    settings = {"on": [True], "off": [False], "both": [True, False]}[cache]
    old = wg.cache_size()
    rows = []
    try:
        for cached in settings:
            wg.set_cache_size((old or 2 ** 20) if cached else 0)
            suffix = "" if cached else "-nocache"
            for l in ls:
                cases = sweep_cases(l)
                if verify:
                    for c in cases:
                        if _direct(c) != _factorized(c):
                            raise ArithmeticError(f"sweeps disagree at {c}")
                td, tf = [], []
                for _ in range(reps):
                    # alternate the order so drift does not favour one side
                    if len(td) % 2:
                        tf.append(_time_sweep(_factorized, cases))
                        td.append(_time_sweep(_direct, cases))
                    else:
                        td.append(_time_sweep(_direct, cases))
                        tf.append(_time_sweep(_factorized, cases))
                md, mf = statistics.median(td), statistics.median(tf)
                rows.append({"l": l, "j": "all", "mode": "direct" + suffix,
                             "median_ns": int(md), "ratio": ""})
                rows.append({"l": l, "j": "all", "mode": "factorized" + suffix,
                             "median_ns": int(mf), "ratio": mf / md})
    finally:
        wg.set_cache_size(old)
    return rows


def ratios(rows, cached: bool = True) -> dict[int, float]:
    mode = "factorized" if cached else "factorized-nocache"
    return {r["l"]: r["ratio"] for r in rows if r["mode"] == mode}


def trend_summary(rows, cached: bool = True) -> dict:
    """Shape of the ratio curve: monotonicity, end points, crossover below 1."""
    rs = ratios(rows, cached)
    ls = sorted(rs)
    vals = [rs[l] for l in ls]
    return {
        "ratios": {str(l): rs[l] for l in ls},
        "nonincreasing": all(b <= a for a, b in zip(vals, vals[1:])),
        "first_above_last": vals[0] > vals[-1] if vals else False,
        "crosses_below_one": any(v < 1 for v in vals),
        "reference": {str(l): v for l, v in REFERENCE_RATIOS.items()},
    }


def to_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=["l", "j", "mode", "median_ns", "ratio"], lineterminator="\n")
    w.writeheader()
    for r in rows:
        out = dict(r)
        if out["ratio"] != "":
            out["ratio"] = f"{out['ratio']:.17g}"
        w.writerow(out)
    return buf.getvalue()
