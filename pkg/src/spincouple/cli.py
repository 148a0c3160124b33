"""spincouple command line.

Exact values are printed as JSON term lists ``[{"c": "p/q", "d": radicand}]``;
floats carry 17 significant digits.  Exit codes: 0 success, 1 a check suite
failed, 2 invalid quantum numbers, 3 a case with no closed form.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import re
import sys
from fractions import Fraction

import numpy as np

from . import bench as bench_mod
from . import cgfactor as cgf
from . import checks
from . import projector as pj
from . import redmat as rm
from . import wigner as wg
from .exactnum import CQSqrt, ExactDomainError, QSqrt, UnsupportedDivisorError
from .spinops import UnsupportedCaseError
from .tensorbasis import sph_harm

EXIT_OK, EXIT_FAIL, EXIT_INVALID, EXIT_UNSUPPORTED = 0, 1, 2, 3


class InvalidInput(ValueError):
    pass


def _half(text) -> Fraction:
    try:
        return Fraction(wg.two(text), 2)
    except (ValueError, TypeError) as exc:
        raise InvalidInput(str(exc)) from None


def _spin(text) -> Fraction:
    v = _half(text)
    if v < 0:
        raise InvalidInput(f"angular momentum {text} is negative")
    return v


def _proj(j: Fraction, text, name="m") -> Fraction:
    m = _half(text)
    if abs(m) > j or (j - m).denominator != 1:
        raise InvalidInput(f"{name}={text} is not a projection of j={j}")
    return m


def _int(text, name="value", lo=None) -> int:
    try:
        v = int(text)
    except ValueError:
        raise InvalidInput(f"{name} must be an integer, got {text!r}") from None
    if lo is not None and v < lo:
        raise InvalidInput(f"{name} must be >= {lo}")
    return v


def _vec(text) -> np.ndarray:
    try:
        v = np.array([float(x) for x in text.split(",")])
    except ValueError:
        raise InvalidInput(f"bad vector {text!r}") from None
    if v.shape != (3,) or not np.all(np.isfinite(v)) or np.linalg.norm(v) == 0:
        raise InvalidInput(f"need three comma-separated components, got {text!r}")
    return v / np.linalg.norm(v)


# ---------------------------------------------------------------------------
# output

def fmt_float(x: float) -> str:
    x = float(x)
    if not math.isfinite(x):
        return json.dumps(str(x))
    s = f"{x:.17g}"
    if s == "-0":
        s = "0"
    # keep it a JSON number that reads back as a float
    return s if any(c in s for c in ".en") else s + ".0"


def dump(obj) -> str:
    """Compact JSON where floats always carry 17 significant digits."""
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, (float, np.floating)):
        return fmt_float(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ",".join(json.dumps(str(k)) + ":" + dump(v) for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(dump(v) for v in obj) + "]"
    return json.dumps(str(obj))


def _exact_out(value, numeric: bool) -> str:
    if isinstance(value, CQSqrt):
        if numeric:
            z = value.to_complex()
            return dump({"re": z.real, "im": z.imag})
        return dump(value.to_json_obj())
    if numeric:
        return fmt_float(float(value))
    return dump(value.to_json_obj())


def _array_out(arr) -> str:
    arr = np.asarray(arr)
    if arr.ndim == 0:
        z = complex(arr)
        return dump([z.real, z.imag])
    return "[" + ",".join(_array_out(a) for a in arr) + "]"


# ---------------------------------------------------------------------------
# evaluation commands

def _cmd_cg(a):
    j1, j2, j = _spin(a.j1), _spin(a.j2), _spin(a.j)
    m1, m2, m = _proj(j1, a.m1, "m1"), _proj(j2, a.m2, "m2"), _proj(j, a.m, "m")
    return _exact_out(wg.cg(j1, m1, j2, m2, j, m), a.numeric)


def _cmd_sixj(a):
    js = [_spin(x) for x in a.j]
    return _exact_out(wg.sixj(*js), a.numeric)


def _cmd_redmat(a):
    word = a.word
    if word in ("C11a", "C11b", "C11c"):
        lp, l = _int(a.lp, "lp", 0), _int(a.l, "l", 0)
        return _exact_out(rm.redmat_cross(word, l, lp - l), a.numeric)
    letters = set(word)
    if letters <= {"R", "L"}:
        lp, l = _int(a.lp, "lp", 0), _int(a.l, "l", 0)
        return _exact_out(rm.redmat_word(lp, l, word), a.numeric)
    if letters <= {"T", "S"}:
        return _exact_out(rm.redmat_spin_analog(_spin(a.lp), _spin(a.l), word), a.numeric)
    if word == "Y":
        if a.rank is None:
            raise InvalidInput("word Y needs --rank")
        return _exact_out(rm.redmat_Y(_int(a.lp, "lp", 0), _int(a.rank, "rank", 0), _int(a.l, "l", 0)),
                          a.numeric)
    raise InvalidInput(f"unknown word {word!r}: use R/L letters, T/S letters, Y or C11a/b/c")


def _case_from(a) -> cgf.CouplingCase:
    sp, s, j = _spin(a.sp), _spin(a.s), _spin(a.j)
    lp, l = _int(a.lp, "lp", 0), _int(a.l, "l", 0)
    lpz, lz = _proj(Fraction(lp), a.lpz, "lpz"), _proj(Fraction(l), a.lz, "lz")
    spz, sz = _proj(sp, a.spz, "spz"), _proj(s, a.sz, "sz")
    if (l + s - j).denominator != 1:
        raise InvalidInput("j must differ from l + s by an integer")
    return cgf.CouplingCase(wg.two(j), 2 * lp, 2 * l, wg.two(sp), wg.two(s),
                            wg.two(lpz), wg.two(lz), wg.two(spz), wg.two(sz))


def _cmd_ssum(a):
    case = _case_from(a)
    fn = {
        "direct": cgf.s_direct,
        "factorized": cgf.s_factorized,
        "operator": lambda c: cgf.s_operator_form(c, a.source),
        "kappa": lambda c: cgf.s_kappa(c, a.source),
    }[a.mode]
    return _exact_out(fn(case), a.numeric)


def _cmd_coeff(a):
    sp, s, j = _spin(a.s2), _spin(a.s), _spin(a.j)
    l = _int(a.l, "l", 0)
    lp = l + _int(a.dl, "dl")
    if lp < 0:
        raise InvalidInput("l + dl is negative")
    d = _int(a.delta, "delta", 0)
    table = {
        ("C", "table"): cgf.coeff_C_table, ("C", "general"): cgf.coeff_C_general,
        ("kappa", "table"): cgf.coeff_kappa_table, ("kappa", "general"): cgf.coeff_kappa_general,
    }
    return _exact_out(table[(a.kind, a.source)](sp, s, d, lp, l, j), a.numeric)


def _cmd_projme(a):
    frame = pj.GeomFrame(_vec(a.rhat), _vec(a.rhatp))
    l = _int(a.l, "l", 0)
    sign = 1 if a.sign == "+" else -1
    if a.kind == "L":
        out = pj.me_L_power(_int(a.p, "p", 1), l, frame)
    elif a.kind == "r":
        out = pj.me_r_power(_int(a.n, "n", 1), sign, l, frame)
    else:
        out = pj.me_mixed(_int(a.n, "n", 1), _int(a.t, "t", 1), sign, l, frame)
    return _array_out(out)


def _cmd_sphharm(a):
    l = _int(a.l, "l", 0)
    m = _int(a.m, "m")
    if abs(m) > l:
        raise InvalidInput(f"|m| > l for l={l}, m={m}")
    z = complex(sph_harm(l, m, _vec(a.rhat)))
    return dump({"re": z.real, "im": z.imag})


def cmd_eval(args) -> int:
    out = _EVAL[args.command](args)
    print(out)
    return EXIT_OK


_EVAL = {
    "cg": _cmd_cg, "sixj": _cmd_sixj, "redmat": _cmd_redmat, "ssum": _cmd_ssum,
    "coeff": _cmd_coeff, "projme": _cmd_projme, "sphharm": _cmd_sphharm,
}


# ---------------------------------------------------------------------------
# suites and benchmark

def check_report(name: str, seed: int = 0) -> tuple[dict, list]:
    names = list(checks.SUITES) if name == "all" else [name]
    results = [checks.run_suite(n, seed=seed) for n in names]
    report = {
        "seed": seed,
        "passed": all(r.passed for r in results),
        "suites": [r.to_dict(timing=False) for r in results],
    }
    return report, results


def cmd_check(args) -> int:
    if args.suite != "all" and args.suite not in checks.SUITES:
        raise InvalidInput(f"unknown suite {args.suite!r}")
    report, results = check_report(args.suite, args.seed)
    text = dump(report)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    for r in results:
        print(f"{r.name}: {'pass' if r.passed else 'FAIL'} ({r.seconds:.2f} s)", file=sys.stderr)
    if report["passed"]:
        return EXIT_OK
    bad = [c | {"suite": r.name} for r in results for c in r.counterexamples][:checks.MAX_COUNTEREXAMPLES]
    for c in bad:
        print("counterexample: " + dump(c), file=sys.stderr)
    return EXIT_FAIL


def cmd_bench(args) -> int:
    if args.lmax < 1:
        raise InvalidInput("lmax must be >= 1")
    if args.reps < 3:
        raise InvalidInput("need at least 3 repetitions")
    ls = [l for l in bench_mod.DEFAULT_LS if l <= args.lmax]
    rows = bench_mod.run_bench(ls, reps=args.reps, cache=args.cache)
    if args.format == "json":
        summary = {}
        for cached in {"on": [True], "off": [False], "both": [True, False]}[args.cache]:
            summary["cache" if cached else "nocache"] = bench_mod.trend_summary(rows, cached)
        print(dump({"rows": rows, "summary": summary}))
    else:
        sys.stdout.write(bench_mod.to_csv(rows))
        for cached in {"on": [True], "off": [False], "both": [True, False]}[args.cache]:
            t = bench_mod.trend_summary(rows, cached)
            print(f"# cache {'on' if cached else 'off'}: nonincreasing={t['nonincreasing']} "
                  f"crosses_below_one={t['crosses_below_one']} "
                  f"reference={t['reference']}", file=sys.stderr)
    return EXIT_OK


# ---------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    """Lets negative fractions such as -1/2 through as values, not options."""

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self._negative_number_matcher = re.compile(r"^-(\d+(/\d+)?|\d*\.\d+)$")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="spincouple", description=__doc__.splitlines()[0])
    p.add_argument("--cache-size", type=int, default=None,
                   help="cg/6j memo size (0 disables; default from SPINCOUPLE_CACHE)")
    sub = p.add_subparsers(dest="command", required=True)

    def exact(sp):
        sp.add_argument("--numeric", action="store_true", help="print a float instead of exact terms")
        return sp

    s = exact(sub.add_parser("cg", help="Clebsch-Gordan coefficient <j1 m1; j2 m2 | j m>"))
    for name in ("j1", "m1", "j2", "m2", "j", "m"):
        s.add_argument(name)

    s = exact(sub.add_parser("sixj", help="Wigner 6j symbol"))
    s.add_argument("j", nargs=6)

    s = exact(sub.add_parser("redmat", help="reduced matrix element <lp||word||l>"))
    s.add_argument("word", help="R/L word, T/S word, Y (with --rank) or C11a/C11b/C11c")
    s.add_argument("lp")
    s.add_argument("l")
    s.add_argument("--rank", default=None)

    s = exact(sub.add_parser("ssum", help="sum of CG products over j_z, four ways"))
    s.add_argument("--mode", choices=["direct", "factorized", "operator", "kappa"], default="direct")
    s.add_argument("--source", choices=["auto", "table", "general"], default="auto")
    for name in ("j", "lp", "l", "sp", "s", "lpz", "lz", "spz", "sz"):
        s.add_argument("--" + name, required=True)

    s = exact(sub.add_parser("coeff", help="spin-orbit coefficient C or kappa"))
    s.add_argument("--s2", required=True, help="spin s' of the bra")
    s.add_argument("--s", required=True)
    s.add_argument("--delta", required=True)
    s.add_argument("--dl", required=True, help="l' - l")
    s.add_argument("--l", required=True)
    s.add_argument("--j", required=True)
    s.add_argument("--kind", choices=["C", "kappa"], default="C")
    s.add_argument("--source", choices=["table", "general"], default="table")

    s = sub.add_parser("projme", help="projector matrix elements between directions")
    s.add_argument("--kind", choices=["L", "r", "mixed"], required=True)
    s.add_argument("--l", required=True)
    s.add_argument("--p", default="1")
    s.add_argument("--n", default="1")
    s.add_argument("--t", default="1")
    s.add_argument("--sign", choices=["+", "-"], default="+")
    s.add_argument("--rhat", required=True, help="ket direction x,y,z")
    s.add_argument("--rhatp", required=True, help="bra direction x,y,z")

    s = sub.add_parser("sphharm", help="spherical harmonic Y_lm at a direction")
    s.add_argument("l")
    s.add_argument("m")
    s.add_argument("rhat", help="x,y,z")

    s = sub.add_parser("check", help="run an invariant suite (or all)")
    s.add_argument("suite", nargs="?", default="all")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out", default=None, help="write the JSON report here")

    s = sub.add_parser("bench", help="time the direct and factorized sweeps")
    s.add_argument("--lmax", type=int, default=200)
    s.add_argument("--reps", type=int, default=3)
    s.add_argument("--cache", choices=["on", "off", "both"], default="both")
    s.add_argument("--format", choices=["csv", "json"], default="csv")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    size = args.cache_size
    if size is None and os.environ.get("SPINCOUPLE_CACHE", "").strip():
        size = int(os.environ["SPINCOUPLE_CACHE"])
    if size is not None:
        wg.set_cache_size(size)
    try:
        if args.command == "check":
            return cmd_check(args)
        if args.command == "bench":
            return cmd_bench(args)
        return cmd_eval(args)
    except (UnsupportedCaseError, cgf.UndefinedCoefficientError, UnsupportedDivisorError,
            NotImplementedError) as exc:
        print(f"spincouple: unsupported case: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except (InvalidInput, ExactDomainError, ValueError) as exc:
        print(f"spincouple: invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
