"""Command-line front end.

Exit codes: 0 success, 2 usage or unreadable input, 3 precondition violated,
4 budget exceeded, 5 audit mismatch.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import asymptotics as asy
from .codes import NestedPair, dump_pair, lemma3_construct, load_pair, rghw, rghw_profile
from .counting import GvParams, gv_certify, gv_max_d
from .errors import RghwError
from .field import field_new
from .gv_audit import EXHAUSTIVE_LIMIT, SAMPLES, gv_audit
from .ramp import audit_report, scheme_from_pair

EXIT_USAGE = 2
EXIT_MISMATCH = 5


class UsageError(Exception):
    pass


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    with open(out, "w", newline="\n") as fh:
        fh.write(text)


def _read_pair(path: str) -> NestedPair:
    try:
        return load_pair(path)
    except OSError as e:
        raise UsageError(f"cannot read pair file {path}: {e.strerror}") from None
    except (ValueError, KeyError, TypeError) as e:
        if isinstance(e, RghwError):
            raise
        raise UsageError(f"malformed pair file {path}: {e}") from None


def _grid(step: float) -> list[float]:
    if not 0 < step <= 0.5:
        raise UsageError("--grid must lie in (0, 0.5]")
    count = math.floor(1 / step + 1e-9)
    pts = [min(1.0, i * step) for i in range(count + 1)]
    if pts[-1] < 1.0:
        pts.append(1.0)
    return pts


def _need(args, *names):
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"--curve {args.curve} needs {', '.join(missing)}")


def cmd_rghw(args) -> int:
    P = _read_pair(args.pair)
    if args.t is not None:
        res = {"t": args.t, "M_t": rghw(P, args.t, args.budget)}
    else:
        res = {"profile": rghw_profile(P, args.budget)}
    res.update({"q": P.field.q, "n": P.n, "k1": P.k1, "k2": P.k2})
    _emit(_dumps(res), args.out)
    return 0


def cmd_gv(args) -> int:
    if args.d is not None:
        res = gv_certify(GvParams(args.q, args.n, args.k1, args.k2, args.t, args.d)).to_json()
    else:
        res = gv_max_d(args.q, args.n, args.k1, args.k2, args.t).to_json()
    _emit(_dumps(res), args.out)
    return 0


def cmd_bounds(args) -> int:
    c = args.curve
    if c in ("eq102", "eq103"):
        _need(args, "t", "q")
        fn = asy.eq102_bound if c == "eq102" else asy.eq103_bound
        if args.grid is not None:
            lines = ["R1,value"] + [f"{r:.9f},{fn(args.t, r, args.q):.9f}" for r in _grid(args.grid)]
            _emit("\n".join(lines) + "\n", args.out)
            return 0
        _need(args, "r1")
        res = {"curve": c, "t": args.t, "q": args.q, "R1": args.r1, "value": fn(args.t, args.r1, args.q)}
    elif c == "alpha":
        if args.grid is not None:
            lines = ["delta,value"] + [f"{d:.9f},{asy.alpha_value(d):.9f}" for d in _grid(args.grid)]
            _emit("\n".join(lines) + "\n", args.out)
            return 0
        _need(args, "delta")
        res = {"curve": c, "delta": args.delta, "value": asy.alpha_value(args.delta)}
    else:
        if args.grid is not None:
            raise UsageError("--grid is not supported for corollary1")
        _need(args, "tau", "r1", "r2")
        v = asy.corollary1_value(args.tau, args.r1, args.r2)
        res = {"curve": c, "tau": args.tau, "R1": args.r1, "R2": args.r2, "value": v.value, "clamped": v.clamped}
    _emit(_dumps(res), args.out)
    return 0


def cmd_fig1(args) -> int:
    _emit(asy.fig1_csv(asy.fig1_table(args.q, args.t, args.step)), args.out)
    return 0


def cmd_lemma3(args) -> int:
    P = lemma3_construct(field_new(args.q), args.n, args.k1, args.k2)
    if not args.verify:
        _emit(dump_pair(P), args.out)
        return 0
    if args.out is not None:
        _emit(dump_pair(P), args.out)
    t = args.k1 - args.k2
    got = rghw(P, t, args.budget)
    expected = args.n + t - args.k1
    res = {"q": args.q, "n": args.n, "k1": args.k1, "k2": args.k2, "t": t,
           "M_t": got, "expected": expected, "ok": got == expected}
    sys.stdout.write(_dumps(res))
    return 0 if got == expected else EXIT_MISMATCH


def cmd_sss_audit(args) -> int:
    rep = audit_report(scheme_from_pair(_read_pair(args.pair)), seed=args.seed, budget=args.budget)
    _emit(_dumps(rep), args.out)
    return 0 if rep["match"] else EXIT_MISMATCH


def cmd_gv_audit(args) -> int:
    res = gv_audit(args.max_n, args.samples, args.exhaustive_limit, args.seed)
    _emit(res.to_csv(only_discrepancies=not args.all), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for all randomness (default 0)")
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--budget", type=int, help="enumeration budget (overrides RGHW_BUDGET)")

    p = argparse.ArgumentParser(prog="rghw", description="Relative generalized Hamming weight workbench.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("rghw", parents=[common], help="RGHW of a nested pair")
    s.add_argument("--pair", required=True)
    g = s.add_mutually_exclusive_group()
    g.add_argument("--t", type=int)
    g.add_argument("--profile", action="store_true", help="all t (the default)")
    s.set_defaults(func=cmd_rghw)

    s = sub.add_parser("gv", parents=[common], help="exact counting certificate")
    for name in ("q", "n", "k1", "k2", "t"):
        s.add_argument(f"--{name}", type=int, required=True)
    g = s.add_mutually_exclusive_group()
    g.add_argument("--d", type=int)
    g.add_argument("--max-d", action="store_true", help="scan every d (the default)")
    s.set_defaults(func=cmd_gv)

    s = sub.add_parser("bounds", parents=[common], help="asymptotic bound curves")
    s.add_argument("--curve", required=True, choices=["eq102", "eq103", "alpha", "corollary1"])
    s.add_argument("--t", type=int)
    s.add_argument("--q", type=int)
    s.add_argument("--r1", type=float)
    s.add_argument("--r2", type=float)
    s.add_argument("--tau", type=float)
    s.add_argument("--delta", type=float)
    s.add_argument("--grid", type=float, help="emit CSV over [0, 1] at this step")
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("fig1", parents=[common], help="table comparing the two lower-bound curves")
    s.add_argument("--q", type=int, default=4)
    s.add_argument("--t", type=int, default=2)
    s.add_argument("--step", type=float, default=0.01)
    s.set_defaults(func=cmd_fig1)

    s = sub.add_parser("lemma3", parents=[common], help="pair meeting the Singleton bound")
    for name in ("q", "n", "k1", "k2"):
        s.add_argument(f"--{name}", type=int, required=True)
    s.add_argument("--verify", action="store_true", help="check M_t = n + t - k1 by brute force")
    s.set_defaults(func=cmd_lemma3)

    s = sub.add_parser("sss-audit", parents=[common], help="secret-sharing leakage audit")
    s.add_argument("--pair", required=True)
    s.set_defaults(func=cmd_sss_audit)

    s = sub.add_parser("gv-audit", parents=[common], help="brute-force audit of the certificate over F_2")
    s.add_argument("--max-n", type=int, default=8)
    s.add_argument("--samples", type=int, default=SAMPLES)
    s.add_argument("--exhaustive-limit", type=int, default=EXHAUSTIVE_LIMIT)
    s.add_argument("--all", action="store_true", help="every row, not just discrepancies")
    s.set_defaults(func=cmd_gv_audit)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"rghw: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except RghwError as e:
        print(f"rghw: {type(e).__name__}: {e}", file=sys.stderr)
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
