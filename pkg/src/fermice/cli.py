"""Command-line interface.

Subcommands: bracket, pf, enumerate, render, verify, bench.
Exit codes: 0 success, 1 identity failure / value disagreement, 2 usage error.
Variable specializations (--set) are substituted into the exact symbolic
result, never before it, so the symbolic values stay the source of truth.
The FERMICE_CAPS environment variable ("n_max=3,lambda1_max=4,cases=200")
lowers verify/bench size caps, e.g. in CI.
"""

from __future__ import annotations

import argparse
import csv
import inspect
import io
import json
import os
import sys
import time
from fractions import Fraction
from typing import Optional, Sequence

from . import verify as verify_mod
from .evolution import (
    chain_bracket,
    factorized_bracket,
    one_step_closed_minus,
    one_step_closed_plus,
    one_step_oracle_minus,
    one_step_oracle_plus,
    t_poly,
)
from .fock import FockState, state_from_strict, vacuum
from .ice import (
    DELTA,
    GAMMA,
    BendIceState,
    GTPattern,
    IceState,
    enumerate_nn_states,
    enumerate_states,
    ice_to_pattern,
    nn_state_from_pattern,
    partition_function,
)
from .render import svg_bend, svg_ice, svg_maya, svg_pattern
from .ring import (
    ONE,
    MultiPoly,
    NotDivisible,
    exact_divide,
    parse_var,
    prod,
    tvar,
    xvar,
)
from .symfun import schur_jt


class UsageError(Exception):
    pass


def _parse_partition(text: str, strict: bool = True) -> tuple[int, ...]:
    if text.strip() == "":
        return ()
    try:
        parts = tuple(int(p) for p in text.split(","))
    except ValueError as exc:
        raise UsageError(f"cannot parse partition {text!r}") from exc
    if strict:
        if any(parts[i] <= parts[i + 1] for i in range(len(parts) - 1)) or (parts and parts[-1] < 1):
            raise UsageError(
                f"partition {text!r} must be strictly decreasing with positive parts "
                "(the one-step bracket formulas require it)"
            )
    return parts


def _parse_set(text: Optional[str]) -> dict:
    if not text:
        return {}
    out = {}
    for piece in text.split(","):
        if not piece:
            continue
        if "=" not in piece:
            raise UsageError(f"bad --set entry {piece!r} (want var=value)")
        name, val = piece.split("=", 1)
        try:
            out[parse_var(name.strip())] = Fraction(val.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"bad --set entry {piece!r}: {exc}") from exc
    return out


def _specialize(poly: MultiPoly, assignments: dict) -> MultiPoly:
    if not assignments:
        return poly
    return poly.evaluate(assignments)


def _emit_poly(poly: MultiPoly, fmt: str) -> str:
    return poly.to_json() if fmt == "json" else poly.to_text()


def _caps_from_env() -> dict:
    raw = os.environ.get("FERMICE_CAPS", "")
    caps = {}
    for piece in raw.split(","):
        if not piece.strip():
            continue
        if "=" not in piece:
            raise UsageError(f"bad FERMICE_CAPS entry {piece!r}")
        key, val = piece.split("=", 1)
        caps[key.strip()] = int(val)
    return caps


# -- bracket ------------------------------------------------------------------


def cmd_bracket(args) -> int:
    lam = _parse_partition(args.lam)
    mu = _parse_partition(args.mu) if args.mu is not None else ()
    if not lam:
        raise UsageError("--lambda must be nonempty")
    if len(mu) != len(lam) - 1:
        raise UsageError("--mu must have exactly one part fewer than --lambda")
    x, t = xvar(1), tvar(1)
    if args.minus:
        if args.k is None:
            raise UsageError("--minus requires --k (annihilation index > lambda_1)")
        if args.k <= lam[0]:
            raise UsageError("--k must exceed lambda_1")
        oracle = one_step_oracle_minus(mu, lam, args.k, x, t)
        closed = one_step_closed_minus(mu, lam, args.k, x, t)
    else:
        oracle = one_step_oracle_plus(mu, lam, x, t)
        closed = one_step_closed_plus(mu, lam, x, t)
    assignments = _parse_set(args.set)
    oracle = _specialize(oracle, assignments)
    closed = _specialize(closed, assignments)
    verdict = "EQUAL" if oracle == closed else "DIFFER"
    if args.format == "json":
        print(json.dumps({
            "oracle": oracle.to_json_obj(),
            "closed": closed.to_json_obj(),
            "verdict": verdict,
        }, separators=(",", ":")))
    else:
        print(f"oracle: {oracle.to_text()}")
        print(f"closed: {closed.to_text()}")
        print(verdict)
    return 0 if verdict == "EQUAL" else 1


# -- partition functions --------------------------------------------------------


def _pf_by_method(lam: tuple[int, ...], scheme_name: str, method: str) -> MultiPoly:
    n = len(lam)
    xs = [xvar(i) for i in range(1, n + 1)]
    ts = [tvar(i) for i in range(1, n + 1)]
    side = "plus" if scheme_name == "delta" else "minus"
    if method == "enumerate":
        scheme = DELTA if scheme_name == "delta" else GAMMA
        return partition_function(lam, scheme, xs, ts)
    if method == "chain":
        bracket = chain_bracket(lam, side, xs, ts)
    elif method == "determinant":
        shifted = [lam[i] - (n - i) for i in range(n)]
        if scheme_name == "delta":
            cross = prod(MultiPoly.var(xs[i]) + t_poly(ts[j]) * MultiPoly.var(xs[j])
                         for i in range(n) for j in range(i + 1, n))
        else:
            cross = prod(MultiPoly.var(xs[i]) + t_poly(ts[i]) * MultiPoly.var(xs[j])
                         for i in range(n) for j in range(i + 1, n))
        return cross * schur_jt(shifted, xs)
    else:
        raise UsageError(f"unknown method {method!r}")
    if scheme_name == "delta":
        prefac = prod(MultiPoly.var(xs[i]).scale((-1) ** (i + 1)) * (t_poly(ts[i]) + ONE)
                      for i in range(n))
    else:
        prefac = prod(MultiPoly.var(xs[i], -lam[0]) * (t_poly(ts[i]) + ONE) for i in range(n))
    try:
        return exact_divide(bracket, prefac)
    except NotDivisible as exc:
        raise RuntimeError("bracket failed to factor through the row prefactor") from exc


def cmd_pf(args) -> int:
    lam = _parse_partition(args.lam)
    if not lam:
        raise UsageError("--lambda must be nonempty")
    if args.scheme not in ("delta", "gamma"):
        raise UsageError("--scheme must be delta or gamma")
    assignments = _parse_set(args.set)
    methods = ["enumerate", "chain", "determinant"] if args.all else [args.method]
    values = {m: _pf_by_method(lam, args.scheme, m) for m in methods}
    agreed = len({v.to_text() for v in values.values()}) == 1
    shown = {m: _specialize(v, assignments) for m, v in values.items()}
    if args.format == "json":
        print(json.dumps({
            "lambda": list(lam),
            "scheme": args.scheme,
            "values": {m: v.to_json_obj() for m, v in shown.items()},
            "agree": agreed,
        }, separators=(",", ":")))
    else:
        for m, v in shown.items():
            print(f"{m}: {v.to_text()}")
        if args.all:
            print("AGREE" if agreed else "DIFFER")
    return 0 if agreed else 1


# -- enumeration ------------------------------------------------------------------


def cmd_enumerate(args) -> int:
    lam = _parse_partition(args.lam)
    if not lam:
        raise UsageError("--lambda must be nonempty")
    if args.bend:
        states = enumerate_nn_states(lam)
    else:
        states = enumerate_states(lam)
    if args.count:
        print(len(states))
        return 0
    if args.format == "json":
        for s in states:
            print(s.to_json())
    else:
        for s in states:
            if isinstance(s, IceState):
                print(" / ".join(",".join(map(str, row)) for row in ice_to_pattern(s).rows))
            else:
                bits = []
                for r, row in enumerate(s.row_parts):
                    star = "*" if r % 2 == 1 and len(s.row_parts[r - 1]) > len(row) else ""
                    bits.append(",".join(map(str, row)) + star)
                print(" / ".join(bits))
    return 0


# -- rendering --------------------------------------------------------------------


def cmd_render(args) -> int:
    target = args.target
    doc: Optional[str] = None
    if args.input:
        with open(args.input, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
        if target == "ice":
            doc = svg_ice(IceState.from_json_obj(obj))
        elif target == "bend":
            lam = tuple(obj["lambda"])
            doc = svg_bend(nn_state_from_pattern(lam, [tuple(p) for p in obj["pattern"]]))
        elif target == "pattern":
            doc = svg_pattern(obj["pattern"])
        elif target == "maya":
            doc = svg_maya(FockState.from_json_obj(obj))
    else:
        if args.lam is None and target != "maya":
            raise UsageError("--lambda or --input required")
        if target == "ice":
            states = enumerate_states(_parse_partition(args.lam))
            if not 0 <= args.index < len(states):
                raise UsageError(f"--index out of range (0..{len(states) - 1})")
            doc = svg_ice(states[args.index])
        elif target == "bend":
            states = enumerate_nn_states(_parse_partition(args.lam))
            if not 0 <= args.index < len(states):
                raise UsageError(f"--index out of range (0..{len(states) - 1})")
            doc = svg_bend(states[args.index])
        elif target == "pattern":
            states = enumerate_states(_parse_partition(args.lam))
            if not 0 <= args.index < len(states):
                raise UsageError(f"--index out of range (0..{len(states) - 1})")
            doc = svg_pattern(ice_to_pattern(states[args.index]).rows)
        elif target == "maya":
            if args.lam is not None:
                state = state_from_strict(_parse_partition(args.lam))
            else:
                state = vacuum(args.charge)
            hi = max(6, (max(state.above) + 1) if state.above else 6)
            doc = svg_maya(state, lo=min(-5, state.floor - 2), hi=hi)
    if doc is None:
        raise UsageError(f"cannot render target {target!r} from the given input")
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(doc)
    else:
        print(doc)
    return 0


# -- verification -------------------------------------------------------------------


def cmd_verify(args) -> int:
    env_caps = _caps_from_env()
    names = list(verify_mod.SUITES) if args.suite == "all" else [args.suite]
    worst = 0
    for name in names:
        if name not in verify_mod.SUITES:
            raise UsageError(f"unknown suite {name!r}; known: {', '.join(verify_mod.SUITES)}, all")
        sig = inspect.signature(verify_mod.SUITES[name])
        overrides = {}
        for key, arg_val in (("n_max", args.n_max), ("lam1_max", args.lambda1_max),
                             ("seed", args.seed), ("cases", args.cases)):
            if key in sig.parameters and arg_val is not None:
                overrides[key] = arg_val
        for env_key, kw in (("n_max", "n_max"), ("lambda1_max", "lam1_max"), ("cases", "cases")):
            if env_key in env_caps and kw in sig.parameters:
                overrides[kw] = min(overrides.get(kw, env_caps[env_key]), env_caps[env_key])
        report = verify_mod.run_suite(name, quick=args.quick, **overrides)
        if args.format == "json":
            print(report.to_json())
        else:
            print(report.summary())
            for failure in report.failures[:10]:
                print(f"  failure: {failure}")
        if not report.passed:
            worst = 1
    return worst


# -- benchmark ----------------------------------------------------------------------


def cmd_bench(args) -> int:
    env_caps = _caps_from_env()
    n = min(args.n, env_caps.get("n_max", args.n))
    k_max = args.k_max
    rows = []
    status = 0
    for k in range(k_max + 1):
        lam = tuple((n - i) + (k if i == 0 else 0) for i in range(n))
        values = {}
        for method in ("enumerate", "chain", "determinant"):
            best = None
            for _ in range(max(1, args.reps)):
                start = time.perf_counter()
                val = _pf_by_method(lam, "delta", method)
                elapsed = time.perf_counter() - start
                best = elapsed if best is None else min(best, elapsed)
            values[method] = val
            rows.append({
                "k": k,
                "lambda": ",".join(map(str, lam)),
                "method": method,
                "seconds": f"{best:.6f}",
                "terms": len(val.terms),
            })
        if len({v.to_text() for v in values.values()}) != 1:
            status = 1
            rows.append({"k": k, "lambda": ",".join(map(str, lam)),
                         "method": "DISAGREE", "seconds": "", "terms": ""})
    fieldnames = ["k", "lambda", "method", "seconds", "terms"]
    if args.csv:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=fieldnames, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        sys.stdout.write(buf.getvalue())
    else:
        print(f"{'k':>2} {'lambda':>12} {'method':>12} {'seconds':>10} {'terms':>7}")
        for row in rows:
            print(f"{row['k']:>2} {row['lambda']:>12} {row['method']:>12} "
                  f"{row['seconds']:>10} {row['terms']:>7}")
        print("AGREE" if status == 0 else "DIFFER")
    return status


# -- argument parsing -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fermice",
        description="Exact six-vertex / fermionic evolution computer algebra",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bracket", help="one-step bracket: expansion oracle vs closed form")
    p.add_argument("--lambda", dest="lam", required=True, help="strict partition, e.g. 5,3,2")
    p.add_argument("--mu", dest="mu", default="", help="strict partition with one part fewer")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--plus", action="store_true", help="leftward step (default)")
    group.add_argument("--minus", action="store_true", help="rightward step; needs --k")
    p.add_argument("--k", type=int, default=None, help="annihilation index (> lambda_1)")
    p.add_argument("--set", default=None, help="rational specializations, e.g. t1=0,x1=1/2")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_bracket)

    p = sub.add_parser("pf", help="partition function by enumeration/chain/determinant")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--scheme", choices=("delta", "gamma"), default="delta")
    p.add_argument("--method", choices=("enumerate", "chain", "determinant"), default="enumerate")
    p.add_argument("--all", action="store_true", help="compute all three methods and compare")
    p.add_argument("--set", default=None)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_pf)

    p = sub.add_parser("enumerate", help="list admissible states")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--bend", action="store_true", help="u-turn model instead of rectangular")
    p.add_argument("--count", action="store_true")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("render", help="deterministic SVG output")
    p.add_argument("--target", choices=("ice", "bend", "pattern", "maya"), required=True)
    p.add_argument("--lambda", dest="lam", default=None)
    p.add_argument("--index", type=int, default=0, help="which enumerated state")
    p.add_argument("--charge", type=int, default=0, help="vacuum charge for maya")
    p.add_argument("--input", default=None, help="state/pattern JSON file")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("verify", help="run identity suites")
    p.add_argument("--suite", default="all",
                   help="suite name or 'all' (see README for the list)")
    p.add_argument("--quick", action="store_true", help="smaller caps")
    p.add_argument("--n-max", dest="n_max", type=int, default=None)
    p.add_argument("--lambda1-max", dest="lambda1_max", type=int, default=None)
    p.add_argument("--cases", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="time enumeration vs chain vs determinant")
    p.add_argument("--n", type=int, default=3, help="number of parts")
    p.add_argument("--k-max", dest="k_max", type=int, default=3,
                   help="top part grows by 0..k over the staircase")
    p.add_argument("--reps", type=int, default=1)
    p.add_argument("--csv", action="store_true")
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
