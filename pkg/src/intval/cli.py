"""Command-line interface.

Commands: eval, check, equal, decompose1d, product, support.  Inputs are
JSON spec files; output is a JSON report on stdout with every number an
exact rational string.  Exit codes: 0 all requested checks pass, 1 a
mathematical property failed (report carries the witness), 2 input or
usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from typing import Any, Optional

from .admissibility import certify_monotone, check_admissible, falsify_monotone
from .geom import ConvexBody, GeometryError
from .line import (
    LineError,
    classify,
    closed_form,
    decompose,
    fg_from_oracle,
    probe_grid,
)
from .product import product_cg
from .specfile import (
    Spec,
    SpecError,
    body_to_json,
    format_rational,
    interval_term_to_json,
    load_spec,
    parse_body,
    save_spec,
    spec_to_json,
    to_jsonable,
)
from .structure import (
    StructureError,
    canonicalize,
    convex_components,
    support,
)
from .valuation import (
    InputError,
    Interval1,
    Representation,
    default_window,
    equal,
    evaluate,
)

OK, FAIL, USAGE = 0, 1, 2


def _emit(report: dict, stream=None) -> None:
    json.dump(report, stream or sys.stdout, indent=2)
    (stream or sys.stdout).write("\n")


def _report(command: str, inputs: list[str], started: float, with_timing: bool) -> dict:
    rep: dict[str, Any] = {"command": command, "inputs": inputs}
    rep["timing_ms"] = (
        int((time.monotonic() - started) * 1000) if with_timing else None
    )
    return rep


def _spec_valuation(spec: Spec):
    """1D spec as a Valuation1D, from the fg tables or the terms."""
    if spec.fg is not None:
        return spec.fg
    rep = spec.rep
    ends = [e for b in rep.bodies() if not b.is_full for e in (b.lo, b.hi)]
    return fg_from_oracle(lambda a, b: evaluate(rep, Interval1(a, b)), ends)


def cmd_eval(args, started) -> int:
    spec = load_spec(args.spec)
    try:
        with open(args.bodies, "r", encoding="utf-8") as fh:
            body_objs = json.load(fh)
    except OSError as exc:
        raise SpecError(f"{args.bodies}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SpecError(f"{args.bodies}: {exc.msg}") from exc
    if not isinstance(body_objs, list):
        raise SpecError(f"{args.bodies}: expected a JSON list of bodies")
    bodies = [
        parse_body(o, spec.dim, f"bodies[{i}]") for i, o in enumerate(body_objs)
    ]
    report = _report("eval", [args.spec, args.bodies], started, args.timing)
    values = []
    if spec.rep is not None:
        for K in bodies:
            values.append(format_rational(evaluate(spec.rep, K)))
    else:
        from .line import eval1

        for K in bodies:
            if K.is_full:
                raise SpecError("cannot evaluate fg spec on the full line")
            values.append(format_rational(eval1(spec.fg, K.lo, K.hi)))
    report["values"] = values
    _emit(report)
    return OK


def cmd_check(args, started) -> int:
    spec = load_spec(args.spec)
    if spec.rep is None or spec.dim != 2:
        raise SpecError("check requires a planar terms spec")
    rep = spec.rep
    report = _report("check", [args.spec], started, args.timing)
    verdicts: dict[str, Any] = {}
    failed = False
    if args.admissible or args.monotone:
        adm = check_admissible(rep)
        verdicts["admissible"] = {
            "holds": adm.admissible,
            "witness": to_jsonable(adm.failure_witness),
            "checked_points": len(adm.checked_points),
        }
        if not adm.admissible:
            failed = True
    if args.monotone:
        mono = certify_monotone(rep)
        verdicts["monotone"] = {
            "holds": mono.holds,
            "witness": to_jsonable(mono.witness),
        }
        if not mono.holds:
            failed = True
    if args.falsify is not None:
        pair = falsify_monotone(rep, args.falsify, seed=args.seed)
        if pair is None:
            verdicts["falsify"] = {"found": False, "budget": args.falsify}
        else:
            K, L, vK, vL = pair
            verdicts["falsify"] = {
                "found": True,
                "K": body_to_json(K),
                "L": body_to_json(L),
                "phi_K": format_rational(vK),
                "phi_L": format_rational(vL),
            }
            failed = True
    if not verdicts:
        raise SpecError("check: pass --admissible, --monotone or --falsify")
    report["verdicts"] = verdicts
    report["timing_ms"] = (
        int((time.monotonic() - started) * 1000) if args.timing else None
    )
    _emit(report)
    return FAIL if failed else OK


def cmd_equal(args, started) -> int:
    a = load_spec(args.spec_a)
    b = load_spec(args.spec_b)
    if a.rep is None or b.rep is None:
        raise SpecError("equal requires terms specs")
    verdict = equal(a.rep, b.rep)
    report = _report("equal", [args.spec_a, args.spec_b], started, args.timing)
    report["equal"] = verdict.holds
    report["witness"] = to_jsonable(verdict.witness)
    _emit(report)
    return OK if verdict.holds else FAIL


def cmd_decompose1d(args, started) -> int:
    spec = load_spec(args.spec)
    if spec.dim != 1:
        raise SpecError("decompose1d requires a dim-1 spec")
    v = _spec_valuation(spec)
    flags = classify(v)
    report = _report("decompose1d", [args.spec], started, args.timing)
    report["classification"] = {
        "integer_valued": flags.integer_valued,
        "monotone": flags.monotone,
        "sigma_continuous": flags.sigma_continuous,
    }
    required = ["integer_valued", "monotone"] + (
        ["sigma_continuous"] if args.closed else []
    )
    missing = [
        name for name in required if not report["classification"][name]
    ]
    if missing:
        report["error"] = f"hypothesis failed: {', '.join(missing)}"
        _emit(report)
        return FAIL
    dec = decompose(v)
    report["m"] = format_rational(dec.m)
    report["c"] = format_rational(dec.c)
    report["bracket_trace"] = dec.trace_string()
    if dec.terms:
        report["intervals"] = [interval_term_to_json(t) for t in dec.terms]
        report["intervals_text"] = dec.intervals_string()
    else:
        report["intervals"] = []
        report["intervals_text"] = "no terms"
    if args.closed:
        report["closed_intervals"] = [
            interval_term_to_json(t) for t in closed_form(v)
        ]
    _emit(report)
    return OK


def cmd_product(args, started) -> int:
    a = load_spec(args.spec_a)
    b = load_spec(args.spec_b)
    if a.rep is None or b.rep is None:
        raise SpecError("product requires terms specs")
    prod = product_cg(a.rep, b.rep)
    out_spec = Spec(prod.dim, rep=prod, meta={"product_of": [args.spec_a, args.spec_b]})
    save_spec(out_spec, args.out)
    report = _report(
        "product", [args.spec_a, args.spec_b], started, args.timing
    )
    report["out"] = args.out
    report["terms"] = len(prod.terms)
    _emit(report)
    return OK


def cmd_support(args, started) -> int:
    spec = load_spec(args.spec)
    if spec.rep is None or spec.dim != 2:
        raise SpecError("support requires a planar terms spec")
    rep = spec.rep
    if args.window is not None:
        window = parse_body(json.loads(args.window), 2, "--window")
        if window.kind != "polygon":
            raise SpecError("--window must be a bounded polygon")
    else:
        window = default_window(rep)
    region = support(rep, window)
    cover = convex_components(region)
    report = _report("support", [args.spec], started, args.timing)
    report["cells"] = [
        {
            "dim": c.dim,
            "sample": to_jsonable(c.sample),
            "hull": body_to_json(c.hull),
            "value": format_rational(region.values[i]),
            "in_support": region.in_support[i],
        }
        for i, c in enumerate(region.arrangement.cells)
    ]
    report["closure_warnings"] = to_jsonable(list(region.closure_warnings))
    report["components"] = [body_to_json(c) for c in cover.components]
    report["cover_complete"] = cover.complete
    if args.canonicalize:
        canon = canonicalize(rep, window)
        canon_spec = Spec(2, rep=canon)
        report["canonical_terms"] = spec_to_json(canon_spec)["terms"]
        if args.out:
            save_spec(canon_spec, args.out)
            report["out"] = args.out
    _emit(report)
    return OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="intval",
        description="Integer-valued valuations on convex bodies: exact "
        "evaluation, monotonicity certification, 1D decomposition, "
        "products and canonicalization.",
    )
    p.add_argument(
        "--timing", action="store_true",
        help="include wall-clock timing in reports (off by default so "
        "reports are bit-reproducible)",
    )
    sub = p.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("eval", help="evaluate a spec on query bodies")
    s.add_argument("spec")
    s.add_argument("bodies", help="JSON file with a list of body literals")
    s.set_defaults(func=cmd_eval)

    s = sub.add_parser("check", help="admissibility / monotonicity checks")
    s.add_argument("spec")
    s.add_argument("--admissible", action="store_true")
    s.add_argument("--monotone", action="store_true")
    s.add_argument("--falsify", type=int, metavar="BUDGET")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("equal", help="semantic equality of two specs")
    s.add_argument("spec_a")
    s.add_argument("spec_b")
    s.set_defaults(func=cmd_equal)

    s = sub.add_parser("decompose1d", help="1D bracket decomposition")
    s.add_argument("spec")
    s.add_argument("--closed", action="store_true",
                   help="also compute the closed-interval normal form")
    s.set_defaults(func=cmd_decompose1d)

    s = sub.add_parser("product", help="product of two specs")
    s.add_argument("spec_a")
    s.add_argument("spec_b")
    s.add_argument("out", help="output spec path")
    s.set_defaults(func=cmd_product)

    s = sub.add_parser("support", help="support region and convex cover")
    s.add_argument("spec")
    s.add_argument("--window", help="window polygon as inline JSON body literal")
    s.add_argument("--canonicalize", action="store_true")
    s.add_argument("--out", help="path for the canonicalized spec")
    s.set_defaults(func=cmd_support)
    return p


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code not in (0, None) else 0
    started = time.monotonic()
    try:
        return args.func(args, started)
    except (SpecError, InputError, GeometryError, json.JSONDecodeError) as exc:
        _emit({"command": args.cmd, "error": str(exc)}, sys.stderr)
        return USAGE
    except (StructureError, LineError) as exc:
        _emit({"command": args.cmd, "error": str(exc)}, sys.stderr)
        return FAIL


if __name__ == "__main__":
    sys.exit(main())
