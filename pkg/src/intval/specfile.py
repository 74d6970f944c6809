"""JSON spec files and machine-readable reports.

A spec file carries a representation (dim 1 or 2) as weighted body
literals, or a 1D valuation as breakpoint tables for its (f, g) pair.
All numbers are exact rational strings "p", "-p" or "p/q"; no floats ever
enter or leave.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Any, Optional, Union

from .geom import ConvexBody, Direction, Point, pt
from .line import IntervalTerm, StepFunction, Valuation1D
from .valuation import Body, InputError, Interval1, Representation, Term

_RATIONAL_RE = re.compile(r"^-?\d+(/\d+)?$")


class SpecError(InputError):
    """Malformed spec file; message carries a location string."""


def parse_rational(s: Any, where: str = "") -> Fraction:
    if isinstance(s, int):
        return Fraction(s)
    if not isinstance(s, str) or not _RATIONAL_RE.match(s):
        raise SpecError(f"{where}: not a rational string: {s!r}")
    num, _, den = s.partition("/")
    if den:
        if int(den) == 0:
            raise SpecError(f"{where}: zero denominator in {s!r}")
        return Fraction(int(num), int(den))
    return Fraction(int(num))


def format_rational(x: Fraction) -> str:
    return str(x)


def _parse_point(obj: Any, where: str) -> Point:
    if not (isinstance(obj, list) and len(obj) == 2):
        raise SpecError(f"{where}: point literal must be [x, y]")
    return pt(parse_rational(obj[0], where), parse_rational(obj[1], where))


def parse_body(obj: Any, dim: int, where: str = "body") -> Body:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise SpecError(f"{where}: body literal must be an object with 'kind'")
    kind = obj["kind"]
    if dim == 1:
        if kind == "full":
            return Interval1()
        if kind == "interval":
            return Interval1(
                parse_rational(obj.get("lo"), f"{where}.lo"),
                parse_rational(obj.get("hi"), f"{where}.hi"),
            )
        raise SpecError(f"{where}: unknown 1D body kind {kind!r}")
    if kind == "empty":
        return ConvexBody.empty()
    if kind == "full":
        return ConvexBody.full()
    if kind == "point":
        return ConvexBody.point(_parse_point(obj.get("at"), f"{where}.at"))
    if kind == "segment":
        return ConvexBody.segment(
            _parse_point(obj.get("a"), f"{where}.a"),
            _parse_point(obj.get("b"), f"{where}.b"),
        )
    if kind == "polygon":
        verts = obj.get("vertices")
        if not isinstance(verts, list) or not verts:
            raise SpecError(f"{where}.vertices: must be a nonempty list")
        return ConvexBody.from_hull(
            [_parse_point(v, f"{where}.vertices[{i}]") for i, v in enumerate(verts)]
        )
    if kind == "box":
        lo = _parse_point(obj.get("min"), f"{where}.min")
        hi = _parse_point(obj.get("max"), f"{where}.max")
        return ConvexBody.box(lo.x, lo.y, hi.x, hi.y)
    raise SpecError(f"{where}: unknown body kind {kind!r}")


def body_to_json(body: Body) -> dict:
    if isinstance(body, Interval1):
        if body.is_full:
            return {"kind": "full"}
        return {
            "kind": "interval",
            "lo": format_rational(body.lo),
            "hi": format_rational(body.hi),
        }
    if body.is_empty:
        return {"kind": "empty"}
    if body.is_full:
        return {"kind": "full"}
    if body.kind == "point":
        v = body.vertices[0]
        return {"kind": "point", "at": [format_rational(v.x), format_rational(v.y)]}
    if body.kind == "segment":
        a, b = body.vertices
        return {
            "kind": "segment",
            "a": [format_rational(a.x), format_rational(a.y)],
            "b": [format_rational(b.x), format_rational(b.y)],
        }
    return {
        "kind": "polygon",
        "vertices": [
            [format_rational(v.x), format_rational(v.y)] for v in body.vertices
        ],
    }


def _parse_table(obj: Any, where: str) -> StepFunction:
    """Breakpoint table: list of rows [x, left-limit, value, right-limit],
    or a single rational string for a constant function."""
    if isinstance(obj, (str, int)):
        return StepFunction.constant(parse_rational(obj, where))
    if not isinstance(obj, list):
        raise SpecError(f"{where}: expected a table or a constant")
    rows = []
    for i, row in enumerate(obj):
        if not (isinstance(row, list) and len(row) == 4):
            raise SpecError(
                f"{where}[{i}]: row must be [x, left-limit, value, right-limit]"
            )
        rows.append(tuple(parse_rational(e, f"{where}[{i}]") for e in row))
    if not rows:
        raise SpecError(f"{where}: empty table (use a constant instead)")
    rows.sort(key=lambda r: r[0])
    for (x1, *_), (x2, *_) in zip(rows, rows[1:]):
        if x1 == x2:
            raise SpecError(f"{where}: duplicate breakpoint {x1}")
    for i, ((_, _, _, r1), (_, l2, _, _)) in enumerate(zip(rows, rows[1:])):
        if r1 != l2:
            raise SpecError(
                f"{where}: right-limit of row {i} disagrees with "
                f"left-limit of row {i + 1}"
            )
    bps = tuple(r[0] for r in rows)
    ats = tuple(r[2] for r in rows)
    between = (rows[0][1],) + tuple(r[3] for r in rows)
    return StepFunction(bps, ats, between)


def table_to_json(sf: StepFunction) -> Union[str, list]:
    if not sf.breakpoints:
        return format_rational(sf.between[0])
    return [
        [
            format_rational(sf.breakpoints[i]),
            format_rational(sf.between[i]),
            format_rational(sf.at[i]),
            format_rational(sf.between[i + 1]),
        ]
        for i in range(len(sf.breakpoints))
    ]


class Spec:
    """Parsed spec file: a representation, or a 1D (f, g) valuation."""

    def __init__(
        self,
        dim: int,
        rep: Optional[Representation] = None,
        fg: Optional[Valuation1D] = None,
        meta: Optional[dict] = None,
    ):
        if (rep is None) == (fg is None):
            raise SpecError("spec must carry exactly one of terms or fg")
        self.dim = dim
        self.rep = rep
        self.fg = fg
        self.meta = meta or {}


def parse_spec(obj: Any) -> Spec:
    if not isinstance(obj, dict):
        raise SpecError("top level: expected a JSON object")
    dim = obj.get("dim")
    if dim not in (1, 2):
        raise SpecError("top level: 'dim' must be 1 or 2")
    has_terms = "terms" in obj
    has_fg = "fg" in obj
    if has_terms == has_fg:
        raise SpecError("top level: exactly one of 'terms' or 'fg' required")
    meta = obj.get("meta")
    if meta is not None and not isinstance(meta, dict):
        raise SpecError("meta: must be an object")
    if has_fg:
        if dim != 1:
            raise SpecError("fg: only valid for dim 1")
        fg = obj["fg"]
        if not isinstance(fg, dict) or set(fg) != {"f", "g"}:
            raise SpecError("fg: must be an object with fields 'f' and 'g'")
        f = _parse_table(fg["f"], "fg.f")
        g = _parse_table(fg["g"], "fg.g")
        try:
            v = Valuation1D(f, g)
        except ValueError as exc:
            raise SpecError(f"fg: {exc}") from exc
        return Spec(1, fg=v, meta=meta)
    terms_obj = obj["terms"]
    if not isinstance(terms_obj, list):
        raise SpecError("terms: must be a list")
    terms = []
    for i, t in enumerate(terms_obj):
        if not isinstance(t, dict) or "weight" not in t or "body" not in t:
            raise SpecError(f"terms[{i}]: must have 'weight' and 'body'")
        w = parse_rational(t["weight"], f"terms[{i}].weight")
        body = parse_body(t["body"], dim, f"terms[{i}].body")
        if w == 0:
            raise SpecError(f"terms[{i}]: zero weight")
        if isinstance(body, ConvexBody) and body.is_empty:
            raise SpecError(f"terms[{i}]: empty body")
        terms.append(Term(w, body))
    return Spec(dim, rep=Representation(dim, tuple(terms)), meta=meta)


def load_spec(path: str) -> Spec:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise SpecError(f"{path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SpecError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    try:
        return parse_spec(obj)
    except SpecError as exc:
        raise SpecError(f"{path}: {exc}") from exc


def spec_to_json(spec: Spec) -> dict:
    out: dict = {"dim": spec.dim}
    if spec.rep is not None:
        out["terms"] = [
            {"weight": format_rational(t.weight), "body": body_to_json(t.body)}
            for t in spec.rep.terms
        ]
    else:
        out["fg"] = {
            "f": table_to_json(spec.fg.f),
            "g": table_to_json(spec.fg.g),
        }
    if spec.meta:
        out["meta"] = spec.meta
    return out


def save_spec(spec: Spec, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(spec_to_json(spec), fh, indent=2)
        fh.write("\n")


def interval_term_to_json(t: IntervalTerm) -> dict:
    def side(x: Optional[Fraction], negative: bool) -> str:
        if x is None:
            return "-inf" if negative else "inf"
        return format_rational(x)

    return {
        "kind": t.kind,
        "lo": side(t.lo, True),
        "hi": side(t.hi, False),
        "lo_closed": t.lo_closed,
        "hi_closed": t.hi_closed,
        "text": str(t),
    }


def to_jsonable(value: Any) -> Any:
    """Witness values (points, directions, bodies, rationals) to JSON."""
    if value is None or isinstance(value, (bool, int, str)):
        return value
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, Point):
        return [format_rational(value.x), format_rational(value.y)]
    if isinstance(value, Direction):
        return [str(value.dx), str(value.dy)]
    if isinstance(value, (ConvexBody, Interval1)):
        return body_to_json(value)
    if isinstance(value, IntervalTerm):
        return interval_term_to_json(value)
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    return str(value)
