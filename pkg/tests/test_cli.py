"""CLI and spec-file tests: formats, exit codes, golden outputs."""

import json
from fractions import Fraction as F

import pytest

from intval.cli import main
from intval.specfile import (
    SpecError,
    parse_body,
    parse_rational,
    parse_spec,
    spec_to_json,
)

STAR_SPEC = {
    "dim": 2,
    "terms": [
        {"weight": "1", "body": {"kind": "segment", "a": ["0", "0"], "b": ["1", "0"]}},
        {"weight": "1", "body": {"kind": "segment", "a": ["0", "0"], "b": ["0", "1"]}},
        {"weight": "1", "body": {"kind": "segment", "a": ["0", "0"], "b": ["-1", "-1"]}},
        {"weight": "-1", "body": {"kind": "point", "at": ["0", "0"]}},
    ],
}

WORKED_SPEC = {
    "dim": 1,
    "fg": {
        "f": [
            ["0", "0", "0", "2"],
            ["2", "2", "3", "5"],
            ["4", "5", "5", "7"],
            ["6", "7", "7", "10"],
        ],
        "g": [
            ["0", "0", "0", "3"],
            ["1", "3", "3", "4"],
            ["2", "4", "4", "5"],
            ["4", "5", "6", "7"],
            ["6", "7", "8", "12"],
        ],
    },
}

GOLDEN_TRACE = "(0 (0 (0 0] 0] (1 (2 2) 2] 2] [4 (4 4] 4] [6 (6 (6 (6 (6 6] 6] 6]"
GOLDEN_INTERVALS = (
    "(0,0], (0,0], (0,2), (1,2], (2,2], [4,4], (4,4], [6,6], (6,6], "
    "(6,6], (6,∞), (6,∞)"
)


def write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj), encoding="utf-8")
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip() else None


def test_parse_rational():
    assert parse_rational("3/4") == F(3, 4)
    assert parse_rational("-7") == F(-7)
    assert parse_rational("-3/6") == F(-1, 2)
    for bad in ("1/0", "0.5", "a", "1/-2", ""):
        with pytest.raises(SpecError):
            parse_rational(bad)


def test_spec_round_trip():
    spec = parse_spec(STAR_SPEC)
    again = parse_spec(spec_to_json(spec))
    assert spec_to_json(again) == spec_to_json(spec)
    fg = parse_spec(WORKED_SPEC)
    assert spec_to_json(parse_spec(spec_to_json(fg))) == spec_to_json(fg)


def test_spec_validation_errors():
    with pytest.raises(SpecError):
        parse_spec({"dim": 3, "terms": []})
    with pytest.raises(SpecError):
        parse_spec({"dim": 2})
    with pytest.raises(SpecError):
        parse_spec({"dim": 2, "terms": [], "fg": {}})
    with pytest.raises(SpecError):
        parse_spec({"dim": 2, "fg": {"f": "0", "g": "0"}})
    # inconsistent table limits between adjacent rows
    with pytest.raises(SpecError):
        parse_spec({"dim": 1, "fg": {
            "f": [["0", "0", "0", "1"], ["1", "2", "2", "2"]], "g": "0"}})
    with pytest.raises(SpecError):
        parse_body({"kind": "interval", "lo": "0", "hi": "1"}, 2)


def test_cmd_eval(tmp_path, capsys):
    spec = write(tmp_path, "star.json", STAR_SPEC)
    bodies = write(tmp_path, "q.json", [
        {"kind": "point", "at": ["0", "0"]},
        {"kind": "empty"},
        {"kind": "box", "min": ["-2", "-2"], "max": ["2", "2"]},
    ])
    code, report = run(capsys, "eval", spec, bodies)
    assert code == 0
    assert report["values"] == ["2", "0", "2"]


def test_cmd_eval_fg(tmp_path, capsys):
    spec = write(tmp_path, "w.json", WORKED_SPEC)
    bodies = write(tmp_path, "q.json", [
        {"kind": "interval", "lo": "0", "hi": "3"},
        {"kind": "interval", "lo": "2", "hi": "2"},
    ])
    code, report = run(capsys, "eval", spec, bodies)
    assert code == 0
    assert report["values"] == ["5", "1"]


def test_cmd_check_exit_codes(tmp_path, capsys):
    star = write(tmp_path, "star.json", STAR_SPEC)
    code, report = run(capsys, "check", star, "--monotone")
    assert code == 0
    assert report["verdicts"]["monotone"]["holds"]

    bad = write(tmp_path, "bad.json", {
        "dim": 2,
        "terms": [
            {"weight": "1", "body": {"kind": "box", "min": ["0", "0"], "max": ["1", "1"]}},
            {"weight": "-1", "body": {"kind": "point", "at": ["1/2", "1/2"]}},
        ],
    })
    code, report = run(capsys, "check", bad, "--monotone", "--falsify", "50")
    assert code == 1
    assert report["verdicts"]["falsify"]["found"]
    k = report["verdicts"]["falsify"]
    assert F(k["phi_K"]) > F(k["phi_L"])


def test_cmd_check_usage_error(tmp_path, capsys):
    malformed = write(tmp_path, "m.json", {
        "dim": 2,
        "terms": [{"weight": "1/0", "body": {"kind": "point", "at": ["0", "0"]}}],
    })
    code = main(["check", malformed, "--monotone"])
    capsys.readouterr()
    assert code == 2
    star = write(tmp_path, "star.json", STAR_SPEC)
    code = main(["check", star])  # no checks requested
    capsys.readouterr()
    assert code == 2


def test_cmd_decompose1d_golden(tmp_path, capsys):
    spec = write(tmp_path, "w.json", WORKED_SPEC)
    code, report = run(capsys, "decompose1d", spec)
    assert code == 0
    assert report["m"] == "0" and report["c"] == "0"
    assert report["bracket_trace"] == GOLDEN_TRACE
    assert report["intervals_text"] == GOLDEN_INTERVALS
    # the worked example is not sigma-continuous: --closed must fail
    code, report = run(capsys, "decompose1d", spec, "--closed")
    assert code == 1
    assert "sigma_continuous" in report["error"]


def test_cmd_decompose1d_constant(tmp_path, capsys):
    spec = write(tmp_path, "c.json", {"dim": 1, "fg": {"f": "0", "g": "2"}})
    code, report = run(capsys, "decompose1d", spec)
    assert code == 0
    assert report["m"] == "2"
    assert report["intervals_text"] == "no terms"


def test_cmd_decompose1d_rejects_nonmonotone(tmp_path, capsys):
    # truncation pattern: g jumps down -> not monotone
    spec = write(tmp_path, "n.json", {"dim": 1, "fg": {
        "f": "0",
        "g": [["0", "0", "1", "1"], ["1", "1", "0", "0"]],
    }})
    code, report = run(capsys, "decompose1d", spec)
    assert code == 1
    assert "monotone" in report["error"]


def test_cmd_equal_and_product(tmp_path, capsys):
    star = write(tmp_path, "star.json", STAR_SPEC)
    chi = write(tmp_path, "chi.json", {
        "dim": 2, "terms": [{"weight": "1", "body": {"kind": "full"}}],
    })
    out = str(tmp_path / "prod.json")
    code, report = run(capsys, "product", chi, star, out)
    assert code == 0
    code, report = run(capsys, "equal", out, star)
    assert code == 0 and report["equal"]
    other = write(tmp_path, "o.json", {
        "dim": 2,
        "terms": [{"weight": "1", "body": {"kind": "point", "at": ["0", "0"]}}],
    })
    code, report = run(capsys, "equal", star, other)
    assert code == 1 and not report["equal"]
    assert report["witness"] is not None


def test_cmd_support(tmp_path, capsys):
    star = write(tmp_path, "star.json", STAR_SPEC)
    out = str(tmp_path / "canon.json")
    code, report = run(capsys, "support", star, "--canonicalize", "--out", out)
    assert code == 0
    assert len(report["components"]) == 3
    assert report["cover_complete"]
    assert all(t["weight"] in ("1", "-1") for t in report["canonical_terms"])
    code, report = run(capsys, "equal", out, star)
    assert code == 0 and report["equal"]


def test_reports_have_no_floats(tmp_path, capsys):
    star = write(tmp_path, "star.json", STAR_SPEC)
    bodies = write(tmp_path, "q.json", [{"kind": "point", "at": ["1/2", "0"]}])
    code, _ = run(capsys, "eval", star, bodies)
    assert code == 0
    # re-run and scan the raw output for float literals
    main(["eval", star, bodies])
    raw = capsys.readouterr().out

    def no_floats(obj):
        if isinstance(obj, float):
            return False
        if isinstance(obj, dict):
            return all(no_floats(v) for v in obj.values())
        if isinstance(obj, list):
            return all(no_floats(v) for v in obj)
        return True

    assert no_floats(json.loads(raw))
