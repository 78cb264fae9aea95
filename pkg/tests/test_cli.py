import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from spindex.cli import UsageError, main, parse_fixed_points
from spindex.report import CheckRecord, Report
from spindex.suites import SuiteOptions, run_suite

S4 = {
    "version": 1,
    "variable": "z",
    "fixed_points": [
        {"name": "P1", "tangent_exponents": ["1", "1"], "twist_exponents": []},
        {"name": "P2", "tangent_exponents": ["1", "-1"], "twist_exponents": []},
    ],
}


def write(tmp_path, doc, name="fp.json"):
    p = tmp_path / name
    p.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    return p


# ------------------------------------------------------------------ reports

records = st.builds(
    CheckRecord,
    st.text(max_size=10),
    st.text(max_size=10),
    st.sampled_from(["pass", "fail", "skip"]),
    st.dictionaries(st.text(max_size=5), st.one_of(st.integers(), st.text(max_size=5), st.booleans(), st.fractions(max_denominator=9)), max_size=3),
)


@given(st.lists(records, max_size=6), st.lists(st.text(max_size=8), max_size=2))
def test_report_roundtrip(recs, lines):
    rep = Report("cmd", recs, lines)
    text = rep.to_json()
    back = Report.from_json(text)
    assert back == rep
    assert back.to_json() == text
    assert rep.exit_code() == (1 if any(r.status == "fail" for r in recs) else 0)


def test_report_rejects_floats_and_bad_status():
    with pytest.raises(TypeError):
        CheckRecord("x", "a", "pass", {"v": 0.5})
    with pytest.raises(ValueError):
        CheckRecord("x", "a", "ok")


def test_report_rejects_tampered_summary():
    d = Report("c", [CheckRecord("x", "a", "fail")]).to_dict()
    d["summary"]["fail"] = 0
    with pytest.raises(ValueError):
        Report.from_dict(d)


def test_counts():
    rep = Report("c", [CheckRecord("a", "x", "pass"), CheckRecord("b", "x", "skip")])
    assert rep.counts() == {"pass": 1, "fail": 0, "skip": 1}
    assert rep.ok and "summary: 1 pass, 0 fail, 1 skip" in rep.text()


# ------------------------------------------------------------------- verify


def test_verify_volume_table(capsys):
    assert main(["verify", "volume-table"]) == 0
    out = capsys.readouterr().out
    assert out.count("PASS") == 4


def test_verify_structure_actions_r3(capsys, tmp_path):
    path = tmp_path / "r.json"
    assert main(["verify", "structure-actions", "--r", "3", "--m", "1", "--report", str(path)]) == 0
    rep = Report.from_json(path.read_text())
    (rec,) = rep.records
    assert rec.status == "pass" and rec.witness["value"] == "-1"


def test_verify_lemma_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["verify", "lemma", "--samples", "500", "--seed", "7", "--report", str(a)]) == 0
    assert main(["verify", "lemma", "--samples", "500", "--seed", "7", "--report", str(b)]) == 0
    assert a.read_text() == b.read_text()


def test_suite_seed_independent_of_grouping():
    opts = SuiteOptions(seed=3, samples=20)
    assert run_suite("lemma", opts) == run_suite("lemma", opts)
    assert run_suite("lemma", SuiteOptions(seed=4, samples=20)) != []


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "nonsense"],
        ["verify", "lemma", "--samples", "0"],
        ["verify", "lemma", "--r", "3"],
        ["verify", "structure-actions", "--m", "1"],
        ["verify", "structure-actions", "--r", "4", "--m", "1"],
        ["check-twist", "--r", "3"],
        ["check-twist", "--r", "3", "--m", "1", "--u1", "1"],
        ["check-twist", "--r", "3", "--m", "1", "--mode", "fast"],
        [],
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    assert main(argv) == 2
    assert "error" in capsys.readouterr().err


# -------------------------------------------------------------- check-twist


@pytest.mark.parametrize(
    "argv,verdict",
    [
        (["--r", "3", "--m", "2", "--u", "1", "--s", "1"], "admissible"),
        (["--r", "3", "--m", "1", "--u", "0", "--s", "0"], "not admissible"),
        (["--r", "6", "--m", "2"], "admissible"),
        (["--r", "8", "--m1", "1", "--m2", "2", "--u2", "1"], "admissible"),
        (["--r", "5", "--m", "2", "--u", "1", "--symmetric"], "not admissible"),
    ],
)
def test_check_twist_examples(argv, verdict, capsys):
    assert main(["check-twist", *argv]) == 0
    out = capsys.readouterr().out
    assert f": {verdict}\n" in out


@pytest.mark.parametrize("mode", ["closed", "oracle"])
def test_check_twist_single_mode(mode, capsys):
    assert main(["check-twist", "--r", "3", "--m", "2", "--u", "1", "--s", "1", "--mode", mode]) == 0
    out = capsys.readouterr().out
    assert "agrees" not in out and ": admissible" in out


# ---------------------------------------------------------------- localize


def test_localize_s4(tmp_path, capsys):
    rp = tmp_path / "out.json"
    assert main(["localize", str(write(tmp_path, S4)), "--report", str(rp)]) == 0
    assert "vanishes: ind(z) = 0" in capsys.readouterr().out
    rep = Report.from_json(rp.read_text())
    assert rep.records[-1].witness["classification"] == "zero"


def test_localize_single_point_is_inconsistent(tmp_path, capsys):
    doc = dict(S4, fixed_points=S4["fixed_points"][:1])
    assert main(["localize", str(write(tmp_path, doc))]) == 1
    assert "inconsistent: sum is not a Laurent polynomial" in capsys.readouterr().out


def test_localize_empty(tmp_path, capsys):
    assert main(["localize", str(write(tmp_path, dict(S4, fixed_points=[])))]) == 0
    assert "vanishes: ind(z) = 0" in capsys.readouterr().out


def test_localize_variable_name(tmp_path, capsys):
    doc = {"version": 1, "variable": "t", "fixed_points": [
        {"name": "N", "tangent_exponents": ["2"], "twist_exponents": ["2"]},
        {"name": "S", "tangent_exponents": ["-2"], "twist_exponents": ["-2"]},
    ]}
    assert main(["localize", str(write(tmp_path, doc))]) == 0
    assert "not rigid: ind(t) = t + t^(-1)" in capsys.readouterr().out


@pytest.mark.parametrize(
    "doc,fragment",
    [
        ("{not json", "line 1 column 2"),
        ({"version": 2, "fixed_points": []}, "version"),
        ({"version": 1.0, "fixed_points": []}, "version"),
        ({"version": 1}, "fixed_points: expected a list"),
        ({"version": 1, "fixed_points": [{"name": "P", "tangent_exponents": [1.5]}]}, "fixed_points[0].tangent_exponents[0]"),
        ({"version": 1, "fixed_points": [{"name": "P", "tangent_exponents": ["1"]}, {"name": "Q", "tangent_exponents": ["0"]}]}, "fixed_points[1].tangent_exponents[0]: zero exponent"),
        ({"version": 1, "fixed_points": [{"name": "P", "tangent_exponents": ["1/3"]}]}, "not a half-integer"),
        ({"version": 1, "fixed_points": [{"name": "P", "tangent_exponents": ["1"], "twist_exponents": ["x"]}]}, "fixed_points[0].twist_exponents[0]"),
        ({"version": 1, "fixed_points": [{"name": "P", "tangent_exponents": ["0.5"]}]}, "decimals"),
        ({"version": 1, "fixed_points": [{"name": "P"}]}, "fixed_points[0].tangent_exponents: missing"),
        ({"version": 1, "fixed_points": [{"name": "P", "tangent_exponents": ["1"], "weight": 1}]}, "unknown fields"),
        ({"version": 1, "fixed_points": [{"name": 3, "tangent_exponents": ["1"]}]}, "fixed_points[0].name"),
    ],
)
def test_localize_parse_errors(tmp_path, capsys, doc, fragment):
    assert main(["localize", str(write(tmp_path, doc))]) == 2
    assert fragment in capsys.readouterr().err


def test_localize_missing_file(tmp_path, capsys):
    assert main(["localize", str(tmp_path / "nope.json")]) == 2


def test_parse_accepts_integers_and_strings():
    _, fps = parse_fixed_points(json.dumps({"version": 1, "fixed_points": [{"tangent_exponents": [1, "-3/2"], "twist_exponents": ["1/2"]}]}))
    assert fps[0].tangent_exponents == (1, Fraction(-3, 2))
    assert fps[0].name == "P1"


def test_parse_error_type():
    with pytest.raises(UsageError):
        parse_fixed_points("[]")


def test_check_twist_small_rank(capsys):
    assert main(["check-twist", "--r", "2", "--m", "1"]) == 2
    assert "r must be" in capsys.readouterr().err


def test_localize_output_alias(tmp_path):
    out = tmp_path / "o.json"
    assert main(["localize", str(write(tmp_path, S4)), "--output", str(out)]) == 0
    assert Report.from_json(out.read_text()).ok
