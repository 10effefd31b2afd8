import csv
import io
import json
import re
from fractions import Fraction

import pytest

from curvebound import serialize as ser
from curvebound.cli import run
from curvebound.obstruct import CHECK_ORDER, CurveHypothesis, ReportOptions, full_report
from curvebound.semigroup import GeneralSingularity, SimplePairSingularity, from_generators

FLOAT_TOKEN = re.compile(r"(?<![\w/])-?\d+\.\d+|\d[eE][+-]?\d")

CORPUS = [
    (21, 1, [(8, 55)], 0),
    (21, 1, [(7, 64)], 0),
    (21, 1, [(2, 379)], 1),
    (21, 1, [(19, 22)], 1),
    (7, 3, [(4, 9)], 1),
    (9, 8, [(5, 11)], 1),
    (6, 1, [(4, 7)], 1),
    (144, 1, [(55, 377)], 0),
    (36, 1, [(12, 109)], 1),
]


def invoke(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def pair_args(pairs):
    out = []
    for p, q in pairs:
        out += ["--pair", f"{p},{q}"]
    return out


@pytest.mark.parametrize("d, g, pairs, code", CORPUS)
def test_exit_codes_match_verdicts(capsys, d, g, pairs, code):
    rc, out, _ = invoke(capsys, "check", "--degree", str(d), "--genus", str(g), *pair_args(pairs))
    assert rc == code
    assert out.rstrip().endswith("pass" if code == 0 else "fail")


def test_check_json_8_55(capsys):
    rc, out, _ = invoke(capsys, "check", "--degree", "21", "--genus", "1", "--pair", "8,55", "--format", "json")
    assert rc == 0
    obj = json.loads(out)
    assert obj["schema_version"] == "1"
    assert {c["name"]: c["status"] for c in obj["checks"]}["theorem_main"] == "pass"


def test_check_t47_witness_text(capsys):
    rc, out, _ = invoke(capsys, "check", "--degree", "6", "--genus", "1", "--pair", "4,7")
    assert rc == 1
    assert "(j,b)=(1,0): 3 ≤ R(7)=2 ≤ 4 violated on the left" in out


def test_usage_errors(capsys):
    assert invoke(capsys, "check", "--degree", "6")[0] == 2
    assert invoke(capsys, "check", "--degree", "6", "--genus", "1")[0] == 2
    assert invoke(capsys, "check", "--degree", "6", "--genus", "1", "--pair", "4,6")[0] == 2
    assert invoke(capsys, "check", "--bogus")[0] == 2
    assert invoke(capsys, "nonsense")[0] == 2
    assert invoke(capsys, "search", "--genus", "1", "--degree", "4..10", "--filters", "nope")[0] == 2
    code, _, err = invoke(capsys, "semigroup", "--generators", "6,9,15")
    assert code == 2 and "not a numerical semigroup of a knot" in err


def test_fib(capsys):
    assert invoke(capsys, "fib", "--triple", "2")[1] == "(8,55;21)\n"
    assert invoke(capsys, "fib", "--n", "10")[1] == "55\n"
    assert invoke(capsys, "fib", "--pell", "100")[1] == "1 3 8 21 55\n"
    assert invoke(capsys, "fib", "--triple", "1")[0] == 2


def test_rational_formatting():
    assert ser.encode_number(Fraction(-1, 4)) == "-1/4"
    assert ser.encode_number(Fraction(6, 3)) == 2
    assert ser.encode_number(7) == 7
    assert ser.decode_number("-1/4") == Fraction(-1, 4)
    with pytest.raises(TypeError):
        ser.encode_number(0.5)


def test_dinv_output_has_no_floats(capsys):
    rc, out, _ = invoke(capsys, "dinv", "--degree", "6", "--genus", "1", "--pair", "4,7", "--format", "json")
    assert rc == 1
    obj = json.loads(out)
    assert obj["verdict"] == "fail"
    assert not FLOAT_TOKEN.search(out)
    assert [v["k"] for v in obj["values"]] == ["-5/2", "-3/2", "-1/2", "1/2", "3/2", "5/2"]
    assert all(isinstance(v["d_bottom"], int) for v in obj["values"])


def _reports():
    opts = ReportOptions(checks=frozenset(CHECK_ORDER), spectrum_mode="full")
    out = [full_report(CurveHypothesis.simple(pairs[0][0], pairs[0][1], d, g), opts)
           for d, g, pairs, _ in CORPUS if d < 100]
    s = GeneralSingularity(from_generators([4, 6, 13]), mbar=9)
    out.append(full_report(CurveHypothesis(6, 10 - s.delta, (s,)), opts))
    two = (SimplePairSingularity(2, 3), SimplePairSingularity(2, 3))
    out.append(full_report(CurveHypothesis(4, 1, two), opts))
    return out


@pytest.mark.parametrize("report", _reports(), ids=str)
def test_json_round_trip(report):
    text = ser.report_to_json(report)
    assert ser.report_from_json(text) == report
    assert ser.report_to_json(ser.report_from_json(text)) == text
    assert not FLOAT_TOKEN.search(text)


def test_outputs_are_deterministic(capsys):
    argv = ["check", "--degree", "9", "--genus", "8", "--pair", "5,11", "--dinv", "--format", "json"]
    first = invoke(capsys, *argv)[1]
    assert invoke(capsys, *argv)[1] == first


def test_search_csv_round_trip(capsys):
    rc, out, _ = invoke(capsys, "search", "--genus", "1", "--degree", "4..40", "--all")
    assert rc == 0
    lines = out.splitlines()
    assert lines[0] == "d,p,q,genus,theorem_main,bmy,multiplicity,spectrum,verdict"
    rows = ser.survivors_from_csv(out)
    rebuilt = io.StringIO()
    writer = csv.DictWriter(rebuilt, fieldnames=lines[0].split(","), lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    assert rebuilt.getvalue() == out
    assert len(rows) == len(lines) - 1
    survivors = [r for r in rows if r["verdict"] == "pass"]
    assert {(r["p"], r["q"], r["d"]) for r in survivors} >= {(8, 55, 21), (2, 5, 4)}
    assert not FLOAT_TOKEN.search(out)


def test_search_default_lists_survivors_only(capsys):
    _, out, _ = invoke(capsys, "search", "--genus", "1", "--degree", "20..22")
    rows = ser.survivors_from_csv(out)
    assert [(r["p"], r["q"], r["d"]) for r in rows] == [(7, 64, 21), (8, 55, 21)]


def test_search_threads_env(capsys, monkeypatch):
    monkeypatch.setenv("CURVEBOUND_THREADS", "2")
    _, a, _ = invoke(capsys, "search", "--genus", "1", "--degree", "4..30")
    monkeypatch.setenv("CURVEBOUND_THREADS", "1")
    _, b, _ = invoke(capsys, "search", "--genus", "1", "--degree", "4..30")
    assert a == b
    monkeypatch.setenv("CURVEBOUND_THREADS", "zero")
    assert invoke(capsys, "search", "--genus", "1", "--degree", "4..30")[0] == 2


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# defaults\ndegree = 21\ngenus = 1\npair = 2,379\nformat = json\n")
    rc, out, _ = invoke(capsys, "check", "--config", str(cfg))
    assert rc == 1
    assert json.loads(out)["hypothesis"]["d"] == 21
    # flags win over the file
    rc, out, _ = invoke(capsys, "check", "--config", str(cfg), "--pair", "8,55", "--format", "table")
    assert rc == 0
    assert out.startswith("hypothesis:")
    cfg.write_text("colour = blue\n")
    assert invoke(capsys, "check", "--config", str(cfg))[0] == 2


def test_config_repeated_values(tmp_path, capsys):
    cfg = tmp_path / "two.cfg"
    cfg.write_text("degree = 4\ngenus = 1\npair = 2,3; 2,3\n")
    rc, out, _ = invoke(capsys, "check", "--config", str(cfg), "--format", "json")
    assert len(json.loads(out)["hypothesis"]["singularities"]) == 2


def test_output_file(tmp_path, capsys):
    target = tmp_path / "r.json"
    rc, out, _ = invoke(capsys, "check", "-d", "21", "-g", "1", "--pair", "8,55", "--format", "json", "-o", str(target))
    assert rc == 0 and out == ""
    assert json.loads(target.read_text())["verdict"] == "pass"


def test_semigroup_and_spectrum_commands(capsys):
    rc, out, _ = invoke(capsys, "semigroup", "--pair", "4,7", "--count", "7", "--format", "json")
    obj = json.loads(out)
    assert rc == 0 and obj["gaps"] == [1, 2, 3, 5, 6, 9, 10, 13, 17] and obj["counts"] == {"7": 2}
    rc, out, _ = invoke(capsys, "spectrum", "--pair", "4,7", "--degree", "6", "--format", "json")
    obj = json.loads(out)
    assert rc == 0
    assert obj["ss"]["lhs"] == [0, 0, 1, 3, 6, 9]
    assert not FLOAT_TOKEN.search(out)


def test_classify_command(capsys):
    rc, out, _ = invoke(capsys, "classify", "--d-max", "60")
    assert rc == 0
    assert "unexplained survivors: none" in out
    assert "missing expected: none" in out
