import csv
import io
import json

import pytest

from seczeta.cli import checkpoint_counts, main
from seczeta.report import SCHEMA, Report
from seczeta.zero_source import load_zeros, save_zeros


@pytest.fixture(scope="module")
def z1k_path(zeros_1k, tmp_path_factory):
    p = tmp_path_factory.mktemp("cli") / "z1k.txt"
    save_zeros(zeros_1k, p)
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# --- report ------------------------------------------------------------------

def test_report_round_trip():
    r = Report("estimate", {"zeros": "z.txt"}, "123.5", [{"n": "0", "estimate": "0.25"}], {"seconds": 1.0})
    back = Report.from_json(r.to_json())
    assert back == r
    assert json.loads(r.to_json())["schema"] == SCHEMA
    with pytest.raises(ValueError):
        Report.from_json(json.dumps({"schema": "other/9"}))


def test_report_csv_has_header_and_union_of_columns():
    r = Report("x", records=[{"a": "1"}, {"a": "2", "b": "3"}])
    rows = list(csv.reader(io.StringIO(r.to_csv())))
    assert rows == [["a", "b"], ["1", ""], ["2", "3"]]


# --- zeros -------------------------------------------------------------------

def test_zeros_gen_and_verify(tmp_path, capsys):
    out = tmp_path / "z.txt"
    code, text, _ = run(capsys, "zeros", "gen", "--count", "100", "--digits", "15", "--out", str(out))
    assert code == 0 and "100 ordinates" in text
    t = load_zeros(out)
    assert t.count == 100 and t.source_digits == 15
    assert out.read_text().splitlines()[5] == "14.134725141734694"
    code, text, _ = run(capsys, "zeros", "verify", str(out))
    assert code == 0
    assert "count: 100" in text and "max |Q|:" in text


def test_zeros_verify_reports_swapped_line(tmp_path, capsys):
    p = tmp_path / "bad.txt"
    p.write_text("# header\n14.134725141734693790\n25.010857580145688763\n21.022039638771554993\n")
    code, _, err = run(capsys, "zeros", "verify", str(p))
    assert code == 2
    assert ":4:" in err


def test_usage_errors_exit_one(capsys):
    assert run(capsys, "estimate")[0] == 1
    assert run(capsys, "nonsense")[0] == 1
    assert run(capsys, "--precision", "20", "laurent", "--s", "2")[0] == 1
    assert run(capsys, "estimate", "--zeros", "x", "--n", "a,b")[0] == 1


def test_missing_file_exits_two(capsys):
    assert run(capsys, "estimate", "--zeros", "/nonexistent/z.txt")[0] == 2


# --- estimate ----------------------------------------------------------------

def test_estimate_json_and_csv_agree(z1k_path, capsys):
    code, js, _ = run(capsys, "estimate", "--zeros", z1k_path, "--n", "0,1,2", "--method", "both", "--format", "json")
    assert code == 0
    rep = Report.from_json(js)
    assert len(rep.records) == 6
    code, cs, _ = run(capsys, "estimate", "--zeros", z1k_path, "--n", "0,1,2", "--method", "both", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(cs)))
    assert [r["estimate"] for r in rows] == [r["estimate"] for r in rep.records]
    assert [r["sum"] for r in rows] == [r["sum"] for r in rep.records]
    bpt0 = next(r for r in rep.records if r["method"] == "bpt" and r["n"] == "0")
    assert int(bpt0["matched_digits"]) >= 5
    assert bpt0["bound_kind"] == "proven"
    # 192 bits print as 58 significant digits
    assert len(rep.cutoff.replace(".", "")) == 58


def test_estimate_is_deterministic_across_threads(z1k_path, capsys):
    bodies = []
    for k in ("1", "2", "8"):
        code, js, _ = run(capsys, "--threads", k, "estimate", "--zeros", z1k_path, "--format", "json")
        assert code == 0
        bodies.append(Report.from_json(js).body())
    assert bodies[0]["records"] == bodies[1]["records"] == bodies[2]["records"]


def test_estimate_plain_at_one(z1k_path, capsys):
    code, js, _ = run(capsys, "estimate", "--zeros", z1k_path, "--n", "0", "--T", "1", "--method", "plain", "--format", "json")
    assert code == 0
    assert float(Report.from_json(js).records[0]["estimate"]) == 0.0


def test_estimate_flags_after_subcommand(z1k_path, capsys):
    code, js, _ = run(capsys, "estimate", "--zeros", z1k_path, "--n", "0", "--precision", "128", "--format", "json")
    assert code == 0
    assert Report.from_json(js).inputs["precision"] == "128"


def test_estimate_bad_cutoff_exits_two(z1k_path, capsys):
    assert run(capsys, "estimate", "--zeros", z1k_path, "--T", "1e7")[0] == 2


# --- oracle ------------------------------------------------------------------

def test_oracle_passes_gate(z1k_path, capsys):
    code, js, _ = run(capsys, "oracle", "--zeros", z1k_path, "--m", "0,3", "--format", "json")
    assert code == 0
    rep = Report.from_json(js)
    assert all(r["status"] == "ok" for r in rep.records)
    for r in rep.records:
        assert abs(float(r["residual"])) < 1e-40


def test_oracle_below_first_zero(z1k_path, capsys):
    code, js, _ = run(capsys, "--T", "5", "oracle", "--zeros", z1k_path, "--m", "0", "--format", "json")
    assert code == 0
    from seczeta.asymptotics import l_main

    # no zeros below 5, so the boundary term is (1/5)(0 - L(5)) and L(5) < 0
    assert float(Report.from_json(js).records[0]["boundary_term"]) == pytest.approx(float(-l_main(5) / 5), rel=1e-14)


def test_oracle_gate_failure_exits_two(z1k_path, capsys, monkeypatch):
    import seczeta.cli as cli

    monkeypatch.setattr(cli, "residual_gate", lambda bits: 0)
    assert run(capsys, "oracle", "--zeros", z1k_path, "--m", "0")[0] == 2


# --- laurent -----------------------------------------------------------------

def test_laurent_domain_errors(capsys):
    code, _, err = run(capsys, "laurent", "--s", "1")
    assert code == 2 and "pole" in err
    code, _, err = run(capsys, "laurent", "--s", "3.5")
    assert code == 2 and "radius" in err


def test_laurent_with_zeros(z1k_path, capsys):
    code, js, _ = run(capsys, "laurent", "--s", "2", "--zeros", z1k_path, "--format", "json")
    assert code == 0
    rec = Report.from_json(js).records[0]
    assert abs(float(rec["gap"])) < float(rec["direct_envelope"]) + float(rec["truncation_envelope"])


def test_laurent_complex_point_and_coeff_file(tmp_path, capsys):
    from seczeta.laurent import REFERENCE

    p = tmp_path / "c.tsv"
    REFERENCE.save(p)
    code, js, _ = run(capsys, "laurent", "--s", "1.5+0.5j", "--terms", "4", "--coeff-file", str(p), "--format", "json")
    assert code == 0
    rec = Report.from_json(js).records[0]
    assert rec["terms"] == "4" and float(rec["laurent_im"]) != 0
    assert run(capsys, "laurent", "--s", "1.5+0.5j", "--zeros", str(p))[0] == 2


# --- converge ----------------------------------------------------------------

def test_checkpoint_counts():
    assert checkpoint_counts(10000, 10)[0] == 100
    assert checkpoint_counts(10000, 10)[-1] == 10000
    assert len(checkpoint_counts(10000, 10)) == 10
    assert checkpoint_counts(10000, 1) == [10000]
    assert checkpoint_counts(50, 5) == [50]


def test_converge_rows(z1k_path, capsys):
    code, cs, _ = run(capsys, "converge", "--zeros", z1k_path, "--checkpoints", "5")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(cs)))
    assert [int(r["zeros"]) for r in rows] == checkpoint_counts(1000, 5)
    for r in rows:
        assert float(r["bpt_error"]) <= float(r["e2_bound"])
    assert list(rows[0]) == ["zeros", "T", "plain", "bpt", "e2_bound", "plain_error", "bpt_error"]


def test_single_checkpoint_matches_estimate(z1k_path, capsys):
    _, cs, _ = run(capsys, "converge", "--zeros", z1k_path, "--checkpoints", "1")
    row = next(csv.DictReader(io.StringIO(cs)))
    _, js, _ = run(capsys, "estimate", "--zeros", z1k_path, "--n", "0", "--method", "both", "--format", "json")
    recs = Report.from_json(js).records
    assert row["plain"] == recs[0]["estimate"] and row["bpt"] == recs[1]["estimate"]
