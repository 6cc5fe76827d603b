import json

import pytest

from zdsemigroups.cli import main
from zdsemigroups.errors import UsageError
from zdsemigroups.reports import (
    ResultsCache,
    build_count_report,
    render_count_report,
    render_verification,
    run_verification,
)


def test_count_report_kn_consistent():
    report = build_count_report("kn", 3, "all", jobs=1)
    assert report.method_counts == {"formula": 7, "generator": 7, "oracle": 7}
    assert report.internally_consistent
    assert report.discrepancies == []


def test_count_report_kn1_n3_adjudication():
    report = build_count_report("kn1", 3, "all", jobs=1)
    assert report.method_counts["generator"] == report.method_counts["oracle"]
    descriptions = [d.description for d in report.discrepancies]
    assert any("x*x = x" in d for d in descriptions)
    assert any("total" in d for d in descriptions)
    self_disc = next(d for d in report.discrepancies if "x*x = x" in d.description)
    assert self_disc.reference_value == 6
    assert self_disc.computed_value == report.strata["cases"]["self"]
    assert len(self_disc.witnesses) == self_disc.computed_value
    for witness in self_disc.witnesses:
        assert "entries" in witness and witness["m"] == 4


def test_count_report_rejects_bad_input():
    with pytest.raises(UsageError):
        build_count_report("kn1", 2)
    with pytest.raises(UsageError):
        build_count_report("kn", 3, "magic")
    with pytest.raises(UsageError):
        build_count_report("krn", 3)


def test_report_render_stable():
    report = build_count_report("kn", 3, "all", jobs=1)
    assert render_count_report(report) == render_count_report(
        build_count_report("kn", 3, "all", jobs=1)
    )


def test_report_json_roundtrip():
    obj = build_count_report("kn1", 4, "generator").to_json_obj()
    text = json.dumps(obj, sort_keys=True)
    assert json.loads(text)["method_counts"]["generator"] == 43


def test_cli_count_kn_exit0(capsys):
    code = main(["count", "--graph", "kn", "--n", "4", "--jobs", "1"])
    out = capsys.readouterr().out
    assert code == 0
    assert "formula   12" in out and "oracle    12" in out


def test_cli_count_kn1_n4_exit0(capsys):
    code = main(["count", "--graph", "kn1", "--n", "4", "--jobs", "1"])
    out = capsys.readouterr().out
    assert code == 0
    assert "internal consistency: ok" in out


def test_cli_count_writes_report(tmp_path, capsys):
    out_path = tmp_path / "report.json"
    code = main(["count", "--graph", "kn", "--n", "3", "--jobs", "1",
                 "--out", str(out_path)])
    capsys.readouterr()
    assert code == 0
    obj = json.loads(out_path.read_text())
    assert obj["method_counts"] == {"formula": 7, "generator": 7, "oracle": 7}


def test_cli_count_oracle_budget_refusal(capsys):
    code = main(["count", "--graph", "kn1", "--n", "5", "--method", "oracle",
                 "--jobs", "1"])
    err = capsys.readouterr().err
    assert code == 2
    assert "desk-scale" in err


def test_cli_count_all_skips_oracle_over_budget(capsys):
    code = main(["count", "--graph", "kn1", "--n", "5", "--jobs", "1"])
    out = capsys.readouterr().out
    assert code == 0
    assert "skipped" in out


def test_cli_enumerate_json(tmp_path, capsys):
    out_path = tmp_path / "k3.json"
    code = main(["enumerate", "--graph", "kn", "--n", "3", "--jobs", "1",
                 "--format", "json", "--out", str(out_path)])
    capsys.readouterr()
    assert code == 0
    reps = json.loads(out_path.read_text())
    assert len(reps) == 7
    assert [r["key"] for r in reps] == sorted(r["key"] for r in reps)


def test_cli_enumerate_kn1_case_attach(tmp_path, capsys):
    out_path = tmp_path / "attach.json"
    code = main(["enumerate", "--graph", "kn1", "--n", "3", "--jobs", "1",
                 "--case", "attach", "--out", str(out_path)])
    capsys.readouterr()
    assert code == 0
    reps = json.loads(out_path.read_text())
    # computed family has n classes; the all-nilpotent table is among them
    assert len(reps) == 3


def test_cli_enumerate_kn_n1(tmp_path, capsys):
    out_path = tmp_path / "k1.json"
    code = main(["enumerate", "--graph", "kn", "--n", "1", "--jobs", "1",
                 "--out", str(out_path)])
    capsys.readouterr()
    assert code == 0
    reps = json.loads(out_path.read_text())
    assert len(reps) == 1
    assert reps[0]["table"]["entries"] == [[0, 0], [0, 0]]


def test_cli_enumerate_csv_and_dot(tmp_path, capsys):
    csv_path = tmp_path / "k3.csv"
    code = main(["enumerate", "--graph", "kn", "--n", "3", "--jobs", "1",
                 "--format", "csv", "--out", str(csv_path)])
    assert code == 0
    lines = csv_path.read_text().splitlines()
    assert lines[0].startswith("target,n,class_id,key,x1_square_case")
    assert len(lines) == 8  # header + 7 classes

    dot_path = tmp_path / "p3.dot"
    code = main(["enumerate", "--graph", "kn1", "--n", "3", "--jobs", "1",
                 "--format", "dot", "--out", str(dot_path)])
    capsys.readouterr()
    assert code == 0
    text = dot_path.read_text()
    assert text.count("graph zero_divisor_graph {") == 1  # one block, annotated
    assert "// class 0:" in text and "x1;" in text


def test_cli_enumerate_case_requires_kn1(capsys):
    code = main(["enumerate", "--graph", "kn", "--n", "3", "--jobs", "1",
                 "--case", "zero", "--out", "/tmp/unused.json"])
    capsys.readouterr()
    assert code == 2


def test_cli_enumerate_io_error(tmp_path, capsys):
    code = main(["enumerate", "--graph", "kn", "--n", "3", "--jobs", "1",
                 "--out", str(tmp_path / "missing" / "k3.json")])
    err = capsys.readouterr().err
    assert code == 3
    assert "i/o error" in err


def test_cli_export_dot_stdout(capsys):
    code = main(["export-dot", "--graph", "kn1", "--n", "4"])
    out = capsys.readouterr().out
    assert code == 0
    assert out.splitlines()[0] == "graph zero_divisor_graph {"
    assert "x1;" in out


def test_cli_verify_range(capsys):
    code = main(["verify", "3", "--jobs", "1"])
    out = capsys.readouterr().out
    assert code == 0
    assert "[PASS" in out and "summary:" in out


def test_verify_boundary_findings():
    rows, code = run_verification(1, 2, jobs=1)
    assert code == 0
    findings = [r for r in rows if r.status == "FINDING"]
    assert any("n=1" in r.label and "oracle=1 formula=2" in r.detail for r in findings)
    assert any("n=2" in r.label and "oracle=4 formula=4" in r.detail for r in findings)


def test_verify_render_deterministic():
    rows, code = run_verification(1, 1, jobs=1)
    again, _ = run_verification(1, 1, jobs=1)
    assert render_verification(rows, code) == render_verification(again, code)


def test_results_cache_round_trip(tmp_path):
    cache = ResultsCache(tmp_path)
    report = build_count_report("kn1", 3, "oracle", jobs=1, cache=cache)
    assert report.method_counts["oracle"] == 22
    cached = cache.get_catalog("kn1", 3, "oracle")
    assert cached is not None and cached.class_count == 22
    # second run hits the cache and agrees
    report2 = build_count_report("kn1", 3, "oracle", jobs=1, cache=cache)
    assert report2.method_counts["oracle"] == 22
