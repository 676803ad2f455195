import json

import pandas as pd

from rea_center.algebra.hecke import HeckeElt
from rea_center.algebra.ncpoly import parse
from rea_center.algebra.rmatrix import elementary
from rea_center.algebra.scalars import Q_DIFF
from rea_center.exporters.csv_exporter import export_to_csv, summarize_reports, to_dataframe
from rea_center.exporters.json_exporter import export_to_json, export_to_jsonl, format_json
from rea_center.exporters.text_exporter import format_report, render
from rea_center.processors.validator import build_report

C2 = "q^-6*(a[1,1]*a[2,2] - q^2*a[1,2]*a[2,1])"


def test_format_json_is_sorted_and_serializes_engine_objects():
    text = format_json({"b": Q_DIFF, "a": (1, 2)}, indent=0)
    assert json.loads(text) == {"a": [1, 2], "b": Q_DIFF.to_json()}
    assert text.index('"a"') < text.index('"b"')


def test_export_json_files(tmp_path):
    path = tmp_path / "out" / "report.json"
    assert export_to_json({"x": 1}, str(path))
    assert json.loads(path.read_text(encoding="utf-8")) == {"x": 1}
    path = tmp_path / "rows.jsonl"
    assert export_to_jsonl([{"x": 1}, {"x": 2}], str(path))
    assert len(path.read_text(encoding="utf-8").splitlines()) == 2


def test_render_polynomial():
    c2 = parse(C2)
    assert render(c2) == C2
    assert render(c2, factor=False) == "q^-6*a[1,1]*a[2,2] - q^-4*a[1,2]*a[2,1]"
    assert json.loads(render(c2, "json")) == c2.to_json()


def test_render_other_objects():
    assert render(Q_DIFF) == "q - q^-1"
    assert render(Q_DIFF, "latex") == "q - q^{-1}"
    assert render(HeckeElt.unit(2), "latex") == "T_{12}"
    assert render(elementary(2, 1, 2)) == "1\t2\t1"
    assert render(elementary(2, 1, 2).scale(0)) == "0"
    assert "\\begin{array}" in render(elementary(2, 1, 2), "latex")


def test_format_report():
    report = build_report("central", {"N": 2, "k": 1}, [{"generator": [1, 2]}], details={"rank": 3, "x": [1]})
    lines = format_report(report).splitlines()
    assert lines[0] == "central [N=2, k=1]: FAIL"
    assert lines[1] == "  - {'generator': [1, 2]}"
    assert lines[2:] == ["  rank: 3"]
    assert render(build_report("qch", {"N": 1}, [])) == "qch [N=1]: PASS"


def test_csv_export(tmp_path):
    reports = [
        build_report("newton", {"N": 2, "k": 1}, []),
        build_report("newton", {"N": 2, "k": 2}, [{"residual": "a[1,1]"}]),
    ]
    rows = summarize_reports(reports)
    assert rows[1] == {"check": "newton", "pass": False, "residuals": 1, "param_N": 2, "param_k": 2}
    path = tmp_path / "summary.csv"
    assert export_to_csv(rows, str(path))
    df = pd.read_csv(path)
    assert list(df.columns) == ["check", "pass", "residuals", "param_N", "param_k"]
    assert df["residuals"].tolist() == [0, 1]
    assert not export_to_csv([], str(tmp_path / "empty.csv"))


def test_dataframe_stringifies_nested_values():
    df = to_dataframe([{"I": [1, 2], "m": 2}])
    assert df.loc[0, "I"] == "[1, 2]"
    assert df.loc[0, "m"] == 2
