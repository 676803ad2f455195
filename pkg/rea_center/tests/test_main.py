import json

import pytest
from click.testing import CliRunner

from rea_center.algebra.minors import dlmin
from rea_center.algebra.ncpoly import parse
from rea_center.main import cli


@pytest.fixture
def runner(monkeypatch):
    monkeypatch.delenv("QMAT_CACHE_DIR", raising=False)
    return CliRunner()


def invoke(runner, args):
    return runner.invoke(cli, args, obj={})


def test_ck(runner):
    result = invoke(runner, ["ck", "--N", "2", "--k", "2"])
    assert result.exit_code == 0
    assert result.output == "q^-6*(a[1,1]*a[2,2] - q^2*a[1,2]*a[2,1])\n"


def test_normal_form(runner):
    result = invoke(runner, ["nf", "a[1,2]*a[1,1]"])
    assert result.exit_code == 0
    assert result.output.strip() == "a[1,1]*a[1,2] + (1 - q^-2)*a[1,2]*a[2,2]"


def test_parse_error_is_a_usage_error(runner):
    result = invoke(runner, ["nf", "a[1,2"])
    assert result.exit_code == 2


def test_out_of_range_degree_is_a_usage_error(runner):
    assert invoke(runner, ["ck", "--N", "2", "--k", "3"]).exit_code == 2
    assert invoke(runner, ["verify", "newton", "--N", "2", "--k", "3"]).exit_code == 2


def test_minor(runner):
    result = invoke(runner, ["minor", "--type", "dl", "--I", "1,3", "--J", "3,4", "--N", "4"])
    assert result.exit_code == 0
    assert parse(result.output.strip(), N=4) == dlmin((1, 3), (3, 4), 4)


def test_stats_for_one_bijection(runner):
    result = invoke(runner, ["stats", "--I", "1,3", "--J", "1,3", "--U", "2", "--tau", "3,1"])
    assert result.exit_code == 0
    assert result.output.strip() == "tau=[3, 1] wt_I=4 wt_J=4 length_U=3 exceedance=1 m=2 gamma=1"


def test_stats_rejects_foreign_images(runner):
    result = invoke(runner, ["stats", "--I", "1,3", "--J", "1,3", "--tau", "3,2"])
    assert result.exit_code == 2


def test_verify_passes(runner):
    result = invoke(runner, ["verify", "qch", "--N", "2"])
    assert result.exit_code == 0
    assert result.output.startswith("qch [N=2]: PASS")


def test_verify_negative_control_fails(runner):
    result = invoke(runner, ["verify", "central", "--N", "2", "--k", "1", "--perturb"])
    assert result.exit_code == 1
    assert "FAIL" in result.output


def test_verify_json_and_csv(runner, tmp_path):
    csv_path = tmp_path / "summary.csv"
    result = invoke(runner, ["verify", "--format", "json", "--csv", str(csv_path), "newton", "--N", "2"])
    assert result.exit_code == 0
    reports = json.loads(result.output)
    assert [r["check"] for r in reports] == ["newton", "newton"]
    assert csv_path.exists()


def test_verify_hecke(runner):
    result = invoke(runner, ["verify", "hecke", "--n", "2"])
    assert result.exit_code == 0


def test_hecke_omega(runner):
    result = invoke(runner, ["hecke", "omega", "--n", "2", "--k", "2", "--format", "json"])
    assert result.exit_code == 0
    assert json.loads(result.output)["n"] == 2


def test_rmatrix(runner):
    result = invoke(runner, ["rmatrix", "--N", "1"])
    assert result.exit_code == 0
    assert result.output.strip() == "1,1\t1,1\tq"


def test_fixtures_commands(runner):
    listing = invoke(runner, ["fixtures", "list"])
    assert listing.exit_code == 0
    lines = listing.output.strip().splitlines()
    assert len(lines) == 19
    assert lines[0].startswith("ck-N2-k1\tck\t")
    assert invoke(runner, ["fixtures", "check"]).exit_code == 0


def test_verify_writes_full_reports(runner, tmp_path):
    lines_path = tmp_path / "reports.jsonl"
    result = invoke(runner, ["verify", "--output", str(lines_path), "newton", "--N", "2"])
    assert result.exit_code == 0
    reports = [json.loads(line) for line in lines_path.read_text(encoding="utf-8").splitlines()]
    assert [r["params"]["k"] for r in reports] == [1, 2]

    json_path = tmp_path / "out" / "qch.json"
    assert invoke(runner, ["verify", "-o", str(json_path), "qch", "--N", "2"]).exit_code == 0
    reports = json.loads(json_path.read_text(encoding="utf-8"))
    assert reports[0]["check"] == "qch"
    assert reports[0]["pass"] is True


def test_verify_hecke_degree_needs_rank(runner):
    result = invoke(runner, ["verify", "hecke", "--k", "2"])
    assert result.exit_code == 2
