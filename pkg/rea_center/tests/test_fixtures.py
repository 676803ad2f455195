import json

from rea_center.processors.fixture_checker import check_fixtures, check_record, list_fixtures
from rea_center.storage.fixture_store import KIND_ALGEBRA, find_fixture, read_records

VALID = {
    "id": "ck-N2-k1",
    "provenance": "test",
    "kind": "ck",
    "params": {"N": 2, "k": 1},
    "expected": "q^-2*a[1,1] + q^-4*a[2,2]",
}


def write_lines(path, lines):
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return str(path)


def test_reference_file_is_reproduced():
    report = check_fixtures()
    assert report["pass"], report["residuals"]
    assert report["details"]["checked"] == 19


def test_listing():
    rows = list_fixtures()
    assert len(rows) == 19
    assert {row["kind"] for row in rows} == set(KIND_ALGEBRA)
    assert all(row["provenance"].startswith(f"{row['status']}: ") for row in rows)
    assert {row["status"] for row in rows} == {"printed"}
    subminor = next(row for row in rows if row["id"] == "ptmin-N4-24-12")
    assert "cofactors" in subminor["provenance"]


def test_find_fixture():
    assert find_fixture("ck", 2, k=2)["id"] == "ck-N2-k2"
    assert find_fixture("ptmin", 4, I=(1, 3), J=(3, 4), U=(2,))["id"] == "ptmin-N4-13-34"
    assert find_fixture("ck", 5, k=1) is None


def test_check_record_reports_wrong_value():
    assert check_record(VALID) == []
    residuals = check_record(dict(VALID, expected="a[1,1]"))
    assert [r["property"] for r in residuals] == ["value"]
    residuals = check_record(dict(VALID, expected="a[1,1"))
    assert [r["property"] for r in residuals] == ["parse"]


def test_check_record_reports_compute_errors():
    record = dict(VALID, params={"N": 2, "k": 3})
    assert [r["property"] for r in check_record(record)] == ["compute"]


def test_degree_three_tmin_is_rebuilt_from_first_row():
    record = find_fixture("tmin", 4, I=(1, 2, 4), J=(1, 2, 3))
    assert check_record(record) == []
    broken = dict(record, expected="q^-13*a[1,1]*a[2,2]*a[4,3]")
    assert [r["property"] for r in check_record(broken)] == ["value", "classical_limit"]


def test_degree_three_tmin_catches_q_power():
    record = find_fixture("tmin", 4, I=(1, 2, 4), J=(1, 2, 3))
    # même limite classique, puissance de q fausse sur un seul terme
    shifted = record["expected"].replace("- q*a[1,1]*a[2,3]*a[4,2]", "- q^2*a[1,1]*a[2,3]*a[4,2]")
    assert shifted != record["expected"]
    assert [r["property"] for r in check_record(dict(record, expected=shifted))] == ["value"]


def test_malformed_file(tmp_path):
    missing = {key: value for key, value in VALID.items() if key != "expected"}
    path = write_lines(tmp_path / "fixtures.jsonl", [
        json.dumps(VALID),
        "{not json",
        "",
        json.dumps(missing),
        json.dumps(dict(VALID, kind="unknown")),
    ])
    records = read_records(path)
    assert [line for line, _ in records] == [1, 2, 4, 5]
    assert isinstance(records[1][1], str)

    report = check_fixtures(path)
    assert not report["pass"]
    assert report["details"]["checked"] == 1
    assert report["params"]["path"] == path
    assert [(r["line"], r["property"]) for r in report["residuals"]] == [
        (2, "json"),
        (4, "schema"),
        (5, "schema"),
    ]
