import pytest

from rea_center.algebra.minors import (
    dl_coinv,
    dlmin,
    dlmin_rowexp,
    ptmin,
    ptmin_rowexp,
    row_expansion_terms,
    signed_qpow,
    verify_row_expansions,
)
from rea_center.algebra.ncpoly import FRT, REA, NCPoly
from rea_center.algebra.scalars import ONE, qpow
from rea_center.storage.fixture_store import expected_value, find_fixture
from rea_center.utils.errors import ContractViolation


def fixture_value(kind, N, **params):
    record = find_fixture(kind, N, **params)
    assert record is not None
    return expected_value(record)


def test_signed_qpow():
    assert signed_qpow(0) == ONE
    assert signed_qpow(1) == -qpow(1)
    assert signed_qpow(-2) == qpow(-2)


def test_dl_minor_matches_reference():
    assert dlmin((1, 3), (3, 4), 4) == fixture_value("dlmin", 4, I=(1, 3), J=(3, 4))
    assert dlmin((1, 2, 4), (1, 2, 3), 4) == fixture_value("dlmin", 4, I=(1, 2, 4), J=(1, 2, 3))


def test_truncated_minor_matches_reference():
    assert ptmin((2,), (1, 3), (3, 4), 4) == fixture_value("ptmin", 4, I=(1, 3), J=(3, 4), U=(2,))
    assert ptmin((), (1, 2, 4), (1, 2, 3), 4) == fixture_value("ptmin", 4, I=(1, 2, 4), J=(1, 2, 3), U=())


@pytest.mark.parametrize("N, k", [(2, 1), (2, 2), (3, 1), (3, 2), (3, 3)])
def test_coinvariants_match_reference(N, k):
    assert dl_coinv(k, N) == fixture_value("dl_coinv", N, k=k)


def test_empty_minors_are_one():
    assert dlmin((), (), 3) == NCPoly.one(FRT, 3)
    assert ptmin((), (), (), 3) == NCPoly.one(REA, 3)


def test_first_row_expansion_factors():
    rows = row_expansion_terms((), (1, 2, 4), (1, 2, 3), 4)
    assert [j for j, _, _ in rows] == [1, 2, 3]
    assert [factor for _, factor, _ in rows] == [qpow(-2), -qpow(-1), qpow(-1)]
    assert rows[0][2] == fixture_value("ptmin", 4, I=(2, 4), J=(2, 3), U=())
    assert rows[1][2] == fixture_value("ptmin", 4, I=(2, 4), J=(1, 3), U=())
    assert rows[2][2] == fixture_value("ptmin", 4, I=(2, 4), J=(1, 2), U=())


def test_expansions_agree_with_bijection_sums():
    assert dlmin_rowexp((1, 2, 4), (1, 2, 3), 4) == dlmin((1, 2, 4), (1, 2, 3), 4)
    assert ptmin_rowexp((2,), (1, 3), (3, 4), 4) == ptmin((2,), (1, 3), (3, 4), 4)


@pytest.mark.parametrize("N", [1, 2, 3])
def test_verify_row_expansions(N):
    report = verify_row_expansions(N)
    assert report["pass"], report["residuals"]
    assert report["params"]["mode"] == "exhaustive"


def test_verify_row_expansions_random_mode():
    report = verify_row_expansions(5, random_cases=5, seed=11)
    assert report["params"]["mode"] == "random"
    assert report["params"]["seed"] == 11
    assert report["details"]["truncated_cases"] == 5
    assert report["pass"], report["residuals"]


def test_contract_violations():
    with pytest.raises(ContractViolation):
        dlmin((1, 2), (1,), 3)
    with pytest.raises(ContractViolation):
        ptmin((1,), (1,), (2,), 3)
    with pytest.raises(ContractViolation):
        dl_coinv(4, 3)
    with pytest.raises(ContractViolation):
        ptmin((), (1,), (5,), 3)
