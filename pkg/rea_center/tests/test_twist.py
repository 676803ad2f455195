import pytest

from rea_center.algebra.central import s_k
from rea_center.algebra.hecke import HeckeElt
from rea_center.algebra.ncpoly import FRT, REA, NCPoly, parse
from rea_center.algebra.qcomb import subsets
from rea_center.algebra.rmatrix import TensorOp, rho
from rea_center.algebra.scalars import Q, Q_INV
from rea_center.algebra.twist import (
    alpha_k,
    check_multiplicative,
    phi2,
    phi_quadratic,
    psi2,
    psi_quadratic,
    scalar_ratio,
    tmin,
    tmin_first_row,
    verify_lemma_times_minor,
    verify_twist,
)
from rea_center.storage.fixture_store import expected_value, find_fixture
from rea_center.utils.errors import ContractViolation, OutOfScopeError


def test_phi_on_distinct_rows_is_the_same_word():
    assert phi2(1, 2, 3, 1, 3) == parse("x[1,2]*x[3,1]", N=3)


def test_phi_rejects_unordered_pairs():
    with pytest.raises(ContractViolation):
        phi2(1, 2, 1, 1, 2)
    with pytest.raises(ContractViolation):
        psi2(2, 1, 1, 1, 2)


def test_psi_of_coinvariant_words():
    assert psi2(1, 1, 2, 2, 2) == parse("a[1,1]*a[2,2]", N=2)
    assert psi2(1, 2, 2, 1, 2) == parse("q*a[1,2]*a[2,1]", N=2)


def test_twist_checks_algebra():
    with pytest.raises(ContractViolation):
        phi_quadratic(NCPoly.generator(FRT, 1, 1, 2))
    with pytest.raises(ContractViolation):
        psi_quadratic(NCPoly.generator(REA, 1, 1, 2))


def test_twist_is_quadratic_only():
    cubic = NCPoly.generator(REA, 1, 1, 2) * NCPoly.generator(REA, 1, 1, 2) * NCPoly.generator(REA, 1, 1, 2)
    with pytest.raises(OutOfScopeError):
        phi_quadratic(cubic)


@pytest.mark.parametrize("N", [2, 3, 4])
def test_verify_twist(N):
    report = verify_twist(N)
    assert report["pass"], report["residuals"]


def test_verify_lemma_times_minor():
    report = verify_lemma_times_minor(2)
    assert report["pass"], report["residuals"]
    assert report["details"]["cases"] == 4


def test_tmin_matches_reference():
    assert tmin((1, 3), (3, 4), 4) == expected_value(find_fixture("tmin", 4, I=(1, 3), J=(3, 4)))
    assert tmin((1, 2, 4), (1, 2, 3), 4) == expected_value(find_fixture("tmin", 4, I=(1, 2, 4), J=(1, 2, 3)))


def test_tmin_first_row_agrees_in_degree_two():
    for I in subsets(3, 2):
        for J in subsets(3, 2):
            assert tmin_first_row(I, J, 3) == tmin(I, J, 3), (I, J)
    assert tmin_first_row((1, 3), (3, 4), 4) == tmin((1, 3), (3, 4), 4)
    assert tmin_first_row((), (), 2) == NCPoly.one(REA, 2)


def test_tmin_first_row_rebuilds_degree_three_reference():
    record = find_fixture("tmin", 4, I=(1, 2, 4), J=(1, 2, 3))
    assert tmin_first_row((1, 2, 4), (1, 2, 3), 4) == expected_value(record)
    with pytest.raises(ContractViolation):
        tmin_first_row((1, 2), (1,), 3)


def test_tmin_out_of_scope():
    with pytest.raises(OutOfScopeError):
        tmin((1, 2, 3), (1, 2, 3), 3)
    with pytest.raises(ContractViolation):
        tmin((1, 2), (1,), 3)


def test_alpha_of_identity_is_first_trace():
    assert alpha_k(TensorOp.identity(2, 1), 2) == s_k(2, 1).value
    assert alpha_k(TensorOp.identity(3, 1), 3, realization="words") == s_k(3, 1).value


def test_alpha_of_braiding_in_dimension_one():
    braid = rho(HeckeElt.generator(1, 2), 2, 1)
    assert alpha_k(braid, 1) == s_k(1, 2).value.scale(Q_INV)


def test_alpha_arguments():
    with pytest.raises(ContractViolation):
        alpha_k(TensorOp.identity(2, 1), 2, realization="bogus")
    with pytest.raises(ContractViolation):
        alpha_k(TensorOp.identity(2, 1), 3)
    with pytest.raises(OutOfScopeError):
        alpha_k(TensorOp.identity(2, 3), 2, realization="twisted")


def test_scalar_ratio():
    p = parse("a[1,1]*a[2,2] - q^2*a[1,2]*a[2,1]", N=2)
    assert scalar_ratio(p.scale(Q), p) == Q
    assert scalar_ratio(p + NCPoly.generator(REA, 1, 1, 2), p) is None


@pytest.mark.parametrize("N", [2, 3])
def test_word_realization_is_multiplicative(N):
    assert check_multiplicative(N, 0, 0, "words") == []
    assert check_multiplicative(N, -2, 1, "words") == []
