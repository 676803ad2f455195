import pytest

from rea_center.algebra.central import (
    alpha_convention,
    c_k,
    calibrate_alpha,
    counit,
    counit_of_ck,
    detq_submatrix,
    fit_newton,
    generator_matrix,
    mat_mul,
    mat_pow,
    newton_closed_form,
    s_k,
    s_value,
    submatrix_suite,
    trq,
    verify_central,
    verify_classical_limit,
    verify_clique_sum,
    verify_free_generation,
    verify_newton,
    verify_psi_dlinv,
    verify_qch,
    verify_unipotent,
)
from rea_center.algebra.ncpoly import REA, NCPoly, parse
from rea_center.algebra.qcomb import subsets
from rea_center.algebra.scalars import ONE, qpow
from rea_center.storage.fixture_store import expected_value, find_fixture
from rea_center.utils.errors import ContractViolation, ConventionError


@pytest.mark.parametrize("N, k", [(2, 1), (2, 2), (3, 1), (3, 2), (3, 3)])
def test_ck_matches_reference(N, k):
    assert c_k(N, k).value == expected_value(find_fixture("ck", N, k=k))


def test_ck_bounds():
    with pytest.raises(ContractViolation):
        c_k(2, 3)
    with pytest.raises(ContractViolation):
        c_k(2, 0)


def test_first_power_trace_is_c1():
    assert s_k(2, 1).value == c_k(2, 1).value
    assert s_k(3, 1).kind == "s"
    assert s_value(2, 0) == NCPoly.one(REA, 2)
    assert s_value(2, 0, "trace") == NCPoly.scalar(qpow(-2) + qpow(-4), REA, 2)


def test_matrix_powers():
    A = generator_matrix(2)
    assert mat_pow(A, 0)[1, 1] == NCPoly.one(REA, 2)
    assert mat_pow(A, 2) == mat_mul(A, A)
    assert trq(A) == parse("q^-2*a[1,1] + q^-4*a[2,2]")


@pytest.mark.parametrize("N, k", [(1, 1), (2, 1), (2, 2), (3, 1), (3, 2), (3, 3)])
def test_central_elements_commute(N, k):
    report = verify_central(N, k)
    assert report["pass"], report["residuals"]


def test_perturbed_element_is_not_central():
    report = verify_central(2, 1, perturb=True)
    assert not report["pass"]
    assert all(r["element"] == "c_1" for r in report["residuals"])


@pytest.mark.parametrize("N", [1, 2, 3])
def test_cayley_hamilton(N):
    report = verify_qch(N)
    assert report["pass"], report["residuals"]


@pytest.mark.parametrize("N, k", [(1, 1), (2, 1), (2, 2), (3, 2), (3, 3)])
def test_newton_identity(N, k):
    report = verify_newton(N, k)
    assert report["pass"], report["residuals"]


def test_newton_closed_form():
    assert newton_closed_form(2) == {1: -qpow(-2), 2: ONE}


@pytest.mark.parametrize("N, k", [(1, 1), (2, 1), (2, 2), (3, 1), (3, 2), (3, 3), (4, 1), (4, 2), (4, 3)])
def test_fit_newton_recovers_closed_form(N, k):
    report = fit_newton(N, k)
    assert report["pass"], report["residuals"]
    assert report["details"]["homogeneous_shape"]["free"] == []
    assert report["details"]["homogeneous_shape"]["solution"] == report["details"]["closed_form"]


@pytest.mark.parametrize("k", [1, 2, 3])
def test_fit_newton_is_stable_in_N(k):
    solutions = [fit_newton(N, k)["details"]["homogeneous_shape"]["solution"] for N in range(k, 5)]
    assert all(solution == solutions[0] for solution in solutions)


def test_fit_newton_perturbed():
    report = fit_newton(2, 2, perturb=True)
    assert not report["pass"]


@pytest.mark.parametrize("N", [1, 2, 3, 4])
def test_unipotent(N):
    report = verify_unipotent(N)
    assert report["pass"], report["residuals"]


def test_counit():
    assert counit(parse("a[1,1]*a[2,2] - q^2*a[1,2]*a[2,1]")) == ONE
    assert counit_of_ck(2, 2) == qpow(-6)
    with pytest.raises(ContractViolation):
        counit(parse("x[1,1]"))


@pytest.mark.parametrize("N, k", [(2, 2), (3, 1), (3, 2)])
def test_classical_limit(N, k):
    report = verify_classical_limit(N, k)
    assert report["pass"], report["residuals"]


def test_free_generation():
    report = verify_free_generation(2)
    assert report["pass"], report["residuals"]
    assert report["details"]["rank"] == 6


def test_detq_submatrix():
    assert detq_submatrix(2, 1) == c_k(2, 2).value
    assert detq_submatrix(3, 3) == parse("q^-2*a[3,3]", N=3)


@pytest.mark.parametrize("N, k", [(2, 1), (2, 2), (3, 2), (3, 3), (4, 1), (4, 2), (4, 3), (4, 4)])
def test_submatrix_suite(N, k):
    report = submatrix_suite(N, k)
    assert report["pass"], report["residuals"]


@pytest.mark.parametrize("N, k, I, J", [(2, 1, (), ()), (2, 2, (), ()), (3, 2, (1,), (2,))])
def test_clique_sum(N, k, I, J):
    report = verify_clique_sum(N, k, I, J)
    assert report["pass"], report["residuals"]


def test_clique_sum_all_components():
    failures = []
    cases = 0
    for N in (2, 3, 4):
        for k in range(1, N + 1):
            for size in range(max(0, k - 2), k + 1):
                for I in subsets(N, size):
                    for J in subsets(N, size):
                        cases += 1
                        if not verify_clique_sum(N, k, I, J)["pass"]:
                            failures.append((N, k, I, J))
    assert cases == 250
    assert failures == []


@pytest.mark.parametrize("N, k", [(2, 1), (2, 2), (3, 2), (4, 1), (4, 2)])
def test_psi_of_coinvariant(N, k):
    report = verify_psi_dlinv(N, k)
    assert report["pass"], report["residuals"]


def test_psi_of_coinvariant_degree_bound():
    with pytest.raises(ContractViolation):
        verify_psi_dlinv(3, 3)


@pytest.mark.slow
@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_central_elements_commute_n4(k):
    assert verify_central(4, k)["pass"]


def test_no_strict_alpha_convention():
    report = calibrate_alpha(2)
    assert not report["pass"]
    assert report["details"]["strict"] == []
    assert report["details"]["candidates"] == 70
    assert set(report["details"]["best"]["anchors"]) == {"s1", "c1", "s2", "c2"}
    with pytest.raises(ConventionError):
        alpha_convention(2)
