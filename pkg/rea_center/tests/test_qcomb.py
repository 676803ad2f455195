import pytest

from rea_center.algebra.qcomb import (
    LEMMA_CHECKS,
    Bijection,
    X_closed,
    Y,
    add,
    all_bijections,
    auxiliary_sr,
    beta,
    beta_domain,
    beta_inv,
    bijection,
    clique,
    complement,
    count_between,
    exceedance,
    exceedance_perm,
    gamma,
    ind,
    index_set,
    length_perm,
    length_U,
    order_preserving,
    remove_first_row,
    stats,
    subsets,
    verify_lemmas,
    wt,
)
from rea_center.utils.errors import ContractViolation


def test_index_sets():
    assert index_set([3, 1]) == (1, 3)
    assert complement((1, 3), 4) == (2, 4)
    assert list(subsets(3, 2)) == [(1, 2), (1, 3), (2, 3)]
    for bad in ([1, 1], [0]):
        with pytest.raises(ContractViolation):
            index_set(bad)
    with pytest.raises(ContractViolation):
        index_set([3], N=2)


def test_permutation_statistics():
    assert wt((1, 3)) == 4
    assert length_perm((2, 1, 3)) == 1
    assert length_perm((3, 2, 1)) == 3
    assert exceedance_perm((2, 3, 1)) == 2
    assert count_between({2, 5}, 6, 1) == 2
    assert ind((1, 3), 2) == 2


def test_relative_length_extends_by_identity():
    tau = Bijection((1, 3), (3, 1))
    assert length_U(tau, ()) == 1
    assert length_U(tau, (2,)) == 3
    assert exceedance(tau) == 1
    with pytest.raises(ContractViolation):
        length_U(tau, (1,))


def test_stats_of_a_bijection():
    tau = bijection((1, 3), (3, 1))
    assert stats((1, 3), (1, 3), (2,), tau) == {
        "wt_I": 4,
        "wt_J": 4,
        "length_U": 3,
        "exceedance": 1,
        "m": 2,
        "gamma": 1,
    }


def test_removing_the_first_row():
    reduced, m = remove_first_row(Bijection((1, 2, 4), (3, 1, 2)))
    assert reduced == Bijection((2, 4), (1, 2))
    assert m == 3
    assert gamma((), (1, 2, 4), (1, 2, 3), 3) == 0


def test_all_bijections_counts():
    assert len(list(all_bijections((1, 2, 3), (2, 3, 4)))) == 6


def test_clique_small_cases():
    assert clique(2, (1,), (2,), 3) == [((2,), (1,))]
    assert clique(2, (), (), 3) == [((1, 2), (1, 2)), ((1, 3), (1, 3)), ((2, 3), (2, 3))]
    assert clique(1, (1,), (1,), 3) == [((), ())]
    assert clique(1, (1,), (2,), 3) == []
    with pytest.raises(ContractViolation):
        clique(1, (1, 2), (1, 2), 3)


def test_beta_round_trip():
    k, I, J, N = 3, (1,), (2,), 4
    for element in beta_domain(k, I, J, N):
        assert beta_inv(k, I, J, beta(k, I, J, element, N), N) == element


def test_x_closed_form_excludes_equal_pair():
    with pytest.raises(ContractViolation):
        X_closed((), (), (2,), 2, 2, ())


@pytest.mark.parametrize("N", [1, 2, 3, 4, 5])
def test_lemmas_exhaustive(N):
    report = verify_lemmas(N)
    assert report["pass"], report["residuals"][:3]
    assert set(report["details"]) == set(LEMMA_CHECKS)


def test_minimal_r_with_column_above_t():
    # I = {1}, J = {5}, s = 2, t = 4 : t croise le fil 5 -> 2
    I, J, I_second, J_second, s, t, r = (1,), (5,), (4, 5), (1, 2), 2, 4, 3
    U = (3,)
    assert auxiliary_sr(U, s, r, t) == (4,)
    assert Y(I, J, I_second, J_second, s, t, r, U) == 3
    tau = order_preserving(add(I_second, s), add(J_second, t))
    assert length_U(tau, U) + ind(J_second, t) - 1 == 3
    assert verify_lemmas(5, only=["minimal_r"])["details"]["minimal_r"]["failures"] == 0


def test_lemmas_subset():
    report = verify_lemmas(3, only=["additivity"])
    assert list(report["details"]) == ["additivity"]
