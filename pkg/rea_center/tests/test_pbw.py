import pytest

from rea_center.algebra.ncpoly import FRT, REA, NCPoly, is_ordered, parse
from rea_center.algebra.pbw import (
    PBWEngine,
    frt_relation,
    get_engine,
    normal_form,
    nf_product,
    ordered_basis_size,
    rea_relation,
    straighten_pair,
    verify_engine,
)
from rea_center.algebra.scalars import ONE, Q_DIFF, eval_q1, qpow
from rea_center.utils.errors import ContractViolation, NonTerminationError


def test_rea_straightening_example():
    result = normal_form(parse("a[1,2]*a[1,1]", N=2))
    assert result == parse("a[1,1]*a[1,2] + (1 - q^-2)*a[1,2]*a[2,2]", N=2)


def test_frt_relations():
    assert frt_relation((1, 2), (1, 1), 2) == {((1, 1), (1, 2)): qpow(-1)}
    assert frt_relation((2, 1), (1, 1), 2) == {((1, 1), (2, 1)): qpow(-1)}
    assert frt_relation((2, 1), (1, 2), 2) == {((1, 2), (2, 1)): ONE}
    assert frt_relation((2, 2), (1, 1), 2) == {((1, 1), (2, 2)): ONE, ((1, 2), (2, 1)): -Q_DIFF}


def test_relations_reject_ordered_pairs():
    with pytest.raises(ContractViolation):
        rea_relation((1, 1), (1, 2), 2)
    with pytest.raises(ContractViolation):
        frt_relation((1, 1), (2, 2), 2)
    with pytest.raises(ContractViolation):
        straighten_pair(REA, (1, 1), (2, 2), 2)


def test_engine_generates_one_rule_per_inversion():
    assert len(get_engine(REA, 2).rules) == 6
    assert len(get_engine(FRT, 3).rules) == 36
    assert straighten_pair(FRT, (2, 1), (1, 2), 2) == NCPoly(FRT, 2, {((1, 2), (2, 1)): ONE})


def test_relations_commute_at_q_equal_one():
    engine = get_engine(REA, 3)
    for (left, right), rhs in engine.rules.items():
        values = {word: eval_q1(c) for word, c in rhs if eval_q1(c) != 0}
        assert values == {(right, left): 1}


def test_normal_form_is_idempotent_and_homogeneous():
    p = parse("a[2,2]*a[2,1]*a[1,2] - q*a[2,1]*a[1,1]", N=2)
    result = normal_form(p)
    assert normal_form(result) == result
    assert all(is_ordered(word) for word in result.terms)
    assert {len(word) for word in result.terms} == {2, 3}


def test_nf_product_and_scalars():
    a = NCPoly.generator(REA, 2, 1, 2)
    b = NCPoly.generator(REA, 1, 2, 2)
    assert nf_product(a, b) == normal_form(a * b)
    assert normal_form(NCPoly.scalar(qpow(3), REA, 2)) == NCPoly.scalar(qpow(3), REA, 2)


def test_engine_step_cap():
    engine = PBWEngine(REA, 2, step_cap=1)
    with pytest.raises(NonTerminationError):
        engine.reduce_word(((2, 2), (2, 1), (1, 2), (1, 1)))


def test_engine_rejects_foreign_polynomial():
    with pytest.raises(ContractViolation):
        get_engine(REA, 2).normal_form(NCPoly.generator(FRT, 1, 1, 2))


def test_ordered_basis_size():
    assert ordered_basis_size(2, 2) == 10
    assert ordered_basis_size(3, 1) == 9


@pytest.mark.parametrize("algebra", [REA, FRT])
@pytest.mark.parametrize("N", [2, 3])
def test_engine_soundness(algebra, N):
    report = verify_engine(algebra, N, samples=20, seed=7, max_degree=2)
    assert report["pass"], report["residuals"][:3]


@pytest.mark.slow
def test_engine_soundness_full_sample():
    report = verify_engine(REA, 3, samples=1000)
    assert report["pass"], report["residuals"][:3]
