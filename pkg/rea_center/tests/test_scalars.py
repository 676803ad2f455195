from fractions import Fraction

import pytest

from rea_center.algebra.scalars import (
    ONE,
    Q,
    Q_DIFF,
    Q_INV,
    ZERO,
    LaurentPoly,
    RatFunc,
    eval_q1,
    latex_laurent,
    qfact,
    qint,
    qpow,
)
from rea_center.utils.errors import PoleError


def test_laurent_text_order():
    assert str(LaurentPoly({1: 1, -1: -1})) == "q - q^-1"
    assert str(LaurentPoly({0: 1, -2: -1, 4: 3})) == "1 - q^-2 + 3*q^4"
    assert str(LaurentPoly()) == "0"


def test_laurent_arithmetic():
    p = LaurentPoly({1: 1, -1: -1})
    assert p * LaurentPoly.monomial(1) == LaurentPoly({2: 1, 0: -1})
    assert p - p == LaurentPoly()
    assert (p ** 2) == LaurentPoly({2: 1, 0: -2, -2: 1})
    assert p.evaluate(1) == 0
    assert p.evaluate(2) == Fraction(3, 2)


def test_ratfunc_cancels_common_factor():
    value = RatFunc(LaurentPoly({2: 1, 0: -1}), LaurentPoly({1: 1, 0: -1}))
    assert value.is_laurent()
    assert value == LaurentPoly({1: 1, 0: 1})


def test_ratfunc_denominator_normalisation():
    value = RatFunc(1, LaurentPoly({2: 2, 3: 4}))
    assert value.den == LaurentPoly({0: 1, 1: 2})
    assert value.num == LaurentPoly({-2: Fraction(1, 2)})


def test_ratfunc_monomial_denominator_moves_to_numerator():
    value = RatFunc(LaurentPoly({1: 3}), LaurentPoly({2: 3}))
    assert value == Q_INV
    assert value.is_monomial()


def test_ratfunc_field_operations():
    assert Q * Q_INV == ONE
    assert (ONE / Q_DIFF) * Q_DIFF == ONE
    assert Q_DIFF - Q + Q_INV == ZERO
    assert qpow(3) ** -1 == qpow(-3)
    assert RatFunc(1, Q_DIFF.num) == (ONE / Q_DIFF)


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        RatFunc(1, 0)
    with pytest.raises(ZeroDivisionError):
        ZERO.inv()


def test_quantum_integers():
    assert qint(0) == LaurentPoly()
    assert qint(3) == LaurentPoly({0: 1, -2: 1, -4: 1})
    assert qfact(0) == LaurentPoly.constant(1)
    assert qfact(3) == qint(3) * qint(2)
    assert eval_q1(qfact(4)) == 24


def test_classical_limit():
    assert eval_q1(Q_DIFF) == 0
    assert eval_q1(RatFunc(LaurentPoly({0: 1, 1: 1}), 2)) == 1
    with pytest.raises(PoleError):
        eval_q1(ONE / Q_DIFF)


def test_json_and_latex():
    value = ONE / Q_DIFF
    assert RatFunc.from_json(value.to_json()) == value
    assert latex_laurent(LaurentPoly({1: 1, -1: -1})) == "q - q^{-1}"
    assert "\\frac" in value.to_latex()
