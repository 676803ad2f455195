import pytest

from rea_center.algebra.ncpoly import (
    FRT,
    REA,
    NCPoly,
    format_poly,
    intern_word,
    is_ordered,
    latex_poly,
    parse,
)
from rea_center.algebra.scalars import Q_DIFF, qpow
from rea_center.utils.errors import ContractViolation, ParseError


def test_free_product_concatenates_words():
    a12 = NCPoly.generator(REA, 1, 2, 2)
    a11 = NCPoly.generator(REA, 1, 1, 2)
    product = a12 * a11
    assert list(product.terms) == [((1, 2), (1, 1))]
    assert product.degree() == 2
    assert not is_ordered(((1, 2), (1, 1)))


def test_words_are_interned():
    assert intern_word([(1, 2), (2, 1)]) is intern_word(((1, 2), (2, 1)))


def test_cancellation_removes_terms():
    a = NCPoly.generator(REA, 1, 1, 2)
    assert (a - a).is_zero()
    assert (a.scale(qpow(2)) - a.scale(qpow(2))) == 0


def test_incompatible_operands():
    with pytest.raises(ContractViolation):
        NCPoly.generator(REA, 1, 1, 2) + NCPoly.generator(FRT, 1, 1, 2)
    with pytest.raises(ContractViolation):
        NCPoly.generator(REA, 1, 1, 2) * NCPoly.generator(REA, 1, 1, 3)
    with pytest.raises(ContractViolation):
        NCPoly.generator(REA, 3, 1, 2)


def test_parse_and_factored_text():
    text = "q^-6*(a[1,1]*a[2,2] - q^2*a[1,2]*a[2,1])"
    poly = parse(text, N=2)
    assert poly.algebra == REA
    assert poly.coefficient(((1, 1), (2, 2))) == qpow(-6)
    assert poly.coefficient(((1, 2), (2, 1))) == -qpow(-4)
    assert format_poly(poly, factor=True) == text


def test_plain_text_with_non_monomial_coefficient():
    poly = parse("a[1,1]*a[1,2] + (1 - q^-2)*a[1,2]*a[2,2]", N=2)
    assert poly.coefficient(((1, 2), (2, 2))) == Q_DIFF * qpow(-1)
    assert format_poly(poly) == "a[1,1]*a[1,2] + (1 - q^-2)*a[1,2]*a[2,2]"


def test_parse_infers_size_and_algebra():
    poly = parse("x[1,3] - q*x[3,1]/2")
    assert poly.algebra == FRT
    assert poly.N == 3
    assert parse("q - q^-1", algebra=FRT).algebra == FRT


@pytest.mark.parametrize(
    "text, position",
    [
        ("a[1,2] +* a[1,1]", 8),
        ("a[1,2", 5),
        ("", 0),
    ],
)
def test_parse_errors_report_position(text, position):
    with pytest.raises(ParseError) as excinfo:
        parse(text, N=2)
    assert excinfo.value.position == position


def test_parse_rejects_mixed_algebras_and_bad_indices():
    with pytest.raises(ParseError):
        parse("a[1,1]*x[1,1]")
    with pytest.raises(ParseError):
        parse("a[3,1]", N=2)
    with pytest.raises(ParseError):
        parse("a[1,1]/a[1,2]")


def test_json_round_trip_preserves_value():
    poly = parse("q^-2*x[1,1] + (q - q^-1)*x[1,2]*x[2,1]", N=2)
    assert NCPoly.from_json(poly.to_json()) == poly


def test_latex_uses_index_positions():
    poly = parse("q^-2*a[1,2]", N=2)
    assert latex_poly(poly) == "q^{-2} a^{1}_{2}"
