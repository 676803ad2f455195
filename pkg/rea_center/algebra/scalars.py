"""
Arithmétique exacte des coefficients.

Les scalaires du moteur sont des fractions rationnelles en une indéterminée q
sur les rationnels. Le numérateur et le dénominateur sont des polynômes de
Laurent ; la forme canonique rend l'égalité syntaxique :

- dénominateur décalé pour que son plus petit exposant soit 0,
- coefficient de plus petit degré du dénominateur égal à 1,
- numérateur et dénominateur premiers entre eux (pgcd calculé par sympy).
"""

import logging
from fractions import Fraction

import sympy

from rea_center.utils.errors import PoleError

logger = logging.getLogger(__name__)

_Q_SYMBOL = sympy.Symbol("q")


def _as_fraction(value):
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"Coefficient non rationnel: {value!r}")


class LaurentPoly:
    """
    Polynôme de Laurent en q à coefficients rationnels.

    Stocké comme un tuple trié de paires (exposant, coefficient non nul).
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, coefficients=None):
        items = coefficients.items() if isinstance(coefficients, dict) else (coefficients or ())
        cleaned = {}
        for exponent, coefficient in items:
            coefficient = _as_fraction(coefficient)
            if coefficient:
                cleaned[int(exponent)] = cleaned.get(int(exponent), Fraction(0)) + coefficient
        self._terms = tuple(sorted((e, c) for e, c in cleaned.items() if c))
        self._hash = None

    @classmethod
    def _from_sorted(cls, terms):
        poly = cls.__new__(cls)
        poly._terms = terms
        poly._hash = None
        return poly

    @classmethod
    def monomial(cls, exponent, coefficient=1):
        coefficient = _as_fraction(coefficient)
        if not coefficient:
            return cls._from_sorted(())
        return cls._from_sorted(((exponent, coefficient),))

    @classmethod
    def constant(cls, value):
        return cls.monomial(0, value)

    @property
    def terms(self):
        return self._terms

    def as_dict(self):
        return dict(self._terms)

    def is_zero(self):
        return not self._terms

    def is_one(self):
        return self._terms == ((0, Fraction(1)),)

    def is_monomial(self):
        return len(self._terms) == 1

    def min_exp(self):
        return self._terms[0][0]

    def max_exp(self):
        return self._terms[-1][0]

    def lowest_coefficient(self):
        return self._terms[0][1]

    def shift(self, exponent):
        """Multiplie par q^exponent."""
        if not exponent:
            return self
        return LaurentPoly._from_sorted(tuple((e + exponent, c) for e, c in self._terms))

    def scale(self, factor):
        factor = _as_fraction(factor)
        if not factor:
            return LaurentPoly._from_sorted(())
        return LaurentPoly._from_sorted(tuple((e, c * factor) for e, c in self._terms))

    def evaluate(self, value):
        value = _as_fraction(value)
        if value == 1:
            return sum((c for _, c in self._terms), Fraction(0))
        return sum((c * value ** e for e, c in self._terms), Fraction(0))

    def __add__(self, other):
        other = _coerce_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        merged = dict(self._terms)
        for e, c in other._terms:
            merged[e] = merged.get(e, 0) + c
        return LaurentPoly._from_sorted(tuple(sorted((e, c) for e, c in merged.items() if c)))

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._from_sorted(tuple((e, -c) for e, c in self._terms))

    def __sub__(self, other):
        other = _coerce_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        if not self._terms or not other._terms:
            return LaurentPoly._from_sorted(())
        if len(other._terms) == 1:
            (e2, c2), = other._terms
            return LaurentPoly._from_sorted(tuple((e + e2, c * c2) for e, c in self._terms))
        if len(self._terms) == 1:
            (e1, c1), = self._terms
            return LaurentPoly._from_sorted(tuple((e + e1, c * c1) for e, c in other._terms))
        product = {}
        for e1, c1 in self._terms:
            for e2, c2 in other._terms:
                product[e1 + e2] = product.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly._from_sorted(tuple(sorted((e, c) for e, c in product.items() if c)))

    __rmul__ = __mul__

    def __pow__(self, exponent):
        if exponent < 0:
            raise ValueError("Puissance négative d'un polynôme de Laurent")
        result = LaurentPoly.constant(1)
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other):
        other = _coerce_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._terms)
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    def __repr__(self):
        return f"LaurentPoly({format_laurent(self)!r})"

    def __str__(self):
        return format_laurent(self)

    def to_sympy(self, symbol=_Q_SYMBOL):
        return sum(
            (sympy.Rational(c.numerator, c.denominator) * symbol ** e for e, c in self._terms),
            sympy.Integer(0),
        )

    def to_json(self):
        return {str(e): str(c) for e, c in self._terms}

    @classmethod
    def from_json(cls, data):
        return cls({int(e): Fraction(c) for e, c in data.items()})


def _coerce_laurent(value):
    if isinstance(value, LaurentPoly):
        return value
    if isinstance(value, (int, Fraction)):
        return LaurentPoly.constant(value)
    return NotImplemented


def _display_order(term):
    exponent = term[0]
    return (abs(exponent), -exponent)


def _monomial_body(exponent, magnitude):
    """Texte d'un monôme de coefficient positif, sans signe."""
    if exponent == 0:
        return str(magnitude)
    power = "q" if exponent == 1 else f"q^{exponent}"
    if magnitude == 1:
        return power
    return f"{magnitude}*{power}"


def format_laurent(poly):
    """
    Forme textuelle, par exemple `1 - q^-2 + 3*q^4`.

    Les termes sont triés par |exposant| puis exposant positif d'abord.
    """
    if not poly.terms:
        return "0"
    parts = []
    for exponent, coefficient in sorted(poly.terms, key=_display_order):
        body = _monomial_body(exponent, abs(coefficient))
        if not parts:
            parts.append(body if coefficient > 0 else f"-{body}")
        else:
            parts.append(f" + {body}" if coefficient > 0 else f" - {body}")
    return "".join(parts)


def latex_laurent(poly):
    if not poly.terms:
        return "0"
    parts = []
    for exponent, coefficient in sorted(poly.terms, key=_display_order):
        magnitude = abs(coefficient)
        if exponent == 0:
            body = _latex_rational(magnitude)
        else:
            power = "q" if exponent == 1 else f"q^{{{exponent}}}"
            body = power if magnitude == 1 else f"{_latex_rational(magnitude)}{power}"
        sign = "-" if coefficient < 0 else "+"
        if not parts:
            parts.append(body if sign == "+" else f"-{body}")
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts)


def _latex_rational(value):
    if value.denominator == 1:
        return str(value.numerator)
    return f"\\frac{{{value.numerator}}}{{{value.denominator}}}"


def _to_sympy_poly(poly):
    """Polynôme ordinaire sympy après décalage à l'exposant minimal 0."""
    base = poly.min_exp()
    coefficients = {
        (e - base,): sympy.Rational(c.numerator, c.denominator) for e, c in poly.terms
    }
    return sympy.Poly.from_dict(coefficients, _Q_SYMBOL, domain="QQ"), base


def _from_sympy_poly(spoly, shift=0):
    terms = {}
    for (exponent,), coefficient in spoly.as_dict().items():
        coefficient = sympy.Rational(coefficient)
        terms[exponent + shift] = Fraction(int(coefficient.p), int(coefficient.q))
    return LaurentPoly(terms)


class RatFunc:
    """
    Fraction rationnelle en q sur Q, toujours en forme canonique.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None):
        coerced = _coerce_laurent(num)
        if coerced is NotImplemented:
            raise TypeError(f"Numérateur invalide: {num!r}")
        num = coerced
        if den is None:
            den = _ONE_LAURENT
        else:
            coerced = _coerce_laurent(den)
            if coerced is NotImplemented:
                raise TypeError(f"Dénominateur invalide: {den!r}")
            den = coerced
        if den.is_zero():
            raise ZeroDivisionError("Dénominateur nul dans une fraction rationnelle")
        self.num, self.den = _canonicalize(num, den)
        self._hash = None

    @classmethod
    def _raw(cls, num, den):
        value = cls.__new__(cls)
        value.num = num
        value.den = den
        value._hash = None
        return value

    @classmethod
    def from_laurent(cls, poly):
        return cls._raw(poly, _ONE_LAURENT)

    @classmethod
    def monomial(cls, exponent, coefficient=1):
        return cls._raw(LaurentPoly.monomial(exponent, coefficient), _ONE_LAURENT)

    def is_zero(self):
        return self.num.is_zero()

    def is_laurent(self):
        return self.den.is_one()

    def is_monomial(self):
        return self.den.is_one() and self.num.is_monomial()

    def as_laurent(self):
        if not self.is_laurent():
            raise ValueError(f"{self} n'est pas un polynôme de Laurent")
        return self.num

    def __add__(self, other):
        other = _coerce_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        if other.num.is_zero():
            return self
        if self.num.is_zero():
            return other
        if self.den == other.den:
            if self.den.is_one():
                return RatFunc._raw(self.num + other.num, _ONE_LAURENT)
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._raw(-self.num, self.den)

    def __sub__(self, other):
        other = _coerce_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        if self.num.is_zero() or other.num.is_zero():
            return ZERO
        if self.den.is_one() and other.den.is_one():
            return RatFunc._raw(self.num * other.num, _ONE_LAURENT)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inv(self):
        if self.num.is_zero():
            raise ZeroDivisionError("Inversion de zéro")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        other = _coerce_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        other = _coerce_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inv()

    def __pow__(self, exponent):
        if exponent < 0:
            return self.inv() ** (-exponent)
        if self.is_monomial():
            (e, c), = self.num.terms
            return RatFunc.monomial(e * exponent, c ** exponent)
        result = ONE
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other):
        other = _coerce_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __bool__(self):
        return not self.num.is_zero()

    def __repr__(self):
        return f"RatFunc({str(self)!r})"

    def __str__(self):
        if self.den.is_one():
            return format_laurent(self.num)
        return f"({format_laurent(self.num)})/({format_laurent(self.den)})"

    def to_latex(self):
        if self.den.is_one():
            return latex_laurent(self.num)
        return f"\\frac{{{latex_laurent(self.num)}}}{{{latex_laurent(self.den)}}}"

    def to_json(self):
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data):
        return cls(LaurentPoly.from_json(data["num"]), LaurentPoly.from_json(data["den"]))

    def to_sympy(self, symbol=_Q_SYMBOL):
        return self.num.to_sympy(symbol) / self.den.to_sympy(symbol)


def _coerce_ratfunc(value):
    if isinstance(value, RatFunc):
        return value
    if isinstance(value, LaurentPoly):
        return RatFunc._raw(value, _ONE_LAURENT)
    if isinstance(value, (int, Fraction)):
        return RatFunc._raw(LaurentPoly.constant(value), _ONE_LAURENT)
    return NotImplemented


def _canonicalize(num, den):
    if num.is_zero():
        return num, _ONE_LAURENT
    if den.is_monomial():
        (exponent, coefficient), = den.terms
        return num.shift(-exponent).scale(1 / coefficient), _ONE_LAURENT

    num_poly, num_base = _to_sympy_poly(num)
    den_poly, den_base = _to_sympy_poly(den)
    common = num_poly.gcd(den_poly)
    if common.degree() > 0:
        num_poly = num_poly.exquo(common)
        den_poly = den_poly.exquo(common)

    reduced_den = _from_sympy_poly(den_poly)
    reduced_num = _from_sympy_poly(num_poly, num_base - den_base)
    # un facteur q^e résiduel du dénominateur passe au numérateur
    shift = reduced_den.min_exp()
    lead = reduced_den.lowest_coefficient()
    reduced_den = reduced_den.shift(-shift).scale(1 / lead)
    reduced_num = reduced_num.shift(-shift).scale(1 / lead)
    if reduced_den.is_one():
        return reduced_num, _ONE_LAURENT
    return reduced_num, reduced_den


_ONE_LAURENT = LaurentPoly.constant(1)

ZERO = RatFunc._raw(LaurentPoly(), _ONE_LAURENT)
ONE = RatFunc._raw(_ONE_LAURENT, _ONE_LAURENT)
Q = RatFunc.monomial(1)
Q_INV = RatFunc.monomial(-1)
# q - q^{-1}
Q_DIFF = RatFunc._raw(LaurentPoly({1: 1, -1: -1}), _ONE_LAURENT)


def qpow(exponent):
    """q^exponent."""
    return RatFunc.monomial(exponent)


def as_ratfunc(value):
    coerced = _coerce_ratfunc(value)
    if coerced is NotImplemented:
        raise TypeError(f"Scalaire invalide: {value!r}")
    return coerced


def qint(k):
    """
    Entier quantique [k]_q = 1 + q^-2 + ... + q^-2(k-1) ; [0]_q = 0.
    """
    if k < 0:
        raise ValueError(f"Entier quantique d'argument négatif: {k}")
    return LaurentPoly({-2 * t: 1 for t in range(k)})


def qfact(k):
    """
    Factorielle quantique [k]_q! = [k]_q [k-1]_q ... [1]_q ; [0]_q! = 1.
    """
    if k < 0:
        raise ValueError(f"Factorielle quantique d'argument négatif: {k}")
    result = _ONE_LAURENT
    for t in range(1, k + 1):
        result = result * qint(t)
    return result


def eval_q1(value):
    """
    Limite classique q = 1.

    Raises:
        PoleError: si le dénominateur s'annule en 1
    """
    value = as_ratfunc(value)
    denominator = value.den.evaluate(1)
    if denominator == 0:
        raise PoleError(f"Pôle en q = 1 pour {value}")
    return value.num.evaluate(1) / denominator
