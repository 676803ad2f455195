"""
Polynômes non commutatifs en les générateurs a^i_j (REA) ou x^i_j (FRT).

Un mot est un tuple de paires (ligne, colonne) ; l'étiquette d'algèbre et la
taille N sont portées par le polynôme. Les mots sont internés pour que les
clés de mémoïsation du moteur PBW soient bon marché.
"""

import logging
import re
from collections import namedtuple
from fractions import Fraction

from rea_center.algebra.scalars import ONE, ZERO, RatFunc, as_ratfunc, qpow
from rea_center.utils.errors import ContractViolation, ParseError

logger = logging.getLogger(__name__)

REA = "REA"
FRT = "FRT"
ALGEBRAS = (REA, FRT)
LETTERS = {REA: "a", FRT: "x"}
_ALGEBRA_OF_LETTER = {letter: algebra for algebra, letter in LETTERS.items()}

GenId = namedtuple("GenId", ["algebra", "row", "col"])

_WORD_TABLE = {}


def intern_word(word):
    """Renvoie l'instance canonique du mot."""
    word = tuple(tuple(letter) for letter in word)
    return _WORD_TABLE.setdefault(word, word)


EMPTY_WORD = intern_word(())


def generator_order(g, h):
    """
    Compare deux générateurs dans l'ordre lexicographique (ligne, colonne).

    Returns:
        int: -1, 0 ou 1
    """
    if g.algebra != h.algebra:
        raise ContractViolation(f"Générateurs d'algèbres différentes: {g.algebra} et {h.algebra}")
    left, right = (g.row, g.col), (h.row, h.col)
    return (left > right) - (left < right)


def is_ordered(word):
    return all(word[p] <= word[p + 1] for p in range(len(word) - 1))


def word_sort_key(word):
    return (len(word), word)


class NCPoly:
    """
    Élément de l'algèbre libre sur les N² générateurs, à coefficients RatFunc.
    """

    __slots__ = ("algebra", "N", "terms")

    def __init__(self, algebra, N, terms=None, check=True):
        if algebra not in ALGEBRAS:
            raise ContractViolation(f"Algèbre inconnue: {algebra}")
        self.algebra = algebra
        self.N = N
        cleaned = {}
        for word, coefficient in (terms or {}).items():
            coefficient = as_ratfunc(coefficient)
            if coefficient.is_zero():
                continue
            word = intern_word(word)
            if check:
                for row, col in word:
                    if not (1 <= row <= N and 1 <= col <= N):
                        raise ContractViolation(f"Générateur ({row},{col}) hors de [1,{N}]")
            cleaned[word] = coefficient
        self.terms = cleaned

    @classmethod
    def _trusted(cls, algebra, N, terms):
        poly = cls.__new__(cls)
        poly.algebra = algebra
        poly.N = N
        poly.terms = terms
        return poly

    @classmethod
    def zero(cls, algebra, N):
        return cls._trusted(algebra, N, {})

    @classmethod
    def scalar(cls, value, algebra, N):
        return cls(algebra, N, {EMPTY_WORD: value})

    @classmethod
    def one(cls, algebra, N):
        return cls.scalar(ONE, algebra, N)

    @classmethod
    def generator(cls, algebra, row, col, N):
        return cls(algebra, N, {((row, col),): ONE})

    @classmethod
    def monomial(cls, algebra, N, word, coefficient=ONE):
        return cls(algebra, N, {tuple(word): coefficient})

    def _check_compatible(self, other):
        if self.algebra != other.algebra:
            raise ContractViolation(f"Algèbres incompatibles: {self.algebra} et {other.algebra}")
        if self.N != other.N:
            raise ContractViolation(f"Tailles incompatibles: N={self.N} et N={other.N}")

    def is_zero(self):
        return not self.terms

    def degree(self):
        return max((len(word) for word in self.terms), default=0)

    def is_homogeneous(self):
        return len({len(word) for word in self.terms}) <= 1

    def coefficient(self, word):
        return self.terms.get(intern_word(word), ZERO)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda item: word_sort_key(item[0]))

    def __add__(self, other):
        if not isinstance(other, NCPoly):
            other = NCPoly.scalar(other, self.algebra, self.N)
        self._check_compatible(other)
        result = dict(self.terms)
        for word, coefficient in other.terms.items():
            total = result.get(word, ZERO) + coefficient
            if total.is_zero():
                result.pop(word, None)
            else:
                result[word] = total
        return NCPoly._trusted(self.algebra, self.N, result)

    __radd__ = __add__

    def __neg__(self):
        return NCPoly._trusted(self.algebra, self.N, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, NCPoly):
            other = NCPoly.scalar(other, self.algebra, self.N)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, factor):
        factor = as_ratfunc(factor)
        if factor.is_zero():
            return NCPoly.zero(self.algebra, self.N)
        return NCPoly._trusted(self.algebra, self.N, {w: c * factor for w, c in self.terms.items()})

    def __mul__(self, other):
        """Produit libre : concaténation des mots, sans réduction."""
        if not isinstance(other, NCPoly):
            return self.scale(other)
        self._check_compatible(other)
        result = {}
        for left_word, left_coefficient in self.terms.items():
            for right_word, right_coefficient in other.terms.items():
                word = intern_word(left_word + right_word)
                total = result.get(word, ZERO) + left_coefficient * right_coefficient
                if total.is_zero():
                    result.pop(word, None)
                else:
                    result[word] = total
        return NCPoly._trusted(self.algebra, self.N, result)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if isinstance(other, NCPoly):
            return self.algebra == other.algebra and self.N == other.N and self.terms == other.terms
        if isinstance(other, (int, Fraction, RatFunc)):
            return self == NCPoly.scalar(other, self.algebra, self.N)
        return NotImplemented

    def __hash__(self):
        return hash((self.algebra, self.N, frozenset(self.terms.items())))

    def map_coefficients(self, function):
        return NCPoly(self.algebra, self.N, {w: function(c) for w, c in self.terms.items()}, check=False)

    def __repr__(self):
        return f"NCPoly({self.algebra}, N={self.N}, {format_poly(self)!r})"

    def __str__(self):
        return format_poly(self)

    def to_json(self):
        return {
            "algebra": self.algebra,
            "N": self.N,
            "terms": [
                {"coeff": coefficient.to_json(), "word": [list(letter) for letter in word]}
                for word, coefficient in self.sorted_terms()
            ],
        }

    @classmethod
    def from_json(cls, data):
        terms = {}
        for term in data["terms"]:
            word = tuple(tuple(letter) for letter in term["word"])
            terms[word] = terms.get(word, ZERO) + RatFunc.from_json(term["coeff"])
        return cls(data["algebra"], data["N"], terms)


def format_word(word, algebra):
    letter = LETTERS[algebra]
    return "*".join(f"{letter}[{row},{col}]" for row, col in word)


def format_term(word_text, coefficient):
    """Texte d'un terme ; le signe éventuel est en tête."""
    if coefficient == ONE:
        return word_text or "1"
    if coefficient == -ONE:
        return f"-{word_text}" if word_text else "-1"
    if coefficient.is_monomial():
        coefficient_text = str(coefficient)
    else:
        coefficient_text = f"({coefficient})"
    return f"{coefficient_text}*{word_text}" if word_text else coefficient_text


def join_terms(texts):
    parts = []
    for text in texts:
        if not parts:
            parts.append(text)
        elif text.startswith("-"):
            parts.append(f" - {text[1:]}")
        else:
            parts.append(f" + {text}")
    return "".join(parts) or "0"


def _common_power(poly):
    """Exposant de q factorisable, ou None."""
    items = poly.sorted_terms()
    if len(items) < 2 or not all(c.is_monomial() for _, c in items):
        return None
    exponents = [c.num.min_exp() for _, c in items]
    lowest = min(exponents)
    if lowest == 0 or exponents[0] != lowest:
        return None
    return lowest


def format_poly(poly, factor=False):
    """
    Forme textuelle, termes triés par (degré, mot).

    Args:
        poly (NCPoly): Polynôme à afficher
        factor (bool): Factoriser la puissance de q du premier terme quand
            elle est minimale et que tous les coefficients sont des monômes

    Returns:
        str: Texte relisible par `parse`
    """
    items = poly.sorted_terms()
    power = _common_power(poly) if factor else None
    if power is None:
        return join_terms(format_term(format_word(w, poly.algebra), c) for w, c in items)
    inner = join_terms(format_term(format_word(w, poly.algebra), c * qpow(-power)) for w, c in items)
    return f"q^{power}*({inner})"


def latex_poly(poly):
    letter = LETTERS[poly.algebra]
    parts = []
    for word, coefficient in poly.sorted_terms():
        word_tex = " ".join(f"{letter}^{{{row}}}_{{{col}}}" for row, col in word)
        if coefficient == ONE:
            text = word_tex or "1"
        elif coefficient == -ONE:
            text = f"-{word_tex}" if word_tex else "-1"
        elif coefficient.is_monomial():
            text = f"{coefficient.to_latex()} {word_tex}".strip()
        else:
            text = f"\\left({coefficient.to_latex()}\\right) {word_tex}".strip()
        parts.append(text)
    return join_terms(parts)


_TOKEN = re.compile(r"\s*(?:(\d+)|([aqx])|(.))")


class _Parser:
    """
    Analyseur descendant récursif.

        expr   := term (('+' | '-') term)*
        term   := unary (('*' | '/') unary)*
        unary  := '-' unary | power
        power  := atom ('^' '-'? INT)?
        atom   := INT | 'q' | gen | '(' expr ')'
        gen    := ('a' | 'x') '[' INT ',' INT ']'

    Les valeurs intermédiaires sont des dictionnaires mot -> RatFunc.
    """

    def __init__(self, text, N):
        self.text = text
        self.N = N
        self.tokens = []
        for match in _TOKEN.finditer(text):
            if match.group(0).strip() == "":
                continue
            kind = "int" if match.group(1) else "name" if match.group(2) else "sym"
            value = match.group(1) or match.group(2) or match.group(3)
            self.tokens.append((kind, value, match.start(match.lastindex)))
        self.index = 0
        self.algebra = None
        self.max_index = 0

    def peek(self):
        if self.index < len(self.tokens):
            return self.tokens[self.index]
        return ("end", None, len(self.text))

    def advance(self):
        token = self.peek()
        self.index += 1
        return token

    def expect(self, value):
        kind, token_value, position = self.advance()
        if token_value != value:
            found = token_value if token_value is not None else "fin du texte"
            raise ParseError(f"'{value}' attendu, trouvé {found!r}", position)

    def parse(self):
        if not self.tokens:
            raise ParseError("Texte vide", 0)
        value = self.expr()
        kind, token_value, position = self.peek()
        if kind != "end":
            raise ParseError(f"Symbole inattendu {token_value!r}", position)
        return value

    def expr(self):
        value = self.term()
        while self.peek()[1] in ("+", "-"):
            _, operator, _ = self.advance()
            right = self.term()
            value = _dict_add(value, right if operator == "+" else _dict_scale(right, -ONE))
        return value

    def term(self):
        value = self.unary()
        while self.peek()[1] in ("*", "/"):
            _, operator, position = self.advance()
            right = self.unary()
            if operator == "*":
                value = _dict_mul(value, right)
            else:
                divisor = _as_scalar(right)
                if divisor is None:
                    raise ParseError("Division par un élément non scalaire", position)
                if divisor.is_zero():
                    raise ParseError("Division par zéro", position)
                value = _dict_scale(value, divisor.inv())
        return value

    def unary(self):
        if self.peek()[1] == "-":
            self.advance()
            return _dict_scale(self.unary(), -ONE)
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[1] != "^":
            return base
        _, _, position = self.advance()
        negative = False
        if self.peek()[1] == "-":
            self.advance()
            negative = True
        kind, token_value, exponent_position = self.advance()
        if kind != "int":
            raise ParseError("Exposant entier attendu", exponent_position)
        exponent = int(token_value) * (-1 if negative else 1)
        scalar = _as_scalar(base)
        if scalar is not None:
            if exponent < 0 and scalar.is_zero():
                raise ParseError("Puissance négative de zéro", position)
            return {EMPTY_WORD: scalar ** exponent} if not (scalar ** exponent).is_zero() else {}
        if exponent < 0:
            raise ParseError("Puissance négative d'un élément non scalaire", position)
        result = {EMPTY_WORD: ONE}
        for _ in range(exponent):
            result = _dict_mul(result, base)
        return result

    def atom(self):
        kind, token_value, position = self.advance()
        if kind == "int":
            return {EMPTY_WORD: as_ratfunc(int(token_value))} if int(token_value) else {}
        if kind == "name" and token_value == "q":
            return {EMPTY_WORD: qpow(1)}
        if kind == "name":
            return self.generator(token_value, position)
        if token_value == "(":
            value = self.expr()
            self.expect(")")
            return value
        found = token_value if token_value is not None else "fin du texte"
        raise ParseError(f"Terme attendu, trouvé {found!r}", position)

    def generator(self, letter, position):
        algebra = _ALGEBRA_OF_LETTER[letter]
        if self.algebra is None:
            self.algebra = algebra
        elif self.algebra != algebra:
            raise ParseError("Mélange de générateurs REA et FRT", position)
        self.expect("[")
        row = self.integer()
        self.expect(",")
        col = self.integer()
        self.expect("]")
        if row < 1 or col < 1 or (self.N is not None and (row > self.N or col > self.N)):
            raise ParseError(f"Indices ({row},{col}) hors de [1,{self.N}]", position)
        self.max_index = max(self.max_index, row, col)
        return {intern_word(((row, col),)): ONE}

    def integer(self):
        kind, token_value, position = self.advance()
        if kind != "int":
            raise ParseError("Entier attendu", position)
        return int(token_value)


def _as_scalar(values):
    if not values:
        return ZERO
    if set(values) == {EMPTY_WORD}:
        return values[EMPTY_WORD]
    return None


def _dict_add(left, right):
    result = dict(left)
    for word, coefficient in right.items():
        total = result.get(word, ZERO) + coefficient
        if total.is_zero():
            result.pop(word, None)
        else:
            result[word] = total
    return result


def _dict_scale(values, factor):
    return {w: c * factor for w, c in values.items()}


def _dict_mul(left, right):
    result = {}
    for left_word, left_coefficient in left.items():
        for right_word, right_coefficient in right.items():
            word = intern_word(left_word + right_word)
            total = result.get(word, ZERO) + left_coefficient * right_coefficient
            if total.is_zero():
                result.pop(word, None)
            else:
                result[word] = total
    return result


def parse(text, N=None, algebra=None):
    """
    Analyse un polynôme écrit dans la grammaire `a[i,j]`, `x[i,j]`, `q`,
    `+ - * / ^` et parenthèses.

    Args:
        text (str): Texte à analyser
        N (int): Taille ambiante (None pour la déduire des indices)
        algebra (str): Algèbre par défaut pour un texte purement scalaire

    Returns:
        NCPoly: Polynôme analysé

    Raises:
        ParseError: si le texte est mal formé
    """
    parser = _Parser(text, N)
    values = parser.parse()
    found = parser.algebra
    if algebra is not None and found is not None and found != algebra:
        raise ParseError(f"Générateurs {found} alors que {algebra} est attendu", 0)
    size = N if N is not None else max(parser.max_index, 1)
    return NCPoly(found or algebra or REA, size, values)
