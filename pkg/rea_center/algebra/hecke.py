"""
Algèbre de Hecke finie H_q(n) dans la base T_w.

Les permutations sont des tuples en notation une ligne, indexés à partir
de 1 ; T_w T_i = T_{w s_i} si w(i) < w(i+1), sinon T_{w s_i} + (q - q^-1) T_w.
"""

import logging
from functools import lru_cache
from itertools import permutations

import numpy as np

from rea_center.algebra.ncpoly import format_term, join_terms
from rea_center.algebra.scalars import ONE, Q_DIFF, ZERO, RatFunc, as_ratfunc, qfact, qint, qpow
from rea_center.config.settings import VERIFICATION
from rea_center.processors.validator import build_report
from rea_center.utils.errors import ContractViolation

logger = logging.getLogger(__name__)

NEWTON_VARIANTS = ("k-j-1", "k-j", "j-1")


def identity(n):
    return tuple(range(1, n + 1))


def length(w):
    return sum(1 for a in range(len(w)) for b in range(a + 1, len(w)) if w[a] > w[b])


def right_swap(w, i):
    """w s_i : échange des positions i et i+1."""
    w = list(w)
    w[i - 1], w[i] = w[i], w[i - 1]
    return tuple(w)


def left_swap(w, i):
    """s_i w : échange des valeurs i et i+1."""
    return tuple(i + 1 if v == i else i if v == i + 1 else v for v in w)


@lru_cache(maxsize=None)
def reduced_word(w):
    """Mot réduit (i_1, ..., i_r) avec w = s_{i_1} ... s_{i_r}."""
    word = []
    current = tuple(w)
    while True:
        descent = next((i for i in range(1, len(current)) if current[i - 1] > current[i]), None)
        if descent is None:
            return tuple(word)
        word.insert(0, descent)
        current = right_swap(current, descent)


def cycle_type(w):
    seen = set()
    parts = []
    for start in range(1, len(w) + 1):
        if start in seen:
            continue
        size = 0
        current = start
        while current not in seen:
            seen.add(current)
            current = w[current - 1]
            size += 1
        parts.append(size)
    return tuple(sorted(parts, reverse=True))


def embed(w, n):
    """Plongement S_k -> S_n fixant k+1, ..., n."""
    return tuple(w) + tuple(range(len(w) + 1, n + 1))


class HeckeElt:
    """
    Élément de H_q(n) : dictionnaire permutation -> coefficient RatFunc non nul.
    """

    __slots__ = ("n", "terms")

    def __init__(self, n, terms=None):
        self.n = n
        cleaned = {}
        for w, coefficient in (terms or {}).items():
            w = tuple(w)
            if sorted(w) != list(range(1, n + 1)):
                raise ContractViolation(f"Permutation invalide pour n={n}: {w}")
            coefficient = as_ratfunc(coefficient)
            if not coefficient.is_zero():
                cleaned[w] = coefficient
        self.terms = cleaned

    @classmethod
    def unit(cls, n):
        return cls(n, {identity(n): ONE})

    @classmethod
    def basis(cls, w):
        return cls(len(w), {tuple(w): ONE})

    @classmethod
    def generator(cls, i, n):
        if not 1 <= i < n:
            raise ContractViolation(f"Générateur T_{i} absent de H_q({n})")
        return cls.basis(right_swap(identity(n), i))

    def _check(self, other):
        if self.n != other.n:
            raise ContractViolation(f"Tailles différentes: n={self.n} et n={other.n}")

    def is_zero(self):
        return not self.terms

    def coefficient(self, w):
        return self.terms.get(tuple(w), ZERO)

    def __add__(self, other):
        self._check(other)
        result = dict(self.terms)
        for w, coefficient in other.terms.items():
            result[w] = result.get(w, ZERO) + coefficient
        return HeckeElt(self.n, result)

    def __neg__(self):
        return HeckeElt(self.n, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, factor):
        factor = as_ratfunc(factor)
        return HeckeElt(self.n, {w: c * factor for w, c in self.terms.items()})

    def times_generator(self, i):
        """Multiplication à droite par T_i."""
        result = {}
        for w, coefficient in self.terms.items():
            target = right_swap(w, i)
            result[target] = result.get(target, ZERO) + coefficient
            if w[i - 1] > w[i]:
                result[w] = result.get(w, ZERO) + coefficient * Q_DIFF
        return HeckeElt(self.n, result)

    def generator_times(self, i):
        """Multiplication à gauche par T_i."""
        result = {}
        for w, coefficient in self.terms.items():
            target = left_swap(w, i)
            result[target] = result.get(target, ZERO) + coefficient
            if w.index(i) > w.index(i + 1):
                result[w] = result.get(w, ZERO) + coefficient * Q_DIFF
        return HeckeElt(self.n, result)

    def __mul__(self, other):
        if not isinstance(other, HeckeElt):
            return self.scale(other)
        return hecke_mul(self, other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, HeckeElt):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __repr__(self):
        return f"HeckeElt(n={self.n}, {format_hecke(self)!r})"

    def __str__(self):
        return format_hecke(self)

    def to_json(self):
        return {
            "n": self.n,
            "terms": [
                {"coeff": c.to_json(), "perm": list(w)}
                for w, c in sorted(self.terms.items(), key=lambda item: (length(item[0]), item[0]))
            ],
        }

    @classmethod
    def from_json(cls, data):
        return cls(data["n"], {tuple(t["perm"]): RatFunc.from_json(t["coeff"]) for t in data["terms"]})


def format_hecke(x):
    items = sorted(x.terms.items(), key=lambda item: (length(item[0]), item[0]))
    return join_terms(
        format_term("T[" + ",".join(str(v) for v in w) + "]", c) for w, c in items
    )


def hecke_mul(x, y):
    """
    Produit dans H_q(n), par multiplications à droite successives le long
    d'un mot réduit de chaque T_v du second facteur.
    """
    x._check(y)
    result = HeckeElt(x.n)
    for v, coefficient in y.terms.items():
        partial = x
        for i in reduced_word(v):
            partial = partial.times_generator(i)
        result = result + partial.scale(coefficient)
    return result


def hecke_mul_left(x, y):
    """Produit calculé par multiplications à gauche ; sert d'oracle."""
    x._check(y)
    result = HeckeElt(y.n)
    for u, coefficient in x.terms.items():
        partial = y
        for i in reversed(reduced_word(u)):
            partial = partial.generator_times(i)
        result = result + partial.scale(coefficient)
    return result


@lru_cache(maxsize=None)
def omega(k, n):
    """
    omega_k = somme sur S_k de (-q)^(-l(sigma)) T_sigma, plongé dans H_q(n).

    Raises:
        ContractViolation: si k > n
    """
    if not 0 <= k <= n:
        raise ContractViolation(f"omega_{k} n'existe pas dans H_q({n})")
    terms = {}
    for sigma in permutations(range(1, k + 1)):
        ell = length(sigma)
        terms[embed(sigma, n)] = qpow(-ell) * (-1) ** ell
    return HeckeElt(n, terms)


def omega_bar(k, n):
    return omega(k, n).scale(as_ratfunc(qfact(k)).inv())


def t_cycle(j, k, n=None):
    """T_j T_{j+1} ... T_{k-1} ; produit vide pour j = k."""
    n = n or k
    if j > k or k > n or j < 1:
        raise ContractViolation(f"Cycle ({k}...{j}) invalide dans H_q({n})")
    element = HeckeElt.unit(n)
    for i in range(j, k):
        element = element.times_generator(i)
    return element


def _variant_exponent(variant, j, k):
    if variant == "k-j-1":
        return k - j - 1
    if variant == "k-j":
        return k - j
    if variant == "j-1":
        return j - 1
    raise ContractViolation(f"Variante d'exposant inconnue: {variant}")


def newton_sides(n, k, variant):
    """
    Les deux membres de l'identité de Newton dans H_q(n), multipliés par [k-1]_q!.

    Returns:
        tuple: (HeckeElt, HeckeElt)
    """
    left = omega(k, n)
    right = HeckeElt(n)
    for j in range(1, k + 1):
        ratio = ONE
        for t in range(j, k):
            ratio = ratio * as_ratfunc(qint(t))
        exponent = _variant_exponent(variant, j, k)
        sign = -1 if exponent % 2 else 1
        factor = ratio * qpow(-exponent) * sign
        right = right + (omega(j - 1, n) * t_cycle(j, k, n)).scale(factor)
    return left, right


@lru_cache(maxsize=None)
def _class_reduce(w):
    """Coordonnées de T_w modulo les commutateurs, par classe de longueur minimale."""
    n = len(w)
    frontier = [w]
    seen = {w}
    while frontier:
        u = frontier.pop()
        ell = length(u)
        for i in range(1, n):
            conjugate = left_swap(right_swap(u, i), i)
            conjugate_length = length(conjugate)
            if conjugate_length == ell - 2:
                # T_u = T_{sus} + (q - q^-1) T_{su} modulo [H, H]
                result = dict(_class_reduce(conjugate))
                for key, value in _class_reduce(left_swap(u, i)).items():
                    result[key] = result.get(key, ZERO) + value * Q_DIFF
                return {key: value for key, value in result.items() if not value.is_zero()}
            if conjugate_length == ell and conjugate not in seen:
                seen.add(conjugate)
                frontier.append(conjugate)
    return {cycle_type(w): ONE}


def class_coordinates(x):
    """
    Réduction de x modulo [H_q(n), H_q(n)].

    Returns:
        dict: type de cycle -> coefficient
    """
    result = {}
    for w, coefficient in x.terms.items():
        for key, value in _class_reduce(w).items():
            result[key] = result.get(key, ZERO) + coefficient * value
    return {key: value for key, value in sorted(result.items()) if not value.is_zero()}


def verify_hecke_newton(n, k, exponent_variant=None):
    """
    Évalue l'identité de Newton dans H_q(n) pour chaque variante d'exposant,
    dans l'algèbre et modulo les commutateurs.

    Returns:
        dict: Rapport ; 'pass' si la variante demandée (ou l'une des variantes)
        vaut modulo les commutateurs
    """
    if not 1 <= k <= n:
        raise ContractViolation(f"k={k} hors de [1, {n}]")
    variants = [exponent_variant] if exponent_variant else list(NEWTON_VARIANTS)
    details = {}
    residuals = []
    for variant in variants:
        left, right = newton_sides(n, k, variant)
        difference = left - right
        in_algebra = difference.is_zero()
        reduced = class_coordinates(difference)
        details[variant] = {
            "holds_in_algebra": in_algebra,
            "holds_in_cocenter": not reduced,
            "residual": format_hecke(difference),
        }
        if reduced:
            residuals.append({
                "variant": variant,
                "cocenter_residual": {"x".join(map(str, key)): str(v) for key, v in reduced.items()},
            })
    holding = [v for v in variants if details[v]["holds_in_cocenter"]]
    details["holding_variants"] = holding
    return build_report(
        "hecke_newton",
        {"n": n, "k": k, "variant": exponent_variant},
        residuals,
        details=details,
        passed=bool(holding),
    )


def hecke_newton_sweep(max_n=None):
    """
    Balaye n <= max_n, k <= n et retient les variantes valables partout
    modulo les commutateurs.
    """
    max_n = max_n or VERIFICATION["hecke_max_n"]
    uniform = set(NEWTON_VARIANTS)
    uniform_in_algebra = set(NEWTON_VARIANTS)
    table = []
    for n in range(1, max_n + 1):
        for k in range(1, n + 1):
            report = verify_hecke_newton(n, k)
            row = {"n": n, "k": k}
            for variant in NEWTON_VARIANTS:
                row[f"{variant}_algebra"] = report["details"][variant]["holds_in_algebra"]
                row[f"{variant}_cocenter"] = report["details"][variant]["holds_in_cocenter"]
                if not report["details"][variant]["holds_in_cocenter"]:
                    uniform.discard(variant)
                if not report["details"][variant]["holds_in_algebra"]:
                    uniform_in_algebra.discard(variant)
            table.append(row)
    uniform = [v for v in NEWTON_VARIANTS if v in uniform]
    residuals = [] if len(uniform) == 1 else [{"uniform_variants": uniform}]
    return build_report(
        "hecke_newton_sweep",
        {"max_n": max_n},
        residuals,
        details={
            "uniform_variant": uniform[0] if len(uniform) == 1 else None,
            "uniform_in_algebra": [v for v in NEWTON_VARIANTS if v in uniform_in_algebra],
            "table": table,
        },
    )


def _random_element(rng, n, size=3):
    terms = {}
    for _ in range(size):
        w = tuple(int(v) + 1 for v in rng.permutation(n))
        terms[w] = qpow(int(rng.integers(-2, 3))) * int(rng.integers(1, 4))
    return HeckeElt(n, terms)


def verify_hecke_relations(n, samples=20, seed=None):
    """
    Relations quadratique et de tresse, produits comparés à l'oracle gauche,
    omega_k^2 = [k]! omega_k et omega_k T_i = -q^-1 omega_k pour i < k.
    """
    seed = seed if seed is not None else VERIFICATION["random_seed"]
    rng = np.random.default_rng(seed)
    residuals = []
    unit = HeckeElt.unit(n)
    for i in range(1, n):
        T = HeckeElt.generator(i, n)
        if T * T != unit + T.scale(Q_DIFF):
            residuals.append({"relation": "quadratic", "i": i})
        if i + 1 < n:
            U = HeckeElt.generator(i + 1, n)
            if T * U * T != U * T * U:
                residuals.append({"relation": "braid", "i": i})
        for j in range(i + 2, n):
            V = HeckeElt.generator(j, n)
            if T * V != V * T:
                residuals.append({"relation": "commutation", "i": i, "j": j})

    for _ in range(samples):
        x, y = _random_element(rng, n), _random_element(rng, n)
        if hecke_mul(x, y) != hecke_mul_left(x, y):
            residuals.append({"relation": "oracle", "x": str(x), "y": str(y)})

    for k in range(2, n + 1):
        w = omega(k, n)
        if w * w != w.scale(qfact(k)):
            residuals.append({"relation": "omega_square", "k": k})
        for i in range(1, k):
            if w.times_generator(i) != w.scale(-qpow(-1)):
                residuals.append({"relation": "omega_absorbs", "k": k, "i": i})

    return build_report("hecke_relations", {"n": n, "samples": samples, "seed": seed}, residuals)
