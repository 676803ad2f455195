"""
Moteur de redressement PBW.

Les relations quadratiques de la REA et de l'algèbre FRT sont engendrées
pour chaque couple (algèbre, N) à la construction du moteur, puis gelées.
La forme normale d'un mot s'obtient en réécrivant l'inversion adjacente la
plus à gauche, avec mémoïsation sur les mots entiers.
"""

import logging
import threading
from math import comb
from types import MappingProxyType

import numpy as np

from rea_center.algebra.ncpoly import FRT, REA, GenId, NCPoly, generator_order, intern_word, is_ordered
from rea_center.algebra.scalars import ONE, Q_DIFF, ZERO, eval_q1, qpow
from rea_center.config.settings import PBW_ENGINE, VERIFICATION
from rea_center.processors.validator import build_report
from rea_center.utils.errors import ContractViolation, NonTerminationError

logger = logging.getLogger(__name__)


def delta(a, b):
    return 1 if a == b else 0


def theta(x):
    """Fonction de Heaviside : 0 si x <= 0, 1 sinon."""
    return 1 if x > 0 else 0


def _accumulate(terms, word, coefficient):
    word = intern_word(word)
    total = terms.get(word, ZERO) + coefficient
    if total.is_zero():
        terms.pop(word, None)
    else:
        terms[word] = total


def rea_relation(left, right, N):
    """
    Membre de droite de la relation REA pour le mot inversé a^i_m a^j_n.

    Args:
        left (tuple): (i, m)
        right (tuple): (j, n), avec (j, n) < (i, m)
        N (int): Taille

    Returns:
        dict: mot de longueur 2 -> coefficient
    """
    i, m = left
    j, n = right
    terms = {}
    if j < i:
        _accumulate(terms, ((j, n), (i, m)), qpow(delta(i, n) + delta(n, m) - delta(m, j)))
        if theta(n - m):
            _accumulate(terms, ((j, m), (i, n)), qpow(delta(i, m) - delta(j, m)) * Q_DIFF)
        if i == n:
            factor = Q_DIFF * qpow(delta(n, m) - delta(j, m))
            for p in range(i + 1, N + 1):
                _accumulate(terms, ((j, p), (p, m)), factor)
        if i == m and theta(n - m):
            factor = Q_DIFF * Q_DIFF
            for p in range(i + 1, N + 1):
                _accumulate(terms, ((j, p), (p, n)), factor)
        if j == m:
            factor = -(qpow(-1) * Q_DIFF)
            for p in range(j + 1, N + 1):
                _accumulate(terms, ((i, p), (p, n)), factor)
    elif i == j and n < m:
        _accumulate(terms, ((i, n), (i, m)), qpow(delta(i, n) - delta(i, m) - 1))
        if i == n:
            factor = qpow(-1) * Q_DIFF
            for p in range(i + 1, N + 1):
                _accumulate(terms, ((i, p), (p, m)), factor)
        if i == m:
            factor = -(qpow(-1) * Q_DIFF)
            for p in range(i + 1, N + 1):
                _accumulate(terms, ((i, p), (p, n)), factor)
    else:
        raise ContractViolation(f"a^{i}_{m} a^{j}_{n} n'est pas une inversion")
    return terms


def frt_relation(left, right, N):
    """
    Membre de droite de la relation FRT pour le mot inversé x^a_b x^c_d.
    """
    a, b = left
    c, d = right
    terms = {}
    if (a, b) <= (c, d):
        raise ContractViolation(f"x^{a}_{b} x^{c}_{d} n'est pas une inversion")
    if a == c:
        _accumulate(terms, ((a, d), (a, b)), qpow(-1))
    elif b == d:
        _accumulate(terms, ((c, b), (a, b)), qpow(-1))
    elif b < d:
        _accumulate(terms, ((c, d), (a, b)), ONE)
    else:
        _accumulate(terms, ((c, d), (a, b)), ONE)
        _accumulate(terms, ((c, b), (a, d)), -Q_DIFF)
    return terms


_RELATIONS = {REA: rea_relation, FRT: frt_relation}


def straighten_pair(algebra, g, h, N):
    """
    Membre de droite de la relation de redressement pour le mot (g, h).

    Raises:
        ContractViolation: si le mot (g, h) est déjà ordonné
    """
    if not isinstance(g, GenId):
        g = GenId(algebra, *g)
    if not isinstance(h, GenId):
        h = GenId(algebra, *h)
    if generator_order(g, h) <= 0:
        raise ContractViolation(f"Le mot ({g.row},{g.col})({h.row},{h.col}) est déjà ordonné")
    terms = _RELATIONS[algebra]((g.row, g.col), (h.row, h.col), N)
    return NCPoly(algebra, N, terms)


def _first_inversion(word):
    for p in range(len(word) - 1):
        if word[p] > word[p + 1]:
            return p
    return None


class PBWEngine:
    """
    Moteur de réécriture pour un couple (algèbre, N).

    Le cache est propre à l'instance ; les insertions sont protégées par un
    verrou, les lectures ne le sont pas.
    """

    def __init__(self, algebra, N, step_cap=None):
        if algebra not in _RELATIONS:
            raise ContractViolation(f"Algèbre inconnue: {algebra}")
        self.algebra = algebra
        self.N = N
        self.step_cap = step_cap or PBW_ENGINE["step_cap"]
        self._lock = threading.Lock()
        self._cache = {}
        self._store = None
        self._pending = []

        generators = [(row, col) for row in range(1, N + 1) for col in range(1, N + 1)]
        rules = {}
        for left in generators:
            for right in generators:
                if left > right:
                    rhs = _RELATIONS[algebra](left, right, N)
                    rules[(left, right)] = tuple(rhs.items())
        self.rules = MappingProxyType(rules)
        logger.debug(f"Moteur {algebra} N={N}: {len(rules)} relations engendrées")

    def attach_store(self, store):
        """Précharge les formes normales d'un NormalFormStore connecté."""
        self._store = store
        loaded = store.load_all()
        with self._lock:
            for word, terms in loaded.items():
                self._cache.setdefault(intern_word(word), terms)
        logger.info(f"{len(loaded)} formes normales chargées pour {self.algebra} N={self.N}")

    def detach_store(self):
        with self._lock:
            self._store = None
            self._pending = []

    def flush(self):
        """Écrit dans le store les formes normales calculées depuis le dernier appel."""
        if self._store is None or not self._pending:
            return 0
        with self._lock:
            pending, self._pending = self._pending, []
        records = [(word, self._cache[word]) for word in pending]
        self._store.store_many(records)
        return len(records)

    def reduce_word(self, word):
        """
        Forme normale d'un mot.

        Returns:
            dict: mot ordonné -> coefficient

        Raises:
            NonTerminationError: si le budget de réécriture est dépassé
        """
        word = intern_word(word)
        cached = self._cache.get(word)
        if cached is not None:
            return cached

        steps = 0
        stack = [word]
        while stack:
            current = stack[-1]
            if current in self._cache:
                stack.pop()
                continue
            position = _first_inversion(current)
            if position is None:
                self._insert(current, {current: ONE})
                stack.pop()
                continue

            rule = self.rules[(current[position], current[position + 1])]
            prefix, suffix = current[:position], current[position + 2:]
            children = [(intern_word(prefix + rhs + suffix), c) for rhs, c in rule]
            missing = [child for child, _ in children if child not in self._cache]
            if missing:
                steps += len(missing)
                if steps > self.step_cap:
                    raise NonTerminationError(
                        f"Budget de {self.step_cap} réécritures dépassé pour le mot {word}"
                    )
                stack.extend(missing)
                continue

            result = {}
            for child, coefficient in children:
                for target, value in self._cache[child].items():
                    _accumulate(result, target, coefficient * value)
            self._insert(current, result)
            stack.pop()

        if self._store is not None:
            with self._lock:
                self._pending.append(word)
        return self._cache[word]

    def _insert(self, word, terms):
        with self._lock:
            self._cache.setdefault(word, terms)

    def normal_form(self, p):
        """
        Représentant PBW de p.

        Args:
            p (NCPoly): Polynôme de l'algèbre libre

        Returns:
            NCPoly: Polynôme supporté sur les mots ordonnés
        """
        if p.algebra != self.algebra or p.N != self.N:
            raise ContractViolation(
                f"Polynôme {p.algebra} N={p.N} soumis au moteur {self.algebra} N={self.N}"
            )
        result = {}
        for word, coefficient in p.terms.items():
            for target, value in self.reduce_word(word).items():
                _accumulate(result, target, coefficient * value)
        return NCPoly._trusted(self.algebra, self.N, result)

    def commutator_nf(self, p, r):
        return self.normal_form(p * r - r * p)

    def cache_size(self):
        return len(self._cache)


_ENGINES = {}
_ENGINES_LOCK = threading.Lock()
_ENGINE_LISTENERS = []


def get_engine(algebra, N):
    """Moteur partagé du processus pour (algèbre, N)."""
    key = (algebra, N)
    engine = _ENGINES.get(key)
    if engine is None:
        with _ENGINES_LOCK:
            engine = _ENGINES.get(key)
            if engine is None:
                engine = PBWEngine(algebra, N)
                _ENGINES[key] = engine
                for listener in _ENGINE_LISTENERS:
                    listener(engine)
    return engine


def add_engine_listener(listener):
    """Enregistre un rappel appelé sur chaque moteur existant ou futur."""
    with _ENGINES_LOCK:
        _ENGINE_LISTENERS.append(listener)
        existing = list(_ENGINES.values())
    for engine in existing:
        listener(engine)


def remove_engine_listener(listener):
    with _ENGINES_LOCK:
        if listener in _ENGINE_LISTENERS:
            _ENGINE_LISTENERS.remove(listener)


def normal_form(p):
    return get_engine(p.algebra, p.N).normal_form(p)


def commutator_nf(p, r):
    if p.algebra != r.algebra or p.N != r.N:
        raise ContractViolation("Commutateur entre algèbres ou tailles différentes")
    return get_engine(p.algebra, p.N).commutator_nf(p, r)


def nf_product(*factors):
    """Forme normale du produit libre des facteurs."""
    product = factors[0]
    for factor in factors[1:]:
        product = product * factor
    return normal_form(product)


def generator(algebra, row, col, N):
    return NCPoly.generator(algebra, row, col, N)


def ordered_basis_size(N, d):
    """Nombre de mots ordonnés de degré d : C(N²+d-1, d)."""
    return comb(N * N + d - 1, d)


def _random_word(rng, N, degree):
    rows = rng.integers(1, N + 1, size=degree)
    cols = rng.integers(1, N + 1, size=degree)
    return tuple((int(r), int(c)) for r, c in zip(rows, cols))


def _classical_reordering_ok(engine):
    """À q = 1 chaque relation est la simple commutation des deux lettres."""
    failures = []
    for (left, right), rhs in engine.rules.items():
        values = {word: eval_q1(c) for word, c in rhs}
        expected = {(right, left): 1}
        observed = {word: v for word, v in values.items() if v != 0}
        if observed != expected:
            failures.append({"lhs": [list(left), list(right)], "q1": {str(w): str(v) for w, v in observed.items()}})
    return failures


def verify_engine(algebra, N, samples=None, seed=None, max_degree=3):
    """
    Vérifie la cohérence du moteur : idempotence, homogénéité, support
    ordonné, associativité sur des triplets aléatoires, limite classique.

    Returns:
        dict: Rapport de vérification
    """
    samples = samples if samples is not None else VERIFICATION["engine_samples"]
    seed = seed if seed is not None else VERIFICATION["random_seed"]
    rng = np.random.default_rng(seed)
    engine = get_engine(algebra, N)
    residuals = []

    for failure in _classical_reordering_ok(engine):
        residuals.append({"property": "classical_limit_relation", **failure})

    for _ in range(samples):
        degrees = rng.integers(1, max_degree + 1, size=3)
        a, b, c = (
            NCPoly.monomial(algebra, N, _random_word(rng, N, int(d))) for d in degrees
        )
        left = engine.normal_form(engine.normal_form(a * b) * c)
        right = engine.normal_form(a * engine.normal_form(b * c))
        if left != right:
            residuals.append({"property": "associativity", "word": str(a * b * c), "residual": str(left - right)})
            continue

        total_degree = int(sum(degrees))
        if engine.normal_form(left) != left:
            residuals.append({"property": "idempotence", "word": str(a * b * c)})
        for word, coefficient in left.terms.items():
            if len(word) != total_degree:
                residuals.append({"property": "homogeneity", "word": str(a * b * c)})
                break
            if not is_ordered(word):
                residuals.append({"property": "ordered_support", "word": str(a * b * c)})
                break
        classical = {}
        for word, coefficient in left.terms.items():
            value = eval_q1(coefficient)
            if value:
                classical[word] = value
        expected_word = tuple(sorted(a.sorted_terms()[0][0] + b.sorted_terms()[0][0] + c.sorted_terms()[0][0]))
        if classical != {expected_word: 1}:
            residuals.append({"property": "classical_limit", "word": str(a * b * c)})

    return build_report(
        "pbw_engine",
        {"algebra": algebra, "N": N, "samples": samples, "seed": seed},
        residuals,
        details={"cache_size": engine.cache_size(), "rules": len(engine.rules)},
    )
