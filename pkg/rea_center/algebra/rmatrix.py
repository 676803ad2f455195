"""
Opérateurs tensoriels exacts : la matrice R, ses variantes et la
représentation de Schur-Weyl de H_q(k) sur V^{⊗k}.

Convention d'indices : M^{ab}_{cd} est le coefficient de v_a ⊗ v_b dans
l'image de v_c ⊗ v_d ; l'entrée est stockée sous la clé ((a, b), (c, d)).
"""

import logging
from functools import lru_cache
from itertools import product
from math import comb

import numpy as np

from rea_center.algebra import linalg
from rea_center.algebra.hecke import HeckeElt, omega, reduced_word, right_swap
from rea_center.algebra.scalars import ONE, Q, Q_DIFF, Q_INV, ZERO, as_ratfunc, qfact, qpow
from rea_center.processors.validator import build_report
from rea_center.utils.errors import ContractViolation

logger = logging.getLogger(__name__)


def multi_indices(N, k):
    return [tuple(int(v) + 1 for v in index) for index in np.ndindex(*([N] * k))]


def flat_index(multi, N):
    """Rang lexicographique d'un multi-indice, à partir de 0."""
    return int(np.ravel_multi_index(tuple(v - 1 for v in multi), (N,) * len(multi)))


class TensorOp:
    """
    Endomorphisme creux de V^{⊗k}, dim V = N, à coefficients RatFunc.
    """

    __slots__ = ("N", "k", "entries")

    def __init__(self, N, k, entries=None):
        self.N = N
        self.k = k
        cleaned = {}
        for (out, into), value in (entries or {}).items():
            if len(out) != k or len(into) != k:
                raise ContractViolation(f"Multi-indice de longueur incorrecte pour k={k}: {out}, {into}")
            value = as_ratfunc(value)
            if not value.is_zero():
                cleaned[(tuple(out), tuple(into))] = value
        self.entries = cleaned

    @classmethod
    def identity(cls, N, k):
        return cls(N, k, {(m, m): ONE for m in multi_indices(N, k)})

    @classmethod
    def zero(cls, N, k):
        return cls(N, k)

    def _check(self, other):
        if (self.N, self.k) != (other.N, other.k):
            raise ContractViolation(f"Opérateurs incompatibles: ({self.N},{self.k}) et ({other.N},{other.k})")

    def entry(self, out, into):
        return self.entries.get((tuple(out), tuple(into)), ZERO)

    def is_zero(self):
        return not self.entries

    def __add__(self, other):
        self._check(other)
        result = dict(self.entries)
        for key, value in other.entries.items():
            result[key] = result.get(key, ZERO) + value
        return TensorOp(self.N, self.k, result)

    def __neg__(self):
        return self.scale(-ONE)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, factor):
        factor = as_ratfunc(factor)
        return TensorOp(self.N, self.k, {key: v * factor for key, v in self.entries.items()})

    def __matmul__(self, other):
        """Composition self ∘ other."""
        self._check(other)
        by_row = {}
        for (mid, into), value in other.entries.items():
            by_row.setdefault(mid, []).append((into, value))
        result = {}
        for (out, mid), left in self.entries.items():
            for into, right in by_row.get(mid, ()):
                key = (out, into)
                result[key] = result.get(key, ZERO) + left * right
        return TensorOp(self.N, self.k, result)

    def __eq__(self, other):
        if not isinstance(other, TensorOp):
            return NotImplemented
        return (self.N, self.k) == (other.N, other.k) and self.entries == other.entries

    def __hash__(self):
        return hash((self.N, self.k, frozenset(self.entries.items())))

    def __repr__(self):
        return f"TensorOp(N={self.N}, k={self.k}, {len(self.entries)} entrées)"

    def triplets(self):
        """Entrées triées (sortie, entrée, coefficient)."""
        return sorted(
            ((out, into, value) for (out, into), value in self.entries.items()),
            key=lambda item: (flat_index(item[0], self.N), flat_index(item[1], self.N)),
        )

    def to_json(self):
        return {
            "N": self.N,
            "k": self.k,
            "entries": [
                {"out": list(out), "in": list(into), "coeff": value.to_json()}
                for out, into, value in self.triplets()
            ],
        }

    def weight_blocks(self):
        """Blocs des espaces de poids (multi-ensemble des indices)."""
        blocks = {}
        for multi in multi_indices(self.N, self.k):
            blocks.setdefault(tuple(sorted(multi)), []).append(multi)
        return blocks

    def rank(self):
        """Rang exact, calculé bloc par bloc sur les espaces de poids."""
        by_row = {}
        for (out, into), value in self.entries.items():
            if sorted(out) != sorted(into):
                return linalg.rank(self._rows(multi_indices(self.N, self.k)), multi_indices(self.N, self.k))
            by_row.setdefault(out, {})[into] = value
        total = 0
        for members in self.weight_blocks().values():
            rows = [by_row[m] for m in members if m in by_row]
            if rows:
                total += linalg.rank(rows, members)
        return total

    def _rows(self, indices):
        rows = {m: {} for m in indices}
        for (out, into), value in self.entries.items():
            rows[out][into] = value
        return [rows[m] for m in indices]


def embed(op, slots, k):
    """
    Plonge un opérateur à deux facteurs sur les facteurs (i, j) de V^{⊗k}.
    """
    i, j = slots
    if op.k != 2 or not (1 <= i <= k and 1 <= j <= k and i != j):
        raise ContractViolation(f"Plongement impossible sur {slots} pour k={k}")
    entries = {}
    for (out, into), value in op.entries.items():
        for rest in multi_indices(op.N, k - 2) if k > 2 else [()]:
            source = list(rest)
            target = list(rest)
            for slot, a, c in sorted([(i, out[0], into[0]), (j, out[1], into[1])]):
                source.insert(slot - 1, c)
                target.insert(slot - 1, a)
            entries[(tuple(target), tuple(source))] = value
    return TensorOp(op.N, k, entries)


def flip(N):
    return TensorOp(N, 2, {((b, a), (a, b)): ONE for a in range(1, N + 1) for b in range(1, N + 1)})


@lru_cache(maxsize=None)
def build_R(N):
    """R = q Σ E_ii⊗E_ii + Σ_{i≠j} E_ii⊗E_jj + (q - q^-1) Σ_{i>j} E_ij⊗E_ji."""
    entries = {}
    for a in range(1, N + 1):
        for b in range(1, N + 1):
            entries[((a, b), (a, b))] = Q if a == b else ONE
            if b > a:
                entries[((b, a), (a, b))] = Q_DIFF
    return TensorOp(N, 2, entries)


def build_R21(N):
    P = flip(N)
    return P @ build_R(N) @ P


@lru_cache(maxsize=None)
def build_Rinv(N):
    """Inverse de R par élimination, comparé à la forme close."""
    R = build_R(N)
    indices = multi_indices(N, 2)
    inverse = TensorOp(N, 2, linalg.invert(R.entries, indices))
    closed = TensorOp(N, 2, {
        key: (Q_INV if key[0][0] == key[0][1] else ONE) if key[0] == key[1] else -Q_DIFF
        for key in build_R(N).entries
    })
    if inverse != closed:
        raise ContractViolation(f"Inverse de R incohérent pour N={N}")
    return inverse


def partial_transpose(op):
    """(M^{t2})^{ad}_{cb} = M^{ab}_{cd}."""
    return TensorOp(op.N, 2, {
        ((out[0], into[1]), (into[0], out[1])): value for (out, into), value in op.entries.items()
    })


def rtilde_closed_form(N, printed=False):
    """
    Forme close de R̃ : q^-1 sur la diagonale i = j, 1 ailleurs, et
    -(q - q^-1) q^{-2(b-a)} en position ((b, a), (a, b)) pour a < b.
    `printed=True` donne l'exposant de signe opposé +2(b-a).
    """
    sign = 1 if printed else -1
    entries = {}
    for a in range(1, N + 1):
        for b in range(1, N + 1):
            entries[((a, b), (a, b))] = Q_INV if a == b else ONE
            if b > a:
                entries[((b, a), (a, b))] = -(Q_DIFF * qpow(sign * 2 * (b - a)))
    return TensorOp(N, 2, entries)


@lru_cache(maxsize=None)
def build_Rtilde(N):
    """
    R̃ = ((R^{t2})^{-1})^{t2}, vérifié contre la forme close.

    Raises:
        ContractViolation: si les deux constructions diffèrent
    """
    transposed = partial_transpose(build_R(N))
    inverse = TensorOp(N, 2, linalg.invert(transposed.entries, multi_indices(N, 2)))
    result = partial_transpose(inverse)
    if result != rtilde_closed_form(N):
        raise ContractViolation(f"R̃ construit et forme close diffèrent pour N={N}")
    return result


def braiding(N):
    """flip ∘ R."""
    return flip(N) @ build_R(N)


@lru_cache(maxsize=None)
def rho_generator(i, k, N):
    if not 1 <= i < k:
        raise ContractViolation(f"T_{i} absent de H_q({k})")
    return embed(braiding(N), (i, i + 1), k)


@lru_cache(maxsize=None)
def rho_basis(w, N):
    """rho(T_w) le long d'un mot réduit."""
    k = len(w)
    word = reduced_word(w)
    if not word:
        return TensorOp.identity(N, k)
    last = word[-1]
    return rho_basis(right_swap(w, last), N) @ rho_generator(last, k, N)


def rho(h, k, N):
    """
    Représentation de Schur-Weyl de H_q(k) sur V^{⊗k}.

    Args:
        h (HeckeElt): Élément de H_q(k)
    """
    if h.n != k:
        raise ContractViolation(f"Élément de H_q({h.n}) appliqué à V^⊗{k}")
    result = TensorOp.zero(N, k)
    for w, coefficient in h.terms.items():
        result = result + rho_basis(w, N).scale(coefficient)
    return result


def check_qybe(N):
    R12 = embed(build_R(N), (1, 2), 3)
    R23 = embed(build_R(N), (2, 3), 3)
    P23 = embed(flip(N), (2, 3), 3)
    R13 = P23 @ R12 @ P23
    return R12 @ R13 @ R23 == R23 @ R13 @ R12


def verify_schur_weyl(N, k):
    """
    QYBE, relation de Hecke et de tresse, omega_k^2 = [k]! omega_k,
    rang de rho(omega_k) égal à C(N, k).
    """
    residuals = []
    if not check_qybe(N):
        residuals.append({"property": "qybe"})
    identity = TensorOp.identity(N, k)
    for i in range(1, k):
        T = rho_generator(i, k, N)
        if (T - identity.scale(Q)) @ (T + identity.scale(Q_INV)) != TensorOp.zero(N, k):
            residuals.append({"property": "hecke_relation", "i": i})
        if i + 1 < k:
            U = rho_generator(i + 1, k, N)
            if T @ U @ T != U @ T @ U:
                residuals.append({"property": "braid", "i": i})

    w = rho(omega(k, k), k, N)
    if w @ w != w.scale(qfact(k)):
        residuals.append({"property": "omega_square"})
    observed = w.rank()
    expected = comb(N, k)
    if observed != expected:
        residuals.append({"property": "rank", "observed": observed, "expected": expected})
    if k > N and not w.is_zero():
        residuals.append({"property": "vanishing"})

    pairs = generator_pairs(k)
    multiplicative = verify_rho_multiplicative(k, N, pairs)
    residuals.extend({"property": "multiplicative", **r} for r in multiplicative["residuals"])

    return build_report(
        "schur_weyl",
        {"N": N, "k": k},
        residuals,
        details={"rank": observed, "expected_rank": expected, "pairs": len(pairs)},
    )


def verify_rho_multiplicative(k, N, pairs):
    """rho(xy) = rho(x) rho(y) sur des couples d'éléments de H_q(k)."""
    residuals = []
    for x, y in pairs:
        if rho(x * y, k, N) != rho(x, k, N) @ rho(y, k, N):
            residuals.append({"x": str(x), "y": str(y)})
    return build_report("rho_multiplicative", {"N": N, "k": k, "pairs": len(pairs)}, residuals)


def generator_pairs(k):
    """Couples de générateurs et de leurs produits utilisés par les tests de représentation."""
    elements = [HeckeElt.unit(k)] + [HeckeElt.generator(i, k) for i in range(1, k)]
    return list(product(elements, elements))


def tensor(f, g):
    """Produit tensoriel f ⊗ g, f agissant sur les premiers facteurs."""
    if f.N != g.N:
        raise ContractViolation(f"Opérateurs de tailles différentes: N={f.N} et N={g.N}")
    entries = {}
    for (out_f, in_f), left in f.entries.items():
        for (out_g, in_g), right in g.entries.items():
            entries[(out_f + out_g, in_f + in_g)] = left * right
    return TensorOp(f.N, f.k + g.k, entries)


def elementary(N, out, into):
    """E de V dans V envoyant v_into sur v_out."""
    return TensorOp(N, 1, {((out,), (into,)): ONE})
