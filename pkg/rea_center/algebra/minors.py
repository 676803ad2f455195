"""
Mineurs de Domokos-Lenagan (algèbre FRT) et mineurs tronqués (REA).

Chaque mineur a deux chemins de calcul indépendants : la somme sur les
bijections et le développement selon la première ligne. Les lignes
apparaissent dans l'ordre croissant, donc les mots produits sont déjà
ordonnés au sens PBW.
"""

import logging
from functools import lru_cache
from itertools import combinations
from math import factorial

import numpy as np

from rea_center.algebra.ncpoly import FRT, REA, NCPoly
from rea_center.algebra.pbw import normal_form, theta
from rea_center.algebra.qcomb import (
    all_bijections,
    complement,
    exceedance,
    gamma,
    index_set,
    length_perm,
    length_U,
    remove,
    subsets,
    wt,
)
from rea_center.algebra.scalars import eval_q1, qpow
from rea_center.config.settings import VERIFICATION
from rea_center.processors.validator import build_report
from rea_center.utils.errors import ContractViolation

logger = logging.getLogger(__name__)


def signed_qpow(exponent):
    """(-q)^exponent."""
    return qpow(exponent) * (-1 if exponent % 2 else 1)


def _check_sizes(I, J, N):
    I, J = index_set(I, N), index_set(J, N)
    if len(I) != len(J):
        raise ContractViolation(f"Mineur non carré: #I={len(I)}, #J={len(J)}")
    return I, J


def _check_auxiliary(U, I, J, N):
    U = index_set(U, N)
    overlap = set(U) & (set(I) | set(J))
    if overlap:
        raise ContractViolation(f"L'ensemble auxiliaire rencontre I ∪ J: {sorted(overlap)}")
    return U


def _word(source, targets):
    return tuple(zip(source, targets))


def dlmin(I, J, N):
    """
    Mineur de Domokos-Lenagan
    q^{-wt(I)-wt(J)} Σ_σ (-q)^{l(σ)} x^{i_1}_{σ(j_1)} ... x^{i_k}_{σ(j_k)}.

    Returns:
        NCPoly: Élément de l'algèbre FRT, k! termes

    Raises:
        ContractViolation: si #I != #J ou si un indice sort de [1, N]
    """
    I, J = _check_sizes(I, J, N)
    prefactor = qpow(-wt(I) - wt(J))
    terms = {}
    for tau in all_bijections(I, J):
        terms[_word(I, tau.targets)] = prefactor * signed_qpow(length_perm(tau.targets))
    return NCPoly(FRT, N, terms)


def ptmin(U, I, J, N):
    """
    Mineur tronqué q^{-wt(I)-wt(J)} Σ_τ (-q)^{l_U(τ)} q^{e(τ)} a^{i_1}_{τ(i_1)} ... a^{i_k}_{τ(i_k)}.

    Raises:
        ContractViolation: si #I != #J ou si U rencontre I ∪ J
    """
    I, J = _check_sizes(I, J, N)
    U = _check_auxiliary(U, I, J, N)
    prefactor = qpow(-wt(I) - wt(J))
    terms = {}
    for tau in all_bijections(I, J):
        coefficient = signed_qpow(length_U(tau, U)) * qpow(exceedance(tau))
        terms[_word(I, tau.targets)] = prefactor * coefficient
    return NCPoly(REA, N, terms)


@lru_cache(maxsize=None)
def _dl_rowexp(I, J, N):
    if not I:
        return NCPoly.one(FRT, N)
    i_1 = I[0]
    result = NCPoly.zero(FRT, N)
    for m, j_m in enumerate(J, start=1):
        factor = signed_qpow(m - 1) * qpow(-i_1 - j_m)
        cofactor = _dl_rowexp(I[1:], remove(J, j_m), N)
        result = result + (NCPoly.generator(FRT, i_1, j_m, N) * cofactor).scale(factor)
    return result


def dlmin_rowexp(I, J, N):
    """Mineur de Domokos-Lenagan par développement selon la première ligne."""
    I, J = _check_sizes(I, J, N)
    return _dl_rowexp(I, J, N)


@lru_cache(maxsize=None)
def _pt_rowexp(U, I, J, N):
    if not I:
        return NCPoly.one(REA, N)
    i_1 = I[0]
    result = NCPoly.zero(REA, N)
    for m, j_m in enumerate(J, start=1):
        exponent = m - 1 + gamma(U, I, J, m)
        factor = signed_qpow(exponent) * qpow(theta(j_m - i_1) - i_1 - j_m)
        cofactor = _pt_rowexp(U, I[1:], remove(J, j_m), N)
        result = result + (NCPoly.generator(REA, i_1, j_m, N) * cofactor).scale(factor)
    return result


def ptmin_rowexp(U, I, J, N):
    """
    Mineur tronqué par développement selon la première ligne :
    Σ_m (-q)^{m-1+γ(m)} q^{θ(j_m - i_1) - i_1 - j_m} a^{i_1}_{j_m} PT_U(I - i_1, J - j_m).
    """
    I, J = _check_sizes(I, J, N)
    U = _check_auxiliary(U, I, J, N)
    return _pt_rowexp(U, I, J, N)


def row_expansion_terms(U, I, J, N):
    """
    Cofacteurs du premier développement d'un mineur tronqué.

    Returns:
        list: Triplets (j_m, coefficient, sous-mineur)
    """
    I, J = _check_sizes(I, J, N)
    U = _check_auxiliary(U, I, J, N)
    if not I:
        return []
    i_1 = I[0]
    rows = []
    for m, j_m in enumerate(J, start=1):
        factor = signed_qpow(m - 1 + gamma(U, I, J, m)) * qpow(theta(j_m - i_1) - i_1 - j_m)
        rows.append((j_m, factor, ptmin(U, I[1:], remove(J, j_m), N)))
    return rows


def dl_coinv(k, N):
    """Co-invariant D_k = Σ_{#I = k} DLmin(I, I)."""
    if not 1 <= k <= N:
        raise ContractViolation(f"k={k} hors de [1, {N}]")
    result = NCPoly.zero(FRT, N)
    for I in combinations(range(1, N + 1), k):
        result = result + dlmin(I, I, N)
    return result


def _minor_residuals(U, I, J, N):
    residuals = []
    case = {"I": list(I), "J": list(J), "U": list(U)}
    direct = ptmin(U, I, J, N)
    if direct != ptmin_rowexp(U, I, J, N):
        residuals.append({**case, "property": "ptmin_rowexp"})
    if len(direct.terms) != factorial(len(I)):
        residuals.append({**case, "property": "term_count", "observed": len(direct.terms)})
    if normal_form(direct) != direct:
        residuals.append({**case, "property": "ordered"})
    if I == J:
        for word, coefficient in direct.terms.items():
            sigma = tuple(col for _, col in word)
            if eval_q1(coefficient) != (-1) ** length_perm(sigma):
                residuals.append({**case, "property": "classical_sign"})
                break
    return residuals


def _cases_exhaustive(N):
    for size in range(N + 1):
        for I in combinations(range(1, N + 1), size):
            for J in combinations(range(1, N + 1), size):
                free = complement(set(I) | set(J), N)
                for U in subsets(len(free)):
                    yield tuple(free[p - 1] for p in U), I, J


def _cases_random(N, count, rng):
    for _ in range(count):
        size = int(rng.integers(1, N + 1))
        I = tuple(sorted(int(v) + 1 for v in rng.choice(N, size, replace=False)))
        J = tuple(sorted(int(v) + 1 for v in rng.choice(N, size, replace=False)))
        free = complement(set(I) | set(J), N)
        mask = rng.integers(0, 2, size=len(free))
        yield tuple(u for u, keep in zip(free, mask) if keep), I, J


def verify_row_expansions(N, random_cases=None, seed=None):
    """
    Compare somme sur les bijections et développement selon la première
    ligne, pour les deux familles de mineurs.

    Exhaustif jusqu'à VERIFICATION['rowexp_exhaustive_max_N'], tirages
    aléatoires au-delà.

    Returns:
        dict: Rapport de vérification
    """
    seed = seed if seed is not None else VERIFICATION["random_seed"]
    exhaustive = N <= VERIFICATION["rowexp_exhaustive_max_N"]
    if exhaustive:
        cases = list(_cases_exhaustive(N))
    else:
        count = random_cases if random_cases is not None else VERIFICATION["random_cases"]
        cases = list(_cases_random(N, count, np.random.default_rng(seed)))

    residuals = []
    dl_pairs = set()
    for U, I, J in cases:
        residuals.extend(_minor_residuals(U, I, J, N))
        dl_pairs.add((I, J))
    for I, J in sorted(dl_pairs):
        direct = dlmin(I, J, N)
        if direct != dlmin_rowexp(I, J, N):
            residuals.append({"I": list(I), "J": list(J), "property": "dlmin_rowexp"})
        if len(direct.terms) != factorial(len(I)):
            residuals.append({"I": list(I), "J": list(J), "property": "dl_term_count"})

    logger.debug(f"Développements N={N}: {len(cases)} mineurs tronqués, {len(dl_pairs)} mineurs DL")
    return build_report(
        "row_expansions",
        {"N": N, "mode": "exhaustive" if exhaustive else "random", "seed": None if exhaustive else seed},
        residuals,
        details={"truncated_cases": len(cases), "dl_cases": len(dl_pairs)},
    )

