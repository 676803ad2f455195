"""
Statistiques combinatoires des minors tronqués et des cliques d'expansion.

Les ensembles d'indices sont des tuples strictement croissants ; une
bijection tau: I -> J est stockée positionnellement contre la source triée.
"""

import logging
from collections import namedtuple
from itertools import combinations, permutations

from rea_center.processors.validator import build_report
from rea_center.utils.errors import ContractViolation

logger = logging.getLogger(__name__)

Bijection = namedtuple("Bijection", ["source", "targets"])


def index_set(elements, N=None):
    """
    Forme canonique d'un ensemble d'indices.

    Raises:
        ContractViolation: si un indice est répété ou sort de [1, N]
    """
    values = tuple(sorted(int(e) for e in elements))
    if len(set(values)) != len(values):
        raise ContractViolation(f"Indices répétés dans {list(elements)}")
    if values and (values[0] < 1 or (N is not None and values[-1] > N)):
        raise ContractViolation(f"Indices hors de [1,{N}]: {list(values)}")
    return values


def subsets(N, size=None):
    """Sous-ensembles de [N], par taille croissante puis ordre lexicographique."""
    sizes = range(N + 1) if size is None else [size]
    for k in sizes:
        yield from combinations(range(1, N + 1), k)


def complement(I, N):
    return tuple(i for i in range(1, N + 1) if i not in I)


def add(I, i):
    return index_set(I + (i,))


def remove(I, i):
    return tuple(e for e in I if e != i)


def bijection(source, targets):
    """
    Args:
        source (iterable): Ensemble de départ
        targets (iterable): Images, dans l'ordre croissant de la source
    """
    source = index_set(source)
    targets = tuple(targets)
    if len(targets) != len(source) or len(set(targets)) != len(targets):
        raise ContractViolation(f"Images invalides pour {list(source)}: {list(targets)}")
    return Bijection(source, targets)


def order_preserving(I, J):
    """tau_IJ : l'unique bijection croissante I -> J."""
    if len(I) != len(J):
        raise ContractViolation(f"Tailles différentes: {list(I)} et {list(J)}")
    return Bijection(tuple(I), tuple(J))


def all_bijections(I, J):
    for targets in permutations(J):
        yield Bijection(tuple(I), targets)


def wt(I):
    return sum(I)


def length_perm(sigma):
    """Nombre d'inversions d'une permutation en notation une ligne."""
    sigma = tuple(sigma)
    return sum(1 for a, b in combinations(range(len(sigma)), 2) if sigma[a] > sigma[b])


def exceedance_perm(sigma):
    return sum(1 for position, value in enumerate(sigma, start=1) if value > position)


def length_U(tau, U):
    """
    Longueur de tau relativement à l'ensemble auxiliaire U : inversions de
    l'extension de tau par l'identité sur U.

    Raises:
        ContractViolation: si U rencontre la source ou le but de tau
    """
    overlap = set(U) & (set(tau.source) | set(tau.targets))
    if overlap:
        raise ContractViolation(f"L'ensemble auxiliaire rencontre I ∪ J: {sorted(overlap)}")
    extended = dict(zip(tau.source, tau.targets))
    extended.update((u, u) for u in U)
    domain = sorted(extended)
    return sum(
        1 for a, b in combinations(domain, 2) if extended[a] > extended[b]
    )


def exceedance(tau):
    return sum(1 for a, b in zip(tau.source, tau.targets) if b > a)


def count_between(K, r, t):
    """N(K, r, t) = #K ∩ (r, t), intervalle ouvert quel que soit l'ordre de r et t."""
    low, high = min(r, t), max(r, t)
    return sum(1 for k in K if low < k < high)


def count_closed(K, r, t):
    low, high = min(r, t), max(r, t)
    return sum(1 for k in K if low <= k <= high)


def ind(I, i):
    """Rang (à partir de 1) de i dans I ∪ {i}."""
    return sum(1 for e in I if e < i) + 1


def gamma(U, I, J, m):
    """#{a ∈ U : a strictement entre i_1 et j_m}."""
    if not I or not 1 <= m <= len(J):
        raise ContractViolation(f"Indice m={m} invalide pour J={list(J)}")
    return count_between(U, I[0], J[m - 1])


def remove_first_row(tau):
    """
    tau_m : restriction de tau à I - {i_1}.

    Returns:
        tuple: (tau_m, m) où tau(i_1) = j_m
    """
    J = tuple(sorted(tau.targets))
    m = J.index(tau.targets[0]) + 1
    return Bijection(tau.source[1:], tau.targets[1:]), m


def stats(I, J, U, tau):
    """Statistiques (wt, longueur, excédance, gamma) d'une bijection."""
    reduced, m = remove_first_row(tau) if tau.source else (tau, 0)
    return {
        "wt_I": wt(I),
        "wt_J": wt(J),
        "length_U": length_U(tau, U),
        "exceedance": exceedance(tau),
        "m": m,
        "gamma": gamma(U, I, J, m) if tau.source else 0,
    }


def clique(k, I, J, N):
    """
    Clique d'expansion Cl_k(I, J).

    Returns:
        list: Paires (I', J'), triées
    """
    I, J = index_set(I, N), index_set(J, N)
    m = len(I)
    if len(J) != m or m > k:
        raise ContractViolation(f"Clique mal définie: #I={m}, #J={len(J)}, k={k}")
    if m == k:
        return [((), ())] if I == J else []

    start = (I[-1] if I else 0) + 1
    result = []
    for I_prime in combinations(range(start, N + 1), k - m):
        union = set(I) | set(I_prime)
        if not set(J) <= union:
            continue
        J_prime = tuple(sorted(union - set(J)))
        if len(J_prime) == k - m:
            result.append((I_prime, J_prime))
    return sorted(result)


def beta(k, I, J, element, N):
    """
    Réindexation ((I', J'), m) -> (s, t, I'', J'') avec s = i'_1, t = j'_m.
    """
    (I_prime, J_prime), m = element
    if (I_prime, J_prime) not in clique(k, I, J, N) or not 1 <= m <= len(J_prime):
        raise ContractViolation(f"Élément hors du domaine: {element}")
    s, t = I_prime[0], J_prime[m - 1]
    return s, t, remove(I_prime, s), remove(J_prime, t)


def beta_inv(k, I, J, image, N):
    """
    Inverse de beta : (s, t, I'', J'') -> ((I'' ∪ s, J'' ∪ t), m), m le rang de t dans J'' ∪ t.
    """
    s, t, I_second, J_second = image
    if s <= (I[-1] if I else 0) or s > N or t in J or not 1 <= t <= N:
        raise ContractViolation(f"Couple (s, t) = ({s}, {t}) hors du domaine")
    if (tuple(I_second), tuple(J_second)) not in clique(k, add(I, s), add(J, t), N):
        raise ContractViolation(f"({list(I_second)}, {list(J_second)}) n'est pas dans la clique")
    return (add(I_second, s), add(J_second, t)), ind(J_second, t)


def beta_domain(k, I, J, N):
    return [
        (pair, m)
        for pair in clique(k, I, J, N)
        for m in range(1, k - len(I) + 1)
    ]


def beta_codomain(k, I, J, N):
    start = (I[-1] if I else 0) + 1
    return [
        (s, t, I_second, J_second)
        for s in range(start, N + 1)
        for t in range(1, N + 1)
        if t not in J
        for I_second, J_second in clique(k, add(I, s), add(J, t), N)
    ]


def _check_configuration(I, J, I_second, J_second, s, t, U, k, N):
    if s == t:
        raise ContractViolation("Configuration s = t exclue")
    if s <= (I[-1] if I else 0) or t in J:
        raise ContractViolation(f"Couple (s, t) = ({s}, {t}) hors du domaine")
    if (tuple(I_second), tuple(J_second)) not in clique(k, add(I, s), add(J, t), N):
        raise ContractViolation(f"({list(I_second)}, {list(J_second)}) n'est pas dans Cl_{k}")
    if set(U) & (set(I) | set(I_second) | {s}):
        raise ContractViolation(f"L'ensemble auxiliaire {list(U)} rencontre I^s ∪ I''")


def X_def(I, J, I_second, J_second, s, t, U, k, N):
    """X par sa définition : ind_{J''}(t) - 1 + gamma_U^{(I'')^s, (J'')^t}(ind_{J''}(t))."""
    _check_configuration(I, J, I_second, J_second, s, t, U, k, N)
    m = ind(J_second, t)
    return m - 1 + gamma(U, add(I_second, s), add(J_second, t), m)


def X_closed(I, J, I_second, s, t, U):
    """Forme close de X, indépendante de J''."""
    if s == t:
        raise ContractViolation("Configuration s = t exclue")
    return (
        count_between(set(U) | set(I) | set(I_second), s, t)
        + 1
        + ind(I, s)
        - ind(J, t)
        - 2 * count_closed(I, s, t)
    )


def auxiliary_sr(U, s, r, t):
    return index_set([u for u in U if u not in (s, r)] + [t])


def Y(I, J, I_second, J_second, s, t, r, U):
    """
    Y = X(s, r) + longueur sur U_sr de tau_{(I'' - t) ∪ r, J''} + N((I'' - t) ∪ r, r, t).

    U_sr = (U - {s, r}) ∪ {t} : r devient une source et t, retiré de la
    source, devient un fil libre.
    """
    if not s < r < t or r in I_second or t not in I_second:
        raise ContractViolation(f"r = {r} invalide pour s = {s}, t = {t}")
    moved = add(remove(I_second, t), r)
    U_sr = auxiliary_sr(U, s, r, t)
    return (
        X_closed(I, J, I_second, s, r, U)
        + length_U(order_preserving(moved, J_second), U_sr)
        + count_between(moved, r, t)
    )


def _index_pairs(N, max_size=None):
    top = N if max_size is None else max_size
    for size in range(top + 1):
        for I in combinations(range(1, N + 1), size):
            for J in combinations(range(1, N + 1), size):
                yield I, J


def check_additivity(N):
    """Additivité de e et de la longueur au retrait de la première ligne."""
    residuals = []
    cases = 0
    for I, J in _index_pairs(N):
        if not I:
            continue
        free = complement(set(I) | set(J), N)
        for tau in all_bijections(I, J):
            reduced, m = remove_first_row(tau)
            theta = 1 if tau.targets[0] > tau.source[0] else 0
            for size in range(len(free) + 1):
                for U in combinations(free, size):
                    cases += 1
                    e_gap = exceedance(tau) - exceedance(reduced)
                    l_gap = length_U(tau, U) - length_U(reduced, U)
                    if e_gap != theta or l_gap != m - 1 + gamma(U, I, J, m):
                        residuals.append({"I": I, "J": J, "targets": tau.targets, "U": U})
    return residuals, cases


def check_beta(N):
    residuals = []
    cases = 0
    for k in range(1, N + 1):
        for I, J in _index_pairs(N, k - 1):
            domain = beta_domain(k, I, J, N)
            codomain = beta_codomain(k, I, J, N)
            images = [beta(k, I, J, element, N) for element in domain]
            cases += len(domain)
            if sorted(images) != sorted(codomain) or len(set(images)) != len(images):
                residuals.append({"k": k, "I": I, "J": J, "property": "image"})
                continue
            for element, image in zip(domain, images):
                if beta_inv(k, I, J, image, N) != element:
                    residuals.append({"k": k, "I": I, "J": J, "element": element})
    return residuals, cases


def _configurations(N):
    """(k, I, J, s, t, I'', J'') pour toutes les configurations valides de taille N."""
    for k in range(1, N + 1):
        for I, J in _index_pairs(N, k - 1):
            for s, t, I_second, J_second in beta_codomain(k, I, J, N):
                yield k, I, J, s, t, I_second, J_second


def check_x_closed_form(N):
    residuals = []
    cases = 0
    for k, I, J, s, t, I_second, J_second in _configurations(N):
        if s == t:
            continue
        free = complement(set(I) | {s} | set(I_second), N)
        for size in range(len(free) + 1):
            for U in combinations(free, size):
                cases += 1
                defined = X_def(I, J, I_second, J_second, s, t, U, k, N)
                closed = X_closed(I, J, I_second, s, t, U)
                if defined != closed:
                    residuals.append(
                        {"I": I, "J": J, "s": s, "t": t, "I''": I_second, "J''": J_second, "U": U}
                    )
    return residuals, cases


def _free_r(s, t, I_second):
    return [r for r in range(s + 1, t) if r not in I_second]


def check_telescoping(N):
    residuals = []
    cases = 0
    for k, I, J, s, t, I_second, J_second in _configurations(N):
        if s >= t:
            continue
        U = complement(set(I) | {s} | set(I_second), N)
        candidates = _free_r(s, t, I_second)
        for r, r_next in zip(candidates, candidates[1:]):
            cases += 1
            gap = Y(I, J, I_second, J_second, s, t, r_next, U) - Y(I, J, I_second, J_second, s, t, r, U)
            if gap != 2:
                residuals.append({"I": I, "J": J, "s": s, "t": t, "r": r, "gap": gap})
    return residuals, cases


def check_minimal_r(N):
    residuals = []
    cases = 0
    for k, I, J, s, t, I_second, J_second in _configurations(N):
        if s >= t:
            continue
        candidates = _free_r(s, t, I_second)
        if not candidates:
            continue
        cases += 1
        U = complement(set(I) | {s} | set(I_second), N)
        r = candidates[0]
        left = Y(I, J, I_second, J_second, s, t, r, U)
        tau = order_preserving(add(I_second, s), add(J_second, t))
        right = length_U(tau, U) + ind(J_second, t) - 1
        if left != right:
            residuals.append({"I": I, "J": J, "s": s, "t": t, "r": r, "Y": left, "expected": right})
    return residuals, cases


LEMMA_CHECKS = {
    "additivity": check_additivity,
    "beta_bijection": check_beta,
    "x_closed_form": check_x_closed_form,
    "telescoping": check_telescoping,
    "minimal_r": check_minimal_r,
}


def verify_lemmas(N, only=None):
    """
    Vérifie exhaustivement les identités combinatoires pour la taille N.

    Returns:
        dict: Rapport de vérification
    """
    residuals = []
    details = {}
    for name, check in LEMMA_CHECKS.items():
        if only and name not in only:
            continue
        failures, cases = check(N)
        details[name] = {"cases": cases, "failures": len(failures)}
        residuals.extend({"lemma": name, **failure} for failure in failures)
        logger.debug(f"{name} N={N}: {cases} cas, {len(failures)} échecs")
    return build_report("lemmas", {"N": N}, residuals, details=details)
