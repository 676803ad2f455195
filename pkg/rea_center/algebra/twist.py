"""
Twist quadratique Φ : REA -> FRT, son inverse Ψ, et l'application
alpha_k des endomorphismes de V^{⊗k} vers la REA.

Φ et Ψ ne sont implémentés qu'en degré au plus 2. En degré 3, les mineurs
quantiques Tmin proviennent du fichier de valeurs de référence et sont
recoupés par développement selon la première ligne.
"""

import logging
from functools import lru_cache

from rea_center.algebra.minors import dlmin, signed_qpow
from rea_center.algebra.ncpoly import FRT, REA, GenId, NCPoly, generator_order
from rea_center.algebra.pbw import normal_form
from rea_center.algebra.qcomb import add, count_between, index_set, remove
from rea_center.algebra.rmatrix import TensorOp, build_R, build_Rinv, build_Rtilde, elementary, tensor
from rea_center.algebra.scalars import ONE, Q, Q_DIFF, Q_INV, ZERO, qpow
from rea_center.config.settings import ALPHA_CALIBRATION
from rea_center.processors.validator import build_report
from rea_center.storage.fixture_store import expected_value, find_fixture
from rea_center.utils.errors import ContractViolation, OutOfScopeError

logger = logging.getLogger(__name__)

REALIZATIONS = ("words", "twisted")


def _ordered_pairs(N):
    generators = [(r, c) for r in range(1, N + 1) for c in range(1, N + 1)]
    return [(g, h) for g in generators for h in generators if g <= h]


def _check_ordered(algebra, i, j, k, l, N):
    for index in (i, j, k, l):
        if not 1 <= index <= N:
            raise ContractViolation(f"Indice {index} hors de [1, {N}]")
    if generator_order(GenId(algebra, i, j), GenId(algebra, k, l)) > 0:
        raise ContractViolation(f"Paire ({i},{j})({k},{l}) non ordonnée")


def _single(algebra, N, terms):
    return normal_form(NCPoly(algebra, N, terms))


def phi2(i, j, k, l, N):
    """
    Φ(a^i_j a^k_l) pour une paire ordonnée, par la table de cas :

    - i < k, j != k : x^i_j x^k_l
    - i = k, j != k : q x^i_j x^k_l
    - i < j = k : q^-1 x^i_j x^j_l + (q^-1 - q) Σ_{m>j} q^{-2(m-j)} x^i_m x^m_l
    - i = j = k : x^i_i x^i_l - (q - q^-1) Σ_{n>i} q^{-2(n-i)} x^i_n x^n_l

    Raises:
        ContractViolation: si la paire n'est pas ordonnée
    """
    _check_ordered(REA, i, j, k, l, N)
    if j != k:
        factor = ONE if i < k else Q
        return _single(FRT, N, {((i, j), (k, l)): factor})
    if i < j:
        terms = {((i, j), (j, l)): Q_INV}
        for m in range(j + 1, N + 1):
            terms[((i, m), (m, l))] = -(Q_DIFF * qpow(-2 * (m - j)))
        return _single(FRT, N, terms)
    terms = {((i, i), (i, l)): ONE}
    for n in range(i + 1, N + 1):
        terms[((i, n), (n, l))] = -(Q_DIFF * qpow(-2 * (n - i)))
    return _single(FRT, N, terms)


def phi2_contraction(i, j, k, l, N):
    """Φ(a^i_j a^k_l) = R^{in}_{st} x^s_m R̃^{mk}_{jn} x^t_l."""
    R = build_R(N)
    Rtilde = build_Rtilde(N)
    terms = {}
    for (out, into), r_value in R.entries.items():
        if out[0] != i:
            continue
        n = out[1]
        s, t = into
        for (tilde_out, tilde_in), tilde_value in Rtilde.entries.items():
            if tilde_out[1] != k or tilde_in != (j, n):
                continue
            m = tilde_out[0]
            word = ((s, m), (t, l))
            terms[word] = terms.get(word, ZERO) + r_value * tilde_value
    return _single(FRT, N, terms)


@lru_cache(maxsize=None)
def psi2(i, j, k, l, N):
    """
    Ψ(x^i_j x^k_l) = (R^{-1})^{ik}_{su} a^s_t R^{tu}_{jv} a^v_l, en forme normale REA.
    """
    _check_ordered(FRT, i, j, k, l, N)
    Rinv = build_Rinv(N)
    R = build_R(N)
    terms = {}
    for (out, into), inv_value in Rinv.entries.items():
        if out != (i, k):
            continue
        s, u = into
        for (r_out, r_in), r_value in R.entries.items():
            if r_out[1] != u or r_in[0] != j:
                continue
            t, v = r_out[0], r_in[1]
            word = ((s, t), (v, l))
            terms[word] = terms.get(word, ZERO) + inv_value * r_value
    return _single(REA, N, terms)


def _quadratic_map(p, target, pair_map):
    result = NCPoly.zero(target, p.N)
    for word, coefficient in normal_form(p).terms.items():
        if len(word) > 2:
            raise OutOfScopeError(f"Twist en degré {len(word)} non implémenté")
        if len(word) == 2:
            (i, j), (k, l) = word
            image = pair_map(i, j, k, l, p.N)
        else:
            image = NCPoly(target, p.N, {word: ONE})
        result = result + image.scale(coefficient)
    return result


def phi_quadratic(p):
    """
    Φ sur un polynôme REA de degré au plus 2.

    Raises:
        OutOfScopeError: en degré > 2
    """
    if p.algebra != REA:
        raise ContractViolation(f"Φ attend un polynôme REA, reçu {p.algebra}")
    return _quadratic_map(p, FRT, phi2)


def psi_quadratic(p):
    """
    Ψ sur un polynôme FRT de degré au plus 2.

    Raises:
        OutOfScopeError: en degré > 2
    """
    if p.algebra != FRT:
        raise ContractViolation(f"Ψ attend un polynôme FRT, reçu {p.algebra}")
    return _quadratic_map(p, REA, psi2)


def tmin(I, J, N):
    """
    Mineur quantique Tmin(I, J) = Ψ(DLmin(I, J)).

    Calculé en degré au plus 2 ; en degré 3, lu dans les valeurs de référence.

    Raises:
        OutOfScopeError: si le degré n'est pas couvert
    """
    I, J = index_set(I, N), index_set(J, N)
    if len(I) != len(J):
        raise ContractViolation(f"Mineur non carré: #I={len(I)}, #J={len(J)}")
    if len(I) <= 2:
        return psi_quadratic(dlmin(I, J, N))
    record = find_fixture("tmin", N, I=I, J=J)
    if record is None:
        raise OutOfScopeError(f"Tmin({list(I)}, {list(J)}) de degré {len(I)} non disponible pour N={N}")
    logger.debug(f"Tmin({list(I)}, {list(J)}) lu dans la fixture {record['id']}")
    return expected_value(record)


def verify_twist(N):
    """
    Table de cas contre contraction, Ψ∘Φ et Φ∘Ψ sur les paires ordonnées.

    Returns:
        dict: Rapport de vérification
    """
    residuals = []
    pairs = _ordered_pairs(N)
    for (i, j), (k, l) in pairs:
        case = {"pair": [i, j, k, l]}
        image = phi2(i, j, k, l, N)
        if image != phi2_contraction(i, j, k, l, N):
            residuals.append({**case, "property": "case_table", "residual": str(image - phi2_contraction(i, j, k, l, N))})
        word = NCPoly(REA, N, {((i, j), (k, l)): ONE})
        if psi_quadratic(image) != normal_form(word):
            residuals.append({**case, "property": "psi_phi"})
        frt_word = NCPoly(FRT, N, {((i, j), (k, l)): ONE})
        if phi_quadratic(psi2(i, j, k, l, N)) != frt_word:
            residuals.append({**case, "property": "phi_psi"})
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            if psi_quadratic(phi_quadratic(NCPoly.generator(REA, i, j, N))) != NCPoly.generator(REA, i, j, N):
                residuals.append({"generator": [i, j], "property": "degree_one"})
    return build_report("twist", {"N": N}, residuals, details={"pairs": len(pairs)})


def lemma_rhs(i, j, I, J, N):
    """
    Membre de droite attendu pour Φ(a^i_j Tmin(I, J)) lorsque i < min(I) :
    x^i_j DLmin(I, J) si j n'est pas dans I, sinon
    q^-1 x^i_j DLmin(I, J) + (q^-1 - q) Σ_{k>j} q^{j-k} (-q)^{N(I,j,k)} x^i_k DLmin(I - j + k, J).
    """
    x = NCPoly.generator(FRT, i, j, N)
    if j not in I:
        return normal_form(x * dlmin(I, J, N))
    result = (x * dlmin(I, J, N)).scale(Q_INV)
    for k in range(j + 1, N + 1):
        if k in I:
            continue
        between = count_between(I, j, k)
        factor = -(Q_DIFF * qpow(j - k)) * qpow(between) * (-1 if between % 2 else 1)
        moved = add(remove(I, j), k)
        result = result + (NCPoly.generator(FRT, i, k, N) * dlmin(moved, J, N)).scale(factor)
    return normal_form(result)


def verify_lemma_times_minor(N):
    """
    Φ(a^i_j Tmin(I, J)) pour #I = 1 et i < min(I), contre le membre de droite
    à deux cas.
    """
    residuals = []
    cases = 0
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            for i_1 in range(i + 1, N + 1):
                for j_1 in range(1, N + 1):
                    cases += 1
                    I, J = (i_1,), (j_1,)
                    product = NCPoly.generator(REA, i, j, N) * tmin(I, J, N)
                    observed = phi_quadratic(product)
                    expected = lemma_rhs(i, j, I, J, N)
                    if observed != expected:
                        residuals.append({"i": i, "j": j, "I": list(I), "J": list(J), "residual": str(observed - expected)})
    return build_report("lemma_times_minor", {"N": N}, residuals, details={"cases": cases})


def _psi_row_product(i, j, K, J, N):
    """Ψ(x^i_j DLmin(K, J)) pour i < min(K), tiré de Φ(a^i_j Tmin(K, J))."""
    result = NCPoly.generator(REA, i, j, N) * tmin(K, J, N)
    if j not in K:
        return result
    for k in range(j + 1, N + 1):
        if k in K:
            continue
        between = count_between(K, j, k)
        factor = -(Q_DIFF * qpow(j - k)) * qpow(between) * (-1 if between % 2 else 1)
        result = result - _psi_row_product(i, k, add(remove(K, j), k), J, N).scale(factor)
    return result.scale(Q)


def tmin_first_row(I, J, N):
    """
    Tmin(I, J) reconstruit à partir des Tmin de degré #I - 1 : développement
    de DLmin(I, J) selon la première ligne, puis Ψ de chaque produit
    x^{i_1}_{j_m} DLmin(I - i_1, J - j_m).

    Sert de contrôle indépendant des Tmin de degré 3 lus dans les valeurs de
    référence.
    """
    I, J = index_set(I, N), index_set(J, N)
    if len(I) != len(J):
        raise ContractViolation(f"Mineur non carré: #I={len(I)}, #J={len(J)}")
    if not I:
        return NCPoly.one(REA, N)
    i_1, rest = I[0], I[1:]
    result = NCPoly.zero(REA, N)
    for m, j_m in enumerate(J, start=1):
        factor = signed_qpow(m - 1) * qpow(-i_1 - j_m)
        result = result + _psi_row_product(i_1, j_m, rest, remove(J, j_m), N).scale(factor)
    return normal_form(result)


def weight(J, a, b):
    """w(J) = Π_t q^{a j_t + b}."""
    return qpow(sum(a * j + b for j in J))


def alpha_k(f, N, a=None, b=None, realization=None):
    """
    alpha_k(f) = Σ_{I,J} w(J) f^J_I a^{i_1}_{j_1} ... a^{i_k}_{j_k}, en forme normale.

    La réalisation "words" prend les mots REA tels quels ; la réalisation
    "twisted" forme le polynôme FRT de mêmes coefficients puis applique Ψ
    (k <= 2).

    Args:
        f (TensorOp): Endomorphisme de V^{⊗k}
        N (int): dim V
        a, b (int): Paramètres du poids (défaut : ALPHA_CALIBRATION['default'])
        realization (str): "words" ou "twisted"

    Returns:
        NCPoly: Élément de la REA
    """
    default = ALPHA_CALIBRATION["default"]
    a = default["a"] if a is None else a
    b = default["b"] if b is None else b
    realization = realization or default["realization"]
    if realization not in REALIZATIONS:
        raise ContractViolation(f"Réalisation inconnue: {realization}")
    if f.N != N:
        raise ContractViolation(f"Opérateur sur V de dimension {f.N}, N={N} attendu")
    terms = {}
    for (out, into), value in f.entries.items():
        word = tuple(zip(into, out))
        terms[word] = terms.get(word, ZERO) + weight(out, a, b) * value
    if realization == "words":
        return normal_form(NCPoly(REA, N, terms))
    if f.k > 2:
        raise OutOfScopeError(f"Réalisation tordue de alpha_{f.k} non disponible (degré > 2)")
    return psi_quadratic(NCPoly(FRT, N, terms))


def scalar_ratio(observed, target):
    """
    Scalaire λ tel que observed = λ target, ou None.
    """
    if target.is_zero():
        return ONE if observed.is_zero() else None
    word, coefficient = target.sorted_terms()[0]
    ratio = observed.coefficient(word) / coefficient
    if ratio.is_zero() or observed != target.scale(ratio):
        return None
    return ratio


def check_multiplicative(N, a=None, b=None, realization=None):
    """
    alpha_2(f ⊗ g) contre alpha_1(f) alpha_1(g) pour l'identité et toutes
    les matrices élémentaires E_ij de V.

    Returns:
        list: Cas en échec
    """
    operators = [("id", TensorOp.identity(N, 1))]
    operators += [
        (f"E{out}{into}", elementary(N, out, into))
        for out in range(1, N + 1)
        for into in range(1, N + 1)
    ]
    failures = []
    for name_f, f in operators:
        for name_g, g in operators:
            left = alpha_k(tensor(f, g), N, a, b, realization)
            right = normal_form(alpha_k(f, N, a, b, realization) * alpha_k(g, N, a, b, realization))
            if left != right:
                failures.append({"f": name_f, "g": name_g})
    return failures
