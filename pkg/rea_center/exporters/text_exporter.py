"""
Rendu texte et LaTeX des objets du moteur (polynômes, éléments de Hecke,
opérateurs tensoriels, rapports de vérification).
"""

import logging

from rea_center.algebra.hecke import HeckeElt, format_hecke, length
from rea_center.algebra.ncpoly import NCPoly, format_poly, join_terms, latex_poly
from rea_center.algebra.rmatrix import TensorOp
from rea_center.algebra.scalars import ONE, RatFunc
from rea_center.exporters.json_exporter import format_json

logger = logging.getLogger(__name__)


def latex_hecke(x):
    parts = []
    for w, c in sorted(x.terms.items(), key=lambda item: (length(item[0]), item[0])):
        basis = "T_{" + "".join(str(v) for v in w) + "}"
        if c == ONE:
            parts.append(basis)
        elif c == -ONE:
            parts.append(f"-{basis}")
        elif c.is_monomial():
            parts.append(f"{c.to_latex()} {basis}")
        else:
            parts.append(f"\\left({c.to_latex()}\\right) {basis}")
    return join_terms(parts)


def format_tensor(op):
    """Triplets creux, une entrée par ligne : sortie, entrée, coefficient."""
    if op.is_zero():
        return "0"
    return "\n".join(
        f"{','.join(map(str, out))}\t{','.join(map(str, into))}\t{value}"
        for out, into, value in op.triplets()
    )


def latex_tensor(op):
    rows = [
        f"({','.join(map(str, out))}),({','.join(map(str, into))}) & {value.to_latex()} \\\\"
        for out, into, value in op.triplets()
    ]
    return "\\begin{array}{ll}\n" + "\n".join(rows) + "\n\\end{array}"


def format_report(report):
    """
    Résumé lisible d'un rapport : verdict, paramètres, puis un résidu par ligne.
    """
    params = ", ".join(f"{key}={value}" for key, value in sorted(report["params"].items()))
    status = "PASS" if report["pass"] else "FAIL"
    lines = [f"{report['check']} [{params}]: {status}"]
    for residual in report["residuals"]:
        lines.append(f"  - {residual}")
    for key, value in sorted(report.get("details", {}).items()):
        if isinstance(value, (str, int, bool)):
            lines.append(f"  {key}: {value}")
    return "\n".join(lines)


def render(value, output_format="text", factor=True):
    """
    Rend un objet du moteur dans le format demandé.

    Args:
        value: NCPoly, HeckeElt, TensorOp, RatFunc ou rapport (dict)
        output_format (str): 'text', 'latex' ou 'json'
        factor (bool): Factoriser la puissance de q commune (texte uniquement)

    Returns:
        str: Représentation
    """
    if output_format == "json":
        return format_json(value.to_json() if hasattr(value, "to_json") else value)
    if isinstance(value, NCPoly):
        return latex_poly(value) if output_format == "latex" else format_poly(value, factor=factor)
    if isinstance(value, HeckeElt):
        return latex_hecke(value) if output_format == "latex" else format_hecke(value)
    if isinstance(value, TensorOp):
        return latex_tensor(value) if output_format == "latex" else format_tensor(value)
    if isinstance(value, RatFunc):
        return value.to_latex() if output_format == "latex" else str(value)
    if isinstance(value, dict) and "check" in value:
        return format_report(value)
    logger.debug(f"Rendu générique pour {type(value).__name__}")
    return str(value)
