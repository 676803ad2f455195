"""
Algèbre linéaire exacte sur Q(q) pour des matrices creuses.

Une ligne est un dictionnaire colonne -> RatFunc sans coefficient nul.
"""

import logging

from rea_center.algebra.scalars import ONE, ZERO, as_ratfunc

logger = logging.getLogger(__name__)


def _clean(row):
    return {c: v for c, v in row.items() if not v.is_zero()}


def _axpy(target, source, factor):
    """target - factor * source."""
    result = dict(target)
    for column, value in source.items():
        total = result.get(column, ZERO) - factor * value
        if total.is_zero():
            result.pop(column, None)
        else:
            result[column] = total
    return result


def rref(rows, columns):
    """
    Forme échelonnée réduite par élimination de Gauss-Jordan.

    Args:
        rows (list): Lignes creuses
        columns (list): Ordre des colonnes pour le choix des pivots

    Returns:
        tuple: (lignes réduites non nulles, colonnes pivots)
    """
    pending = [_clean({c: as_ratfunc(v) for c, v in row.items()}) for row in rows]
    pending = [row for row in pending if row]
    reduced = []
    pivots = []
    for column in columns:
        index = next((i for i, row in enumerate(pending) if column in row), None)
        if index is None:
            continue
        pivot_row = pending.pop(index)
        inverse = pivot_row[column].inv()
        pivot_row = {c: v * inverse for c, v in pivot_row.items()}
        pending = [
            _axpy(row, pivot_row, row[column]) if column in row else row for row in pending
        ]
        pending = [row for row in pending if row]
        reduced = [
            _axpy(row, pivot_row, row[column]) if column in row else row for row in reduced
        ]
        reduced.append(pivot_row)
        pivots.append(column)
        if not pending:
            break
    return reduced, pivots


def rank(rows, columns):
    return len(rref(rows, columns)[1])


def solve(rows, rhs, columns):
    """
    Résout A x = b.

    Args:
        rows (list): Lignes creuses de A
        rhs (list): Second membre, un scalaire par ligne
        columns (list): Inconnues

    Returns:
        tuple: (solution dict ou None si incompatible, inconnues libres)
    """
    marker = object()
    augmented = []
    for row, value in zip(rows, rhs):
        extended = dict(row)
        value = as_ratfunc(value)
        if not value.is_zero():
            extended[marker] = value
        augmented.append(extended)
    reduced, pivots = rref(augmented, list(columns) + [marker])
    if marker in pivots:
        return None, []
    free = [c for c in columns if c not in pivots]
    solution = {c: ZERO for c in columns}
    for row, pivot in zip(reduced, pivots):
        solution[pivot] = row.get(marker, ZERO)
    return solution, free


def invert(matrix, indices):
    """
    Inverse d'une matrice carrée creuse.

    Args:
        matrix (dict): (ligne, colonne) -> coefficient
        indices (list): Ensemble ordonné des indices

    Returns:
        dict: (ligne, colonne) -> coefficient de l'inverse

    Raises:
        ZeroDivisionError: si la matrice est singulière
    """
    rows = {i: {} for i in indices}
    for (row, column), value in matrix.items():
        rows[row][("a", column)] = as_ratfunc(value)
    for i in indices:
        rows[i][("b", i)] = ONE
    columns = [("a", c) for c in indices] + [("b", c) for c in indices]
    reduced, pivots = rref([rows[i] for i in indices], columns)
    if pivots[: len(indices)] != [("a", c) for c in indices] or len(pivots) < len(indices):
        raise ZeroDivisionError("Matrice singulière")
    inverse = {}
    for row, pivot in zip(reduced, pivots):
        for (side, column), value in row.items():
            if side == "b":
                inverse[(pivot[1], column)] = value
    return inverse
