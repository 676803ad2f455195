"""
Exceptions du moteur.
"""


class ReaCenterError(Exception):
    """Erreur de base du moteur REA/FRT."""


class ParseError(ReaCenterError):
    """Texte mal formé ; `position` est l'indice du caractère fautif."""

    def __init__(self, message, position=0):
        super().__init__(f"{message} (position {position})")
        self.position = position


class ContractViolation(ReaCenterError):
    """Arguments hors du domaine d'une opération."""


class NonTerminationError(ReaCenterError):
    """Budget de réécriture épuisé pendant le calcul d'une forme normale."""


class OutOfScopeError(ReaCenterError):
    """Calcul demandé hors du domaine implémenté (degré du twist, fixtures)."""


class ConventionError(ReaCenterError):
    """Aucune convention ne satisfait les contraintes de calibration."""


class PoleError(ReaCenterError):
    """Évaluation en q = 1 d'une fraction ayant un pôle en 1."""
