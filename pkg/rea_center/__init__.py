"""
Calcul symbolique exact dans l'algèbre d'équation de réflexion et l'algèbre FRT.
"""

__version__ = "0.1.0"
