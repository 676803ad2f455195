"""
Modules de traitement : rapports de vérification, fixtures et cache.
"""

from . import validator

__all__ = ["validator"]
