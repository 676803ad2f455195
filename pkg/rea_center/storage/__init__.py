"""
Modules de stockage des formes normales.
"""

from .normal_form_store import NormalFormStore

__all__ = ["NormalFormStore"]
