"""
Exporteurs des résultats (texte, LaTeX, JSON, CSV).
"""
