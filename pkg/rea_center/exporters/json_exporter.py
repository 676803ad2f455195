"""
Module pour l'exportation des résultats au format JSON.
"""

import json
import logging
import os

from rea_center.config.settings import JSON_SETTINGS

logger = logging.getLogger(__name__)


def format_json(data, indent=None):
    """
    Formate les données pour l'export JSON.

    Les clés sont triées pour que deux exécutions identiques produisent le
    même texte.

    Args:
        data (dict): Données à formater
        indent (int): Nombre d'espaces pour l'indentation (None pour utiliser la valeur par défaut)

    Returns:
        str: Chaîne JSON formatée
    """
    indent_value = indent if indent is not None else JSON_SETTINGS["indent"]
    return json.dumps(
        data,
        ensure_ascii=JSON_SETTINGS["ensure_ascii"],
        indent=indent_value,
        sort_keys=True,
        default=_default,
    )


def _default(value):
    if hasattr(value, "to_json"):
        return value.to_json()
    if isinstance(value, (set, frozenset, tuple)):
        return list(value)
    return str(value)


def export_to_json(data, output_path, indent=None):
    """
    Exporte les données au format JSON.

    Args:
        data (dict): Données à exporter
        output_path (str): Chemin du fichier de sortie
        indent (int): Nombre d'espaces pour l'indentation

    Returns:
        bool: True si l'export a réussi, False sinon
    """
    try:
        directory = os.path.dirname(output_path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        with open(output_path, "w", encoding="utf-8") as f:
            f.write(format_json(data, indent) + "\n")
        logger.info(f"Données exportées au format JSON: {output_path}")
        return True
    except (OSError, TypeError) as e:
        logger.error(f"Erreur lors de l'export au format JSON: {str(e)}")
        return False


def export_to_jsonl(data_list, output_path):
    """
    Exporte une liste de données au format JSONL (JSON Lines).

    Args:
        data_list (list): Liste de dictionnaires à exporter
        output_path (str): Chemin du fichier de sortie

    Returns:
        bool: True si l'export a réussi, False sinon
    """
    try:
        directory = os.path.dirname(output_path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        with open(output_path, "w", encoding="utf-8") as f:
            for item in data_list:
                f.write(
                    json.dumps(item, ensure_ascii=JSON_SETTINGS["ensure_ascii"], sort_keys=True, default=_default)
                    + "\n"
                )
        logger.info(f"Données exportées au format JSONL: {output_path}")
        return True
    except (OSError, TypeError) as e:
        logger.error(f"Erreur lors de l'export au format JSONL: {str(e)}")
        return False
