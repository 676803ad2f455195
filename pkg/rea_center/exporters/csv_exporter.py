"""
Module pour l'exportation des tableaux de résultats au format CSV.
"""

import logging
import os

import pandas as pd

from rea_center.config.settings import CSV_SETTINGS

logger = logging.getLogger(__name__)


def to_dataframe(rows):
    """
    Construit un DataFrame à partir d'une liste de dictionnaires ; les
    valeurs non scalaires sont converties en texte.
    """
    df = pd.DataFrame(rows)
    for column in df.columns:
        if df[column].map(lambda v: isinstance(v, (list, tuple, dict))).any():
            df[column] = df[column].map(str)
    return df


def export_to_csv(rows, output_path, delimiter=None):
    """
    Exporte des lignes au format CSV.

    Args:
        rows (list): Liste de dictionnaires à exporter
        output_path (str): Chemin du fichier de sortie
        delimiter (str): Délimiteur à utiliser (None pour utiliser la valeur par défaut)

    Returns:
        bool: True si l'export a réussi, False sinon
    """
    if not rows:
        logger.warning(f"Aucune donnée à exporter vers {output_path}")
        return False
    try:
        directory = os.path.dirname(output_path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        delimiter_value = delimiter if delimiter is not None else CSV_SETTINGS["delimiter"]
        to_dataframe(rows).to_csv(
            output_path,
            sep=delimiter_value,
            quotechar=CSV_SETTINGS["quotechar"],
            quoting=CSV_SETTINGS["quoting"],
            index=False,
            encoding=CSV_SETTINGS["encoding"],
        )
        logger.info(f"Données exportées au format CSV: {output_path}")
        return True
    except OSError as e:
        logger.error(f"Erreur lors de l'export au format CSV: {str(e)}")
        return False


def summarize_reports(reports):
    """
    Une ligne par rapport : vérification, paramètres, verdict, nombre de résidus.
    """
    rows = []
    for report in reports:
        row = {"check": report["check"], "pass": report["pass"], "residuals": len(report["residuals"])}
        for key, value in sorted(report["params"].items()):
            row[f"param_{key}"] = value
        rows.append(row)
    return rows
