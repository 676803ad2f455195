"""
Module pour la construction et la validation des rapports de vérification.
"""

import json
import logging
import os

from rea_center.config.settings import SCHEMAS_DIR

logger = logging.getLogger(__name__)


def build_report(check, params, residuals, details=None, passed=None):
    """
    Construit un rapport de vérification.

    Args:
        check (str): Nom de la vérification
        params (dict): Paramètres de l'appel
        residuals (list): Cas en échec, chacun décrit par un dictionnaire
        details (dict): Informations complémentaires
        passed (bool): Verdict explicite (par défaut : aucun résidu)

    Returns:
        dict: Rapport avec les clés 'check', 'params', 'pass', 'residuals', 'details'
    """
    return {
        "check": check,
        "params": params,
        "pass": (not residuals) if passed is None else bool(passed),
        "residuals": list(residuals),
        "details": details or {},
    }


def load_schema(schema_name):
    """
    Charge un schéma JSON de validation.

    Args:
        schema_name (str): Nom du schéma à charger

    Returns:
        dict: Schéma JSON, ou None si le chargement échoue
    """
    schema_path = os.path.join(SCHEMAS_DIR, f"{schema_name}.json")
    try:
        with open(schema_path, "r", encoding="utf-8") as f:
            return json.load(f)
    except FileNotFoundError:
        logger.warning(f"Schéma {schema_name} non trouvé à {schema_path}")
        return None
    except json.JSONDecodeError as e:
        logger.error(f"Erreur lors du chargement du schéma {schema_name}: {str(e)}")
        return None


def validate_required_fields(record, schema):
    """
    Vérifie la présence des champs requis et les valeurs énumérées d'un enregistrement.

    Args:
        record (dict): Enregistrement à valider
        schema (dict): Schéma JSON (sous-ensemble : required, properties, enum)

    Returns:
        list: Liste des problèmes détectés
    """
    issues = []
    _check_object(record, schema, "", issues)
    return issues


def _check_object(data, schema, path, issues):
    if not isinstance(data, dict):
        issues.append(f"Objet attendu pour {path or 'la racine'}")
        return
    for field in schema.get("required", []):
        if field not in data:
            issues.append(f"Champ requis manquant: {path}{field}")
    for field, sub_schema in schema.get("properties", {}).items():
        if field not in data:
            continue
        value = data[field]
        if "enum" in sub_schema and value not in sub_schema["enum"]:
            issues.append(f"Valeur invalide pour {path}{field}: {value}")
        if sub_schema.get("type") == "object":
            _check_object(value, sub_schema, f"{path}{field}.", issues)


def validate_and_report(report):
    """
    Journalise un rapport de vérification.

    Args:
        report (dict): Rapport produit par build_report

    Returns:
        tuple: (bool, list) - Verdict et liste des résidus
    """
    if report["pass"]:
        logger.info(f"Vérification {report['check']} réussie")
    else:
        logger.warning(f"Vérification {report['check']} échouée: {len(report['residuals'])} résidus")
        for residual in report["residuals"]:
            logger.warning(f"  - {residual}")

    return report["pass"], report["residuals"]
