"""
Lecture des valeurs de référence (fixtures) au format JSON lines.
"""

import json
import logging
import os
from functools import lru_cache

from rea_center.algebra.ncpoly import FRT, REA, parse
from rea_center.config.settings import FIXTURES_DIR

logger = logging.getLogger(__name__)

DEFAULT_FIXTURE_FILE = os.path.join(FIXTURES_DIR, "reference_values.jsonl")

# algèbre de la valeur attendue selon le type de fixture
KIND_ALGEBRA = {
    "ck": REA,
    "dl_coinv": FRT,
    "dlmin": FRT,
    "ptmin": REA,
    "tmin": REA,
}


def read_records(path=None):
    """
    Lit les enregistrements bruts d'un fichier de fixtures.

    Returns:
        list: Couples (numéro de ligne, dict ou message d'erreur)
    """
    path = path or DEFAULT_FIXTURE_FILE
    records = []
    with open(path, "r", encoding="utf-8") as f:
        for line_number, line in enumerate(f, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                records.append((line_number, json.loads(line)))
            except json.JSONDecodeError as e:
                records.append((line_number, f"JSON invalide: {str(e)}"))
    return records


def expected_value(record):
    """Valeur attendue d'un enregistrement, relue avec la grammaire textuelle."""
    params = record["params"]
    return parse(record["expected"], N=params["N"], algebra=KIND_ALGEBRA[record["kind"]])


def _key(kind, params):
    return (
        kind,
        params["N"],
        params.get("k"),
        tuple(params.get("I", ())),
        tuple(params.get("J", ())),
        tuple(params.get("U", ())) if params.get("U") is not None else None,
    )


@lru_cache(maxsize=None)
def _index(path):
    index = {}
    for _, record in read_records(path):
        if isinstance(record, dict) and "kind" in record and "params" in record:
            index[_key(record["kind"], record["params"])] = record
    return index


def find_fixture(kind, N, k=None, I=(), J=(), U=None, path=None):
    """
    Cherche la fixture correspondant aux paramètres.

    Returns:
        dict: Enregistrement, ou None
    """
    params = {"N": N, "k": k, "I": list(I), "J": list(J)}
    if U is not None:
        params["U"] = list(U)
    return _index(path or DEFAULT_FIXTURE_FILE).get(_key(kind, params))
