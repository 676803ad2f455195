"""
Module pour le stockage des formes normales PBW sur disque (JSON lines).
"""

import json
import logging
import os
from typing import Any, Dict, Iterable, Optional, Tuple

from rea_center.algebra.ncpoly import NCPoly, intern_word
from rea_center.config.settings import CACHE_SETTINGS

logger = logging.getLogger(__name__)


class NormalFormStore:
    """
    Cache disque des formes normales pour un couple (algèbre, N).

    Un enregistrement par ligne :
    {"algebra": ..., "N": ..., "word": [[r, c], ...], "nf": <NCPoly JSON>}.
    """

    def __init__(self, algebra: str, N: int, cache_dir: Optional[str] = None):
        """
        Args:
            algebra (str): REA ou FRT
            N (int): Taille
            cache_dir (str): Répertoire du cache (défaut : QMAT_CACHE_DIR)
        """
        self.algebra = algebra
        self.N = N
        self.cache_dir = cache_dir or CACHE_SETTINGS["cache_dir"]
        self.path = None
        self._handle = None
        self._connected = False

    def connect(self) -> bool:
        """
        Ouvre le fichier du cache en ajout.

        Returns:
            bool: True si le fichier est ouvert, False sinon
        """
        if not self.cache_dir:
            logger.warning("Aucun répertoire de cache configuré")
            return False
        try:
            os.makedirs(self.cache_dir, exist_ok=True)
            file_name = CACHE_SETTINGS["file_pattern"].format(algebra=self.algebra, N=self.N)
            self.path = os.path.join(self.cache_dir, file_name)
            self._handle = open(self.path, "a", encoding="utf-8")
            self._connected = True
            logger.info(f"Cache des formes normales ouvert: {self.path}")
            return True
        except OSError as e:
            logger.error(f"Erreur lors de l'ouverture du cache {self.cache_dir}: {str(e)}")
            self._connected = False
            return False

    def disconnect(self):
        if self._handle:
            self._handle.close()
            self._handle = None
        self._connected = False

    def is_connected(self) -> bool:
        return self._connected and self._handle is not None

    def load_all(self) -> Dict[Tuple, Dict[Tuple, Any]]:
        """
        Lit toutes les formes normales du fichier.

        Les lignes illisibles ou d'un autre couple (algèbre, N) sont ignorées.

        Returns:
            dict: mot -> {mot ordonné: coefficient}
        """
        loaded = {}
        if not self.path or not os.path.exists(self.path):
            return loaded
        with open(self.path, "r", encoding="utf-8") as f:
            for line_number, line in enumerate(f, start=1):
                line = line.strip()
                if not line:
                    continue
                try:
                    record = json.loads(line)
                    if record["algebra"] != self.algebra or record["N"] != self.N:
                        continue
                    word = intern_word(tuple(letter) for letter in record["word"])
                    loaded[word] = NCPoly.from_json(record["nf"]).terms
                except (json.JSONDecodeError, KeyError, TypeError, ValueError) as e:
                    logger.warning(f"Ligne {line_number} du cache ignorée: {str(e)}")
        return loaded

    def store_many(self, records: Iterable[Tuple[Tuple, Dict[Tuple, Any]]]) -> int:
        """
        Ajoute des formes normales au fichier.

        Args:
            records (iterable): Couples (mot, {mot ordonné: coefficient})

        Returns:
            int: Nombre d'enregistrements écrits
        """
        if not self.is_connected():
            logger.error("Aucun cache ouvert")
            return 0
        count = 0
        for word, terms in records:
            record = {
                "algebra": self.algebra,
                "N": self.N,
                "word": [list(letter) for letter in word],
                "nf": NCPoly._trusted(self.algebra, self.N, terms).to_json(),
            }
            self._handle.write(json.dumps(record) + "\n")
            count += 1
        self._handle.flush()
        logger.debug(f"{count} formes normales écrites dans {self.path}")
        return count

    def __enter__(self):
        self.connect()
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        self.disconnect()
