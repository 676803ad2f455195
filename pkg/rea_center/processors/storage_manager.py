"""
Module pour la persistance des formes normales calculées pendant une session.
"""

import logging
from typing import Dict, Optional, Tuple

from rea_center.algebra.pbw import add_engine_listener, remove_engine_listener
from rea_center.config.settings import CACHE_SETTINGS
from rea_center.storage.normal_form_store import NormalFormStore

logger = logging.getLogger(__name__)


class CacheSession:
    """
    Attache un NormalFormStore à chaque moteur PBW créé ou existant pendant
    la session, et écrit les nouvelles formes normales à la fermeture.
    """

    def __init__(self, cache_dir: Optional[str] = None):
        """
        Args:
            cache_dir (str): Répertoire du cache (défaut : QMAT_CACHE_DIR)
        """
        self.cache_dir = cache_dir or CACHE_SETTINGS["cache_dir"]
        self.enabled = bool(self.cache_dir)
        self.stores: Dict[Tuple[str, int], NormalFormStore] = {}
        self._engines = []

    def _attach(self, engine):
        key = (engine.algebra, engine.N)
        if key in self.stores:
            return
        store = NormalFormStore(engine.algebra, engine.N, self.cache_dir)
        if store.connect():
            engine.attach_store(store)
            self.stores[key] = store
            self._engines.append(engine)
        else:
            logger.warning(f"Cache indisponible pour {engine.algebra} N={engine.N}")

    def open(self):
        if self.enabled:
            add_engine_listener(self._attach)
            logger.info(f"Session de cache ouverte dans {self.cache_dir}")
        return self

    def close(self) -> int:
        """
        Écrit les formes normales en attente et ferme les fichiers.

        Returns:
            int: Nombre total d'enregistrements écrits
        """
        if not self.enabled:
            return 0
        remove_engine_listener(self._attach)
        written = 0
        for engine in self._engines:
            try:
                written += engine.flush()
            except OSError as e:
                logger.error(f"Erreur lors de l'écriture du cache {engine.algebra} N={engine.N}: {str(e)}")
            engine.detach_store()
        for store in self.stores.values():
            store.disconnect()
        logger.info(f"Session de cache fermée: {written} formes normales écrites")
        self.stores.clear()
        self._engines.clear()
        return written

    def __enter__(self):
        return self.open()

    def __exit__(self, exc_type, exc_val, exc_tb):
        self.close()
