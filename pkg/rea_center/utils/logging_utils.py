"""
Utilitaires pour la configuration et l'utilisation de la journalisation.
"""

import copy
import logging
import logging.config
import os

from rea_center.config.settings import LOGGING


def setup_logging(level=logging.WARNING, log_file=None):
    """
    Configure le système de journalisation.

    Args:
        level (int): Niveau de journalisation de la console (par défaut: logging.WARNING)
        log_file (str): Fichier de log (None pour utiliser QMAT_LOG_FILE)
    """
    config = copy.deepcopy(LOGGING)

    # Le fichier de log est facultatif
    log_file = log_file or config["handlers"]["file"]["filename"]
    if log_file:
        log_dir = os.path.dirname(log_file)
        if log_dir:
            os.makedirs(log_dir, exist_ok=True)
        config["handlers"]["file"]["filename"] = log_file
    else:
        del config["handlers"]["file"]
        config["root"]["handlers"] = ["console"]

    # Configuration du niveau de journalisation
    config["handlers"]["console"]["level"] = level

    # Application de la configuration
    logging.config.dictConfig(config)

    logger = logging.getLogger(__name__)
    logger.info("Système de journalisation initialisé")


class ProgressLogger:
    """
    Classe pour journaliser la progression d'une série de vérifications.
    """

    def __init__(self, total, name="Vérification", log_interval=10):
        """
        Initialise le logger de progression.

        Args:
            total (int): Nombre total de tâches
            name (str): Nom du traitement
            log_interval (int): Intervalle de journalisation en pourcentage
        """
        self.logger = logging.getLogger(__name__)
        self.total = total
        self.current = 0
        self.name = name
        self.log_interval = log_interval
        self.last_logged_percent = 0

        self.logger.info(f"{self.name} démarré - {self.total} tâches à traiter")

    def update(self, increment=1):
        """
        Met à jour la progression.

        Args:
            increment (int): Nombre de tâches terminées
        """
        self.current += increment
        percent = int((self.current / self.total) * 100) if self.total else 100

        if percent >= self.last_logged_percent + self.log_interval or self.current == self.total:
            self.logger.info(f"{self.name} - {self.current}/{self.total} tâches traitées ({percent}%)")
            self.last_logged_percent = percent

    def complete(self, success_count=None):
        """
        Marque le traitement comme terminé.

        Args:
            success_count (int): Nombre de vérifications réussies
        """
        if success_count is not None:
            self.logger.info(f"{self.name} terminé - {success_count}/{self.total} vérifications réussies")
        else:
            self.logger.info(f"{self.name} terminé - {self.current}/{self.total} tâches traitées")


def log_exception(e, message="Une erreur est survenue"):
    """
    Journalise une exception avec des détails.

    Args:
        e (Exception): Exception à journaliser
        message (str): Message descriptif
    """
    logger = logging.getLogger(__name__)
    logger.error(f"{message}: {str(e)}")
    logger.debug("Détails de l'exception:", exc_info=True)
