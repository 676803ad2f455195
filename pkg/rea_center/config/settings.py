"""
Paramètres généraux de configuration du moteur REA/FRT.
"""

import os
from pathlib import Path

from dotenv import load_dotenv

load_dotenv()

# Chemins de base
BASE_DIR = Path(__file__).resolve().parent.parent
FIXTURES_DIR = os.path.join(BASE_DIR, "fixtures")
SCHEMAS_DIR = os.path.join(BASE_DIR, "config", "schemas")

# Formats d'export disponibles
EXPORT_FORMATS = ["text", "json", "latex"]

# Paramètres d'export JSON
JSON_SETTINGS = {
    "indent": 2,
    "ensure_ascii": False,
}

# Paramètres d'export CSV
CSV_SETTINGS = {
    "delimiter": ",",
    "quotechar": '"',
    "quoting": 0,  # csv.QUOTE_MINIMAL
    "encoding": "utf-8",
}

# Paramètres de journalisation
LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "verbose": {"format": "%(asctime)s - %(name)s - %(levelname)s - %(message)s"},
        "simple": {"format": "%(levelname)s - %(message)s"},
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "level": "WARNING",
            "formatter": "simple",
        },
        "file": {
            "class": "logging.FileHandler",
            "level": "DEBUG",
            "formatter": "verbose",
            "filename": os.getenv("QMAT_LOG_FILE", ""),
        },
    },
    "root": {
        "handlers": ["console", "file"],
        "level": "DEBUG",
    },
}

# Moteur de réécriture PBW
PBW_ENGINE = {
    "step_cap": int(os.getenv("QMAT_STEP_CAP", "10000000")),
}

# Cache disque des formes normales
CACHE_SETTINGS = {
    "cache_dir": os.getenv("QMAT_CACHE_DIR"),
    "file_pattern": "nf_{algebra}_N{N}.jsonl",
}

# Paramètres de traitement par lots
BATCH_PROCESSING = {
    "max_workers": os.cpu_count() or 4,
    "default_jobs": 1,
}

# Bornes des vérifications exhaustives et aléatoires
VERIFICATION = {
    "lemma_max_N": 5,
    "rowexp_exhaustive_max_N": 4,
    "rowexp_random_N": 5,
    "random_cases": 100,
    "engine_samples": 1000,
    "hecke_max_n": 5,
    "random_seed": 20240611,
}

# Recherche de la convention de poids de alpha_k
ALPHA_CALIBRATION = {
    "a_range": (-3, 3),
    "b_range": (-2, 2),
    "realizations": ["words", "twisted"],
    "default": {"realization": "twisted", "a": -2, "b": 0},
}
