"""
Utilitaires pour l'exécution par lots des vérifications indépendantes.
"""

import concurrent.futures
import logging
from functools import partial

from rea_center.config.settings import BATCH_PROCESSING
from rea_center.utils.logging_utils import ProgressLogger

logger = logging.getLogger(__name__)


def run_tasks(tasks, jobs=None, name="Vérifications"):
    """
    Exécute une liste de tâches, séquentiellement ou dans un pool de processus.

    Args:
        tasks (list): Liste de tuples (nom, fonction, kwargs)
        jobs (int): Nombre de processus (None pour la valeur par défaut)
        name (str): Nom du traitement pour la journalisation

    Returns:
        list: Résultats dans l'ordre des tâches
    """
    if not tasks:
        logger.warning("Aucune tâche à exécuter")
        return []

    jobs = jobs or BATCH_PROCESSING["default_jobs"]
    progress = ProgressLogger(len(tasks), name)
    results = [None] * len(tasks)

    if jobs <= 1:
        for position, task in enumerate(tasks):
            results[position] = run_task_wrapper(task)
            progress.update()
    else:
        max_workers = min(jobs, BATCH_PROCESSING["max_workers"], len(tasks))
        logger.info(f"Démarrage du pool de vérification avec {max_workers} workers")

        with concurrent.futures.ProcessPoolExecutor(max_workers=max_workers) as executor:
            future_to_position = {
                executor.submit(run_task_wrapper, task): position
                for position, task in enumerate(tasks)
            }
            for future in concurrent.futures.as_completed(future_to_position):
                position = future_to_position[future]
                try:
                    results[position] = future.result()
                except Exception as e:
                    logger.error(f"Erreur lors de la tâche {tasks[position][0]}: {str(e)}")
                    results[position] = {"task": tasks[position][0], "success": False, "error": str(e)}
                progress.update()

    success_count = sum(1 for r in results if r.get("success", False))
    progress.complete(success_count)
    return results


def run_task_wrapper(task):
    """
    Wrapper pour l'exécution d'une tâche individuelle.

    Args:
        task (tuple): (nom, fonction, kwargs)

    Returns:
        dict: Résultat de la tâche avec les clés 'task', 'success' et 'report' ou 'error'
    """
    task_name, function, kwargs = task
    try:
        report = partial(function, **kwargs)()
        return {"task": task_name, "success": bool(report.get("pass", False)), "report": report}
    except Exception as e:
        logger.error(f"Erreur lors de la tâche {task_name}: {str(e)}")
        return {"task": task_name, "success": False, "error": str(e)}
