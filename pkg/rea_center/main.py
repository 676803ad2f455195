#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Script principal : calculs et vérifications sur les algèbres REA et FRT.
"""

import functools
import logging
import sys

import click

from rea_center.algebra import central, hecke, minors, pbw, qcomb, rmatrix, twist
from rea_center.algebra.ncpoly import FRT, REA, parse
from rea_center.config.settings import BATCH_PROCESSING, EXPORT_FORMATS, VERIFICATION
from rea_center.exporters import csv_exporter, json_exporter, text_exporter
from rea_center.processors import fixture_checker, validator
from rea_center.processors.storage_manager import CacheSession
from rea_center.utils import batch_utils, logging_utils
from rea_center.utils.errors import ContractViolation, ParseError, ReaCenterError

logger = logging.getLogger(__name__)


def _parse_indices(ctx, param, value):
    """Convertit '1,3' en (1, 3) ; une chaîne vide donne l'ensemble vide."""
    if value is None:
        return None
    try:
        return tuple(int(v) for v in value.split(",") if v.strip())
    except ValueError:
        raise click.BadParameter(f"Liste d'entiers attendue, reçu '{value}'")


N_OPTION = click.option("--N", "N", type=click.IntRange(min=1), required=True, help="Taille N de la matrice")
K_OPTION = click.option("--k", "k", type=click.IntRange(min=1), help="Degré k (tous les degrés si absent)")
FORMAT_OPTION = click.option(
    "--format", "-f", "output_format", type=click.Choice(EXPORT_FORMATS), default="text", help="Format de sortie"
)
I_OPTION = click.option("--I", "I", callback=_parse_indices, default="", help="Ensemble de lignes, ex. 1,3")
J_OPTION = click.option("--J", "J", callback=_parse_indices, default="", help="Ensemble de colonnes, ex. 3,4")
U_OPTION = click.option("--U", "U", callback=_parse_indices, default="", help="Ensemble auxiliaire, ex. 2")


def handle_errors(command):
    """
    Traduit les erreurs du moteur : arguments invalides en erreur d'usage
    (code 2), autres erreurs en échec (code 1).
    """

    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except (ContractViolation, ParseError) as e:
            raise click.UsageError(str(e))
        except ReaCenterError as e:
            logging_utils.log_exception(e, "Erreur lors du calcul")
            click.echo(f"Erreur: {str(e)}", err=True)
            sys.exit(1)

    return wrapper


def _degrees(N, k, top=None):
    top = min(N, top) if top else N
    if k is not None:
        if k > top:
            raise click.UsageError(f"k={k} hors de [1, {top}]")
        return [k]
    return list(range(1, top + 1))


def _emit_reports(ctx, tasks):
    """
    Exécute les tâches de vérification, affiche les rapports et termine avec
    le code 0 si toutes réussissent, 1 sinon.
    """
    results = batch_utils.run_tasks(tasks, ctx.obj["jobs"], name="Vérifications")
    reports = []
    for result in results:
        if "report" in result:
            reports.append(result["report"])
        else:
            reports.append(validator.build_report(result["task"], {}, [{"error": result["error"]}]))

    for report in reports:
        validator.validate_and_report(report)

    output_format = ctx.obj.get("format", "text")
    if output_format == "json":
        click.echo(json_exporter.format_json(reports[0] if len(reports) == 1 else reports))
    else:
        for report in reports:
            click.echo(text_exporter.format_report(report))

    csv_path = ctx.obj.get("csv")
    if csv_path:
        csv_exporter.export_to_csv(csv_exporter.summarize_reports(reports), csv_path)
    output_path = ctx.obj.get("output")
    if output_path:
        if output_path.endswith(".jsonl"):
            json_exporter.export_to_jsonl(reports, output_path)
        else:
            json_exporter.export_to_json(reports, output_path)
    sys.exit(0 if all(r["pass"] for r in reports) else 1)


@click.group()
@click.option("--verbose", "-v", is_flag=True, help="Mode verbeux")
@click.option("--cache-dir", envvar="QMAT_CACHE_DIR", help="Répertoire du cache des formes normales")
@click.option(
    "--jobs", "-j", type=click.IntRange(min=1), default=BATCH_PROCESSING["default_jobs"],
    help="Nombre de processus pour les vérifications",
)
@click.pass_context
def cli(ctx, verbose, cache_dir, jobs):
    """
    Moteur de calcul exact pour l'algèbre de réflexion (REA) et l'algèbre FRT.
    """
    logging_utils.setup_logging(logging.DEBUG if verbose else logging.WARNING)
    ctx.obj = {"jobs": jobs}
    session = CacheSession(cache_dir).open()
    ctx.call_on_close(session.close)


@cli.command()
@click.argument("expression")
@click.option("--N", "N", type=click.IntRange(min=1), help="Taille N (déduite des indices si absente)")
@click.option("--algebra", type=click.Choice([REA, FRT]), help="Algèbre d'un texte purement scalaire")
@FORMAT_OPTION
@handle_errors
def nf(expression, N, algebra, output_format):
    """Forme normale PBW d'une expression."""
    value = pbw.normal_form(parse(expression, N=N, algebra=algebra))
    click.echo(text_exporter.render(value, output_format, factor=False))


@cli.command()
@N_OPTION
@click.option("--k", "k", type=click.IntRange(min=1), required=True, help="Degré k")
@FORMAT_OPTION
@handle_errors
def ck(N, k, output_format):
    """Élément central c_k."""
    click.echo(text_exporter.render(central.c_k(N, k).value, output_format))


@cli.command()
@N_OPTION
@click.option("--k", "k", type=click.IntRange(min=1), required=True, help="Degré k")
@FORMAT_OPTION
@handle_errors
def sk(N, k, output_format):
    """Trace quantique s_k = tr_q(A^k)."""
    click.echo(text_exporter.render(central.s_k(N, k).value, output_format))


@cli.command()
@click.option("--type", "minor_type", type=click.Choice(["dl", "pt", "tw"]), default="pt", help="Famille de mineurs")
@I_OPTION
@J_OPTION
@U_OPTION
@N_OPTION
@FORMAT_OPTION
@handle_errors
def minor(minor_type, I, J, U, N, output_format):
    """Mineur de Domokos-Lenagan, tronqué ou quantique."""
    if minor_type == "dl":
        value = minors.dlmin(I, J, N)
    elif minor_type == "pt":
        value = minors.ptmin(U, I, J, N)
    else:
        value = twist.tmin(I, J, N)
    click.echo(text_exporter.render(value, output_format))


@cli.command()
@I_OPTION
@J_OPTION
@U_OPTION
@click.option("--tau", callback=_parse_indices, help="Images de I par tau, dans l'ordre (toutes si absent)")
@FORMAT_OPTION
@click.option("--csv", "csv_path", help="Export CSV des statistiques")
@handle_errors
def stats(I, J, U, tau, output_format, csv_path):
    """Statistiques (wt, l_U, e, gamma) des bijections I -> J."""
    taus = [qcomb.bijection(I, tau)] if tau else qcomb.all_bijections(I, J)
    rows = []
    for bijection in taus:
        if tuple(sorted(bijection.targets)) != tuple(J):
            raise click.UsageError(f"tau ne réalise pas une bijection sur J={list(J)}")
        rows.append({"tau": list(bijection.targets), **qcomb.stats(I, J, U, bijection)})

    if output_format == "json":
        click.echo(json_exporter.format_json(rows))
    else:
        for row in rows:
            click.echo(" ".join(f"{key}={value}" for key, value in row.items()))
    if csv_path:
        csv_exporter.export_to_csv(rows, csv_path)


@cli.group(name="hecke")
def hecke_group():
    """Algèbre de Hecke H_q(n)."""


@hecke_group.command()
@click.option("--n", "n", type=click.IntRange(min=1), required=True, help="Rang n de H_q(n)")
@click.option("--k", "k", type=click.IntRange(min=0), required=True, help="Degré k de omega_k")
@click.option("--normalized", is_flag=True, help="Idempotent omega_k / [k]_q!")
@FORMAT_OPTION
@handle_errors
def omega(n, k, normalized, output_format):
    """Développement de omega_k dans la base T_w."""
    value = hecke.omega_bar(k, n) if normalized else hecke.omega(k, n)
    click.echo(text_exporter.render(value, output_format))


@cli.command(name="rmatrix")
@N_OPTION
@click.option(
    "--what", type=click.Choice(["R", "R21", "Rinv", "Rtilde", "braiding"]), default="R", help="Opérateur à afficher"
)
@click.option("--printed", is_flag=True, help="Forme close de R̃ avec l'exposant de signe opposé")
@FORMAT_OPTION
@handle_errors
def rmatrix_command(N, what, printed, output_format):
    """Matrice R et opérateurs associés, en triplets creux."""
    if what == "Rtilde" and printed:
        value = rmatrix.rtilde_closed_form(N, printed=True)
    else:
        builders = {
            "R": rmatrix.build_R,
            "R21": rmatrix.build_R21,
            "Rinv": rmatrix.build_Rinv,
            "Rtilde": rmatrix.build_Rtilde,
            "braiding": rmatrix.braiding,
        }
        value = builders[what](N)
    click.echo(text_exporter.render(value, output_format))


@cli.group()
@FORMAT_OPTION
@click.option("--csv", "csv_path", help="Export CSV du résumé des rapports")
@click.option("--output", "-o", "output_path", help="Rapports complets en JSON (JSON Lines si le fichier finit par .jsonl)")
@click.pass_context
def verify(ctx, output_format, csv_path, output_path):
    """Vérifications ; code de sortie 0 si tout passe, 1 sinon."""
    ctx.obj["format"] = output_format
    ctx.obj["csv"] = csv_path
    ctx.obj["output"] = output_path


@verify.command(name="central")
@N_OPTION
@K_OPTION
@click.option("--perturb", is_flag=True, help="Contrôle négatif : c_k perturbé")
@click.pass_context
def verify_central(ctx, N, k, perturb):
    """c_k et s_k commutent avec tous les générateurs."""
    tasks = [(f"central-k{d}", central.verify_central, {"N": N, "k": d, "perturb": perturb}) for d in _degrees(N, k)]
    _emit_reports(ctx, tasks)


@verify.command(name="qch")
@N_OPTION
@click.pass_context
def verify_qch(ctx, N):
    """Identité de Cayley-Hamilton quantique."""
    _emit_reports(ctx, [("qch", central.verify_qch, {"N": N})])


@verify.command(name="newton")
@N_OPTION
@K_OPTION
@click.pass_context
def verify_newton(ctx, N, k):
    """Identité de Newton quantique [k]c_k = Σ (-q^-2)^{k-j} c_{j-1} s_{k-j+1}."""
    tasks = [(f"newton-k{d}", central.verify_newton, {"N": N, "k": d}) for d in _degrees(N, k)]
    _emit_reports(ctx, tasks)


@verify.command(name="hecke")
@click.option("--n", "n", type=click.IntRange(min=1), help="Rang n de H_q(n)")
@K_OPTION
@click.option("--variant", type=click.Choice(hecke.NEWTON_VARIANTS), help="Exposant de l'identité de Newton")
@click.option("--max-n", type=click.IntRange(min=1), default=VERIFICATION["hecke_max_n"], help="Borne du balayage")
@click.pass_context
def verify_hecke(ctx, n, k, variant, max_n):
    """Relations de Hecke et identité de Newton dans H_q(n) (balayage si --n absent)."""
    if n is None:
        if k is not None:
            raise click.UsageError("--k exige --n")
        _emit_reports(ctx, [("hecke-sweep", hecke.hecke_newton_sweep, {"max_n": max_n})])
        return
    tasks = [("hecke-relations", hecke.verify_hecke_relations, {"n": n})]
    tasks += [
        (f"hecke-newton-k{d}", hecke.verify_hecke_newton, {"n": n, "k": d, "exponent_variant": variant})
        for d in _degrees(n, k)
    ]
    _emit_reports(ctx, tasks)


@verify.command(name="schur-weyl")
@N_OPTION
@K_OPTION
@click.pass_context
def verify_schur_weyl(ctx, N, k):
    """Représentation de H_q(k) sur V^{⊗k} et rang de rho(omega_k)."""
    degrees = [k] if k else [2, 3]
    tasks = [(f"schur-weyl-k{d}", rmatrix.verify_schur_weyl, {"N": N, "k": d}) for d in degrees]
    _emit_reports(ctx, tasks)


@verify.command(name="twist")
@N_OPTION
@click.pass_context
def verify_twist(ctx, N):
    """Twist quadratique Φ/Ψ et produit générateur-mineur."""
    tasks = [
        ("twist", twist.verify_twist, {"N": N}),
        ("lemma-times-minor", twist.verify_lemma_times_minor, {"N": N}),
    ]
    _emit_reports(ctx, tasks)


@verify.command(name="clique")
@N_OPTION
@click.option("--k", "k", type=click.IntRange(min=1), required=True, help="Degré k")
@I_OPTION
@J_OPTION
@click.pass_context
def verify_clique(ctx, N, k, I, J):
    """Somme sur une clique d'expansion : mineurs tronqués contre mineurs quantiques."""
    _emit_reports(ctx, [("clique", central.verify_clique_sum, {"N": N, "k": k, "I": I, "J": J})])


@verify.command(name="psi-dlinv")
@N_OPTION
@K_OPTION
@click.pass_context
def verify_psi_dlinv(ctx, N, k):
    """Ψ(D_k) = c_k pour k <= 2."""
    tasks = [(f"psi-dlinv-k{d}", central.verify_psi_dlinv, {"N": N, "k": d}) for d in _degrees(N, k, top=2)]
    _emit_reports(ctx, tasks)


@verify.command(name="unipotent")
@N_OPTION
@click.pass_context
def verify_unipotent(ctx, N):
    """Counité et factorisation du polynôme caractéristique spécialisé."""
    _emit_reports(ctx, [("unipotent", central.verify_unipotent, {"N": N})])


@verify.command(name="subalgebra")
@N_OPTION
@K_OPTION
@click.pass_context
def verify_subalgebra(ctx, N, k):
    """Clôture de A_{>=k} et centralité de detq(A_{>=k})."""
    tasks = [(f"subalgebra-k{d}", central.submatrix_suite, {"N": N, "k": d}) for d in _degrees(N, k)]
    _emit_reports(ctx, tasks)


@verify.command(name="lemmas")
@N_OPTION
@click.option("--only", multiple=True, type=click.Choice(list(qcomb.LEMMA_CHECKS)), help="Identités à vérifier")
@click.pass_context
def verify_lemmas(ctx, N, only):
    """Identités combinatoires (additivité, bijection, forme close, télescopage)."""
    _emit_reports(ctx, [("lemmas", qcomb.verify_lemmas, {"N": N, "only": list(only) or None})])


@verify.command(name="rowexp")
@N_OPTION
@click.option("--random-cases", type=click.IntRange(min=1), help="Nombre de tirages au-delà du seuil exhaustif")
@click.option("--seed", type=int, help="Graine des tirages")
@click.pass_context
def verify_rowexp(ctx, N, random_cases, seed):
    """Développement selon la première ligne des mineurs."""
    kwargs = {"N": N, "random_cases": random_cases, "seed": seed}
    _emit_reports(ctx, [("rowexp", minors.verify_row_expansions, kwargs)])


@verify.command(name="pbw")
@N_OPTION
@click.option("--algebra", type=click.Choice([REA, FRT]), help="Algèbre (les deux si absent)")
@click.option("--samples", type=click.IntRange(min=1), help="Nombre de mots aléatoires")
@click.option("--seed", type=int, help="Graine des tirages")
@click.pass_context
def verify_pbw(ctx, N, algebra, samples, seed):
    """Cohérence du moteur de réécriture PBW."""
    algebras = [algebra] if algebra else [REA, FRT]
    tasks = [
        (f"pbw-{name}", pbw.verify_engine, {"algebra": name, "N": N, "samples": samples, "seed": seed})
        for name in algebras
    ]
    _emit_reports(ctx, tasks)


@verify.command(name="alpha")
@N_OPTION
@click.option("--max-k", type=click.IntRange(min=1, max=3), default=2, help="Degré maximal des ancres")
@click.pass_context
def verify_alpha(ctx, N, max_k):
    """Recherche d'une convention de poids pour alpha_k."""
    _emit_reports(ctx, [("alpha", central.calibrate_alpha, {"N": N, "max_k": max_k})])


@verify.command(name="classical")
@N_OPTION
@K_OPTION
@click.pass_context
def verify_classical(ctx, N, k):
    """c_k en q = 1 contre la somme des mineurs principaux."""
    tasks = [(f"classical-k{d}", central.verify_classical_limit, {"N": N, "k": d}) for d in _degrees(N, k)]
    _emit_reports(ctx, tasks)


@verify.command(name="free")
@N_OPTION
@click.option("--max-degree", type=click.IntRange(min=1), default=3, help="Degré pondéré maximal")
@click.pass_context
def verify_free(ctx, N, max_degree):
    """Indépendance linéaire des monômes en c_1, ..., c_N."""
    _emit_reports(ctx, [("free", central.verify_free_generation, {"N": N, "max_degree": max_degree})])


@cli.group()
@FORMAT_OPTION
@click.pass_context
def fit(ctx, output_format):
    """Ajustement de coefficients inconnus."""
    ctx.obj["format"] = output_format


@fit.command(name="newton")
@N_OPTION
@click.option("--k", "k", type=click.IntRange(min=1), required=True, help="Degré k")
@click.option("--perturb", is_flag=True, help="Contrôle négatif : c_1 perturbé")
@click.pass_context
def fit_newton(ctx, N, k, perturb):
    """Coefficients de l'identité de Newton, sous les formes imprimée et homogène."""
    _emit_reports(ctx, [("fit-newton", central.fit_newton, {"N": N, "k": k, "perturb": perturb})])


@cli.group()
def fixtures():
    """Valeurs de référence."""


@fixtures.command(name="list")
@click.option("--path", type=click.Path(exists=True, dir_okay=False), help="Fichier de fixtures")
@FORMAT_OPTION
@click.option("--csv", "csv_path", help="Export CSV de la liste")
@handle_errors
def fixtures_list(path, output_format, csv_path):
    """Liste les enregistrements."""
    rows = fixture_checker.list_fixtures(path)
    if output_format == "json":
        click.echo(json_exporter.format_json(rows))
    else:
        for row in rows:
            click.echo(f"{row['id']}\t{row['kind']}\t{row['provenance']}")
    if csv_path:
        csv_exporter.export_to_csv(rows, csv_path)


@fixtures.command(name="check")
@click.option("--path", type=click.Path(exists=True, dir_okay=False), help="Fichier de fixtures")
@FORMAT_OPTION
@click.option("--output", "-o", "output_path", help="Rapport complet en JSON")
@click.pass_context
def fixtures_check(ctx, path, output_format, output_path):
    """Rejoue chaque enregistrement contre le calcul courant."""
    ctx.obj["format"] = output_format
    ctx.obj["output"] = output_path
    _emit_reports(ctx, [("fixtures", fixture_checker.check_fixtures, {"path": path})])


def main():
    cli(obj={})


if __name__ == "__main__":
    main()
