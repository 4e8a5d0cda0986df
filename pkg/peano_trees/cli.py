# peano_trees/cli.py
from __future__ import annotations

import logging
from pathlib import Path
from typing import Optional

import click

from peano_trees import config as settings
from peano_trees.corpus import automorphism_names, graph_names
from peano_trees.models import HasCutPointsError, InputError, InvariantViolation, PreconditionError
from peano_trees.pipeline import cmd_verify, load_config, run

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_INVARIANT = 3
EXIT_HAS_CUT_POINTS = 4


def _configure_logging(debug: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if debug or settings.DEBUG else logging.WARNING,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )


def _write(text: str, output: Optional[Path]) -> None:
    if output is None:
        click.echo(text, nl=False)
        return
    try:
        Path(output).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot write {output}: {exc}") from exc
    logger.info("wrote %s", output)


def _report_failures(failed) -> None:
    for r in failed:
        click.echo(f"FAIL {r.graph} {r.prop}: {r.detail}", err=True)


def _run_command(**values) -> int:
    try:
        config = load_config(**values)
        artifact = run(config)
        _write(artifact.text, config.output)
    except HasCutPointsError as exc:
        click.echo(f"error: {exc}; use the `combined` command instead", err=True)
        return EXIT_HAS_CUT_POINTS
    except (InputError, PreconditionError) as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_INPUT
    except InvariantViolation as exc:
        click.echo(f"invariant violated: {exc}", err=True)
        return EXIT_INVARIANT

    if artifact.failures:
        _report_failures(artifact.failures)
        return EXIT_INVARIANT
    return EXIT_OK


def pipeline_options(f):
    """Flags shared by the tree-building commands."""
    options = [
        click.option("--grid", type=int, default=settings.DEFAULT_GRID, show_default=True,
                     help="Sample grid granularity k (points i/(k+1) on each edge)."),
        click.option("--metric", type=click.Choice(["canonical", "geometric"]), default=settings.DEFAULT_METRIC,
                     show_default=True, help="Arc length assignment."),
        click.option("--seed", default=settings.DEFAULT_SEED or None,
                     help="Cut point or bridge id that starts the canonical schedule."),
        click.option("--format", "fmt", type=click.Choice(["dot", "text"]), default=settings.DEFAULT_FORMAT,
                     show_default=True, help="Output format."),
        click.option("--verify", type=click.Choice(["off", "lemmas", "full"]), default=settings.DEFAULT_VERIFY,
                     show_default=True, help="Property checks to run alongside the build."),
        click.option("-o", "--output", type=click.Path(dir_okay=False, path_type=Path), default=None,
                     help="Output file (default: stdout)."),
    ]
    for option in reversed(options):
        f = option(f)
    return f


@click.group()
@click.option("--debug", is_flag=True, help="Debug logging.")
@click.pass_context
def cli(ctx: click.Context, debug: bool) -> None:
    """Decomposition trees of finite graphs viewed as Peano continua."""
    _configure_logging(debug)
    try:
        settings.validate_config()
    except RuntimeError as exc:
        click.echo(f"configuration error: {exc}", err=True)
        ctx.exit(EXIT_INPUT)


@cli.command("cutpoint-tree")
@click.argument("graph")
@pipeline_options
@click.pass_context
def cutpoint_tree(ctx, graph, grid, metric, seed, fmt, verify, output):
    """Cut-point tree of GRAPH (a graph file or corpus name)."""
    ctx.exit(_run_command(command="cutpoint-tree", graph=graph, grid=grid, metric=metric, seed=seed,
                          format=fmt, verify=verify, output=output))


@cli.command("jsj-tree")
@click.argument("graph")
@pipeline_options
@click.pass_context
def jsj_tree(ctx, graph, grid, metric, seed, fmt, verify, output):
    """Cut-pair tree of GRAPH; exits 4 if GRAPH has cut points."""
    ctx.exit(_run_command(command="jsj-tree", graph=graph, grid=grid, metric=metric, seed=seed,
                          format=fmt, verify=verify, output=output))


@cli.command("combined")
@click.argument("graph")
@pipeline_options
@click.pass_context
def combined(ctx, graph, grid, metric, seed, fmt, verify, output):
    """Cut-point tree with every block replaced by its cut-pair tree."""
    ctx.exit(_run_command(command="combined", graph=graph, grid=grid, metric=metric, seed=seed,
                          format=fmt, verify=verify, output=output))


@cli.command("action")
@click.argument("graph")
@click.argument("automorphism")
@click.option("--tree", type=click.Choice(["cutpoint", "jsj", "combined"]), default="cutpoint",
              show_default=True, help="Tree the automorphism acts on.")
@click.option("--bound", type=int, default=settings.ACTION_SEARCH_BOUND, show_default=True,
              help="Search depth for non-nesting and classification.")
@pipeline_options
@click.pass_context
def action(ctx, graph, automorphism, tree, bound, grid, metric, seed, fmt, verify, output):
    """Induced action of AUTOMORPHISM on a tree of GRAPH."""
    ctx.exit(_run_command(command="action", graph=graph, automorphism=automorphism, tree=tree, bound=bound,
                          grid=grid, metric=metric, seed=seed, format=fmt, verify=verify, output=output))


@cli.command("verify")
@click.option("--grid", type=int, default=settings.DEFAULT_GRID, show_default=True)
@click.option("--bound", type=int, default=settings.ACTION_SEARCH_BOUND, show_default=True)
@click.option("--corpus-dir", type=click.Path(file_okay=False, exists=True, path_type=Path), default=None,
              help="Corpus directory (default: the bundled corpus).")
@click.option("-o", "--output", type=click.Path(dir_okay=False, path_type=Path), default=None)
@click.pass_context
def verify(ctx, grid, bound, corpus_dir, output):
    """Run every property over the corpus and print a PASS/FAIL matrix."""
    try:
        frame, results = cmd_verify(grid, bound, corpus_dir)
        _write(frame.to_string() + "\n", output)
    except InputError as exc:
        click.echo(f"error: {exc}", err=True)
        ctx.exit(EXIT_INPUT)

    failed = [r for r in results if r.failed]
    if failed:
        _report_failures(failed)
        ctx.exit(EXIT_INVARIANT)
    ctx.exit(EXIT_OK)


@cli.command("corpus")
@click.option("--corpus-dir", type=click.Path(file_okay=False, exists=True, path_type=Path), default=None)
def corpus(corpus_dir):
    """List corpus graphs with their automorphisms."""
    for name in graph_names(corpus_dir):
        autos = automorphism_names(name, corpus_dir)
        click.echo(f"{name}: {', '.join(autos) if autos else '-'}")


def main() -> None:
    cli(prog_name="peano-trees")


if __name__ == "__main__":
    main()
