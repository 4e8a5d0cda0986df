# peano_trees/pipeline.py
from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Dict, List, Literal, Optional, Tuple

import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from peano_trees.actions import Classification, FiniteTreeMap, NestingVerdict, classify, is_non_nesting
from peano_trees.combined import build_combined_tree
from peano_trees.config import (
    ACTION_SEARCH_BOUND,
    DEFAULT_FORMAT,
    DEFAULT_GRID,
    DEFAULT_METRIC,
    DEFAULT_SEED,
    DEFAULT_VERIFY,
)
from peano_trees.corpus import (
    automorphism_names,
    automorphism_path,
    graph_names,
    load_graph,
    read_automorphism_file,
    read_graph_file,
)
from peano_trees.cutpair import build_jsj_tree
from peano_trees.cutpoint import build_cutpoint_tree, induced_tree_map, metrize
from peano_trees.export import action_to_text, attachment_records, render_tree
from peano_trees.lemmas import PropertyResult, command_suite, failures, results_frame, verify_corpus
from peano_trees.models import (
    GraphAutomorphism,
    GraphContinuum,
    InputError,
    MetricMode,
    OutputFormat,
    VerifyLevel,
)
from peano_trees.pretree import StructuralTree

logger = logging.getLogger(__name__)

Command = Literal["cutpoint-tree", "jsj-tree", "combined", "action"]
TreeKind = Literal["cutpoint", "jsj", "combined"]


class RunConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    command: Command
    graph: str = Field(..., description="Graph file path or bundled corpus name")
    grid: int = Field(DEFAULT_GRID, ge=1)
    metric: MetricMode = DEFAULT_METRIC
    seed: Optional[str] = Field(DEFAULT_SEED or None, description="Enumeration seed (cut point or bridge id)")
    format: OutputFormat = DEFAULT_FORMAT
    verify: VerifyLevel = DEFAULT_VERIFY
    output: Optional[Path] = None
    automorphism: Optional[str] = Field(None, description="Automorphism file path or corpus name")
    tree: TreeKind = "cutpoint"
    bound: int = Field(ACTION_SEARCH_BOUND, ge=1)


def load_config(**values) -> RunConfig:
    try:
        return RunConfig(**values)
    except ValidationError as exc:
        problems = "; ".join(
            f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}" for err in exc.errors()
        )
        raise InputError(f"invalid run configuration: {problems}") from None


@dataclass(frozen=True)
class Artifact:
    text: str
    tree: Optional[StructuralTree] = None
    results: Tuple[PropertyResult, ...] = ()

    @property
    def failures(self) -> List[PropertyResult]:
        return failures(self.results)


@dataclass(frozen=True)
class ActionReport:
    name: str
    tree: TreeKind
    images: Tuple[Tuple[str, str], ...]
    verdict: NestingVerdict
    classification: Optional[Classification] = None


# -----------------------------
# Inputs
# -----------------------------
def resolve_graph(ref: str, corpus_dir: Optional[Path] = None) -> GraphContinuum:
    """A path to a graph file, or the name of a bundled corpus graph."""
    path = Path(ref)
    if path.is_file():
        return read_graph_file(path)
    if ref in graph_names(corpus_dir):
        return load_graph(ref, corpus_dir)
    raise InputError(f"no graph file or corpus graph named '{ref}'")


def resolve_automorphism(ref: str, X: GraphContinuum, corpus_dir: Optional[Path] = None) -> GraphAutomorphism:
    path = Path(ref)
    if path.is_file():
        return read_automorphism_file(path, X)
    if X.name and ref in automorphism_names(X.name, corpus_dir):
        return read_automorphism_file(automorphism_path(X.name, ref, corpus_dir), X)
    raise InputError(f"no automorphism file or corpus automorphism named '{ref}'")


# -----------------------------
# Artifacts
# -----------------------------
def _suite(config: RunConfig, X: GraphContinuum, automorphisms=()) -> Tuple[PropertyResult, ...]:
    return tuple(command_suite(
        config.command, X, config.grid, config.verify, automorphisms, config.bound, config.seed,
    ))


def cutpoint_artifact(X: GraphContinuum, config: RunConfig) -> Artifact:
    tree = metrize(build_cutpoint_tree(X, config.grid), config.metric, config.seed)
    text = render_tree(tree, config.format, name=X.name or "cutpoint")
    return Artifact(text, tree, _suite(config, X))


def jsj_artifact(X: GraphContinuum, config: RunConfig) -> Artifact:
    tree = metrize(build_jsj_tree(X, config.grid), config.metric, config.seed)
    text = render_tree(tree, config.format, name=X.name or "jsj")
    return Artifact(text, tree, _suite(config, X))


def combined_artifact(X: GraphContinuum, config: RunConfig) -> Artifact:
    combined = build_combined_tree(X, config.grid)
    tree = metrize(combined.tree, config.metric, config.seed)
    text = render_tree(tree, config.format, name=X.name or "combined", extra=attachment_records(combined.attachments))
    return Artifact(text, tree, _suite(config, X))


def tree_for(kind: TreeKind, X: GraphContinuum, grid: int) -> StructuralTree:
    if kind == "cutpoint":
        return build_cutpoint_tree(X, grid)
    if kind == "jsj":
        return build_jsj_tree(X, grid)
    return build_combined_tree(X, grid).tree


def induced_action(X: GraphContinuum, g: GraphAutomorphism, kind: TreeKind, grid: int, bound: int) -> ActionReport:
    tree = tree_for(kind, X, grid)
    m: FiniteTreeMap = induced_tree_map(tree, X, g, grid)
    verdict = is_non_nesting(m, bound)
    classification = classify(m, bound) if verdict.non_nesting else None
    return ActionReport(g.name or "automorphism", kind, m.mapping, verdict, classification)


def action_artifact(X: GraphContinuum, g: GraphAutomorphism, config: RunConfig) -> Artifact:
    report = induced_action(X, g, config.tree, config.grid, config.bound)
    return Artifact(action_to_text(report), tree_for(config.tree, X, config.grid), _suite(config, X, (g,)))


# -----------------------------
# Commands
# -----------------------------
def cmd_cutpoint_tree(config: RunConfig) -> Artifact:
    return cutpoint_artifact(resolve_graph(config.graph), config)


def cmd_jsj_tree(config: RunConfig) -> Artifact:
    return jsj_artifact(resolve_graph(config.graph), config)


def cmd_combined(config: RunConfig) -> Artifact:
    return combined_artifact(resolve_graph(config.graph), config)


def cmd_action(config: RunConfig) -> Artifact:
    if not config.automorphism:
        raise InputError("the action command needs an automorphism")
    X = resolve_graph(config.graph)
    return action_artifact(X, resolve_automorphism(config.automorphism, X), config)


COMMANDS: Dict[str, Callable[[RunConfig], Artifact]] = {
    "cutpoint-tree": cmd_cutpoint_tree,
    "jsj-tree": cmd_jsj_tree,
    "combined": cmd_combined,
    "action": cmd_action,
}


def run(config: RunConfig) -> Artifact:
    artifact = COMMANDS[config.command](config)
    logger.debug("%s on %s: %d properties checked", config.command, config.graph, len(artifact.results))
    return artifact


def cmd_verify(grid: int = DEFAULT_GRID, bound: int = ACTION_SEARCH_BOUND, corpus_dir: Optional[Path] = None) -> Tuple[pd.DataFrame, List[PropertyResult]]:
    if grid < 1:
        raise InputError("grid granularity must be >= 1")
    results = verify_corpus(grid, bound, corpus_dir)
    return results_frame(results), results
