# peano_trees/corpus.py
from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Tuple

from peano_trees.config import CORPUS_DIR
from peano_trees.continuum import build_graph, parse_automorphism, parse_graph
from peano_trees.models import Edge, GraphAutomorphism, GraphContinuum, InputError

logger = logging.getLogger(__name__)

GRAPH_SUFFIX = ".graph"
AUTO_SUFFIX = ".auto"


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    graph: GraphContinuum
    text: str
    automorphisms: Tuple[GraphAutomorphism, ...] = ()


def _dir(corpus_dir: Optional[Path]) -> Path:
    return Path(corpus_dir) if corpus_dir is not None else CORPUS_DIR


def read_graph_file(path: Path, name: Optional[str] = None) -> GraphContinuum:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read graph file {path}: {exc}") from exc
    return parse_graph(text, name=name or path.stem)


def read_automorphism_file(path: Path, X: GraphContinuum) -> GraphAutomorphism:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read automorphism file {path}: {exc}") from exc
    return parse_automorphism(text, X, name=path.stem.split("--", 1)[-1])


def graph_names(corpus_dir: Optional[Path] = None) -> List[str]:
    return sorted(p.stem for p in _dir(corpus_dir).glob(f"*{GRAPH_SUFFIX}"))


def automorphism_names(graph: str, corpus_dir: Optional[Path] = None) -> List[str]:
    prefix = f"{graph}--"
    return sorted(
        p.stem[len(prefix):] for p in _dir(corpus_dir).glob(f"{prefix}*{AUTO_SUFFIX}")
    )


def load_graph(name: str, corpus_dir: Optional[Path] = None) -> GraphContinuum:
    path = _dir(corpus_dir) / f"{name}{GRAPH_SUFFIX}"
    if not path.is_file():
        raise InputError(f"unknown corpus graph '{name}'")
    return read_graph_file(path, name)


def automorphism_path(graph: str, auto: str, corpus_dir: Optional[Path] = None) -> Path:
    return _dir(corpus_dir) / f"{graph}--{auto}{AUTO_SUFFIX}"


def load_automorphisms(name: str, X: GraphContinuum, corpus_dir: Optional[Path] = None) -> Tuple[GraphAutomorphism, ...]:
    return tuple(
        read_automorphism_file(automorphism_path(name, auto, corpus_dir), X)
        for auto in automorphism_names(name, corpus_dir)
    )


def load_entry(name: str, corpus_dir: Optional[Path] = None) -> CorpusEntry:
    path = _dir(corpus_dir) / f"{name}{GRAPH_SUFFIX}"
    X = load_graph(name, corpus_dir)
    return CorpusEntry(name, X, path.read_text(encoding="utf-8"), load_automorphisms(name, X, corpus_dir))


def load_corpus(corpus_dir: Optional[Path] = None) -> List[CorpusEntry]:
    entries = [load_entry(name, corpus_dir) for name in graph_names(corpus_dir)]
    logger.debug("loaded %d corpus graphs from %s", len(entries), _dir(corpus_dir))
    return entries


def complete_graph(n: int) -> GraphContinuum:
    """K_n on vertices k0..k{n-1}; edge k{i}k{j} joins k{i} to k{j}."""
    if n < 2:
        raise InputError("complete graph needs at least two vertices")
    vertices = [f"k{i}" for i in range(n)]
    edges = [
        Edge(f"k{i}k{j}", f"k{i}", f"k{j}")
        for i in range(n) for j in range(i + 1, n)
    ]
    return build_graph(vertices, edges, name=f"K{n}")
