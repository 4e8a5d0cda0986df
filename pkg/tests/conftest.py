# tests/conftest.py
import pytest

from peano_trees import cache
from peano_trees.corpus import load_automorphisms, load_graph


@pytest.fixture
def graph():
    """Load a bundled corpus graph by name."""
    return load_graph


@pytest.fixture
def automorphism():
    """Load one named corpus automorphism of a corpus graph."""
    def _load(graph_name, auto_name):
        X = load_graph(graph_name)
        for g in load_automorphisms(graph_name, X):
            if g.name == auto_name:
                return X, g
        raise LookupError(f"{graph_name}--{auto_name}")
    return _load


@pytest.fixture(autouse=True)
def _empty_cache():
    cache.clear()
    yield
    cache.clear()
