# peano_trees/pretree.py
from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property
from typing import Callable, Dict, FrozenSet, Iterable, List, Mapping, Optional, Tuple

import networkx as nx

from peano_trees.models import ArcKind, InputError, IntervalKind, InvariantViolation

logger = logging.getLogger(__name__)

Triple = Tuple[str, str, str]

AXIOM_NAMES = {
    1: "no xyx, no xxy",
    2: "xzy iff yzx",
    3: "xyz excludes xzy",
    4: "xzy and w != z gives xzw or yzw",
}


class PretreeAxiomError(InvariantViolation):
    """Raised when a table that must be a pretree fails an axiom."""

    def __init__(self, report: "AxiomReport", context: str = ""):
        self.report = report
        prefix = f"{context}: " if context else ""
        super().__init__(prefix + "betweenness table is not a pretree; " + report.describe())


# -----------------------------
# Betweenness tables
# -----------------------------
@dataclass(frozen=True)
class BetweennessTable:
    """
    Finite ground set with a materialized betweenness relation.

    A triple (x, z, y) in `triples` reads "z lies in the open interval (x, y)".
    The relation is stored as given, so malformed tables can be reported.
    """
    ground: Tuple[str, ...]
    triples: FrozenSet[Triple] = frozenset()

    def __post_init__(self):
        if len(set(self.ground)) != len(self.ground):
            raise InputError("betweenness table has duplicate node identifiers")
        known = set(self.ground)
        for t in self.triples:
            for n in t:
                if n not in known:
                    raise InputError(f"betweenness triple {t} names unknown node '{n}'")

    @classmethod
    def from_predicate(cls, ground: Iterable[str], between: Callable[[str, str, str], bool]) -> "BetweennessTable":
        ground = tuple(ground)
        triples = set()
        for x in ground:
            for y in ground:
                if x == y:
                    continue
                for z in ground:
                    if z != x and z != y and between(x, z, y):
                        triples.add((x, z, y))
        return cls(ground, frozenset(triples))

    @cached_property
    def index(self) -> Dict[str, int]:
        return {n: i for i, n in enumerate(self.ground)}

    def require(self, node: str) -> None:
        if node not in self.index:
            raise InputError(f"unknown node '{node}'")

    def between(self, x: str, z: str, y: str) -> bool:
        return (x, z, y) in self.triples

    def inner(self, x: str, y: str) -> List[str]:
        return [z for z in self.ground if (x, z, y) in self.triples]


# -----------------------------
# Axioms
# -----------------------------
@dataclass(frozen=True)
class AxiomResult:
    axiom: int
    witness: Optional[Tuple[str, ...]] = None

    @property
    def passed(self) -> bool:
        return self.witness is None

    @property
    def name(self) -> str:
        return AXIOM_NAMES[self.axiom]


@dataclass(frozen=True)
class AxiomReport:
    results: Tuple[AxiomResult, ...]

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.results)

    def describe(self) -> str:
        return "; ".join(
            f"axiom {r.axiom} ({r.name}): " + ("PASS" if r.passed else "violated at " + ",".join(r.witness))
            for r in self.results
        )


def verify_pretree_axioms(table: BetweennessTable) -> AxiomReport:
    if not table.ground:
        raise InputError("betweenness table has an empty ground set")

    ordered = sorted(table.triples, key=lambda t: tuple(table.index[n] for n in t))
    found: Dict[int, Optional[Tuple[str, ...]]] = {1: None, 2: None, 3: None, 4: None}

    for x, z, y in ordered:
        if found[1] is None and x == y:
            found[1] = (x, z)
        if found[1] is None and z in (x, y):
            # an endpoint never lies in its own open interval
            found[1] = (x, z, y)
        if found[2] is None and (y, z, x) not in table.triples:
            found[2] = (x, z, y)
        if found[3] is None and (x, y, z) in table.triples:
            # z in (x,y) and y in (x,z)
            found[3] = (x, z, y)
        if found[4] is None:
            for w in table.ground:
                if w != z and (x, z, w) not in table.triples and (y, z, w) not in table.triples:
                    found[4] = (x, z, y, w)
                    break

    return AxiomReport(tuple(AxiomResult(i, found[i]) for i in (1, 2, 3, 4)))


# -----------------------------
# Intervals
# -----------------------------
@dataclass(frozen=True)
class Interval:
    endpoints: Tuple[str, str]
    members: Tuple[str, ...]
    kind: IntervalKind

    def __contains__(self, node: str) -> bool:
        return node in self.members


def interval(table: BetweennessTable, x: str, y: str, kind: IntervalKind = "closed") -> Interval:
    """
    Members of (x,y), [x,y) or [x,y], listed in the linear order that starts at x.

    A member's rank is the number of interval points strictly between x and it.
    """
    table.require(x)
    table.require(y)
    if kind not in ("open", "half-open", "closed"):
        raise InputError(f"unknown interval kind '{kind}'")
    if x == y:
        return Interval((x, y), (x,) if kind == "closed" else (), kind)

    inner = table.inner(x, y)
    rank = {z: sum(1 for w in inner if table.between(x, w, z)) for z in inner}
    inner.sort(key=rank.__getitem__)
    if kind == "open":
        members = tuple(inner)
    elif kind == "half-open":
        members = (x, *inner)
    else:
        members = (x, *inner, y)
    return Interval((x, y), members, kind)


def verify_linear_order(table: BetweennessTable, x: str, y: str) -> Optional[Tuple[str, str, str]]:
    """Check that the order on [x,y] reproduces betweenness; returns a counterexample or None."""
    members = interval(table, x, y, "closed").members
    for i, a in enumerate(members):
        for j in range(i + 2, len(members)):
            b = members[j]
            for k, c in enumerate(members):
                inside = i < k < j
                if inside != table.between(a, c, b):
                    return (a, c, b)
    return None


def check_subset_property(table: BetweennessTable) -> Optional[Tuple[str, str, str]]:
    """y in [x,z] implies [x,y] is contained in [x,z]; returns the first failing (x, y, z)."""
    closed: Dict[Tuple[str, str], FrozenSet[str]] = {}

    def segment(a: str, b: str) -> FrozenSet[str]:
        if (a, b) not in closed:
            closed[(a, b)] = frozenset(interval(table, a, b, "closed").members)
        return closed[(a, b)]

    for x in table.ground:
        for z in table.ground:
            big = segment(x, z)
            for y in big:
                if not segment(x, y) <= big:
                    return (x, y, z)
    return None


def check_nested_unions(table: BetweennessTable) -> Optional[Tuple[str, str]]:
    """
    For each x and each maximal chain [x,y1] ⊂ [x,y2] ⊂ ..., every prefix union is
    again an interval [x, yk] and has a last element. Returns a failing (x, y) or None.
    """
    for x in table.ground:
        for z in table.ground:
            if z == x:
                continue
            chain = interval(table, x, z, "closed").members
            acc: set = set()
            for y in chain:
                acc |= set(interval(table, x, y, "closed").members)
                if acc != set(interval(table, x, y, "closed").members):
                    return (x, y)
    return None


# -----------------------------
# Node classification
# -----------------------------
@dataclass(frozen=True)
class NodeClassification:
    adjacent: Tuple[Tuple[str, str], ...]
    terminal: Tuple[str, ...]
    discrete: bool = True


def classify_nodes(table: BetweennessTable) -> NodeClassification:
    middles = {z for _, z, _ in table.triples}
    adjacent = []
    for i, x in enumerate(table.ground):
        for y in table.ground[i + 1:]:
            if not any((x, z, y) in table.triples for z in table.ground):
                adjacent.append((x, y))
    terminal = tuple(n for n in table.ground if n not in middles)
    # finite tables have finite closed intervals
    return NodeClassification(tuple(adjacent), terminal, discrete=True)


# -----------------------------
# Structural trees
# -----------------------------
@dataclass(frozen=True)
class TreeNode:
    id: str
    kind: str = "node"
    label: str = ""
    vertices: FrozenSet[str] = frozenset()
    edges: FrozenSet[str] = frozenset()
    # provenance: the cut-point class whose block produced this node
    block: Optional[str] = None


@dataclass(frozen=True)
class TreeArc:
    a: str
    b: str
    length: Fraction = Fraction(1)
    kind: ArcKind = "glue"
    # continuum arc this tree arc stands for (a bridge edge) and its geometric length
    edge: Optional[str] = None
    extent: Optional[Fraction] = None

    @property
    def key(self) -> FrozenSet[str]:
        return frozenset((self.a, self.b))

    def other(self, node: str) -> str:
        return self.b if node == self.a else self.a


@dataclass(frozen=True)
class StructuralTree:
    nodes: Tuple[TreeNode, ...]
    arcs: Tuple[TreeArc, ...] = ()
    root: Optional[str] = None

    def __post_init__(self):
        ids = [n.id for n in self.nodes]
        if not ids:
            raise InvariantViolation("a structural tree needs at least one node")
        if len(set(ids)) != len(ids):
            raise InvariantViolation("duplicate tree node identifiers")
        known = set(ids)
        for arc in self.arcs:
            if arc.a not in known or arc.b not in known:
                raise InvariantViolation(f"arc {arc.a}--{arc.b} names an unknown node")
            if arc.a == arc.b:
                raise InvariantViolation(f"arc at {arc.a} is a loop")
            if arc.length <= 0:
                raise InvariantViolation(f"arc {arc.a}--{arc.b} has nonpositive length")
        if self.root is not None and self.root not in known:
            raise InvariantViolation(f"root '{self.root}' is not a node")
        g = self.graph
        if g.number_of_edges() != len(self.arcs) or not nx.is_tree(g):
            raise InvariantViolation("structure is not a tree (cycle, parallel arcs or disconnected)")

    @cached_property
    def graph(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(n.id for n in self.nodes)
        for arc in self.arcs:
            g.add_edge(arc.a, arc.b, length=arc.length)
        return g

    @cached_property
    def _by_id(self) -> Dict[str, TreeNode]:
        return {n.id: n for n in self.nodes}

    @cached_property
    def _arcs_by_key(self) -> Dict[FrozenSet[str], TreeArc]:
        return {arc.key: arc for arc in self.arcs}

    def node(self, node_id: str) -> TreeNode:
        try:
            return self._by_id[node_id]
        except KeyError:
            raise InputError(f"unknown tree node '{node_id}'") from None

    def arc(self, a: str, b: str) -> TreeArc:
        try:
            return self._arcs_by_key[frozenset((a, b))]
        except KeyError:
            raise InputError(f"no arc between '{a}' and '{b}'") from None

    def has_arc(self, a: str, b: str) -> bool:
        return frozenset((a, b)) in self._arcs_by_key

    @property
    def node_ids(self) -> Tuple[str, ...]:
        return tuple(n.id for n in self.nodes)

    def path(self, x: str, y: str) -> List[str]:
        self.node(x)
        self.node(y)
        return nx.shortest_path(self.graph, x, y)

    def between(self, x: str, z: str, y: str) -> bool:
        if z in (x, y) or x == y:
            return False
        return z in self.path(x, y)[1:-1]

    @property
    def total_length(self) -> Fraction:
        return sum((arc.length for arc in self.arcs), Fraction(0))

    def with_lengths(self, lengths: Mapping[FrozenSet[str], Fraction]) -> "StructuralTree":
        arcs = tuple(replace(arc, length=lengths.get(arc.key, arc.length)) for arc in self.arcs)
        return StructuralTree(self.nodes, arcs, self.root)

    def sorted(self) -> "StructuralTree":
        nodes = tuple(sorted(self.nodes, key=lambda n: n.id))
        arcs = []
        for arc in self.arcs:
            if arc.b < arc.a:
                arc = replace(arc, a=arc.b, b=arc.a)
            arcs.append(arc)
        arcs.sort(key=lambda arc: (arc.a, arc.b))
        return StructuralTree(nodes, tuple(arcs), self.root)


# -----------------------------
# Assembly
# -----------------------------
LengthPolicy = Callable[[str, str], Fraction]


def unit_length(a: str, b: str) -> Fraction:
    return Fraction(1)


def check_tree_matches_table(tree: StructuralTree, table: BetweennessTable) -> Optional[Triple]:
    """Compare pretree and tree betweenness on all triples of table nodes."""
    for x in table.ground:
        for y in table.ground:
            if x == y:
                continue
            on_path = set(tree.path(x, y)[1:-1])
            for z in table.ground:
                if z in (x, y):
                    continue
                if (z in on_path) != table.between(x, z, y):
                    return (x, z, y)
    return None


def assemble_tree(
    table: BetweennessTable,
    lengths: Optional[LengthPolicy] = None,
    nodes: Optional[Mapping[str, TreeNode]] = None,
    root: Optional[str] = None,
) -> StructuralTree:
    """Glue one arc between every adjacent pair of a verified pretree."""
    report = verify_pretree_axioms(table)
    if not report.ok:
        raise PretreeAxiomError(report, "assemble_tree")

    policy = lengths or unit_length
    records = [nodes[n] if nodes and n in nodes else TreeNode(id=n) for n in table.ground]
    arcs = tuple(TreeArc(a, b, Fraction(policy(a, b))) for a, b in classify_nodes(table).adjacent)
    try:
        tree = StructuralTree(tuple(records), arcs, root)
    except InvariantViolation as exc:
        raise InvariantViolation(f"adjacent pairs of the pretree do not form a tree: {exc}") from exc

    bad = check_tree_matches_table(tree, table)
    if bad is not None:
        raise InvariantViolation(f"tree betweenness disagrees with the pretree at {bad}")
    logger.debug("assembled tree with %d nodes and %d arcs", len(records), len(arcs))
    return tree


# -----------------------------
# Neighborhoods
# -----------------------------
@dataclass(frozen=True)
class Neighborhood:
    nodes: FrozenSet[str]
    # arcs whose interior points t have [s,t] disjoint from A
    arcs: FrozenSet[FrozenSet[str]] = field(default_factory=frozenset)


def neighborhood(tree: StructuralTree, s: str, A: Iterable[str]) -> Neighborhood:
    A = frozenset(A)
    tree.node(s)
    for a in A:
        tree.node(a)
    if s in A:
        return Neighborhood(frozenset())
    nodes = frozenset(t for t in tree.node_ids if not (set(tree.path(s, t)) & A))
    arcs = frozenset(arc.key for arc in tree.arcs if arc.a in nodes or arc.b in nodes)
    return Neighborhood(nodes, arcs)
