# peano_trees/cutpoint.py
from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Dict, FrozenSet, List, Literal, Optional, Set, Tuple, Union

from peano_trees.actions import FiniteTreeMap
from peano_trees.continuum import SampleGrid, SeparationOracle, check_automorphism
from peano_trees.models import (
    GraphAutomorphism,
    GraphContinuum,
    InputError,
    InvariantViolation,
    MetricMode,
    Point,
    Region,
    Segment,
)
from peano_trees.pretree import (
    BetweennessTable,
    PretreeAxiomError,
    StructuralTree,
    TreeArc,
    TreeNode,
    assemble_tree,
    verify_pretree_axioms,
)

logger = logging.getLogger(__name__)

PNodeKind = Literal["class", "cutpoint", "arc"]

# node kinds whose tree nodes anchor the canonical metric
ANCHOR_KINDS = frozenset({"cutpoint", "necklace", "pair"})


@dataclass(frozen=True)
class CutPointSet:
    vertices: FrozenSet[str] = frozenset()
    # edges whose whole interior consists of cut points
    bridges: FrozenSet[str] = frozenset()

    def contains(self, p: Point) -> bool:
        if p.vertex is not None:
            return p.vertex in self.vertices
        return p.edge in self.bridges

    @property
    def is_empty(self) -> bool:
        return not self.vertices and not self.bridges

    @property
    def labels(self) -> Tuple[str, ...]:
        return tuple(sorted(self.vertices)) + tuple(sorted(self.bridges))


@dataclass(frozen=True)
class EquivClass:
    id: str
    members: Region
    singleton: bool
    samples: Tuple[Point, ...]
    # cut vertices in the closure of the class
    adjacent_cut_vertices: FrozenSet[str] = frozenset()

    @property
    def vertices(self) -> FrozenSet[str]:
        return self.members.vertices

    @property
    def edges(self) -> FrozenSet[str]:
        return self.members.whole_edges

    @property
    def representative(self) -> Point:
        return self.samples[0]


@dataclass(frozen=True)
class PNode:
    id: str
    kind: PNodeKind
    representative: Point


def _cut_id(p: Point) -> str:
    return f"cut:{p.label}"


class CutPointAnalysis:
    """Cut points, equivalence classes and the betweenness of P for one graph at one granularity."""

    def __init__(self, X: GraphContinuum, granularity: int = 3):
        self.X = X
        self.grid = SampleGrid.build(X, granularity)
        self.oracle = SeparationOracle(X, self.grid)

        cut_vertices = {v for v in X.vertices if self.oracle.component_count({Point.at_vertex(v)}) > 1}
        bridges: Set[str] = set()
        for e in X.edges:
            flags = {self.oracle.component_count({s}) > 1 for s in self.grid.on_edge(e.id)}
            if len(flags) != 1:
                raise InvariantViolation(f"interior samples of edge {e.id} disagree on being cut points")
            if flags == {True}:
                bridges.add(e.id)
        self.cut_points = CutPointSet(frozenset(cut_vertices), frozenset(bridges))

        self.cut_samples: Tuple[Point, ...] = tuple(p for p in self.grid.points if self.cut_points.contains(p))
        self._sep: Dict[Point, Dict[Point, int]] = {c: self.oracle.labels({c}) for c in self.cut_samples}
        self.classes: Tuple[EquivClass, ...] = self._classes()

        nodes: List[PNode] = [PNode(c.id, "class", c.representative) for c in self.classes]
        for p in self.cut_samples:
            nodes.append(PNode(_cut_id(p), "cutpoint" if p.is_vertex else "arc", p))
        nodes.sort(key=lambda n: n.representative.sort_key)
        self.nodes: Tuple[PNode, ...] = tuple(nodes)
        self._by_id = {n.id: n for n in nodes}
        self._class_of_vertex = {v: c.id for c in self.classes for v in c.vertices}
        logger.debug(
            "%s: %d cut vertices, %d bridges, %d classes",
            X.name or "graph", len(cut_vertices), len(bridges), len(self.classes),
        )

    def _classes(self) -> Tuple[EquivClass, ...]:
        groups: Dict[tuple, List[Point]] = {}
        for p in self.grid.points:
            if self.cut_points.contains(p):
                continue
            signature = tuple(self._sep[c][p] for c in self.cut_samples)
            groups.setdefault(signature, []).append(p)

        out: List[EquivClass] = []
        for samples in groups.values():
            vertices = frozenset(p.vertex for p in samples if p.is_vertex)
            edges = sorted({p.edge for p in samples if not p.is_vertex})
            for e in edges:
                if not all(s in samples for s in self.grid.on_edge(e)):
                    raise InvariantViolation(f"edge {e} is split between equivalence classes")
            region = Region(
                vertices=vertices,
                segments=tuple(Segment(e, Fraction(0), Fraction(1)) for e in edges),
                connected=True,
            )
            adjacent = frozenset(
                end for e in edges for end in (self.X.edge(e).u, self.X.edge(e).v)
                if end in self.cut_points.vertices
            )
            name = min(vertices) if vertices else edges[0]
            out.append(EquivClass(
                id=f"class:{name}",
                members=region,
                singleton=not edges and len(vertices) == 1,
                samples=tuple(samples),
                adjacent_cut_vertices=adjacent,
            ))
        out.sort(key=lambda c: c.representative.sort_key)
        return tuple(out)

    # -------------------------
    # lookups
    # -------------------------
    def node(self, node_id: str) -> PNode:
        try:
            return self._by_id[node_id]
        except KeyError:
            raise InputError(f"unknown P node '{node_id}'") from None

    def class_by_id(self, class_id: str) -> EquivClass:
        for c in self.classes:
            if c.id == class_id:
                return c
        raise InputError(f"unknown class '{class_id}'")

    def node_of_point(self, p: Point) -> str:
        if self.cut_points.contains(p):
            if p not in self._sep:
                raise InvariantViolation(f"cut point {p} is not on the sample grid")
            return _cut_id(p)
        for c in self.classes:
            if c.members.contains(p):
                return c.id
        raise InvariantViolation(f"point {p} lies in no equivalence class")

    def node_of_vertex(self, v: str) -> str:
        if v in self.cut_points.vertices:
            return f"cut:{v}"
        return self._class_of_vertex[v]

    @property
    def ground(self) -> Tuple[str, ...]:
        return tuple(n.id for n in self.nodes)

    # -------------------------
    # betweenness
    # -------------------------
    def cut_interval(self, p: Point, q: Point) -> FrozenSet[Point]:
        """Sampled cut points other than p, q separating p from q."""
        return frozenset(
            s for s in self.cut_samples
            if s != p and s != q and self._sep[s][p] != self._sep[s][q]
        )

    def between_points(self, a: Point, c: Point, b: Point, c_is_class: bool) -> bool:
        if not c_is_class:
            return self._sep[c][a] != self._sep[c][b]
        left = {a} | self.cut_interval(a, c)
        right = self.cut_interval(c, b) | {b}
        return not (left & right)

    def between(self, x: str, z: str, y: str) -> bool:
        if z == x or z == y or x == y:
            return False
        nz = self.node(z)
        return self.between_points(
            self.node(x).representative, nz.representative, self.node(y).representative,
            nz.kind == "class",
        )

    @cached_property
    def table(self) -> BetweennessTable:
        return BetweennessTable.from_predicate(self.ground, self.between)


@lru_cache(maxsize=64)
def analyze(X: GraphContinuum, granularity: int = 3) -> CutPointAnalysis:
    return CutPointAnalysis(X, granularity)


def cut_points(X: GraphContinuum, granularity: int = 3) -> CutPointSet:
    return analyze(X, granularity).cut_points


def betweenness_P(
    X: GraphContinuum,
    x: Union[str, Point],
    z: Union[str, Point],
    y: Union[str, Point],
    granularity: int = 3,
) -> bool:
    """Whether z lies in (x, y) in P; arguments are P node ids or points of X."""
    analysis = analyze(X, granularity)
    ids = [analysis.node_of_point(a) if isinstance(a, Point) else a for a in (x, z, y)]
    return analysis.between(*ids)


def check_representatives(X: GraphContinuum, granularity: int = 3) -> Optional[Tuple[str, str, str, str]]:
    """Betweenness must not depend on which sample stands for a class; returns (x, z, y, sample) on failure."""
    analysis = analyze(X, granularity)
    nodes = analysis.nodes
    for cls in analysis.classes:
        for alt in cls.samples[1:]:
            # the class in the middle
            for x in nodes:
                for y in nodes:
                    if x.id == y.id or cls.id in (x.id, y.id):
                        continue
                    base = analysis.between(x.id, cls.id, y.id)
                    if analysis.between_points(x.representative, alt, y.representative, True) != base:
                        return (x.id, cls.id, y.id, alt.label)
            # the class as an endpoint
            for z in nodes:
                for y in nodes:
                    if len({z.id, y.id, cls.id}) < 3:
                        continue
                    base = analysis.between(cls.id, z.id, y.id)
                    if analysis.between_points(alt, z.representative, y.representative, z.kind == "class") != base:
                        return (cls.id, z.id, y.id, alt.label)
    return None


# -----------------------------
# P and the cut-point tree
# -----------------------------
@dataclass(frozen=True)
class PStructure:
    table: BetweennessTable
    classes: Tuple[EquivClass, ...]
    cut_points: CutPointSet


def build_P(X: GraphContinuum, granularity: int = 3) -> PStructure:
    analysis = analyze(X, granularity)
    table = analysis.table
    report = verify_pretree_axioms(table)
    if not report.ok:
        raise PretreeAxiomError(report, f"P of {X.name or 'graph'}")
    return PStructure(table, analysis.classes, analysis.cut_points)


def _tree_nodes(analysis: CutPointAnalysis) -> Dict[str, TreeNode]:
    records: Dict[str, TreeNode] = {}
    for c in analysis.classes:
        records[c.id] = TreeNode(c.id, "class", c.members.label, c.vertices, c.edges)
    for n in analysis.nodes:
        if n.kind == "cutpoint":
            v = n.representative.vertex
            records[n.id] = TreeNode(n.id, "cutpoint", v, frozenset({v}))
        elif n.kind == "arc":
            records[n.id] = TreeNode(n.id, "node", n.representative.label)
    return records


def build_cutpoint_tree(X: GraphContinuum, granularity: int = 3) -> StructuralTree:
    """
    Assemble P, then collapse the sampled atoms of each bridge into one arc
    carrying the bridge edge as provenance.
    """
    build_P(X, granularity)
    analysis = analyze(X, granularity)
    assembled = assemble_tree(analysis.table, nodes=_tree_nodes(analysis))

    sample_ids: Set[str] = {n.id for n in analysis.nodes if n.kind == "arc"}
    arcs: List[TreeArc] = [a for a in assembled.arcs if a.a not in sample_ids and a.b not in sample_ids]
    for e in X.edges:
        if e.id not in analysis.cut_points.bridges:
            continue
        start, end = analysis.node_of_vertex(e.u), analysis.node_of_vertex(e.v)
        interior = assembled.path(start, end)[1:-1]
        expected = [_cut_id(p) for p in analysis.grid.on_edge(e.id)]
        if interior != expected:
            raise InvariantViolation(f"bridge {e.id} atoms are not consecutive in P")
        arcs.append(TreeArc(start, end, Fraction(1), "arc", edge=e.id, extent=e.length))

    nodes = tuple(n for n in assembled.nodes if n.id not in sample_ids)
    return StructuralTree(nodes, tuple(arcs)).sorted()


# -----------------------------
# Metrization
# -----------------------------
def _anchors(tree: StructuralTree) -> Set[str]:
    out = {n.id for n in tree.nodes if n.kind in ANCHOR_KINDS}
    for arc in tree.arcs:
        if arc.kind == "arc":
            out.update((arc.a, arc.b))
    return out


def seed_candidates(tree: StructuralTree) -> List[Tuple[tuple, str, str]]:
    """(order key, seed label, base node) for every admissible enumeration seed."""
    out = []
    for n in tree.nodes:
        if n.kind == "cutpoint":
            out.append(((0, n.label), n.label, n.id))
        elif n.kind in ANCHOR_KINDS:
            out.append(((2, n.id), n.id, n.id))
    for arc in tree.arcs:
        if arc.kind == "arc" and arc.edge is not None:
            out.append(((1, arc.edge), arc.edge, arc.a))
    out.sort()
    return out


def metric_base(tree: StructuralTree, seed: Optional[str] = None) -> Optional[str]:
    candidates = seed_candidates(tree)
    if not candidates:
        return None
    if not seed:
        return candidates[0][2]
    for _, label, base in candidates:
        if seed in (label, base):
            return base
    raise InputError(f"unknown enumeration seed '{seed}'")


def bfs_order(tree: StructuralTree, base: str) -> List[str]:
    seen = {base}
    order = [base]
    queue = deque([base])
    while queue:
        n = queue.popleft()
        for m in sorted(tree.graph.neighbors(n)):
            if m not in seen:
                seen.add(m)
                order.append(m)
                queue.append(m)
    return order


def canonical_lengths(tree: StructuralTree, seed: Optional[str] = None) -> Dict[FrozenSet[str], Fraction]:
    """
    Walk the anchors breadth-first from the seed; the j-th newly attached
    segment gets total length 1/2^j split evenly over its arcs. Arcs outside
    the span of the anchors keep length 1.
    """
    lengths = {arc.key: Fraction(1) for arc in tree.arcs}
    anchors = _anchors(tree)
    base = metric_base(tree, seed)
    if base is None or not anchors:
        return lengths

    attached = {base}
    j = 0
    for target in bfs_order(tree, base):
        if target not in anchors or target in attached:
            continue
        path = tree.path(base, target)
        cut = max(i for i, n in enumerate(path) if n in attached)
        fresh = path[cut:]
        share = Fraction(1, 2 ** j) / (len(fresh) - 1)
        for a, b in zip(fresh, fresh[1:]):
            lengths[frozenset((a, b))] = share
        attached.update(fresh)
        j += 1
    return lengths


def metrize(tree: StructuralTree, mode: MetricMode = "canonical", seed: Optional[str] = None) -> StructuralTree:
    if mode == "geometric":
        return tree.with_lengths({
            arc.key: arc.extent if arc.extent is not None else Fraction(1) for arc in tree.arcs
        })
    if mode == "canonical":
        return tree.with_lengths(canonical_lengths(tree, seed))
    raise InputError(f"unknown metric mode '{mode}'")


# -----------------------------
# Induced maps
# -----------------------------
def class_image_map(X: GraphContinuum, g: GraphAutomorphism, granularity: int = 3) -> Dict[str, str]:
    analysis = analyze(X, granularity)
    by_cells = {(c.vertices, c.edges): c.id for c in analysis.classes}
    out: Dict[str, str] = {}
    for c in analysis.classes:
        image = g.cells(c.vertices, c.edges)
        if image not in by_cells:
            raise InvariantViolation(f"image of class {c.id} is not a class")
        out[c.id] = by_cells[image]
    return out


def induced_tree_map(
    tree: StructuralTree,
    X: GraphContinuum,
    g: GraphAutomorphism,
    granularity: int = 3,
) -> FiniteTreeMap:
    """Map tree nodes by the image of their cells (and of their block, when they carry one)."""
    check_automorphism(X, g)
    blocks = class_image_map(X, g, granularity)
    index = {(n.kind, n.vertices, n.edges, n.block): n.id for n in tree.nodes}
    mapping: Dict[str, str] = {}
    for n in tree.nodes:
        vertices, edges = g.cells(n.vertices, n.edges)
        key = (n.kind, vertices, edges, blocks[n.block] if n.block else None)
        if key not in index:
            raise InvariantViolation(f"image of tree node {n.id} is not a node")
        mapping[n.id] = index[key]
    return FiniteTreeMap.from_dict(tree, mapping, g.name)


def induced_map(X: GraphContinuum, g: GraphAutomorphism, granularity: int = 3) -> FiniteTreeMap:
    return induced_tree_map(build_cutpoint_tree(X, granularity), X, g, granularity)
