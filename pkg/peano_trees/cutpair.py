# peano_trees/cutpair.py
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Dict, FrozenSet, Iterable, List, Literal, Optional, Set, Tuple

import networkx as nx

from peano_trees.continuum import (
    SampleGrid,
    SeparationOracle,
    Subdivision,
    points_in_cells,
    probe_grid,
)
from peano_trees.cutpoint import cut_points
from peano_trees.models import (
    GraphAutomorphism,
    GraphContinuum,
    HasCutPointsError,
    InputError,
    InvariantViolation,
    Point,
    Region,
)
from peano_trees.pretree import (
    BetweennessTable,
    PretreeAxiomError,
    StructuralTree,
    TreeNode,
    assemble_tree,
    verify_pretree_axioms,
)

logger = logging.getLogger(__name__)

ElementKind = Literal["necklace", "inseparable", "pair"]


# -----------------------------
# Types
# -----------------------------
@dataclass(frozen=True)
class CyclicDecomposition:
    stations: Tuple[Point, ...]
    pieces: Tuple[Region, ...] = ()
    # cut pairs are cyclic by definition and carry no pieces
    fiat: bool = False


@dataclass(frozen=True)
class Gap:
    id: str
    region: Region
    sides: Tuple[Region, Region]
    # the two necklace vertices bounding the gap, in necklace order
    boundary: Tuple[str, str]
    vertices: FrozenSet[str] = frozenset()
    edges: FrozenSet[str] = frozenset()

    @property
    def fat(self) -> bool:
        return not (self.sides[0].vertices & self.sides[1].vertices)


@dataclass(frozen=True)
class Necklace:
    id: str
    vertices: FrozenSet[str]
    edges: FrozenSet[str]
    # cyclic walk: ("vertex", v), ("edge", e) and ("gap", gap id) entries
    sequence: Tuple[Tuple[str, str], ...]
    gaps: Tuple[Gap, ...] = ()

    @property
    def stations(self) -> Tuple[str, ...]:
        return tuple(name for kind, name in self.sequence if kind != "gap")

    @property
    def vertex_stations(self) -> Tuple[str, ...]:
        return tuple(name for kind, name in self.sequence if kind == "vertex")

    def contains(self, p: Point) -> bool:
        return p.vertex in self.vertices if p.is_vertex else p.edge in self.edges


@dataclass(frozen=True)
class RElement:
    id: str
    kind: ElementKind
    vertices: FrozenSet[str]
    edges: FrozenSet[str] = frozenset()
    inseparable: bool = False
    cyclic: bool = False

    @property
    def cells(self) -> Tuple[FrozenSet[str], FrozenSet[str]]:
        return (self.vertices, self.edges)

    @property
    def label(self) -> str:
        return ",".join(sorted(self.vertices) + sorted(self.edges))

    def contains(self, p: Point) -> bool:
        return p.vertex in self.vertices if p.is_vertex else p.edge in self.edges

    def within(self, other: "RElement") -> bool:
        return self != other and self.vertices <= other.vertices and self.edges <= other.edges


@dataclass(frozen=True)
class InseparableStructure:
    maximal_sets: Tuple[FrozenSet[str], ...]
    pairs: Tuple[FrozenSet[str], ...]


@dataclass(frozen=True)
class RCollection:
    necklaces: Tuple[Necklace, ...]
    inseparable: InseparableStructure
    elements: Tuple[RElement, ...]

    def element(self, element_id: str) -> RElement:
        for el in self.elements:
            if el.id == element_id:
                return el
        raise InputError(f"unknown R element '{element_id}'")


@dataclass(frozen=True)
class RStructure:
    collection: RCollection
    table: BetweennessTable


@dataclass(frozen=True)
class CircleLayout:
    necklace: str
    angles: Tuple[Tuple[str, Fraction], ...]
    # (kind, name, start angle, end angle, vertex the arc leaves from)
    arcs: Tuple[Tuple[str, str, Fraction, Fraction, str], ...]
    # probe points inside gaps
    gap_positions: Tuple[Tuple[Point, Fraction], ...] = ()

    @cached_property
    def _angle_of_vertex(self) -> Dict[str, Fraction]:
        return dict(self.angles)

    def angle(self, X: GraphContinuum, p: Point) -> Fraction:
        if p.is_vertex and p.vertex in self._angle_of_vertex:
            return self._angle_of_vertex[p.vertex]
        if not p.is_vertex:
            for kind, name, start, end, origin in self.arcs:
                if kind == "edge" and name == p.edge:
                    e = X.edge(name)
                    t = p.t if (e.u == origin or e.is_loop) else 1 - p.t
                    return (start + t * (end - start)) % 1
        for q, angle in self.gap_positions:
            if q == p:
                return angle
        raise InputError(f"point {p} has no position in the circle layout of {self.necklace}")


# -----------------------------
# Analysis
# -----------------------------
def _require_no_cut_points(X: GraphContinuum, granularity: int) -> None:
    cps = cut_points(X, granularity)
    if not cps.is_empty:
        raise HasCutPointsError(cps.labels)


class CutPairAnalysis:
    """
    Cut pairs of a continuum without cut points, sampled on the probe grid.

    Coarse grid points are the atoms whose relations are reported; the probe
    grid refines it so any two neighbouring atoms have probes between them.
    """

    def __init__(self, X: GraphContinuum, granularity: int = 3):
        _require_no_cut_points(X, granularity)
        self.X = X
        self.granularity = granularity
        self.grid = SampleGrid.build(X, granularity)
        self.probe = probe_grid(X, granularity)
        self.oracle = SeparationOracle(X, self.probe)

        probes = self.probe.points
        self.cut_pairs: Dict[FrozenSet[Point], Dict[Point, int]] = {}
        for i, c in enumerate(probes):
            for d in probes[i + 1:]:
                if self.oracle.component_count({c, d}) > 1:
                    self.cut_pairs[frozenset((c, d))] = self.oracle.labels({c, d})
        self._separable: Dict[FrozenSet[Point], bool] = {}
        logger.debug("%s: %d sampled cut pairs", X.name or "graph", len(self.cut_pairs))

    # -------------------------
    # separation among atoms
    # -------------------------
    def separable(self, x: Point, y: Point) -> bool:
        key = frozenset((x, y))
        if key not in self._separable:
            self._separable[key] = any(
                x not in Q and y not in Q and labels[x] != labels[y]
                for Q, labels in self.cut_pairs.items()
            )
        return self._separable[key]

    def is_cut_pair(self, x: Point, y: Point) -> bool:
        return frozenset((x, y)) in self.cut_pairs

    def _close_cyclic(self, seed: FrozenSet[Point]) -> FrozenSet[Point]:
        """Add every cut pair separating two points of the set, until nothing changes."""
        S: Set[Point] = set(seed)
        changed = True
        while changed:
            changed = False
            for Q, labels in self.cut_pairs.items():
                if Q <= S:
                    continue
                if len({labels[p] for p in S if p not in Q}) > 1:
                    S |= Q
                    changed = True
        return frozenset(S)

    def _cells(self, points: FrozenSet[Point]) -> Tuple[FrozenSet[str], FrozenSet[str]]:
        vertices = frozenset(p.vertex for p in points if p.is_vertex)
        edges: Set[str] = set()
        for e in {p.edge for p in points if not p.is_vertex}:
            samples = self.probe.on_edge(e)
            if not all(s in points for s in samples):
                raise InvariantViolation(f"cyclic set covers part of edge {e}; refine the grid")
            edges.add(e)
        return vertices, frozenset(edges)

    # -------------------------
    # necklaces
    # -------------------------
    @cached_property
    def necklaces(self) -> Tuple[Necklace, ...]:
        atoms = self.grid.points
        found: List[FrozenSet[Point]] = []
        for i, c in enumerate(atoms):
            for d in atoms[i + 1:]:
                if not self.is_cut_pair(c, d) or not self.separable(c, d):
                    continue
                if any(c in S and d in S for S in found):
                    continue
                found.append(self._close_cyclic(frozenset((c, d))))

        cells = {}
        for S in found:
            vertices, edges = self._cells(S)
            cells[(vertices, edges)] = S
        out = [self._necklace(vertices, edges) for vertices, edges in cells]
        out.sort(key=lambda n: n.id)
        logger.debug("%s: %d necklaces", self.X.name or "graph", len(out))
        return tuple(out)

    def _necklace(self, vertices: FrozenSet[str], edges: FrozenSet[str]) -> Necklace:
        nid = "necklace:" + ",".join(sorted(edges) if edges else sorted(vertices))
        gaps = self._gaps(nid, vertices, edges)
        links: List[Tuple[str, str, Tuple[str, str]]] = [
            (self.X.edge(e).u, self.X.edge(e).v, ("edge", e)) for e in sorted(edges)
        ]
        links += [(g.boundary[0], g.boundary[1], ("gap", g.id)) for g in gaps]
        sequence = _walk_cycle(vertices, links, nid)

        # sides in the order the walk meets them
        position = {name: i for i, (kind, name) in enumerate(sequence) if kind == "vertex"}
        ordered = []
        for g in gaps:
            b, c = g.boundary
            if position[c] < position[b]:
                g = Gap(g.id, g.region, (g.sides[1], g.sides[0]), (c, b), g.vertices, g.edges)
            ordered.append(g)
        return Necklace(nid, vertices, edges, sequence, tuple(ordered))

    def _gaps(self, nid: str, vertices: FrozenSet[str], edges: FrozenSet[str]) -> List[Gap]:
        sub = self.oracle.subdivision
        removed = {("v", v) for v in vertices}
        for e in edges:
            removed.update(sub.edge_cells(e))
        groups: Dict[FrozenSet[str], List[FrozenSet]] = {}
        for comp in sub.components(removed):
            bd = frozenset(c[1] for c in sub.boundary(comp, removed))
            if len(bd) != 2:
                raise InvariantViolation(f"{nid}: complementary component with {len(bd)} boundary points")
            groups.setdefault(bd, []).append(comp)

        gaps = []
        for bd, comps in groups.items():
            b, c = sorted(bd)
            cells = frozenset().union(*comps)
            gaps.append(Gap(
                id=f"gap:{b}|{c}",
                region=sub.region(sub.closure(cells), connected=True),
                sides=(Region(frozenset({b}), connected=True), Region(frozenset({c}), connected=True)),
                boundary=(b, c),
                vertices=frozenset(x[1] for x in cells if x[0] == "v"),
                edges=frozenset(x[1] for x in cells if x[0] == "s"),
            ))
        gaps.sort(key=lambda g: g.id)
        return gaps

    # -------------------------
    # inseparable structure
    # -------------------------
    @cached_property
    def inseparable(self) -> InseparableStructure:
        atoms = self.grid.points
        g = nx.Graph()
        g.add_nodes_from(atoms)
        pairs: List[FrozenSet[str]] = []
        for i, x in enumerate(atoms):
            for y in atoms[i + 1:]:
                if self.separable(x, y):
                    continue
                if not (x.is_vertex and y.is_vertex):
                    raise InvariantViolation(f"edge-interior atoms {x}, {y} reported inseparable")
                g.add_edge(x, y)
                if self.is_cut_pair(x, y):
                    pairs.append(frozenset((x.vertex, y.vertex)))

        maximal = sorted(
            (frozenset(p.vertex for p in clique) for clique in nx.find_cliques(g) if len(clique) >= 2),
            key=lambda s: sorted(s),
        )
        pairs.sort(key=lambda s: sorted(s))
        return InseparableStructure(tuple(maximal), tuple(pairs))

    # -------------------------
    # R and its betweenness
    # -------------------------
    @cached_property
    def elements(self) -> Tuple[RElement, ...]:
        by_cells: Dict[Tuple[FrozenSet[str], FrozenSet[str]], Dict] = {}
        for n in self.necklaces:
            by_cells[(n.vertices, n.edges)] = {"cyclic": True, "inseparable": False, "pair": False}
        structure = self.inseparable
        for s in structure.maximal_sets:
            by_cells.setdefault((s, frozenset()), {"cyclic": False, "inseparable": False, "pair": False})
            by_cells[(s, frozenset())]["inseparable"] = True
        for p in structure.pairs:
            by_cells.setdefault((p, frozenset()), {"cyclic": False, "inseparable": True, "pair": False})
            by_cells[(p, frozenset())]["pair"] = True

        out = []
        for (vertices, edges), flags in by_cells.items():
            if flags["pair"]:
                kind, eid = "pair", "pair:" + ",".join(sorted(vertices))
            elif flags["cyclic"]:
                kind, eid = "necklace", "necklace:" + ",".join(sorted(edges) if edges else sorted(vertices))
            else:
                kind, eid = "inseparable", "insep:" + ",".join(sorted(vertices))
            out.append(RElement(eid, kind, vertices, edges, flags["inseparable"] or flags["pair"], flags["cyclic"]))
        out.sort(key=lambda el: el.id)
        return tuple(out)

    def element_points(self, el: RElement) -> Tuple[Point, ...]:
        return points_in_cells(self.probe.points, el.vertices, el.edges)

    def labels_without(self, el: RElement) -> Dict[Point, int]:
        return self.oracle.labels_without_cells(el.vertices, el.edges)

    def separates_elements(self, S: RElement, R: RElement, T: RElement) -> bool:
        """S separates a point of R minus S from a point of T minus S."""
        labels = self.labels_without(S)
        left = {labels[p] for p in self.element_points(R) if p in labels}
        right = {labels[p] for p in self.element_points(T) if p in labels}
        if not left or not right:
            return False
        return not (len(left) == 1 and left == right)

    def _pair_between(self, Q: RElement, R: RElement, T: RElement) -> bool:
        return Q.kind == "pair" and self.separates_elements(Q, R, T)

    def between(self, R: RElement, S: RElement, T: RElement) -> bool:
        if S == R or S == T or R == T:
            return False
        if S.kind == "pair":
            return self.separates_elements(S, R, T)
        if R.within(S) and not self._pair_between(R, S, T):
            return True
        if T.within(S) and not self._pair_between(T, S, R):
            return True
        if not self.separates_elements(S, R, T):
            return False
        for Q in self.elements:
            if Q.kind != "pair" or Q in (R, S, T):
                continue
            if self._pair_between(Q, R, S) and self._pair_between(Q, T, S):
                return False
        return True

    @cached_property
    def table(self) -> BetweennessTable:
        by_id = {el.id: el for el in self.elements}
        return BetweennessTable.from_predicate(
            tuple(by_id), lambda x, z, y: self.between(by_id[x], by_id[z], by_id[y])
        )


@lru_cache(maxsize=32)
def analyze_pairs(X: GraphContinuum, granularity: int = 3) -> CutPairAnalysis:
    return CutPairAnalysis(X, granularity)


def _walk_cycle(
    vertices: FrozenSet[str],
    links: List[Tuple[str, str, Tuple[str, str]]],
    label: str,
) -> Tuple[Tuple[str, str], ...]:
    incident: Dict[str, List[int]] = {v: [] for v in vertices}
    for i, (a, b, _) in enumerate(links):
        incident[a].append(i)
        incident[b].append(i)
    if any(len(ids) != 2 for ids in incident.values()):
        raise InvariantViolation(f"{label}: cells do not form a cycle")

    start = min(vertices)
    sequence: List[Tuple[str, str]] = [("vertex", start)]
    used: Set[int] = set()
    current = start
    while len(used) < len(links):
        options = sorted((links[i][2], i) for i in incident[current] if i not in used)
        if not options:
            raise InvariantViolation(f"{label}: cells do not form a single cycle")
        i = options[0][1]
        used.add(i)
        a, b, tag = links[i]
        current = b if a == current else a
        sequence.append(tag)
        if len(used) < len(links):
            if current == start:
                raise InvariantViolation(f"{label}: cells form more than one cycle")
            sequence.append(("vertex", current))
    if current != start or len({n for k, n in sequence if k == "vertex"}) != len(vertices):
        raise InvariantViolation(f"{label}: cells do not form a single cycle")
    return tuple(sequence)


# -----------------------------
# Operations
# -----------------------------
def cyclic_decomposition(
    X: GraphContinuum,
    S: Iterable[Point],
    subdivision: Optional[Subdivision] = None,
    granularity: int = 3,
) -> Optional[CyclicDecomposition]:
    """
    A cyclic decomposition of X with stations S, or None.

    Pairs are decided by the cut-pair test alone. Larger sets need the
    components of X - S to join consecutive stations around one cycle.
    """
    stations = tuple(sorted(set(S), key=lambda p: p.sort_key))
    if len(stations) < 2:
        raise InputError("a cyclic set needs at least two points")
    _require_no_cut_points(X, granularity)

    sub = subdivision if subdivision is not None else Subdivision(X, stations)
    removed = {sub.node(p): p for p in stations}
    comps = sub.components(removed)

    if len(stations) == 2:
        return CyclicDecomposition(stations, fiat=True) if len(comps) > 1 else None

    groups: Dict[FrozenSet, List[FrozenSet]] = {}
    for comp in comps:
        bd = sub.boundary(comp, removed)
        if len(bd) != 2:
            return None
        groups.setdefault(bd, []).append(comp)
    if len(groups) != len(stations):
        return None

    neighbours: Dict[Point, List[Point]] = {p: [] for p in stations}
    for bd in groups:
        a, b = (removed[c] for c in bd)
        neighbours[a].append(b)
        neighbours[b].append(a)
    if any(len(ns) != 2 for ns in neighbours.values()):
        return None

    order = [stations[0]]
    previous, current = stations[0], min(neighbours[stations[0]], key=lambda p: p.sort_key)
    while current != stations[0]:
        order.append(current)
        nxt = [p for p in neighbours[current] if p != previous][0]
        previous, current = current, nxt
    if len(order) != len(stations):
        return None

    node_of = {p: c for c, p in removed.items()}
    pieces = []
    for i, x in enumerate(order):
        y = order[(i + 1) % len(order)]
        cells = frozenset().union(*groups[frozenset((node_of[x], node_of[y]))])
        pieces.append(sub.region(sub.closure(cells), connected=True))
    return CyclicDecomposition(tuple(order), tuple(pieces))


def necklaces(X: GraphContinuum, granularity: int = 3) -> Tuple[Necklace, ...]:
    return analyze_pairs(X, granularity).necklaces


def inseparable_structure(X: GraphContinuum, granularity: int = 3) -> InseparableStructure:
    return analyze_pairs(X, granularity).inseparable


def necklace_by_id(X: GraphContinuum, necklace_id: str, granularity: int = 3) -> Necklace:
    for n in necklaces(X, granularity):
        if n.id == necklace_id:
            return n
    raise InputError(f"unknown necklace '{necklace_id}'")


def gaps(X: GraphContinuum, N: Necklace) -> Tuple[Gap, ...]:
    return N.gaps


def circle_map(X: GraphContinuum, N: Necklace, granularity: int = 3) -> CircleLayout:
    """
    Vertex stations sit at equally spaced angles in walk order; each edge and
    gap fills the arc between its two end stations. Gap points are placed by
    the ratio of their exact distances to the two sides.
    """
    analysis = analyze_pairs(X, granularity)
    stations = N.vertex_stations
    m = len(stations)
    angles = {v: Fraction(i, m) for i, v in enumerate(stations)}

    arcs = []
    index = 0
    for i, (kind, name) in enumerate(N.sequence):
        if kind == "vertex":
            index = stations.index(name)
            continue
        arcs.append((kind, name, Fraction(index, m), Fraction(index + 1, m), stations[index]))

    sub = analysis.oracle.subdivision
    gap_positions: List[Tuple[Point, Fraction]] = []
    for gap in N.gaps:
        kind_arc = next(a for a in arcs if a[0] == "gap" and a[1] == gap.id)
        _, _, start, end, origin = kind_arc
        near, far = gap.boundary if gap.boundary[0] == origin else (gap.boundary[1], gap.boundary[0])
        cells = set()
        for v in gap.vertices | {near, far}:
            cells.add(("v", v))
        for e in gap.edges:
            cells.update(sub.edge_cells(e))
        metric = sub.metric_graph(cells)
        d_near = nx.single_source_dijkstra_path_length(metric, ("v", near), weight="weight")
        d_far = nx.single_source_dijkstra_path_length(metric, ("v", far), weight="weight")
        for p in points_in_cells(analysis.probe.points, gap.vertices, gap.edges):
            cell = sub.node(p)
            a, b = Fraction(d_near[cell]), Fraction(d_far[cell])
            gap_positions.append((p, (start + (end - start) * a / (a + b)) % 1))

    return CircleLayout(
        necklace=N.id,
        angles=tuple(sorted(angles.items(), key=lambda kv: kv[1])),
        arcs=tuple(arcs),
        gap_positions=tuple(sorted(gap_positions, key=lambda pa: pa[0].sort_key)),
    )


def circle_separates(p: Fraction, q: Fraction, x: Fraction, y: Fraction) -> bool:
    """Whether angles p, q separate angles x, y on the circle."""
    def inside(z: Fraction) -> bool:
        return p < z < q if p < q else (z > p or z < q)
    return inside(x) != inside(y)


def circle_equivariance(N: Necklace, g: GraphAutomorphism) -> Optional[str]:
    """'rotation' or 'reflection' for automorphisms stabilizing N, None otherwise."""
    if g.cells(N.vertices, N.edges) != (N.vertices, N.edges):
        return None
    stations = N.vertex_stations
    m = len(stations)
    if m <= 2:
        return "rotation"
    index = {v: i for i, v in enumerate(stations)}
    vmap = g.vertices
    images = [index[vmap[v]] for v in stations]
    steps = {(images[(i + 1) % m] - images[i]) % m for i in range(m)}
    if steps == {1}:
        return "rotation"
    if steps == {m - 1}:
        return "reflection"
    raise InvariantViolation(f"automorphism {g.name} does not act on {N.id} as a circle symmetry")


def is_circle(X: GraphContinuum, granularity: int = 3) -> bool:
    analysis = analyze_pairs(X, granularity)
    atoms = analysis.grid.points
    sampled = len(atoms) > 1 and all(
        analysis.separable(x, y) for i, x in enumerate(atoms) for y in atoms[i + 1:]
    )
    structural = bool(X.edges) and len(X.edges) == len(X.vertices) and all(X.degree(v) == 2 for v in X.vertices)
    if sampled != structural:
        raise InvariantViolation(f"circle test disagrees with the cycle structure of {X.name or 'graph'}")
    return sampled


# -----------------------------
# R validation and the JSJ tree
# -----------------------------
def check_intersections(analysis: CutPairAnalysis) -> Optional[str]:
    """Two elements share fewer than three points, and two shared points form an inseparable cut pair."""
    elements = analysis.elements
    pairs = {el.vertices for el in elements if el.kind == "pair"}
    for i, S in enumerate(elements):
        for T in elements[i + 1:]:
            if S.edges & T.edges:
                return f"{S.id} and {T.id} share an edge"
            shared = S.vertices & T.vertices
            if len(shared) >= 3:
                return f"{S.id} and {T.id} share {len(shared)} points"
            if len(shared) == 2 and shared not in pairs:
                return f"{S.id} and {T.id} share a pair that is not an inseparable cut pair"
    return None


def check_no_separation(analysis: CutPairAnalysis) -> Optional[str]:
    """No element separates points of another."""
    for S in analysis.elements:
        labels = analysis.labels_without(S)
        for T in analysis.elements:
            if S == T:
                continue
            seen = {labels[p] for p in analysis.element_points(T) if p in labels}
            if len(seen) > 1:
                return f"{S.id} separates points of {T.id}"
    return None


def check_coverage(analysis: CutPairAnalysis) -> Optional[str]:
    """Every edge (hence every nondegenerate subcontinuum) meets some element."""
    covered = set().union(*(el.edges for el in analysis.elements)) if analysis.elements else set()
    for e in analysis.X.edges:
        if e.id not in covered:
            return f"edge {e.id} meets no element"
    return None


def build_R(X: GraphContinuum, granularity: int = 3) -> RStructure:
    analysis = analyze_pairs(X, granularity)
    collection = RCollection(analysis.necklaces, analysis.inseparable, analysis.elements)
    table = analysis.table
    if table.ground:
        report = verify_pretree_axioms(table)
        if not report.ok:
            raise PretreeAxiomError(report, f"R of {X.name or 'graph'}")
    for check in (check_intersections, check_no_separation, check_coverage):
        problem = check(analysis)
        if problem is not None:
            raise InvariantViolation(problem)
    logger.debug("%s: R has %d elements", X.name or "graph", len(collection.elements))
    return RStructure(collection, table)


def build_jsj_tree(X: GraphContinuum, granularity: int = 3) -> StructuralTree:
    structure = build_R(X, granularity)
    elements = structure.collection.elements
    if not elements:
        v = X.vertices[0]
        return StructuralTree((TreeNode(f"point:{v}", "point", v, frozenset({v})),))
    records = {el.id: TreeNode(el.id, el.kind, el.label, el.vertices, el.edges) for el in elements}
    return assemble_tree(structure.table, nodes=records).sorted()
