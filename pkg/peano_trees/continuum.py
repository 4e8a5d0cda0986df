# peano_trees/continuum.py
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

import networkx as nx

from peano_trees.models import (
    Edge,
    GraphAutomorphism,
    GraphContinuum,
    GraphParseError,
    InputError,
    Point,
    Region,
    Segment,
)

logger = logging.getLogger(__name__)

# Cells of a subdivided realization:
#   ("v", vertex)          a vertex
#   ("p", edge, t)         a cut point interior to an edge
#   ("s", edge, index)     an open segment between consecutive cut points of an edge
Cell = tuple


# -----------------------------
# Parsing
# -----------------------------
def _parse_length(token: str, line: int) -> Fraction:
    try:
        value = Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise GraphParseError(f"invalid length '{token}'", line)
    if value <= 0:
        raise GraphParseError(f"nonpositive length {token}", line)
    return value


def parse_graph(text: str, name: str = "") -> GraphContinuum:
    """
    Parse the edge-list format:

        v <id>
        e <id> <u> <v> [length]      # length p/q or integer, default 1

    Vertex and edge identifiers share one namespace. The result is validated
    and must be connected.
    """
    vertices: List[str] = []
    raw_edges: List[Tuple[str, str, str, Fraction, int]] = []
    declared: Dict[str, int] = {}

    def claim(ident: str, line: int) -> None:
        if ident in declared:
            raise GraphParseError(f"duplicate identifier '{ident}' (first declared on line {declared[ident]})", line)
        declared[ident] = line

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        tag = tokens[0]
        if tag == "v":
            if len(tokens) != 2:
                raise GraphParseError("expected 'v <id>'", lineno)
            claim(tokens[1], lineno)
            vertices.append(tokens[1])
        elif tag == "e":
            if len(tokens) not in (4, 5):
                raise GraphParseError("expected 'e <id> <u> <v> [length]'", lineno)
            ident, u, v = tokens[1], tokens[2], tokens[3]
            length = _parse_length(tokens[4], lineno) if len(tokens) == 5 else Fraction(1)
            claim(ident, lineno)
            raw_edges.append((ident, u, v, length, lineno))
        else:
            raise GraphParseError(f"unknown record type '{tag}'", lineno)

    vertex_set = set(vertices)
    for ident, u, v, _, lineno in raw_edges:
        for end in (u, v):
            if end not in vertex_set:
                raise GraphParseError(f"edge {ident} references undeclared vertex '{end}'", lineno)

    if not vertices:
        raise GraphParseError("graph declares no vertices")

    edges = tuple(Edge(ident, u, v, length) for ident, u, v, length, _ in raw_edges)
    return build_graph(vertices, edges, name=name)


def build_graph(vertices: Iterable[str], edges: Iterable[Edge], name: str = "") -> GraphContinuum:
    """Validate and freeze a graph continuum; vertices and edges are stored sorted by id."""
    vs = tuple(sorted(vertices))
    es = tuple(sorted(edges, key=lambda e: e.id))

    if len(set(vs)) != len(vs):
        raise GraphParseError("duplicate vertex identifiers")
    if len({e.id for e in es}) != len(es) or set(vs) & {e.id for e in es}:
        raise GraphParseError("duplicate identifiers")
    for e in es:
        if e.length <= 0:
            raise GraphParseError(f"nonpositive length on edge {e.id}")
        if e.u not in vs or e.v not in vs:
            raise GraphParseError(f"edge {e.id} has a dangling endpoint")

    skeleton = nx.MultiGraph()
    skeleton.add_nodes_from(vs)
    skeleton.add_edges_from((e.u, e.v) for e in es)
    components = sorted((sorted(c) for c in nx.connected_components(skeleton)), key=lambda c: c[0])
    if len(components) > 1:
        listed = " and ".join("{" + ", ".join(c) + "}" for c in components)
        raise GraphParseError(f"graph is disconnected: components {listed}")

    return GraphContinuum(vertices=vs, edges=es, name=name)


# -----------------------------
# Automorphisms
# -----------------------------
def parse_automorphism(text: str, X: GraphContinuum, name: str = "") -> GraphAutomorphism:
    """
    Parse `pv <from> <to>` and `pe <from> <to> [rev]` lines.

    Vertices without a `pv` line are fixed. An edge without a `pe` line gets the
    unique length-compatible edge joining the images of its endpoints; among
    several parallel candidates it maps to itself when it is one of them.
    """
    vmap: Dict[str, str] = {}
    emap: Dict[str, str] = {}
    loop_reversed: Set[str] = set()
    edge_ids = {e.id for e in X.edges}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        tag = tokens[0]
        if tag == "pv" and len(tokens) == 3:
            src, dst = tokens[1], tokens[2]
            if src not in X.vertices or dst not in X.vertices:
                raise GraphParseError(f"unknown vertex in '{line}'", lineno)
            if src in vmap:
                raise GraphParseError(f"vertex {src} mapped twice", lineno)
            vmap[src] = dst
        elif tag == "pe" and len(tokens) in (3, 4):
            src, dst = tokens[1], tokens[2]
            if src not in edge_ids or dst not in edge_ids:
                raise GraphParseError(f"unknown edge in '{line}'", lineno)
            if src in emap:
                raise GraphParseError(f"edge {src} mapped twice", lineno)
            if len(tokens) == 4:
                if tokens[3] != "rev":
                    raise GraphParseError(f"unexpected flag '{tokens[3]}'", lineno)
                loop_reversed.add(src)
            emap[src] = dst
        else:
            raise GraphParseError("expected 'pv <from> <to>' or 'pe <from> <to> [rev]'", lineno)

    for v in X.vertices:
        vmap.setdefault(v, v)
    if sorted(vmap.values()) != sorted(X.vertices):
        raise InputError("vertex permutation is not a bijection")

    # unlisted edges inherit their image from the vertex map
    taken = set(emap.values())
    for e in X.edges:
        if e.id in emap:
            continue
        ends = sorted((vmap[e.u], vmap[e.v]))
        candidates = [
            f.id for f in X.edges
            if sorted((f.u, f.v)) == ends and f.length == e.length and f.id not in taken
        ]
        if len(candidates) == 1:
            choice = candidates[0]
        elif e.id in candidates:
            choice = e.id
        else:
            raise InputError(f"cannot infer the image of edge {e.id}; add a 'pe' line")
        emap[e.id] = choice
        taken.add(choice)

    reversed_edges = set(loop_reversed)
    for e in X.edges:
        f = X.edge(emap[e.id])
        if not e.is_loop and vmap[e.u] != f.u:
            reversed_edges.add(e.id)

    g = GraphAutomorphism(
        vertex_map=tuple(sorted(vmap.items())),
        edge_map=tuple(sorted(emap.items())),
        reversed_edges=frozenset(reversed_edges),
        name=name,
    )
    check_automorphism(X, g)
    return g


def check_automorphism(X: GraphContinuum, g: GraphAutomorphism) -> None:
    """Raise InputError unless g is a length-preserving incidence-preserving permutation of X."""
    vmap, emap = g.vertices, g.edges
    if sorted(vmap) != sorted(X.vertices) or sorted(vmap.values()) != sorted(X.vertices):
        raise InputError("vertex permutation is not a bijection")
    edge_ids = sorted(e.id for e in X.edges)
    if sorted(emap) != edge_ids or sorted(emap.values()) != edge_ids:
        raise InputError("edge permutation is not a bijection")

    for e in X.edges:
        f = X.edge(emap[e.id])
        if sorted((vmap[e.u], vmap[e.v])) != sorted((f.u, f.v)):
            raise InputError(f"edge {e.id} -> {f.id} does not preserve incidence")
        if f.length != e.length:
            raise InputError(f"edge {e.id} -> {f.id} is length-incompatible ({e.length} vs {f.length})")
        if not e.is_loop:
            flipped = vmap[e.u] != f.u
            if flipped != (e.id in g.reversed_edges):
                raise InputError(f"edge {e.id} -> {f.id} has an inconsistent orientation")


def identity_automorphism(X: GraphContinuum) -> GraphAutomorphism:
    return GraphAutomorphism(
        vertex_map=tuple((v, v) for v in X.vertices),
        edge_map=tuple((e.id, e.id) for e in X.edges),
        name="identity",
    )


# -----------------------------
# Subdivided realization
# -----------------------------
def cell_key(cell: Cell, bounds: Optional[Tuple[Fraction, Fraction]] = None) -> Tuple[int, str, Fraction, int]:
    if cell[0] == "v":
        return (0, cell[1], Fraction(0), 0)
    if cell[0] == "p":
        return (1, cell[1], cell[2], 0)
    lo, hi = bounds if bounds is not None else (Fraction(0), Fraction(1))
    return (1, cell[1], (lo + hi) / 2, 1)


class Subdivision:
    """The realization of X cut at finitely many edge points, as a cell graph."""

    def __init__(self, X: GraphContinuum, points: Iterable[Point] = ()):
        self.X = X
        cuts: Dict[str, Set[Fraction]] = {e.id: set() for e in X.edges}
        for p in points:
            if not X.has_point(p):
                raise InputError(f"point {p} is not on the graph")
            if p.vertex is None:
                cuts[p.edge].add(p.t)
        self.params: Dict[str, Tuple[Fraction, ...]] = {e: tuple(sorted(ts)) for e, ts in cuts.items()}
        self._bounds: Dict[Cell, Tuple[Fraction, Fraction]] = {}
        self._edge_cells: Dict[str, List[Cell]] = {}

        g = nx.Graph()
        for v in X.vertices:
            g.add_node(("v", v))
        for e in X.edges:
            ts = self.params[e.id]
            cells: List[Cell] = [("p", e.id, t) for t in ts]
            g.add_nodes_from(cells)
            marks = (Fraction(0),) + ts + (Fraction(1),)
            last = len(marks) - 2
            for i in range(len(marks) - 1):
                seg = ("s", e.id, i)
                g.add_node(seg)
                self._bounds[seg] = (marks[i], marks[i + 1])
                left = ("v", e.u) if i == 0 else ("p", e.id, marks[i])
                right = ("v", e.v) if i == last else ("p", e.id, marks[i + 1])
                g.add_edge(seg, left)
                g.add_edge(seg, right)
                cells.append(seg)
            self._edge_cells[e.id] = cells
        self.graph = g

    def node(self, p: Point) -> Cell:
        cell = ("v", p.vertex) if p.vertex is not None else ("p", p.edge, p.t)
        if cell not in self.graph:
            raise InputError(f"point {p} is not a node of this subdivision")
        return cell

    def edge_cells(self, edge_id: str) -> List[Cell]:
        return self._edge_cells[edge_id]

    def key(self, cell: Cell) -> Tuple[int, str, Fraction, int]:
        return cell_key(cell, self._bounds.get(cell))

    def components(self, removed: Iterable[Cell]) -> List[FrozenSet[Cell]]:
        """Connected components of the cell graph minus `removed`, ordered by smallest cell."""
        removed = set(removed)
        keep = [c for c in self.graph.nodes if c not in removed]
        comps = [frozenset(c) for c in nx.connected_components(self.graph.subgraph(keep))]
        comps.sort(key=lambda comp: min(self.key(c) for c in comp))
        return comps

    def closure(self, cells: Iterable[Cell]) -> FrozenSet[Cell]:
        out = set(cells)
        for c in list(out):
            if c[0] == "s":
                out.update(self.graph.neighbors(c))
        return frozenset(out)

    def boundary(self, cells: Iterable[Cell], removed: Iterable[Cell]) -> FrozenSet[Cell]:
        removed = set(removed)
        return frozenset(n for c in cells for n in self.graph.neighbors(c) if n in removed)

    def region(self, cells: Iterable[Cell], connected: bool = False) -> Region:
        vertices: Set[str] = set()
        pieces: Dict[str, List[Tuple[Fraction, Fraction, bool, bool]]] = {}
        for c in cells:
            if c[0] == "v":
                vertices.add(c[1])
            elif c[0] == "p":
                pieces.setdefault(c[1], []).append((c[2], c[2], True, True))
            else:
                lo, hi = self._bounds[c]
                pieces.setdefault(c[1], []).append((lo, hi, False, False))

        segments: List[Segment] = []
        for edge_id in sorted(pieces):
            merged: List[Tuple[Fraction, Fraction, bool, bool]] = []
            for lo, hi, lc, hc in sorted(pieces[edge_id], key=lambda p: (p[0], p[1])):
                if merged:
                    plo, phi, plc, phc = merged[-1]
                    if phi == lo and (phc or lc):
                        merged[-1] = (plo, hi, plc, hc)
                        continue
                merged.append((lo, hi, lc, hc))
            segments.extend(Segment(edge_id, lo, hi, lc, hc) for lo, hi, lc, hc in merged)

        return Region(vertices=frozenset(vertices), segments=tuple(segments), connected=connected)

    def metric_graph(self, cells: Iterable[Cell]) -> nx.Graph:
        """Weighted graph on the vertex/point cells of a closed cell set, weights = exact arc length."""
        cells = set(cells)
        g = nx.Graph()
        g.add_nodes_from(c for c in cells if c[0] != "s")
        for c in cells:
            if c[0] != "s":
                continue
            ends = list(self.graph.neighbors(c))
            if len(ends) != 2:
                continue  # loop segment returning to its own vertex
            lo, hi = self._bounds[c]
            w = (hi - lo) * self.X.edge(c[1]).length
            a, b = ends
            if not g.has_edge(a, b) or g[a][b]["weight"] > w:
                g.add_edge(a, b, weight=w)
        return g


# -----------------------------
# Components and separation
# -----------------------------
def components_after_removal(X: GraphContinuum, C: Iterable[Point]) -> List[Region]:
    C = frozenset(C)
    sub = Subdivision(X, C)
    removed = {sub.node(c) for c in C}
    return [sub.region(comp, connected=True) for comp in sub.components(removed)]


@dataclass(frozen=True)
class Separation:
    separated: bool
    # closed continua Y ∋ a, Z ∋ b with Y ∪ Z = X and Y ∩ Z = C
    witness: Optional[Tuple[Region, Region]] = None

    def __bool__(self) -> bool:
        return self.separated


def separates(X: GraphContinuum, C: Iterable[Point], a: Point, b: Point) -> Separation:
    C = frozenset(C)
    if a in C or b in C:
        raise InputError("separated points must lie outside the removed set")

    sub = Subdivision(X, set(C) | {a, b})
    removed = {sub.node(c) for c in C}
    comps = sub.components(removed)
    na, nb = sub.node(a), sub.node(b)
    comp_a = next(comp for comp in comps if na in comp)
    if nb in comp_a:
        return Separation(False)

    rest = frozenset().union(*(comp for comp in comps if comp is not comp_a))
    Y = sub.closure(comp_a)
    Z = sub.closure(rest)
    whole = frozenset(sub.graph.nodes)
    if Y | Z == whole and Y & Z == removed and nx.is_connected(sub.graph.subgraph(Z)):
        return Separation(True, (sub.region(Y, connected=True), sub.region(Z, connected=True)))
    return Separation(True)


def is_cut_point(X: GraphContinuum, c: Point) -> bool:
    return len(components_after_removal(X, {c})) > 1


def is_cut_pair(X: GraphContinuum, c: Point, d: Point) -> bool:
    if c == d:
        raise InputError("a cut pair needs two distinct points")
    if is_cut_point(X, c) or is_cut_point(X, d):
        return False
    return len(components_after_removal(X, {c, d})) > 1


# -----------------------------
# Sample grids
# -----------------------------
@dataclass(frozen=True)
class SampleGrid:
    granularity: int
    points: Tuple[Point, ...]

    @classmethod
    def build(cls, X: GraphContinuum, granularity: int = 3) -> "SampleGrid":
        if granularity < 1:
            raise InputError("grid granularity must be >= 1")
        pts: List[Point] = [Point.at_vertex(v) for v in X.vertices]
        for e in X.edges:
            pts.extend(Point.on_edge(e.id, Fraction(i, granularity + 1)) for i in range(1, granularity + 1))
        return cls(granularity, tuple(pts))

    def on_edge(self, edge_id: str) -> Tuple[Point, ...]:
        return tuple(p for p in self.points if p.edge == edge_id)

    @property
    def vertices(self) -> Tuple[Point, ...]:
        return tuple(p for p in self.points if p.is_vertex)


def probe_grid(X: GraphContinuum, granularity: int) -> SampleGrid:
    """Refinement containing the coarse grid with one probe strictly between any two neighbours."""
    return SampleGrid.build(X, 2 * granularity + 1)


class SeparationOracle:
    """
    Component labels of X minus finite removal sets, evaluated on a fixed grid.

    Results are memoized per removal set; answers never depend on query order.
    """

    def __init__(self, X: GraphContinuum, grid: SampleGrid):
        self.X = X
        self.grid = grid
        self.subdivision = Subdivision(X, grid.points)
        self._nodes: Dict[Point, Cell] = {p: self.subdivision.node(p) for p in grid.points}
        self._memo: Dict[tuple, Tuple[int, Dict[Point, int]]] = {}

    def _evaluate(self, key: tuple, removed: Set[Cell]) -> Tuple[int, Dict[Point, int]]:
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        comps = self.subdivision.components(removed)
        index: Dict[Cell, int] = {}
        for i, comp in enumerate(comps):
            for cell in comp:
                index[cell] = i
        labels = {p: index[n] for p, n in self._nodes.items() if n in index}
        self._memo[key] = (len(comps), labels)
        return self._memo[key]

    def _point_cells(self, removed: FrozenSet[Point]) -> Set[Cell]:
        try:
            return {self._nodes[p] for p in removed}
        except KeyError as exc:
            raise InputError(f"point {exc.args[0]} is not on the oracle grid") from None

    def labels(self, removed: Iterable[Point]) -> Dict[Point, int]:
        removed = frozenset(removed)
        return self._evaluate(("points", removed), self._point_cells(removed))[1]

    def component_count(self, removed: Iterable[Point]) -> int:
        removed = frozenset(removed)
        return self._evaluate(("points", removed), self._point_cells(removed))[0]

    def labels_without_cells(self, vertices: FrozenSet[str], edges: FrozenSet[str]) -> Dict[Point, int]:
        """Labels of X minus whole vertices and closed-off open edges (a union of cells)."""
        cells: Set[Cell] = {("v", v) for v in vertices}
        for e in edges:
            cells.update(self.subdivision.edge_cells(e))
        return self._evaluate(("cells", frozenset(vertices), frozenset(edges)), cells)[1]

    def separated(self, removed: Iterable[Point], a: Point, b: Point) -> bool:
        labels = self.labels(removed)
        return labels[a] != labels[b]


def points_in_cells(points: Sequence[Point], vertices: FrozenSet[str], edges: FrozenSet[str]) -> Tuple[Point, ...]:
    return tuple(p for p in points if (p.vertex in vertices if p.is_vertex else p.edge in edges))
