# peano_trees/models.py
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, Literal, Optional, Tuple


# -----------------------------
# Error families
# -----------------------------
class InputError(ValueError):
    """Raised when a graph, identifier, automorphism or tree text is malformed."""
    pass


class GraphParseError(InputError):
    """Raised by the graph parser; carries the 1-based line number when known."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class PreconditionError(ValueError):
    """Raised when an operation is called outside its domain."""
    pass


class HasCutPointsError(PreconditionError):
    """Raised when cut-pair machinery receives a continuum that has cut points."""

    def __init__(self, cut_points: Tuple[str, ...]):
        self.cut_points = cut_points
        super().__init__(
            "continuum has cut points (" + ", ".join(cut_points) + "); "
            "use the combined tree to process it block by block"
        )


class InvariantViolation(RuntimeError):
    """Raised when a computed structure fails a property that must hold."""
    pass


# -----------------------------
# Kinds
# -----------------------------
NodeKind = Literal["class", "cutpoint", "necklace", "inseparable", "pair", "end", "point", "node"]
ArcKind = Literal["arc", "glue"]
MetricMode = Literal["canonical", "geometric"]
OutputFormat = Literal["dot", "text"]
VerifyLevel = Literal["off", "lemmas", "full"]
IntervalKind = Literal["open", "half-open", "closed"]


# -----------------------------
# Points of the realization
# -----------------------------
@dataclass(frozen=True)
class Point:
    """
    A location on the geometric realization of a graph.

    Either a vertex (vertex set, edge/t unset) or an interior edge point with
    0 < t < 1 measured from the edge's first endpoint.
    """
    vertex: Optional[str] = None
    edge: Optional[str] = None
    t: Optional[Fraction] = None

    @staticmethod
    def at_vertex(vertex: str) -> "Point":
        return Point(vertex=vertex)

    @staticmethod
    def on_edge(edge: str, t) -> "Point":
        t = Fraction(t)
        if not (0 < t < 1):
            raise InputError(f"edge parameter must satisfy 0 < t < 1, got {t} on {edge}")
        return Point(edge=edge, t=t)

    @property
    def is_vertex(self) -> bool:
        return self.vertex is not None

    @property
    def sort_key(self) -> Tuple[int, str, Fraction]:
        if self.vertex is not None:
            return (0, self.vertex, Fraction(0))
        return (1, self.edge or "", self.t or Fraction(0))

    @property
    def label(self) -> str:
        if self.vertex is not None:
            return self.vertex
        return f"{self.edge}@{self.t}"

    def __str__(self) -> str:
        return self.label


@dataclass(frozen=True)
class Edge:
    id: str
    u: str
    v: str
    length: Fraction = Fraction(1)

    @property
    def is_loop(self) -> bool:
        return self.u == self.v

    def other(self, vertex: str) -> str:
        return self.v if vertex == self.u else self.u


@dataclass(frozen=True)
class GraphContinuum:
    """Finite connected multigraph with positive rational edge lengths (loops allowed)."""
    vertices: Tuple[str, ...]
    edges: Tuple[Edge, ...]
    name: str = field(default="", compare=False)

    def edge(self, edge_id: str) -> Edge:
        for e in self.edges:
            if e.id == edge_id:
                return e
        raise InputError(f"unknown edge '{edge_id}'")

    def incident(self, vertex: str) -> Tuple[Edge, ...]:
        return tuple(e for e in self.edges if vertex in (e.u, e.v))

    def degree(self, vertex: str) -> int:
        return sum((2 if e.is_loop else 1) for e in self.incident(vertex))

    def has_point(self, p: Point) -> bool:
        if p.vertex is not None:
            return p.vertex in self.vertices
        return any(e.id == p.edge for e in self.edges)


@dataclass(frozen=True)
class Segment:
    """Sub-interval (lo, hi) of one edge's parameter range, ends open or closed."""
    edge: str
    lo: Fraction
    hi: Fraction
    lo_closed: bool = False
    hi_closed: bool = False

    def contains(self, t: Fraction) -> bool:
        if self.lo < t < self.hi:
            return True
        return (t == self.lo and self.lo_closed) or (t == self.hi and self.hi_closed)

    @property
    def is_whole(self) -> bool:
        return self.lo == 0 and self.hi == 1 and not self.lo_closed and not self.hi_closed

    @property
    def label(self) -> str:
        left = "[" if self.lo_closed else "("
        right = "]" if self.hi_closed else ")"
        if self.lo == self.hi:
            return f"{self.edge}@{self.lo}"
        return f"{self.edge}{left}{self.lo},{self.hi}{right}"


@dataclass(frozen=True)
class Region:
    """A subset of the realization: whole vertices plus per-edge rational segments."""
    vertices: FrozenSet[str] = frozenset()
    segments: Tuple[Segment, ...] = ()
    connected: bool = False

    def contains(self, p: Point) -> bool:
        if p.vertex is not None:
            return p.vertex in self.vertices
        return any(s.edge == p.edge and s.contains(p.t) for s in self.segments)

    @property
    def whole_edges(self) -> FrozenSet[str]:
        return frozenset(s.edge for s in self.segments if s.is_whole)

    @property
    def label(self) -> str:
        parts = sorted(self.vertices) + [s.label for s in self.segments]
        return "{" + ",".join(parts) + "}"


@dataclass(frozen=True)
class GraphAutomorphism:
    """Incidence-preserving permutation of vertices and edges."""
    vertex_map: Tuple[Tuple[str, str], ...]
    edge_map: Tuple[Tuple[str, str], ...]
    # edges whose image is traversed backwards (t -> 1 - t)
    reversed_edges: FrozenSet[str] = frozenset()
    name: str = field(default="", compare=False)

    @property
    def vertices(self) -> Dict[str, str]:
        return dict(self.vertex_map)

    @property
    def edges(self) -> Dict[str, str]:
        return dict(self.edge_map)

    def apply(self, p: Point) -> Point:
        if p.vertex is not None:
            return Point.at_vertex(self.vertices[p.vertex])
        t = 1 - p.t if p.edge in self.reversed_edges else p.t
        return Point.on_edge(self.edges[p.edge], t)

    def cells(self, vertices: FrozenSet[str], edges: FrozenSet[str]) -> Tuple[FrozenSet[str], FrozenSet[str]]:
        vm, em = self.vertices, self.edges
        return frozenset(vm[v] for v in vertices), frozenset(em[e] for e in edges)

    @property
    def is_identity(self) -> bool:
        return all(a == b for a, b in self.vertex_map) and all(a == b for a, b in self.edge_map) \
            and not self.reversed_edges
