# peano_trees/actions.py
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Dict, FrozenSet, List, Literal, Optional, Sequence, Tuple, Union

import networkx as nx

from peano_trees.config import ACTION_SEARCH_BOUND
from peano_trees.models import InputError, InvariantViolation, PreconditionError
from peano_trees.pretree import StructuralTree, TreeArc, TreeNode

logger = logging.getLogger(__name__)


# -----------------------------
# Points of a finite tree
# -----------------------------
@dataclass(frozen=True)
class TreePoint:
    """A node, or the point at fraction s along arc (a, b) with a < b and 0 < s < 1."""
    node: Optional[str] = None
    arc: Optional[Tuple[str, str]] = None
    s: Fraction = Fraction(0)

    @staticmethod
    def at(node: str) -> "TreePoint":
        return TreePoint(node=node)

    @staticmethod
    def on_arc(a: str, b: str, s) -> "TreePoint":
        s = Fraction(s)
        if s == 0:
            return TreePoint.at(a)
        if s == 1:
            return TreePoint.at(b)
        if not 0 < s < 1:
            raise InputError(f"arc parameter out of range: {s}")
        if b < a:
            a, b, s = b, a, 1 - s
        return TreePoint(arc=(a, b), s=s)

    @property
    def sort_key(self) -> Tuple[int, str, str, Fraction]:
        if self.node is not None:
            return (0, self.node, "", Fraction(0))
        return (1, self.arc[0], self.arc[1], self.s)

    @property
    def label(self) -> str:
        if self.node is not None:
            return self.node
        return f"{self.arc[0]}~{self.arc[1]}@{self.s}"

    def __str__(self) -> str:
        return self.label


@lru_cache(maxsize=128)
def _hops(tree: StructuralTree) -> Dict[str, Dict[str, int]]:
    return dict(nx.all_pairs_shortest_path_length(tree.graph))


def _ends(p: TreePoint) -> List[Tuple[str, Fraction]]:
    if p.node is not None:
        return [(p.node, Fraction(0))]
    return [(p.arc[0], p.s), (p.arc[1], 1 - p.s)]


def tree_distance(tree: StructuralTree, p: TreePoint, q: TreePoint) -> Fraction:
    """Distance with every arc of unit length; betweenness does not depend on the lengths."""
    if p.arc is not None and p.arc == q.arc:
        return abs(p.s - q.s)
    hops = _hops(tree)
    return min(dp + hops[a][b] + dq for a, dp in _ends(p) for b, dq in _ends(q))


def in_segment(tree: StructuralTree, z: TreePoint, p: TreePoint, q: TreePoint) -> bool:
    return tree_distance(tree, p, z) + tree_distance(tree, z, q) == tree_distance(tree, p, q)


# -----------------------------
# Maps
# -----------------------------
@dataclass(frozen=True)
class FiniteTreeMap:
    """Node bijection of a finite tree; arc parameters map by the identity on (0,1)."""
    tree: StructuralTree
    mapping: Tuple[Tuple[str, str], ...]
    name: str = ""

    def __post_init__(self):
        ids = set(self.tree.node_ids)
        src = [a for a, _ in self.mapping]
        dst = [b for _, b in self.mapping]
        if set(src) != ids or len(src) != len(ids) or set(dst) != ids:
            raise InputError("tree map is not a bijection of the node set")
        m = dict(self.mapping)
        for arc in self.tree.arcs:
            if not self.tree.has_arc(m[arc.a], m[arc.b]):
                raise InputError(f"tree map sends arc {arc.a}--{arc.b} to a non-arc")

    @classmethod
    def from_dict(cls, tree: StructuralTree, node_map: Dict[str, str], name: str = "") -> "FiniteTreeMap":
        return cls(tree, tuple(sorted(node_map.items())), name)

    @classmethod
    def identity(cls, tree: StructuralTree) -> "FiniteTreeMap":
        return cls.from_dict(tree, {n: n for n in tree.node_ids}, "identity")

    @cached_property
    def node_map(self) -> Dict[str, str]:
        return dict(self.mapping)

    def apply(self, p: TreePoint) -> TreePoint:
        m = self.node_map
        if p.node is not None:
            return TreePoint.at(m[p.node])
        a, b = p.arc
        return TreePoint.on_arc(m[a], m[b], p.s)

    def inverse(self) -> "FiniteTreeMap":
        return FiniteTreeMap.from_dict(self.tree, {b: a for a, b in self.mapping}, f"{self.name}^-1")

    def compose(self, other: "FiniteTreeMap") -> "FiniteTreeMap":
        """self ∘ other"""
        if other.tree != self.tree:
            raise InputError("cannot compose maps of different trees")
        m, o = self.node_map, other.node_map
        return FiniteTreeMap.from_dict(self.tree, {n: m[o[n]] for n in o}, f"{self.name}*{other.name}")

    @property
    def is_identity(self) -> bool:
        return all(a == b for a, b in self.mapping)


@dataclass(frozen=True)
class PeriodicLine:
    """The real line with nodes repeating a block of arc lengths from position 0."""
    block: Tuple[Fraction, ...] = (Fraction(1),)

    def __post_init__(self):
        if not self.block or any(Fraction(x) <= 0 for x in self.block):
            raise InputError("periodic line needs a nonempty block of positive lengths")

    @property
    def period(self) -> Fraction:
        return sum((Fraction(x) for x in self.block), Fraction(0))

    def nodes_in(self, lo: Fraction, hi: Fraction) -> List[Fraction]:
        offsets = [Fraction(0)]
        for x in self.block[:-1]:
            offsets.append(offsets[-1] + Fraction(x))
        period = self.period
        out: List[Fraction] = []
        n = (lo // period) - 1
        while n * period <= hi:
            for off in offsets:
                x = n * period + off
                if lo <= x <= hi:
                    out.append(x)
            n += 1
        return sorted(set(out))


@dataclass(frozen=True)
class LineMap:
    """x -> alpha * x + beta on a periodic line."""
    line: PeriodicLine
    alpha: Fraction = Fraction(1)
    beta: Fraction = Fraction(0)
    name: str = ""

    def __post_init__(self):
        if Fraction(self.alpha) == 0:
            raise InputError("line map must be injective (alpha != 0)")

    @classmethod
    def shift(cls, line: PeriodicLine, periods: int = 1) -> "LineMap":
        return cls(line, Fraction(1), periods * line.period, f"shift{periods}")

    @classmethod
    def reflection(cls, line: PeriodicLine, center) -> "LineMap":
        return cls(line, Fraction(-1), 2 * Fraction(center), f"reflect@{center}")

    def apply(self, x) -> Fraction:
        return Fraction(self.alpha) * Fraction(x) + Fraction(self.beta)

    def inverse(self) -> "LineMap":
        a, b = Fraction(self.alpha), Fraction(self.beta)
        return LineMap(self.line, 1 / a, -b / a, f"{self.name}^-1")

    def compose(self, other: "LineMap") -> "LineMap":
        """self ∘ other"""
        a, b = Fraction(self.alpha), Fraction(self.beta)
        return LineMap(self.line, a * Fraction(other.alpha), a * Fraction(other.beta) + b, f"{self.name}*{other.name}")

    @property
    def is_identity(self) -> bool:
        return self.alpha == 1 and self.beta == 0


# -----------------------------
# Trivalent tree with a distinguished end
# -----------------------------
Vertex = Tuple[int, int]


def _vid(v: Vertex) -> str:
    return f"{v[0]}.{v[1]}"


@dataclass(frozen=True)
class DyadicEndTree:
    """Vertices (level, index); the parent of (l, i) is (l + 1, i // 2); the spine is index 0."""

    def window(self, depth: int) -> StructuralTree:
        """The finite ball hanging below spine vertex (depth, 0)."""
        if depth < 1:
            raise InputError("window depth must be >= 1")
        nodes = []
        arcs = []
        for level in range(depth + 1):
            for i in range(2 ** (depth - level)):
                nodes.append(TreeNode(id=_vid((level, i)), kind="node", label=_vid((level, i))))
                if level < depth:
                    arcs.append(TreeArc(_vid((level, i)), _vid((level + 1, i // 2))))
        return StructuralTree(tuple(nodes), tuple(arcs), root=_vid((depth, 0)))


@dataclass(frozen=True)
class SpineSwap:
    """Swaps the two subtrees below spine vertex (level, 0)."""
    level: int

    def __post_init__(self):
        if self.level < 1:
            raise InputError("spine swaps act at level >= 1")

    def apply_vertex(self, v: Vertex) -> Vertex:
        level, i = v
        if level < self.level and i < 2 ** (self.level - level):
            return (level, i ^ (2 ** (self.level - level - 1)))
        return v

    def restrict(self, depth: int) -> FiniteTreeMap:
        depth = max(depth, self.level)
        tree = DyadicEndTree().window(depth)
        mapping = {}
        for level in range(depth + 1):
            for i in range(2 ** (depth - level)):
                mapping[_vid((level, i))] = _vid(self.apply_vertex((level, i)))
        return FiniteTreeMap.from_dict(tree, mapping, f"swap{self.level}")


@dataclass(frozen=True)
class SwapFamily:
    """Spine swaps at levels start, start + step, start + 2*step, ..."""
    start: int = 1
    step: int = 1

    def __post_init__(self):
        if self.start < 1 or self.step < 0:
            raise InputError("swap family needs start >= 1 and step >= 0")

    def member(self, n: int) -> SpineSwap:
        return SpineSwap(self.start + n * self.step)


TreeMap = Union[FiniteTreeMap, LineMap, SpineSwap]


# -----------------------------
# Non-nesting
# -----------------------------
@dataclass(frozen=True)
class NestingWitness:
    which: Literal["g", "inverse"]
    interval: Tuple[str, str]
    image: Tuple[str, str]


@dataclass(frozen=True)
class NestingVerdict:
    non_nesting: bool
    exhaustive: bool
    witness: Optional[NestingWitness] = None


def sample_points(tree: StructuralTree, bound: int) -> List[TreePoint]:
    pts = [TreePoint.at(n) for n in sorted(tree.node_ids)]
    for arc in tree.arcs:
        pts.extend(TreePoint.on_arc(arc.a, arc.b, Fraction(i, bound + 1)) for i in range(1, bound + 1))
    return pts


def _finite_witness(g: FiniteTreeMap, points: Sequence[TreePoint], which: str) -> Optional[NestingWitness]:
    tree = g.tree
    for p, q in combinations(points, 2):
        gp, gq = g.apply(p), g.apply(q)
        if {gp, gq} == {p, q}:
            continue
        if in_segment(tree, gp, p, q) and in_segment(tree, gq, p, q):
            return NestingWitness(which, (p.label, q.label), (gp.label, gq.label))
    return None


def _line_witness(g: LineMap, bound: int, which: str) -> Optional[NestingWitness]:
    candidates = {Fraction(i, 2) for i in range(-2 * bound, 2 * bound + 1)}
    candidates.update(g.line.nodes_in(Fraction(-bound), Fraction(bound)))
    if g.alpha != 1:
        p = Fraction(g.beta) / (1 - Fraction(g.alpha))
        candidates.update(p + Fraction(d, 2) for d in range(-2, 3))
    ordered = sorted(candidates)
    for p, q in combinations(ordered, 2):
        lo, hi = sorted((g.apply(p), g.apply(q)))
        if p <= lo and hi <= q and (lo, hi) != (p, q):
            return NestingWitness(which, (str(p), str(q)), (str(g.apply(p)), str(g.apply(q))))
    return None


def is_non_nesting(g: TreeMap, bound: int = ACTION_SEARCH_BOUND) -> NestingVerdict:
    """
    Search for a closed interval mapped properly into itself by g or by g^-1.

    On finite trees endpoints range over nodes and the arc points i/(bound+1);
    a bijection of a finite tree preserves interval sizes, so the verdict is exact.
    On lines the search covers half-integers in [-bound, bound].
    """
    if isinstance(g, SpineSwap):
        return is_non_nesting(g.restrict(bound), bound)
    if isinstance(g, FiniteTreeMap):
        points = sample_points(g.tree, bound)
        w = _finite_witness(g, points, "g") or _finite_witness(g.inverse(), points, "inverse")
        return NestingVerdict(w is None, True, w)
    if isinstance(g, LineMap):
        w = _line_witness(g, bound, "g") or _line_witness(g.inverse(), bound, "inverse")
        return NestingVerdict(w is None, False, w)
    raise InputError(f"unsupported tree map {type(g).__name__}")


# -----------------------------
# Fixed sets and classification
# -----------------------------
@dataclass(frozen=True)
class FixedSet:
    nodes: FrozenSet[str] = frozenset()
    arcs: FrozenSet[FrozenSet[str]] = frozenset()
    # midpoints of arcs whose ends are swapped
    points: Tuple[TreePoint, ...] = ()

    @property
    def is_empty(self) -> bool:
        return not self.nodes and not self.points

    def contains(self, p: TreePoint) -> bool:
        if p.node is not None:
            return p.node in self.nodes
        return frozenset(p.arc) in self.arcs or p in self.points

    def first(self) -> TreePoint:
        if self.nodes:
            return TreePoint.at(min(self.nodes))
        return self.points[0]

    def is_connected(self, tree: StructuralTree) -> bool:
        if self.points:
            return not self.nodes and len(self.points) == 1
        if not self.nodes:
            return False
        sub = nx.Graph()
        sub.add_nodes_from(self.nodes)
        sub.add_edges_from(tuple(k) for k in self.arcs)
        return nx.is_connected(sub)


@dataclass(frozen=True)
class LineFixedSet:
    whole: bool = False
    point: Optional[Fraction] = None

    @property
    def is_empty(self) -> bool:
        return not self.whole and self.point is None


@dataclass(frozen=True)
class Axis:
    """Invariant line of a translation: the union of g^n([c, g(c)])."""
    line: PeriodicLine
    start: Fraction
    translation: Fraction

    @property
    def segment(self) -> Tuple[Fraction, Fraction]:
        return (self.start, self.start + self.translation)


@dataclass(frozen=True)
class Elliptic:
    fixed: Union[FixedSet, LineFixedSet]
    kind: str = "elliptic"


@dataclass(frozen=True)
class Hyperbolic:
    axis: Axis
    kind: str = "hyperbolic"


Classification = Union[Elliptic, Hyperbolic]


def fixed_set(g: FiniteTreeMap) -> FixedSet:
    m = g.node_map
    nodes = frozenset(n for n, image in m.items() if n == image)
    arcs = frozenset(arc.key for arc in g.tree.arcs if arc.a in nodes and arc.b in nodes)
    flipped = tuple(
        TreePoint.on_arc(arc.a, arc.b, Fraction(1, 2))
        for arc in sorted(g.tree.arcs, key=lambda a: tuple(sorted(a.key)))
        if m[arc.a] == arc.b and m[arc.b] == arc.a
    )
    return FixedSet(nodes, arcs, flipped)


def _translation_start(g: LineMap, a: Fraction = Fraction(0)) -> Fraction:
    """Farthest point c from a, toward g(a), of {x in [a, g a] : g x in [a, g a]}."""
    ga = g.apply(a)
    lo, hi = sorted((a, ga))
    inv = g.inverse()
    jlo, jhi = sorted((inv.apply(lo), inv.apply(hi)))
    klo, khi = max(lo, jlo), min(hi, jhi)
    if klo > khi:
        raise InvariantViolation("translation start set is empty")
    return khi if ga > a else klo


def classify(g: TreeMap, bound: int = ACTION_SEARCH_BOUND) -> Classification:
    verdict = is_non_nesting(g, bound)
    if not verdict.non_nesting:
        raise PreconditionError(f"map {getattr(g, 'name', '')!s} is nesting: {verdict.witness}")

    if isinstance(g, SpineSwap):
        return classify(g.restrict(bound), bound)

    if isinstance(g, FiniteTreeMap):
        fixed = fixed_set(g)
        if fixed.is_empty:
            raise InvariantViolation("automorphism of a finite tree without a fixed point")
        if not fixed.is_connected(g.tree):
            raise InvariantViolation("fixed set of a non-nesting map is disconnected")
        return Elliptic(fixed)

    alpha, beta = Fraction(g.alpha), Fraction(g.beta)
    if alpha == 1:
        if beta == 0:
            return Elliptic(LineFixedSet(whole=True))
        c = _translation_start(g)
        return Hyperbolic(Axis(g.line, c, g.apply(c) - c))
    # |alpha| == 1 here since other slopes nest
    return Elliptic(LineFixedSet(point=beta / (1 - alpha)))


# -----------------------------
# Groups of maps
# -----------------------------
@dataclass(frozen=True)
class CommutatorCertificate:
    i: int
    j: int
    commutator: TreeMap
    classification: Classification


@dataclass(frozen=True)
class GlobalFixedPoint:
    point: Optional[Union[TreePoint, Fraction]] = None
    certificate: Optional[CommutatorCertificate] = None


def commutator(a: TreeMap, b: TreeMap) -> TreeMap:
    """a^-1 b^-1 a b"""
    return a.inverse().compose(b.inverse()).compose(a).compose(b)


def _check_elliptic(generators: Sequence[TreeMap], bound: int) -> List[Classification]:
    out = []
    for i, g in enumerate(generators):
        c = classify(g, bound)
        if isinstance(c, Hyperbolic):
            raise PreconditionError(f"generator {i} ({getattr(g, 'name', '') or 'unnamed'}) is hyperbolic")
        out.append(c)
    return out


def global_fixed_point(generators: Sequence[TreeMap], bound: int = ACTION_SEARCH_BOUND) -> GlobalFixedPoint:
    if not generators:
        raise InputError("need at least one generator")
    classes = _check_elliptic(generators, bound)

    if all(isinstance(g, FiniteTreeMap) for g in generators):
        tree = generators[0].tree
        if any(g.tree != tree for g in generators):
            raise InputError("generators act on different trees")
        candidates = [TreePoint.at(n) for n in sorted(tree.node_ids)]
        candidates += [TreePoint.on_arc(a.a, a.b, Fraction(1, 2)) for a in tree.arcs]
        common = [p for p in candidates if all(g.apply(p) == p for g in generators)]
        if common:
            return GlobalFixedPoint(point=common[0])
        raise InvariantViolation("elliptic maps of a finite tree without a common fixed point")

    if all(isinstance(g, LineMap) for g in generators):
        fixed = [c.fixed for c in classes]
        points = sorted({f.point for f in fixed if not f.whole})
        if len(points) <= 1:
            return GlobalFixedPoint(point=points[0] if points else Fraction(0))
        for i, j in combinations(range(len(generators)), 2):
            fi, fj = fixed[i], fixed[j]
            if fi.whole or fj.whole or fi.point == fj.point:
                continue
            comm = commutator(generators[i], generators[j])
            verdict = classify(comm, bound)
            if not isinstance(verdict, Hyperbolic):
                raise InvariantViolation("commutator of maps with disjoint fixed sets is not hyperbolic")
            logger.debug("generators %d and %d have disjoint fixed sets", i, j)
            return GlobalFixedPoint(certificate=CommutatorCertificate(i, j, comm, verdict))

    raise InputError("generators must all be finite tree maps or all line maps")


@dataclass(frozen=True)
class EndDescriptor:
    status: Literal["end", "inconclusive"]
    direction: str = ""
    escaping: Tuple[Vertex, ...] = ()


def _lowest_fixed_spine(fixed: FixedSet, depth: int) -> Vertex:
    for level in range(depth + 1):
        if _vid((level, 0)) in fixed.nodes:
            return (level, 0)
    raise InvariantViolation("spine swap fixes no spine vertex")


def _family_end(family: SwapFamily, bound: int) -> Optional[EndDescriptor]:
    """
    Read the end off the fixed sets of the first `bound` members, all restricted
    to one window. Nested fixed sets whose lowest spine vertex rises with every
    member escape up the spine; a lowest spine vertex that never moves is a
    common fixed point.
    """
    if bound < 1:
        raise InputError("fixed_end needs bound >= 1")
    members = [family.member(n) for n in range(bound)]
    depth = max(m.level for m in members) + 1
    fixed = [fixed_set(m.restrict(depth)) for m in members]
    lowest = [_lowest_fixed_spine(f, depth) for f in fixed]

    if len(members) < 2:
        return EndDescriptor("inconclusive")
    if len(set(lowest)) == 1:
        return None
    nested = all(b.nodes <= a.nodes for a, b in zip(fixed, fixed[1:]))
    rising = all(a[0] < b[0] for a, b in zip(lowest, lowest[1:]))
    if nested and rising:
        return EndDescriptor("end", direction="spine", escaping=tuple(lowest))
    return EndDescriptor("inconclusive")


def fixed_end(generators: Union[SwapFamily, Sequence[TreeMap]], bound: int = ACTION_SEARCH_BOUND) -> Optional[EndDescriptor]:
    """
    The end fixed by a group of elliptic maps with no global fixed point, or None
    when a fixed point exists. A swap family observed over fewer members than
    it takes to see its fixed sets move is reported as inconclusive.
    """
    if isinstance(generators, SwapFamily):
        return _family_end(generators, bound)

    generators = list(generators)
    if not generators:
        raise InputError("need at least one generator")
    if all(isinstance(g, SpineSwap) for g in generators):
        _check_elliptic(generators, bound)
        return None

    result = global_fixed_point(generators, bound)
    if result.point is not None:
        return None
    raise PreconditionError("the generated group contains a hyperbolic element")
