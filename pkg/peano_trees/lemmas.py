# peano_trees/lemmas.py
from __future__ import annotations

import hashlib
import logging
from dataclasses import asdict, dataclass
from fractions import Fraction
from itertools import combinations
from pathlib import Path
from typing import Callable, Dict, FrozenSet, Iterable, List, Literal, Optional, Sequence, Tuple

import networkx as nx
import pandas as pd

from peano_trees.actions import (
    Elliptic,
    FiniteTreeMap,
    Hyperbolic,
    LineMap,
    PeriodicLine,
    SpineSwap,
    SwapFamily,
    classify,
    fixed_end,
    global_fixed_point,
    is_non_nesting,
)
from peano_trees.combined import block_closure, build_combined_tree
from peano_trees.corpus import CorpusEntry, load_corpus
from peano_trees.cutpair import (
    analyze_pairs,
    build_jsj_tree,
    build_R,
    check_coverage,
    check_intersections,
    check_no_separation,
    circle_equivariance,
    circle_map,
    circle_separates,
    cyclic_decomposition,
    is_circle,
)
from peano_trees.cutpoint import (
    ANCHOR_KINDS,
    analyze,
    build_cutpoint_tree,
    canonical_lengths,
    check_representatives,
    cut_points,
    induced_tree_map,
    metric_base,
    metrize,
)
from peano_trees.export import attachment_records, structure_to_text, tree_to_text
from peano_trees.models import (
    GraphAutomorphism,
    GraphContinuum,
    InputError,
    InvariantViolation,
    Point,
    PreconditionError,
    VerifyLevel,
)
from peano_trees.pretree import (
    BetweennessTable,
    StructuralTree,
    check_nested_unions,
    check_subset_property,
    check_tree_matches_table,
    classify_nodes,
    interval,
    verify_linear_order,
    verify_pretree_axioms,
)

logger = logging.getLogger(__name__)

Status = Literal["PASS", "FAIL", "SKIP"]
Check = Callable[[], Optional[str]]

SYNTHETIC_ROW = "synthetic"


@dataclass(frozen=True)
class PropertyResult:
    graph: str
    prop: str
    status: Status
    detail: str = ""

    @property
    def failed(self) -> bool:
        return self.status == "FAIL"


def run_check(graph: str, prop: str, check: Check) -> PropertyResult:
    """Run one property; precondition errors skip it, invariant violations fail it."""
    try:
        problem = check()
    except PreconditionError as exc:
        return PropertyResult(graph, prop, "SKIP", str(exc))
    except InvariantViolation as exc:
        logger.debug("%s %s raised: %s", graph, prop, exc)
        return PropertyResult(graph, prop, "FAIL", str(exc))
    if problem is None:
        return PropertyResult(graph, prop, "PASS")
    logger.debug("%s %s failed: %s", graph, prop, problem)
    return PropertyResult(graph, prop, "FAIL", problem)


def _name(X: GraphContinuum) -> str:
    return X.name or "graph"


# -----------------------------
# Pretrees
# -----------------------------
def _axioms(table: BetweennessTable) -> Optional[str]:
    if not table.ground:
        return None
    report = verify_pretree_axioms(table)
    return None if report.ok else report.describe()


def _subset(table: BetweennessTable) -> Optional[str]:
    bad = check_subset_property(table)
    return None if bad is None else "[x,y] is not inside [x,z] at (x, y, z) = (%s, %s, %s)" % bad


def _nested(table: BetweennessTable) -> Optional[str]:
    bad = check_nested_unions(table)
    return None if bad is None else "union of nested intervals from %s breaks at %s" % bad


def _order(table: BetweennessTable) -> Optional[str]:
    for x in table.ground:
        for y in table.ground:
            if x == y:
                continue
            bad = verify_linear_order(table, x, y)
            if bad is not None:
                return f"order on [{x},{y}] disagrees with betweenness at {bad}"
    return None


def _preseparable(table: BetweennessTable) -> Optional[str]:
    """Consecutive members of every closed interval form an adjacent pair."""
    adjacent = {frozenset(p) for p in classify_nodes(table).adjacent}
    for x in table.ground:
        for y in table.ground:
            members = interval(table, x, y, "closed").members
            for a, b in zip(members, members[1:]):
                if frozenset((a, b)) not in adjacent:
                    return f"{a} and {b} are consecutive in [{x},{y}] but not adjacent"
    return None


def _tree_matches(tree: StructuralTree, table: BetweennessTable) -> Optional[str]:
    bad = check_tree_matches_table(tree, table)
    return None if bad is None else f"tree and pretree disagree at {bad}"


def pretree_properties(graph: str, prefix: str, table: BetweennessTable, tree: Optional[StructuralTree] = None) -> List[PropertyResult]:
    out = [
        run_check(graph, f"{prefix}:axioms", lambda: _axioms(table)),
        run_check(graph, f"{prefix}:subset", lambda: _subset(table)),
        run_check(graph, f"{prefix}:nested", lambda: _nested(table)),
        run_check(graph, f"{prefix}:order", lambda: _order(table)),
    ]
    if tree is not None:
        out.append(run_check(graph, f"{prefix}:tree", lambda: _tree_matches(tree, table)))
    return out


# -----------------------------
# Cut points and P
# -----------------------------
def _adjacent(X: GraphContinuum, k: int) -> Optional[str]:
    analysis = analyze(X, k)
    for a, b in classify_nodes(analysis.table).adjacent:
        na, nb = analysis.node(a), analysis.node(b)
        if "arc" in (na.kind, nb.kind):
            # consecutive bridge samples are a sampling artifact
            continue
        if {na.kind, nb.kind} != {"class", "cutpoint"}:
            return f"{a} and {b} are adjacent but are not a cut point and a class"
        cls, cut = (na, nb) if na.kind == "class" else (nb, na)
        c = analysis.class_by_id(cls.id)
        if c.singleton or cut.representative.vertex not in c.adjacent_cut_vertices:
            return f"{cls.id} is adjacent to {cut.id} without containing it in its closure"
    return None


def _singing(X: GraphContinuum, k: int) -> Optional[str]:
    analysis = analyze(X, k)
    terminal = set(classify_nodes(analysis.table).terminal)
    for c in analysis.classes:
        if c.singleton and c.id not in terminal:
            return f"singleton class {c.id} is not terminal"
    return None


def _representatives(X: GraphContinuum, k: int) -> Optional[str]:
    bad = check_representatives(X, k)
    return None if bad is None else "betweenness (%s, %s, %s) changes with representative %s" % bad


def replay_canonical(tree: StructuralTree, seed: Optional[str] = None) -> Dict[FrozenSet[str], Fraction]:
    """
    Second derivation of the halving schedule: anchors in breadth-first
    discovery order, each joined by its shortest route to the part built so far.
    """
    lengths = {arc.key: Fraction(1) for arc in tree.arcs}
    anchors = {n.id for n in tree.nodes if n.kind in ANCHOR_KINDS}
    anchors.update(n for arc in tree.arcs if arc.kind == "arc" for n in (arc.a, arc.b))
    base = metric_base(tree, seed)
    if base is None or not anchors:
        return lengths

    order = [base] + [v for _, v in nx.bfs_edges(tree.graph, base, sort_neighbors=sorted)]
    attached = {base}
    step = 0
    for target in order:
        if target not in anchors or target in attached:
            continue
        _, route = nx.multi_source_dijkstra(tree.graph, attached, target=target, weight=None)
        share = Fraction(1, 2 ** step) / (len(route) - 1)
        for a, b in zip(route, route[1:]):
            lengths[frozenset((a, b))] = share
        attached.update(route)
        step += 1
    return lengths


def _metric_replay(tree: StructuralTree, seed: Optional[str]) -> Optional[str]:
    if canonical_lengths(tree, seed) != replay_canonical(tree, seed):
        return "canonical lengths differ from the replayed schedule"
    return None


def _metric_determinism(tree: StructuralTree, seed: Optional[str]) -> Optional[str]:
    shuffled = StructuralTree(tuple(reversed(tree.nodes)), tuple(reversed(tree.arcs)), tree.root)
    if tree_to_text(metrize(tree, "canonical", seed)) != tree_to_text(metrize(shuffled, "canonical", seed)):
        return "canonical metric depends on node and arc order"
    return None


def cutpoint_properties(X: GraphContinuum, k: int, seed: Optional[str] = None) -> List[PropertyResult]:
    graph = _name(X)
    tree = build_cutpoint_tree(X, k)
    table = analyze(X, k).table
    out = pretree_properties(graph, "P", table)
    out += [
        run_check(graph, "adjacent", lambda: _adjacent(X, k)),
        run_check(graph, "singing", lambda: _singing(X, k)),
        run_check(graph, "preseparable", lambda: _preseparable(table)),
        run_check(graph, "metric:replay", lambda: _metric_replay(tree, seed)),
        run_check(graph, "metric:determinism", lambda: _metric_determinism(tree, seed)),
    ]
    return out


# -----------------------------
# Cut pairs and R
# -----------------------------
def _label(points: Iterable[Point]) -> str:
    return "{" + ",".join(p.label for p in sorted(points, key=lambda p: p.sort_key)) + "}"


def _cross(X: GraphContinuum, k: int) -> Optional[str]:
    a = analyze_pairs(X, k)
    atoms = a.grid.points
    pairs = [frozenset((c, d)) for i, c in enumerate(atoms) for d in atoms[i + 1:] if a.is_cut_pair(c, d)]
    sub = a.oracle.subdivision
    for P in pairs:
        outer = a.cut_pairs[P]
        for Q in pairs:
            if P & Q:
                continue
            c, d = tuple(Q)
            if outer[c] == outer[d]:
                continue
            if a.oracle.component_count(P) != 2 or a.oracle.component_count(Q) != 2:
                return f"{_label(P)} separates {_label(Q)} but a complement has more than two components"
            inner = a.cut_pairs[Q]
            x, y = tuple(P)
            if inner[x] == inner[y]:
                return f"{_label(P)} separates {_label(Q)} but not conversely"
            if cyclic_decomposition(X, P | Q, subdivision=sub, granularity=k) is None:
                return f"{_label(P | Q)} has no cyclic decomposition"
    return None


def _cyclic_extension(X: GraphContinuum, k: int) -> Optional[str]:
    """Sets of up to four atoms whose pairs are all cut pairs are inseparable or cyclic."""
    a = analyze_pairs(X, k)
    atoms = a.grid.points
    sub = a.oracle.subdivision
    for size in (3, 4):
        for S in combinations(atoms, size):
            pairs = list(combinations(S, 2))
            if not all(a.is_cut_pair(x, y) for x, y in pairs):
                continue
            if not any(a.separable(x, y) for x, y in pairs):
                continue
            if cyclic_decomposition(X, S, subdivision=sub, granularity=k) is None:
                return f"{_label(S)} is neither inseparable nor cyclic"
    return None


def _two_to_tango(X: GraphContinuum, k: int) -> Optional[str]:
    a = analyze_pairs(X, k)
    for N in a.necklaces:
        labels = a.oracle.labels_without_cells(N.vertices, N.edges)
        inside = [lab for Q, lab in a.cut_pairs.items() if all(N.contains(q) for q in Q)]
        outside = sorted(labels, key=lambda p: p.sort_key)
        for x, y in combinations(outside, 2):
            if labels[x] == labels[y]:
                continue
            if not any(lab[x] != lab[y] for lab in inside):
                return f"{N.id} separates {x} from {y} but none of its cut pairs does"
    return None


def _sides(X: GraphContinuum, k: int) -> Optional[str]:
    a = analyze_pairs(X, k)
    for N in a.necklaces:
        for gap in N.gaps:
            b, c = gap.boundary
            if not gap.fat:
                return f"{gap.id} of {N.id} is not fat"
            if b == c or a.separable(Point.at_vertex(b), Point.at_vertex(c)):
                return f"sides of {gap.id} do not form a nonsingleton inseparable set"
    return None


def _r_lemmas(table: BetweennessTable) -> Optional[str]:
    """[R,T] lies in [R,S] ∪ [S,T], and S in (R,T) keeps R out of (S,T)."""
    ground = table.ground
    closed = {(x, y): set(interval(table, x, y, "closed").members) for x in ground for y in ground}
    for r in ground:
        for s in ground:
            for t in ground:
                if len({r, s, t}) < 3:
                    continue
                if not closed[(r, t)] <= closed[(r, s)] | closed[(s, t)]:
                    return f"[{r},{t}] is not covered by [{r},{s}] and [{s},{t}]"
                if table.between(r, s, t) and table.between(s, r, t):
                    return f"{s} in ({r},{t}) and {r} in ({s},{t})"
    return None


def _circle_layouts(X: GraphContinuum, k: int) -> Optional[str]:
    a = analyze_pairs(X, k)
    probes = a.probe.points
    for N in a.necklaces:
        layout = circle_map(X, N, k)
        angles = [angle for _, angle in layout.angles]
        if len(set(angles)) != len(angles):
            return f"{N.id}: two stations share an angle"
        for kind, name, start, end, _ in layout.arcs:
            if kind == "gap" and not start < end:
                return f"{N.id}: gap {name} has a degenerate arc"
        positioned = [p for p in probes if N.contains(p)] + [p for p, _ in layout.gap_positions]
        pos = {p: layout.angle(X, p) for p in positioned}
        on_necklace = [p for p in positioned if N.contains(p)]
        for s, t in combinations(on_necklace, 2):
            labels = a.oracle.labels({s, t})
            for x, y in combinations(positioned, 2):
                if {x, y} & {s, t}:
                    continue
                apart = labels[x] != labels[y]
                on_circle = circle_separates(min(pos[s], pos[t]), max(pos[s], pos[t]), pos[x], pos[y])
                if on_circle and not apart:
                    return f"{N.id}: circle separates {x}, {y} by {s}, {t} but X does not"
                if apart and (N.contains(x) or N.contains(y)) and not on_circle:
                    return f"{N.id}: {s}, {t} separate {x}, {y} in X but not on the circle"
    return None


def _equivariance(X: GraphContinuum, k: int, automorphisms: Sequence[GraphAutomorphism]) -> Optional[str]:
    for N in analyze_pairs(X, k).necklaces:
        for g in automorphisms:
            circle_equivariance(N, g)
    return None


def _circle_test(X: GraphContinuum, k: int) -> Optional[str]:
    is_circle(X, k)
    return None


def _blocks(X: GraphContinuum, k: int) -> List[GraphContinuum]:
    if cut_points(X, k).is_empty:
        return [X]
    return [block_closure(X, c, k) for c in analyze(X, k).classes if not c.singleton]


def _per_block(X: GraphContinuum, k: int, check: Callable[[GraphContinuum, int], Optional[str]]) -> Check:
    def run() -> Optional[str]:
        blocks = _blocks(X, k)
        if not blocks:
            raise PreconditionError("no block without cut points")
        for B in blocks:
            problem = check(B, k)
            if problem is not None:
                return f"{_name(B)}: {problem}"
        return None
    return run


def _r_pairwise(check) -> Callable[[GraphContinuum, int], Optional[str]]:
    return lambda B, k: check(analyze_pairs(B, k))


def cutpair_properties(X: GraphContinuum, k: int, automorphisms: Sequence[GraphAutomorphism] = ()) -> List[PropertyResult]:
    """R properties on X, or on each block closure when X has cut points."""
    graph = _name(X)
    out: List[PropertyResult] = []
    blocks = _blocks(X, k)
    for B in blocks:
        try:
            build_R(B, k)
        except InvariantViolation as exc:
            out.append(PropertyResult(graph, "R:build", "FAIL", f"{_name(B)}: {exc}"))
            continue
        table = analyze_pairs(B, k).table
        out += pretree_properties(graph, "R", table, build_jsj_tree(B, k))
    if not blocks:
        out.append(PropertyResult(graph, "R:axioms", "SKIP", "no block without cut points"))
    out += [
        run_check(graph, "R:lemmas", _per_block(X, k, lambda B, k: _r_lemmas(analyze_pairs(B, k).table))),
        run_check(graph, "cint", _per_block(X, k, _r_pairwise(check_intersections))),
        run_check(graph, "nosep", _per_block(X, k, _r_pairwise(check_no_separation))),
        run_check(graph, "cot", _per_block(X, k, _r_pairwise(check_coverage))),
        run_check(graph, "cross", _per_block(X, k, _cross)),
        run_check(graph, "cyc", _per_block(X, k, _cyclic_extension)),
        run_check(graph, "twototango", _per_block(X, k, _two_to_tango)),
        run_check(graph, "sides", _per_block(X, k, _sides)),
        run_check(graph, "circle:layout", _per_block(X, k, _circle_layouts)),
        run_check(graph, "is_circle", _per_block(X, k, _circle_test)),
    ]
    if cut_points(X, k).is_empty:
        out.append(run_check(graph, "circle:equivariance", lambda: _equivariance(X, k, automorphisms)))
    return _merge(out)


def _merge(results: List[PropertyResult]) -> List[PropertyResult]:
    """Fold repeated property names (one per block) into one result: FAIL beats PASS beats SKIP."""
    rank = {"FAIL": 0, "PASS": 1, "SKIP": 2}
    merged: Dict[str, PropertyResult] = {}
    for r in results:
        prev = merged.get(r.prop)
        if prev is None or rank[r.status] < rank[prev.status]:
            merged[r.prop] = r
    return list(merged.values())


# -----------------------------
# Combined tree
# -----------------------------
def _combined_tree(X: GraphContinuum, k: int) -> Optional[str]:
    combined = build_combined_tree(X, k)
    for att in combined.attachments:
        node = combined.tree.node(att.node)
        if not att.end and att.cut_point not in node.vertices:
            return f"{att.node} does not contain the cut point {att.cut_point}"
        if not combined.tree.has_arc(f"cut:{att.cut_point}", att.node):
            return f"cut:{att.cut_point} is not glued to {att.node}"
    return None


def _combined_circles(X: GraphContinuum, k: int) -> Optional[str]:
    combined = build_combined_tree(X, k)
    if any(len(t.nodes) > 1 for _, t in combined.block_trees):
        raise PreconditionError("some block is not a circle")
    if not nx.is_isomorphic(combined.tree.graph, build_cutpoint_tree(X, k).graph):
        return "circle blocks changed the shape of the cut-point tree"
    return None


def _combined_count(X: GraphContinuum, k: int) -> Optional[str]:
    if cut_points(X, k).is_empty:
        return None
    trees = dict(build_combined_tree(X, k).block_trees)
    for c in analyze(X, k).classes:
        if c.id in trees and len(trees[c.id].nodes) > 1 and not c.adjacent_cut_vertices:
            return f"{c.id} has a nontrivial JSJ tree but no adjacent cut point"
    return None


def combined_properties(X: GraphContinuum, k: int) -> List[PropertyResult]:
    graph = _name(X)
    return [
        run_check(graph, "combined:tree", lambda: _combined_tree(X, k)),
        run_check(graph, "combined:circles", lambda: _combined_circles(X, k)),
        run_check(graph, "combined:count", lambda: _combined_count(X, k)),
    ]


# -----------------------------
# Actions
# -----------------------------
def produced_trees(X: GraphContinuum, k: int) -> List[Tuple[str, StructuralTree]]:
    out = [("cutpoint", build_cutpoint_tree(X, k))]
    if cut_points(X, k).is_empty:
        out.append(("jsj", build_jsj_tree(X, k)))
    out.append(("combined", build_combined_tree(X, k).tree))
    return out


def _maps(X: GraphContinuum, k: int, automorphisms: Sequence[GraphAutomorphism]) -> List[Tuple[str, FiniteTreeMap]]:
    if not automorphisms:
        raise PreconditionError("no automorphisms")
    return [
        (f"{g.name}@{kind}", induced_tree_map(tree, X, g, k))
        for g in automorphisms
        for kind, tree in produced_trees(X, k)
    ]


def _non_nesting(X, k, automorphisms, bound) -> Optional[str]:
    for label, m in _maps(X, k, automorphisms):
        verdict = is_non_nesting(m, bound)
        if not verdict.non_nesting or not verdict.exhaustive:
            return f"{label} nests: {verdict.witness}"
    return None


def _elliptic(X, k, automorphisms, bound) -> Optional[str]:
    for label, m in _maps(X, k, automorphisms):
        if not isinstance(classify(m, bound), Elliptic):
            return f"{label} is not elliptic"
    return None


def _square(X, k, automorphisms, bound) -> Optional[str]:
    for label, m in _maps(X, k, automorphisms):
        if classify(m, bound).kind != classify(m.compose(m), bound).kind:
            return f"{label} and its square have different types"
    return None


def _isometry(X, k, automorphisms) -> Optional[str]:
    if not automorphisms:
        raise PreconditionError("no automorphisms")
    tree = metrize(build_cutpoint_tree(X, k), "geometric")
    for g in automorphisms:
        m = induced_tree_map(tree, X, g, k).node_map
        for arc in tree.arcs:
            if tree.arc(m[arc.a], m[arc.b]).length != arc.length:
                return f"{g.name} does not preserve the length of {arc.a}--{arc.b}"
    return None


def action_properties(
    X: GraphContinuum,
    k: int,
    automorphisms: Sequence[GraphAutomorphism],
    bound: int,
) -> List[PropertyResult]:
    graph = _name(X)
    return [
        run_check(graph, "actions:nonnesting", lambda: _non_nesting(X, k, automorphisms, bound)),
        run_check(graph, "actions:elliptic", lambda: _elliptic(X, k, automorphisms, bound)),
        run_check(graph, "actions:square", lambda: _square(X, k, automorphisms, bound)),
        run_check(graph, "actions:isometry", lambda: _isometry(X, k, automorphisms)),
    ]


def _synthetic_shift(bound: int) -> Optional[str]:
    line = PeriodicLine((Fraction(1), Fraction(1, 2)))
    g = LineMap.shift(line)
    c = classify(g, bound)
    if not isinstance(c, Hyperbolic):
        return "period shift is not hyperbolic"
    if c.axis.translation != line.period:
        return f"fundamental segment has length {c.axis.translation}, expected {line.period}"
    lo, hi = c.axis.segment
    if g.apply(lo) != hi or g.apply(lo) == lo:
        return "shift does not translate its fundamental segment"
    return None


def _synthetic_commutator(bound: int) -> Optional[str]:
    line = PeriodicLine()
    result = global_fixed_point([LineMap.reflection(line, 0), LineMap.reflection(line, 1)], bound)
    if result.certificate is None or not isinstance(result.certificate.classification, Hyperbolic):
        return "reflections with disjoint fixed points gave no hyperbolic commutator"
    return None


def _synthetic_nesting(bound: int) -> Optional[str]:
    verdict = is_non_nesting(LineMap(PeriodicLine(), Fraction(1, 2), Fraction(0), "contract"), bound)
    if verdict.non_nesting or verdict.witness is None:
        return "contraction was not detected as nesting"
    return None


def _synthetic_end(bound: int) -> Optional[str]:
    # two members are the fewest that show fixed sets moving
    members = max(bound, 2)
    if fixed_end(SwapFamily(1, 0), members) is not None:
        return "a constant swap family has a fixed point, not an end"
    end = fixed_end(SwapFamily(1, 1), members)
    if end is None or end.status != "end":
        return "swap family with growing levels did not fix the spine end"
    for level in range(1, bound + 1):
        if not isinstance(classify(SpineSwap(level), bound), Elliptic):
            return f"spine swap at level {level} is not elliptic"
    return None


def synthetic_properties(bound: int) -> List[PropertyResult]:
    return [
        run_check(SYNTHETIC_ROW, "synthetic:shift", lambda: _synthetic_shift(bound)),
        run_check(SYNTHETIC_ROW, "synthetic:commutator", lambda: _synthetic_commutator(bound)),
        run_check(SYNTHETIC_ROW, "synthetic:nesting", lambda: _synthetic_nesting(bound)),
        run_check(SYNTHETIC_ROW, "synthetic:end", lambda: _synthetic_end(bound)),
    ]


# -----------------------------
# Grid stability
# -----------------------------
def decomposition_digest(X: GraphContinuum, k: int) -> str:
    """Hash of everything the pipeline reports for X at granularity k."""
    analysis = analyze(X, k)
    parts = [
        ",".join(analysis.cut_points.labels),
        ";".join(f"{c.id}={c.members.label}" for c in analysis.classes),
        tree_to_text(build_cutpoint_tree(X, k)),
    ]
    if analysis.cut_points.is_empty:
        parts.append(structure_to_text(build_R(X, k).collection))
        parts.append(tree_to_text(build_jsj_tree(X, k)))
    combined = build_combined_tree(X, k)
    parts.append(tree_to_text(combined.tree, attachment_records(combined.attachments)))
    return hashlib.sha256("\n".join(parts).encode("utf-8")).hexdigest()


def _stability(X: GraphContinuum, k: int, finer: int) -> Optional[str]:
    if decomposition_digest(X, k) != decomposition_digest(X, finer):
        return f"decompositions differ between granularity {k} and {finer}"
    return None


def stability_properties(X: GraphContinuum, k: int) -> List[PropertyResult]:
    graph = _name(X)
    return [
        run_check(graph, "stability", lambda: _stability(X, k, k + 2)),
        run_check(graph, "representatives", lambda: _representatives(X, k)),
    ]


# -----------------------------
# Suites
# -----------------------------
def command_suite(
    command: str,
    X: GraphContinuum,
    k: int,
    level: VerifyLevel,
    automorphisms: Sequence[GraphAutomorphism] = (),
    bound: int = 3,
    seed: Optional[str] = None,
) -> List[PropertyResult]:
    """Properties for the module a CLI command drives."""
    if level == "off":
        return []
    if command == "cutpoint-tree":
        out = cutpoint_properties(X, k, seed)
    elif command == "jsj-tree":
        out = cutpair_properties(X, k, automorphisms)
    elif command == "combined":
        out = combined_properties(X, k) + cutpair_properties(X, k)
    elif command == "action":
        out = action_properties(X, k, automorphisms, bound)
    else:
        raise InputError(f"no property suite for command '{command}'")
    if level == "full":
        out += stability_properties(X, k)
    return out


def entry_suite(entry: CorpusEntry, k: int, bound: int = 3) -> List[PropertyResult]:
    X = entry.graph
    autos = entry.automorphisms
    out = cutpoint_properties(X, k)
    out += cutpair_properties(X, k, autos)
    out += combined_properties(X, k)
    out += action_properties(X, k, autos, bound)
    out += stability_properties(X, k)
    logger.debug("%s: %d properties checked", entry.name, len(out))
    return out


def verify_corpus(k: int = 3, bound: int = 3, corpus_dir: Optional[Path] = None) -> List[PropertyResult]:
    results: List[PropertyResult] = []
    for entry in load_corpus(corpus_dir):
        results += entry_suite(entry, k, bound)
    results += synthetic_properties(bound)
    return results


def results_frame(results: Sequence[PropertyResult]) -> pd.DataFrame:
    """Rows are graphs, columns are properties, cells PASS / FAIL / -."""
    if not results:
        return pd.DataFrame()
    df = pd.DataFrame([asdict(r) for r in results])
    df["status"] = df["status"].replace({"SKIP": "-"})
    matrix = df.pivot(index="graph", columns="prop", values="status").fillna("-")
    rows = list(dict.fromkeys(df["graph"]))
    cols = list(dict.fromkeys(df["prop"]))
    return matrix.reindex(index=rows, columns=cols)


def failures(results: Sequence[PropertyResult]) -> List[PropertyResult]:
    return [r for r in results if r.failed]
