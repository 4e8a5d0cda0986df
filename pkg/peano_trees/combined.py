# peano_trees/combined.py
from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

import networkx as nx

from peano_trees.continuum import build_graph
from peano_trees.cutpair import build_jsj_tree
from peano_trees.cutpoint import EquivClass, analyze, build_cutpoint_tree, cut_points
from peano_trees.models import GraphContinuum, GraphParseError, InputError, InvariantViolation
from peano_trees.pretree import StructuralTree, TreeArc, TreeNode

logger = logging.getLogger(__name__)

# tie-break among equally central elements containing a cut vertex
KIND_PRIORITY = {"inseparable": 0, "pair": 1, "necklace": 2, "point": 3}


@dataclass(frozen=True)
class Attachment:
    cut_point: str
    block: str
    node: str
    end: bool = False


@dataclass(frozen=True)
class CombinedTree:
    tree: StructuralTree
    attachments: Tuple[Attachment, ...]
    # classes whose node was replaced by the JSJ tree of their block
    blocks: Tuple[str, ...]
    # JSJ trees of the replaced blocks, by class id
    block_trees: Tuple[Tuple[str, StructuralTree], ...] = ()


def block_closure(X: GraphContinuum, cls: Union[EquivClass, str], granularity: int = 3) -> GraphContinuum:
    """The closure of a nonsingleton class as a standalone graph (the block)."""
    if isinstance(cls, str):
        cls = analyze(X, granularity).class_by_id(cls)
    if cls.singleton:
        raise InputError(f"{cls.id} is a singleton class and has no block")

    edges = [X.edge(e) for e in sorted(cls.edges)]
    vertices = set(cls.vertices)
    for e in edges:
        vertices.update((e.u, e.v))
    try:
        B = build_graph(vertices, edges, name=f"{X.name}[{cls.id}]" if X.name else cls.id)
    except GraphParseError as exc:
        raise InvariantViolation(f"closure of {cls.id} is not a continuum: {exc}") from exc
    if not cut_points(B, granularity).is_empty:
        raise InvariantViolation(f"closure of {cls.id} has cut points")
    return B


def attachment_node(jsj: StructuralTree, vertex: str) -> Optional[str]:
    """Most central JSJ node among those containing the vertex, or None if there are none."""
    containing = [n for n in jsj.nodes if vertex in n.vertices]
    if not containing:
        return None

    def rank(n: TreeNode):
        hops = nx.single_source_shortest_path_length(jsj.graph, n.id)
        eccentricity = max(hops[m.id] for m in containing)
        return (eccentricity, KIND_PRIORITY.get(n.kind, 9), n.id)

    return min(containing, key=rank).id


def _end_anchor(jsj: StructuralTree, X: GraphContinuum, vertex: str) -> str:
    incident = {e.id for e in X.incident(vertex)}
    touching = sorted(n.id for n in jsj.nodes if n.edges & incident)
    return touching[0] if touching else jsj.nodes[0].id


def build_combined_tree(X: GraphContinuum, granularity: int = 3) -> CombinedTree:
    analysis = analyze(X, granularity)
    cut_tree = build_cutpoint_tree(X, granularity)

    nodes: List[TreeNode] = []
    arcs: List[TreeArc] = []
    replaced: Dict[str, StructuralTree] = {}
    for n in cut_tree.nodes:
        if n.kind != "class" or analysis.class_by_id(n.id).singleton:
            nodes.append(n)
            continue
        jsj = build_jsj_tree(block_closure(X, n.id, granularity), granularity)
        replaced[n.id] = jsj
        nodes.extend(replace(m, id=f"{n.id}/{m.id}", block=n.id) for m in jsj.nodes)
        arcs.extend(replace(a, a=f"{n.id}/{a.a}", b=f"{n.id}/{a.b}") for a in jsj.arcs)

    attachments: List[Attachment] = []
    for arc in cut_tree.arcs:
        ends = [arc.a, arc.b]
        for i, end in enumerate(ends):
            if end not in replaced:
                continue
            other = cut_tree.node(ends[1 - i])
            if other.kind != "cutpoint":
                raise InvariantViolation(f"block {end} is joined to {other.id}, which is not a cut point")
            vertex = other.label
            jsj = replaced[end]
            target = attachment_node(jsj, vertex)
            is_end = target is None
            if is_end:
                target = f"end:{vertex}"
                nodes.append(TreeNode(f"{end}/{target}", "end", vertex, frozenset({vertex}), block=end))
                anchor = _end_anchor(jsj, X, vertex)
                arcs.append(TreeArc(f"{end}/{target}", f"{end}/{anchor}", Fraction(1), "glue"))
            ends[i] = f"{end}/{target}"
            attachments.append(Attachment(vertex, end, ends[i], is_end))
        arcs.append(replace(arc, a=ends[0], b=ends[1]))

    try:
        tree = StructuralTree(tuple(nodes), tuple(arcs)).sorted()
    except InvariantViolation as exc:
        raise InvariantViolation(f"combined structure of {X.name or 'graph'} is not a tree: {exc}") from exc

    logger.debug("%s: combined tree over %d blocks", X.name or "graph", len(replaced))
    return CombinedTree(
        tree=tree,
        attachments=tuple(sorted(attachments, key=lambda a: (a.block, a.cut_point))),
        blocks=tuple(sorted(replaced)),
        block_trees=tuple(sorted(replaced.items())),
    )
