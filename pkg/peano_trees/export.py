# peano_trees/export.py
from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple
from urllib.parse import quote, unquote

from peano_trees.actions import LineFixedSet
from peano_trees.models import InputError, OutputFormat
from peano_trees.pretree import StructuralTree, TreeArc, TreeNode

TREE_HEADER = "# peano-trees tree v1"
STRUCTURE_HEADER = "# peano-trees structure v1"
ACTION_HEADER = "# peano-trees action v1"

KIND_SHAPES = {
    "class": "ellipse",
    "cutpoint": "diamond",
    "necklace": "doublecircle",
    "pair": "box",
    "inseparable": "hexagon",
    "end": "plaintext",
    "point": "point",
    "node": "circle",
}

Record = Tuple[str, List[Tuple[str, str]]]


# -----------------------------
# Record encoding
# -----------------------------
# commas separate list items, so only scalar fields keep them literal
LIST_SAFE = ":/|@._()[]{}"
SCALAR_SAFE = LIST_SAFE + ","


def _enc(value: Optional[str], safe: str = SCALAR_SAFE) -> str:
    if value is None:
        return "-"
    if value == "-":
        return "%2D"
    return quote(value, safe=safe)


def _dec(token: str) -> Optional[str]:
    return None if token == "-" else unquote(token)


def _enc_list(values: Iterable[str]) -> str:
    return ",".join(_enc(v, LIST_SAFE) for v in sorted(values))


def _dec_list(token: str) -> frozenset:
    return frozenset(unquote(v) for v in token.split(",")) if token else frozenset()


def _frac(value: Optional[Fraction]) -> str:
    return "-" if value is None else str(value)


def format_record(tag: str, fields: Sequence[Tuple[str, str]]) -> str:
    return " ".join([tag] + [f"{k}={v}" for k, v in fields])


def parse_records(text: str, header: str) -> List[Tuple[int, str, Dict[str, str]]]:
    """Split a record file into (line, tag, fields); the header and a final `end` are required."""
    lines = text.splitlines()
    if not lines or lines[0].strip() != header:
        raise InputError(f"expected header '{header}'")
    out = []
    ended = False
    for lineno, raw in enumerate(lines[1:], start=2):
        line = raw.strip()
        if not line:
            continue
        if ended:
            raise InputError(f"line {lineno}: content after 'end'")
        tokens = line.split()
        if tokens[0] == "end" and len(tokens) == 1:
            ended = True
            continue
        fields: Dict[str, str] = {}
        for token in tokens[1:]:
            key, sep, value = token.partition("=")
            if not sep or not key:
                raise InputError(f"line {lineno}: malformed field '{token}'")
            if key in fields:
                raise InputError(f"line {lineno}: repeated field '{key}'")
            fields[key] = value
        out.append((lineno, tokens[0], fields))
    if not ended:
        raise InputError("missing 'end' record")
    return out


def _require(fields: Dict[str, str], keys: Sequence[str], lineno: int, tag: str) -> None:
    missing = [k for k in keys if k not in fields]
    if missing:
        raise InputError(f"line {lineno}: {tag} record lacks {', '.join(missing)}")


# -----------------------------
# Trees: structured text
# -----------------------------
def _node_fields(n: TreeNode) -> List[Tuple[str, str]]:
    return [
        ("id", _enc(n.id)),
        ("kind", _enc(n.kind)),
        ("label", _enc(n.label)),
        ("vertices", _enc_list(n.vertices)),
        ("edges", _enc_list(n.edges)),
        ("block", _enc(n.block)),
    ]


def _arc_fields(arc: TreeArc) -> List[Tuple[str, str]]:
    return [
        ("a", _enc(arc.a)),
        ("b", _enc(arc.b)),
        ("length", str(arc.length)),
        ("kind", arc.kind),
        ("edge", _enc(arc.edge)),
        ("extent", _frac(arc.extent)),
    ]


def tree_to_text(tree: StructuralTree, extra: Sequence[str] = ()) -> str:
    """Serialize a tree; `extra` records are written before `end` and ignored by the tree parser."""
    tree = tree.sorted()
    lines = [TREE_HEADER, format_record("tree", [("root", _enc(tree.root))])]
    lines += [format_record("node", _node_fields(n)) for n in tree.nodes]
    lines += [format_record("arc", _arc_fields(a)) for a in tree.arcs]
    lines += list(extra)
    lines.append("end")
    return "\n".join(lines) + "\n"


def _parse_fraction(token: str, lineno: int) -> Fraction:
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"line {lineno}: invalid number '{token}'") from None


def tree_from_text(text: str) -> StructuralTree:
    root: Optional[str] = None
    nodes: List[TreeNode] = []
    arcs: List[TreeArc] = []
    for lineno, tag, fields in parse_records(text, TREE_HEADER):
        if tag == "tree":
            root = _dec(fields.get("root", "-"))
        elif tag == "node":
            _require(fields, ("id", "kind"), lineno, tag)
            nodes.append(TreeNode(
                id=_dec(fields["id"]) or "",
                kind=_dec(fields["kind"]) or "node",
                label=_dec(fields.get("label", "")) or "",
                vertices=_dec_list(fields.get("vertices", "")),
                edges=_dec_list(fields.get("edges", "")),
                block=_dec(fields.get("block", "-")),
            ))
        elif tag == "arc":
            _require(fields, ("a", "b", "length"), lineno, tag)
            kind = fields.get("kind", "glue")
            if kind not in ("arc", "glue"):
                raise InputError(f"line {lineno}: unknown arc kind '{kind}'")
            extent = fields.get("extent", "-")
            arcs.append(TreeArc(
                a=_dec(fields["a"]) or "",
                b=_dec(fields["b"]) or "",
                length=_parse_fraction(fields["length"], lineno),
                kind=kind,
                edge=_dec(fields.get("edge", "-")),
                extent=None if extent == "-" else _parse_fraction(extent, lineno),
            ))
        # other record types (attachments) ride along
    return StructuralTree(tuple(nodes), tuple(arcs), root)


# -----------------------------
# Trees: DOT
# -----------------------------
def _dot_escape(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"')


def _dot_str(s: str) -> str:
    return f'"{_dot_escape(s)}"'


def _dot_node(n: TreeNode, indent: str) -> str:
    label = _dot_escape(n.id)
    if n.label and n.label != n.id:
        label += "\\n" + _dot_escape(n.label)
    shape = KIND_SHAPES.get(n.kind, "circle")
    return f'{indent}{_dot_str(n.id)} [shape={shape}, label="{label}"];'


def tree_to_dot(tree: StructuralTree, name: str = "T") -> str:
    """DOT with node kinds as shapes, lengths as edge labels; JSJ subtrees grouped by block."""
    tree = tree.sorted()
    lines = [f"graph {_dot_str(name)} {{", '  node [fontname="Helvetica"];']

    blocks: Dict[str, List[TreeNode]] = {}
    for n in tree.nodes:
        if n.block is None:
            lines.append(_dot_node(n, "  "))
        else:
            blocks.setdefault(n.block, []).append(n)
    for i, (block, members) in enumerate(sorted(blocks.items())):
        lines.append(f"  subgraph cluster_{i} {{")
        lines.append(f"    label={_dot_str(block)};")
        lines.extend(_dot_node(n, "    ") for n in members)
        lines.append("  }")

    for arc in tree.arcs:
        style = "solid" if arc.kind == "arc" else "dashed"
        label = str(arc.length) if arc.edge is None else f"{arc.edge} {arc.length}"
        lines.append(f"  {_dot_str(arc.a)} -- {_dot_str(arc.b)} [label={_dot_str(label)}, style={style}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def render_tree(tree: StructuralTree, fmt: OutputFormat = "dot", name: str = "T", extra: Sequence[str] = ()) -> str:
    if fmt == "dot":
        return tree_to_dot(tree, name)
    if fmt == "text":
        return tree_to_text(tree, extra)
    raise InputError(f"unknown output format '{fmt}'")


# -----------------------------
# Other structures
# -----------------------------
def attachment_records(attachments) -> List[str]:
    return [
        format_record("attach", [
            ("cut", _enc(a.cut_point)),
            ("block", _enc(a.block)),
            ("node", _enc(a.node)),
            ("end", "yes" if a.end else "no"),
        ])
        for a in attachments
    ]


def structure_to_text(collection) -> str:
    """Necklaces (with their gaps) and the elements of R."""
    lines = [STRUCTURE_HEADER]
    for n in collection.necklaces:
        sequence = ",".join(f"{kind}:{_enc(name, LIST_SAFE)}" for kind, name in n.sequence)
        lines.append(format_record("necklace", [
            ("id", _enc(n.id)),
            ("vertices", _enc_list(n.vertices)),
            ("edges", _enc_list(n.edges)),
            ("sequence", sequence),
        ]))
        for g in n.gaps:
            lines.append(format_record("gap", [
                ("id", _enc(g.id)),
                ("necklace", _enc(n.id)),
                ("sides", _enc_list(g.boundary)),
                ("vertices", _enc_list(g.vertices)),
                ("edges", _enc_list(g.edges)),
                ("fat", "yes" if g.fat else "no"),
            ]))
    for el in collection.elements:
        lines.append(format_record("element", [
            ("id", _enc(el.id)),
            ("kind", el.kind),
            ("vertices", _enc_list(el.vertices)),
            ("edges", _enc_list(el.edges)),
            ("inseparable", "yes" if el.inseparable else "no"),
            ("cyclic", "yes" if el.cyclic else "no"),
        ]))
    lines.append("end")
    return "\n".join(lines) + "\n"


def action_to_text(report) -> str:
    """Render an ActionReport from the cli/service layer."""
    lines = [ACTION_HEADER]
    lines.append(format_record("map", [("name", _enc(report.name or "-")), ("tree", report.tree)]))
    for src, dst in sorted(report.images):
        lines.append(format_record("image", [("node", _enc(src)), ("to", _enc(dst))]))
    verdict = report.verdict
    witness = "-"
    if verdict.witness is not None:
        w = verdict.witness
        witness = _enc(f"{w.which}:[{w.interval[0]},{w.interval[1]}]->[{w.image[0]},{w.image[1]}]")
    lines.append(format_record("verdict", [
        ("non_nesting", "yes" if verdict.non_nesting else "no"),
        ("exhaustive", "yes" if verdict.exhaustive else "no"),
        ("witness", witness),
    ]))
    c = report.classification
    if c is not None and c.kind == "elliptic" and isinstance(c.fixed, LineFixedSet):
        lines.append(format_record("class", [
            ("type", "elliptic"),
            ("fixed_line", "yes" if c.fixed.whole else "no"),
            ("fixed_point", _frac(c.fixed.point)),
        ]))
    elif c is not None and c.kind == "elliptic":
        fixed = c.fixed
        lines.append(format_record("class", [
            ("type", "elliptic"),
            ("fixed_nodes", _enc_list(fixed.nodes)),
            ("fixed_arcs", ",".join(sorted("|".join(_enc(n, LIST_SAFE) for n in sorted(k)) for k in fixed.arcs))),
            ("fixed_points", ",".join(_enc(p.label, LIST_SAFE) for p in fixed.points)),
        ]))
    elif c is not None:
        lines.append(format_record("class", [
            ("type", "hyperbolic"),
            ("start", str(c.axis.start)),
            ("translation", str(c.axis.translation)),
        ]))
    lines.append("end")
    return "\n".join(lines) + "\n"
