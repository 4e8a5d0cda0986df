import pytest

from peano_trees.combined import build_combined_tree
from peano_trees.cutpair import build_R
from peano_trees.cutpoint import build_cutpoint_tree, metrize
from peano_trees.export import (
    TREE_HEADER,
    attachment_records,
    parse_records,
    render_tree,
    structure_to_text,
    tree_from_text,
    tree_to_dot,
    tree_to_text,
)
from peano_trees.models import InputError


class TestTreeText:
    def test_barbell_records(self, graph):
        text = tree_to_text(metrize(build_cutpoint_tree(graph("barbell")), "geometric"))
        lines = text.splitlines()
        assert lines[0] == TREE_HEADER
        assert lines[-1] == "end"
        assert "arc a=cut:u1 b=cut:v1 length=2 kind=arc edge=br extent=2" in lines
        assert "arc a=class:u2 b=cut:u1 length=1 kind=glue edge=- extent=-" in lines

    def test_parse_back(self, graph):
        combined = build_combined_tree(graph("theta_pendant"))
        tree = metrize(combined.tree)
        text = tree_to_text(tree, attachment_records(combined.attachments))
        assert "attach cut=t1 block=class:t2 node=class:t2/necklace:t12,t23,t31 end=no" in text
        assert tree_from_text(text) == tree.sorted()

    def test_reserved_characters_are_escaped(self, graph):
        from peano_trees.pretree import StructuralTree, TreeNode
        tree = StructuralTree((TreeNode("odd id", "node", "-"),))
        text = tree_to_text(tree)
        assert "id=odd%20id" in text
        assert "label=%2D" in text
        assert tree_from_text(text) == tree

    @pytest.mark.parametrize("text, message", [
        ("tree root=-\nend\n", "expected header"),
        (f"{TREE_HEADER}\nnode id=a kind=node\n", "missing 'end'"),
        (f"{TREE_HEADER}\nnode id=a id=b\nend\n", "repeated field"),
        (f"{TREE_HEADER}\nnode id\nend\n", "malformed field"),
        (f"{TREE_HEADER}\nend\nnode id=a\n", "content after 'end'"),
        (f"{TREE_HEADER}\nnode kind=node\nend\n", "lacks id"),
        (f"{TREE_HEADER}\nnode id=a kind=node\nnode id=b kind=node\narc a=a b=b length=x\nend\n", "invalid number"),
    ])
    def test_malformed_text(self, text, message):
        with pytest.raises(InputError) as exc:
            tree_from_text(text)
        assert message in str(exc.value)

    def test_parse_records_keeps_line_numbers(self):
        records = parse_records(f"{TREE_HEADER}\n\nnode id=a\nend\n", TREE_HEADER)
        assert records == [(3, "node", {"id": "a"})]


class TestDot:
    def test_bridge_is_solid_and_labelled(self, graph):
        dot = tree_to_dot(metrize(build_cutpoint_tree(graph("barbell")), "geometric"), "barbell")
        assert dot.startswith('graph "barbell" {')
        assert '"cut:u1" -- "cut:v1" [label="br 2", style=solid];' in dot
        assert '"class:u2" -- "cut:u1" [label="1", style=dashed];' in dot
        assert '"cut:u1" [shape=diamond' in dot

    def test_blocks_are_clustered(self, graph):
        dot = tree_to_dot(build_combined_tree(graph("two_k4")).tree)
        assert "subgraph cluster_0 {" in dot
        assert "subgraph cluster_1 {" in dot
        assert 'label="class:a1";' in dot

    def test_render_tree_formats(self, graph):
        tree = build_cutpoint_tree(graph("arc"))
        assert render_tree(tree, "text").startswith(TREE_HEADER)
        assert render_tree(tree, "dot").startswith("graph")
        with pytest.raises(InputError):
            render_tree(tree, "svg")


class TestStructureText:
    def test_theta_structure(self, graph):
        text = structure_to_text(build_R(graph("theta")).collection)
        assert "necklace id=necklace:e1 vertices=a,b edges=e1 sequence=vertex:a,edge:e1,vertex:b,gap:gap:a|b" in text
        assert "gap id=gap:a|b necklace=necklace:e1 sides=a,b vertices= edges=e2,e3 fat=yes" in text
        assert "element id=pair:a,b kind=pair vertices=a,b edges= inseparable=yes cyclic=no" in text
        assert text.endswith("end\n")
