import pytest

from peano_trees.combined import attachment_node, block_closure, build_combined_tree
from peano_trees.cutpair import build_jsj_tree
from peano_trees.models import InputError


class TestBlockClosure:
    def test_barbell_triangle(self, graph):
        B = block_closure(graph("barbell"), "class:u2")
        assert B.vertices == ("u1", "u2", "u3")
        assert [e.id for e in B.edges] == ["a1", "a2", "a3"]

    def test_singleton_class_has_no_block(self, graph):
        with pytest.raises(InputError):
            block_closure(graph("star"), "class:l1")


class TestAttachmentNode:
    def test_most_central_element_wins(self, graph):
        jsj = build_jsj_tree(graph("k4"))
        assert attachment_node(jsj, "u") == "insep:u,v,w,x"

    def test_vertex_outside_the_tree(self, graph):
        jsj = build_jsj_tree(graph("c5"))
        assert attachment_node(jsj, "nowhere") is None


class TestCombinedTree:
    def test_two_k4_glues_two_spiders_at_w(self, graph):
        combined = build_combined_tree(graph("two_k4"))
        assert combined.blocks == ("class:a1", "class:b1")
        nodes = [a.node for a in combined.attachments]
        assert nodes == ["class:a1/insep:a1,a2,a3,w", "class:b1/insep:b1,b2,b3,w"]
        tree = combined.tree
        assert tree.has_arc("class:a1/insep:a1,a2,a3,w", "cut:w")
        assert tree.graph.degree["cut:w"] == 2
        # 13 nodes per block plus the cut vertex
        assert len(tree.nodes) == 27

    def test_theta_pendant_attachments(self, graph):
        combined = build_combined_tree(graph("theta_pendant"))
        by_cut = {a.cut_point: a for a in combined.attachments}
        assert by_cut["a"].node == "class:b/pair:a,b"
        assert by_cut["t1"].node == "class:t2/necklace:t12,t23,t31"
        assert not any(a.end for a in combined.attachments)
        bridge = combined.tree.arc("cut:a", "cut:t1")
        assert bridge.edge == "br"

    def test_block_nodes_carry_their_class(self, graph):
        tree = build_combined_tree(graph("barbell")).tree
        triangle = tree.node("class:u2/necklace:a1,a2,a3")
        assert triangle.block == "class:u2"
        assert triangle.kind == "necklace"
        assert tree.node("cut:u1").block is None

    def test_without_cut_points_it_is_the_jsj_tree(self, graph):
        combined = build_combined_tree(graph("theta"))
        assert combined.blocks == ("class:a",)
        assert combined.attachments == ()
        assert len(combined.tree.nodes) == 4

    def test_bridges_only(self, graph):
        combined = build_combined_tree(graph("star"))
        assert combined.blocks == ()
        assert combined.tree.node_ids == ("class:l1", "class:l2", "class:l3", "cut:o")
