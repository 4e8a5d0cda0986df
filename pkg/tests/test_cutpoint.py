from fractions import Fraction

import pytest

from peano_trees.cutpoint import (
    analyze,
    betweenness_P,
    build_cutpoint_tree,
    build_P,
    canonical_lengths,
    check_representatives,
    cut_points,
    induced_map,
    metric_base,
    metrize,
)
from peano_trees.models import InputError, Point
from peano_trees.pretree import check_nested_unions, interval, verify_linear_order


class TestCutPoints:
    def test_barbell(self, graph):
        cps = cut_points(graph("barbell"))
        assert cps.vertices == {"u1", "v1"}
        assert cps.bridges == {"br"}
        assert cps.labels == ("u1", "v1", "br")

    def test_arc_interior_is_all_cut_points(self, graph):
        cps = cut_points(graph("arc"))
        assert cps.vertices == frozenset()
        assert cps.bridges == {"e1"}

    @pytest.mark.parametrize("name", ["c5", "theta", "k4"])
    def test_blocks_have_none(self, graph, name):
        assert cut_points(graph(name)).is_empty

    def test_two_k4_share_a_cut_vertex(self, graph):
        cps = cut_points(graph("two_k4"))
        assert cps.vertices == {"w"}
        assert cps.bridges == frozenset()


class TestClasses:
    def test_barbell_classes(self, graph):
        analysis = analyze(graph("barbell"))
        assert [c.id for c in analysis.classes] == ["class:u2", "class:v2"]
        u = analysis.class_by_id("class:u2")
        assert u.vertices == {"u2", "u3"}
        assert u.edges == {"a1", "a2", "a3"}
        assert u.adjacent_cut_vertices == {"u1"}
        assert not u.singleton

    def test_leaves_are_singleton_classes(self, graph):
        analysis = analyze(graph("star"))
        assert [c.id for c in analysis.classes] == ["class:l1", "class:l2", "class:l3"]
        assert all(c.singleton for c in analysis.classes)

    def test_unknown_class(self, graph):
        with pytest.raises(InputError):
            analyze(graph("star")).class_by_id("class:o")

    def test_representatives_are_interchangeable(self, graph):
        assert check_representatives(graph("barbell")) is None
        assert check_representatives(graph("two_k4")) is None


class TestP:
    def test_betweenness_by_points_and_ids(self, graph):
        X = graph("barbell")
        assert betweenness_P(X, Point.at_vertex("u2"), Point.at_vertex("u1"), Point.at_vertex("v2"))
        assert betweenness_P(X, "class:u2", "cut:v1", "class:v2")
        assert not betweenness_P(X, "class:u2", "class:v2", "cut:u1")

    def test_P_is_a_pretree(self, graph):
        structure = build_P(graph("path3"))
        assert "cut:b" in structure.table.ground
        assert structure.table.between("class:a", "cut:b", "class:c")

    def test_arc_interval_runs_from_its_first_endpoint(self, graph):
        table = analyze(graph("arc"), 3).table
        members = interval(table, "class:b", "class:a", "closed").members
        assert members == ("class:b", "cut:e1@3/4", "cut:e1@1/2", "cut:e1@1/4", "class:a")
        assert verify_linear_order(table, "class:b", "class:a") is None
        assert check_nested_unions(table) is None


class TestCutPointTree:
    def test_barbell_tree(self, graph):
        tree = build_cutpoint_tree(graph("barbell"))
        assert tree.node_ids == ("class:u2", "class:v2", "cut:u1", "cut:v1")
        bridge = tree.arc("cut:u1", "cut:v1")
        assert bridge.kind == "arc"
        assert bridge.edge == "br"
        assert bridge.extent == 2
        assert tree.arc("class:u2", "cut:u1").kind == "glue"
        assert tree.path("class:u2", "class:v2") == ["class:u2", "cut:u1", "cut:v1", "class:v2"]

    def test_arc_collapses_to_one_tree_arc(self, graph):
        tree = build_cutpoint_tree(graph("arc"))
        assert tree.node_ids == ("class:a", "class:b")
        assert tree.arcs[0].edge == "e1"

    def test_block_is_a_single_node(self, graph):
        tree = build_cutpoint_tree(graph("c5"))
        assert tree.node_ids == ("class:c1",)
        assert tree.arcs == ()

    def test_two_k4(self, graph):
        tree = build_cutpoint_tree(graph("two_k4"))
        assert tree.node_ids == ("class:a1", "class:b1", "cut:w")
        assert tree.node("cut:w").kind == "cutpoint"


class TestMetrics:
    def test_canonical_barbell(self, graph):
        tree = metrize(build_cutpoint_tree(graph("barbell")), "canonical")
        assert tree.arc("cut:u1", "cut:v1").length == 1
        assert tree.total_length == 3

    def test_geometric_barbell(self, graph):
        tree = metrize(build_cutpoint_tree(graph("barbell")), "geometric")
        assert tree.arc("cut:u1", "cut:v1").length == 2
        assert tree.total_length == 4

    def test_canonical_star_halves(self, graph):
        tree = build_cutpoint_tree(graph("star"))
        assert metric_base(tree) == "cut:o"
        lengths = canonical_lengths(tree)
        assert lengths[frozenset(("cut:o", "class:l1"))] == 1
        assert lengths[frozenset(("cut:o", "class:l2"))] == Fraction(1, 2)
        assert lengths[frozenset(("cut:o", "class:l3"))] == Fraction(1, 4)

    def test_seed_by_bridge_id(self, graph):
        tree = build_cutpoint_tree(graph("star"))
        assert metric_base(tree, "s1") == "class:l1"
        lengths = canonical_lengths(tree, "s1")
        assert lengths[frozenset(("cut:o", "class:l1"))] == 1
        assert lengths[frozenset(("cut:o", "class:l2"))] == Fraction(1, 2)

    def test_arc_canonical_total(self, graph):
        assert metrize(build_cutpoint_tree(graph("arc"))).total_length == 1

    def test_unknown_seed(self, graph):
        with pytest.raises(InputError):
            metric_base(build_cutpoint_tree(graph("star")), "nowhere")

    def test_unknown_mode(self, graph):
        with pytest.raises(InputError):
            metrize(build_cutpoint_tree(graph("star")), "taxicab")


class TestInducedMaps:
    def test_barbell_swap_exchanges_the_sides(self, automorphism):
        X, g = automorphism("barbell", "swap")
        m = induced_map(X, g)
        assert m.node_map == {
            "class:u2": "class:v2",
            "class:v2": "class:u2",
            "cut:u1": "cut:v1",
            "cut:v1": "cut:u1",
        }

    def test_twist_fixes_the_tree(self, automorphism):
        X, g = automorphism("barbell", "twist")
        assert induced_map(X, g).is_identity
