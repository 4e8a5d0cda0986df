from fractions import Fraction

import pytest

from peano_trees.continuum import (
    SampleGrid,
    components_after_removal,
    identity_automorphism,
    is_cut_pair,
    is_cut_point,
    parse_automorphism,
    parse_graph,
    separates,
)
from peano_trees.models import GraphParseError, InputError, Point


class TestParseGraph:
    def test_vertices_and_edges_are_sorted(self):
        X = parse_graph("v b\nv a\ne z a b\ne y b a 3/2\n", name="pair")
        assert X.vertices == ("a", "b")
        assert [e.id for e in X.edges] == ["y", "z"]
        assert X.edge("y").length == Fraction(3, 2)
        assert X.edge("z").length == 1
        assert X.name == "pair"

    def test_comments_and_blank_lines_are_ignored(self):
        X = parse_graph("# loop\n\nv a   # the only vertex\ne l a a\n")
        assert X.edge("l").is_loop
        assert X.degree("a") == 2

    def test_disconnected_graph_names_its_components(self):
        with pytest.raises(GraphParseError) as exc:
            parse_graph("v a\nv b\nv c\ne ab a b\n")
        assert str(exc.value) == "graph is disconnected: components {a, b} and {c}"

    def test_duplicate_identifier_reports_both_lines(self):
        with pytest.raises(GraphParseError) as exc:
            parse_graph("v a\nv b\ne a a b\n")
        assert exc.value.line == 3
        assert "first declared on line 1" in str(exc.value)

    @pytest.mark.parametrize("text, line", [
        ("v a\nv b\ne x a b 0\n", 3),
        ("v a\nv b\ne x a b -1\n", 3),
        ("v a\nv b\ne x a b 1/0\n", 3),
        ("v a\nw b\n", 2),
        ("v a\ne x a q\n", 2),
    ])
    def test_malformed_lines(self, text, line):
        with pytest.raises(GraphParseError) as exc:
            parse_graph(text)
        assert exc.value.line == line

    def test_empty_graph(self):
        with pytest.raises(GraphParseError):
            parse_graph("# nothing here\n")


class TestAutomorphisms:
    def test_unlisted_edges_follow_the_vertex_map(self, graph):
        X = graph("k4")
        g = parse_automorphism("pv u v\npv v u\n", X, name="swap")
        assert g.edges["uw"] == "vw"
        assert g.edges["wx"] == "wx"
        assert "uv" in g.reversed_edges
        assert g.name == "swap"

    def test_parallel_edges_default_to_themselves(self, graph):
        X = graph("theta")
        g = parse_automorphism("pv a b\npv b a\n", X)
        assert g.edges == {"e1": "e1", "e2": "e2", "e3": "e3"}
        assert g.reversed_edges == frozenset({"e1", "e2", "e3"})

    def test_explicit_edge_lines(self, automorphism):
        X, g = automorphism("theta", "cycle")
        assert g.edges["e1"] == "e2"
        assert g.vertices == {"a": "a", "b": "b"}
        assert g.apply(Point.on_edge("e3", Fraction(1, 3))) == Point.on_edge("e1", Fraction(1, 3))

    def test_reversed_edge_maps_parameters(self, automorphism):
        X, g = automorphism("arc", "flip")
        assert g.apply(Point.on_edge("e1", Fraction(1, 4))) == Point.on_edge("e1", Fraction(3, 4))

    def test_unknown_vertex(self, graph):
        with pytest.raises(GraphParseError):
            parse_automorphism("pv a zz\n", graph("arc"))

    def test_non_bijection(self, graph):
        with pytest.raises(InputError):
            parse_automorphism("pv l1 l2\n", graph("star"))

    def test_incidence_is_checked(self, graph):
        with pytest.raises(InputError):
            parse_automorphism("pv c1 c3\npv c3 c1\n", graph("c5"))

    def test_identity(self, graph):
        assert identity_automorphism(graph("barbell")).is_identity


class TestSeparation:
    def test_cut_points(self, graph):
        X = graph("barbell")
        assert is_cut_point(X, Point.at_vertex("u1"))
        assert not is_cut_point(X, Point.at_vertex("u2"))
        assert is_cut_point(X, Point.on_edge("br", Fraction(1, 2)))
        assert not is_cut_point(X, Point.on_edge("a1", Fraction(1, 2)))

    def test_circle_has_no_cut_points_but_every_pair_cuts(self, graph):
        X = graph("c5")
        assert not is_cut_point(X, Point.at_vertex("c1"))
        assert is_cut_pair(X, Point.at_vertex("c1"), Point.at_vertex("c3"))
        assert is_cut_pair(X, Point.at_vertex("c1"), Point.on_edge("f1", Fraction(1, 2)))

    def test_cut_pairs_of_k4_are_edge_ends(self, graph):
        X = graph("k4")
        assert is_cut_pair(X, Point.at_vertex("u"), Point.at_vertex("v"))
        assert not is_cut_pair(X, Point.on_edge("uv", Fraction(1, 2)), Point.on_edge("wx", Fraction(1, 2)))

    def test_cut_pair_needs_distinct_points(self, graph):
        with pytest.raises(InputError):
            is_cut_pair(graph("c5"), Point.at_vertex("c1"), Point.at_vertex("c1"))

    def test_components_after_removal(self, graph):
        comps = components_after_removal(graph("theta"), {Point.at_vertex("a"), Point.at_vertex("b")})
        assert len(comps) == 3
        assert {c.label for c in comps} == {"{e1(0,1)}", "{e2(0,1)}", "{e3(0,1)}"}

    def test_separates_with_witness(self, graph):
        X = graph("c5")
        sep = separates(X, {Point.at_vertex("c1"), Point.at_vertex("c3")}, Point.at_vertex("c2"), Point.at_vertex("c4"))
        assert sep
        Y, Z = sep.witness
        assert "c2" in Y.vertices and "c4" in Z.vertices
        assert Y.vertices & Z.vertices == {"c1", "c3"}

    def test_same_side_is_not_separated(self, graph):
        X = graph("c5")
        sep = separates(X, {Point.at_vertex("c1"), Point.at_vertex("c3")}, Point.at_vertex("c4"), Point.at_vertex("c5"))
        assert not sep
        assert sep.witness is None

    def test_separated_points_must_be_outside(self, graph):
        with pytest.raises(InputError):
            separates(graph("c5"), {Point.at_vertex("c1")}, Point.at_vertex("c1"), Point.at_vertex("c2"))


class TestSampleGrid:
    def test_points_per_edge(self, graph):
        grid = SampleGrid.build(graph("arc"), 3)
        assert [p.t for p in grid.on_edge("e1")] == [Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)]
        assert len(grid.vertices) == 2

    def test_granularity_must_be_positive(self, graph):
        with pytest.raises(InputError):
            SampleGrid.build(graph("arc"), 0)

    def test_edge_parameter_range(self):
        with pytest.raises(InputError):
            Point.on_edge("e", 1)
