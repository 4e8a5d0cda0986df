from fractions import Fraction

import pytest

from peano_trees.actions import (
    DyadicEndTree,
    Elliptic,
    FiniteTreeMap,
    Hyperbolic,
    LineMap,
    PeriodicLine,
    SpineSwap,
    SwapFamily,
    TreePoint,
    classify,
    commutator,
    fixed_end,
    fixed_set,
    global_fixed_point,
    in_segment,
    is_non_nesting,
    tree_distance,
)
from peano_trees.cutpoint import build_cutpoint_tree, induced_map
from peano_trees.models import InputError, PreconditionError

HALF = Fraction(1, 2)


class TestTreePoints:
    def test_arc_points_are_oriented(self):
        p = TreePoint.on_arc("b", "a", Fraction(1, 4))
        assert p.arc == ("a", "b")
        assert p.s == Fraction(3, 4)
        assert p.label == "a~b@3/4"

    def test_arc_ends_are_nodes(self):
        assert TreePoint.on_arc("a", "b", 0) == TreePoint.at("a")
        assert TreePoint.on_arc("a", "b", 1) == TreePoint.at("b")

    def test_distance_and_segments(self, graph):
        tree = build_cutpoint_tree(graph("barbell"))
        mid = TreePoint.on_arc("cut:u1", "cut:v1", HALF)
        assert tree_distance(tree, TreePoint.at("class:u2"), mid) == Fraction(3, 2)
        assert in_segment(tree, mid, TreePoint.at("class:u2"), TreePoint.at("class:v2"))
        assert not in_segment(tree, TreePoint.at("class:v2"), TreePoint.at("class:u2"), mid)


class TestFiniteMaps:
    def test_mapping_must_be_a_tree_automorphism(self, graph):
        tree = build_cutpoint_tree(graph("path3"))
        with pytest.raises(InputError):
            FiniteTreeMap.from_dict(tree, {"class:a": "cut:b", "cut:b": "class:a", "class:c": "class:c"})

    def test_barbell_swap_fixes_the_bridge_midpoint(self, automorphism):
        X, g = automorphism("barbell", "swap")
        m = induced_map(X, g)
        assert is_non_nesting(m).non_nesting
        c = classify(m)
        assert isinstance(c, Elliptic)
        assert c.fixed.nodes == frozenset()
        assert [p.label for p in c.fixed.points] == ["cut:u1~cut:v1@1/2"]

    def test_path_flip_fixes_the_cut_vertex(self, automorphism):
        X, g = automorphism("path3", "flip")
        fixed = fixed_set(induced_map(X, g))
        assert fixed.nodes == {"cut:b"}
        assert fixed.points == ()

    def test_star_rotation(self, automorphism):
        X, g = automorphism("star", "rotate")
        m = induced_map(X, g)
        assert m.node_map["class:l1"] == "class:l2"
        assert global_fixed_point([m]).point == TreePoint.at("cut:o")

    def test_composition_and_inverse(self, automorphism):
        X, g = automorphism("star", "rotate")
        m = induced_map(X, g)
        assert m.compose(m.inverse()).is_identity
        assert m.compose(m).compose(m).is_identity


class TestLineMaps:
    def test_shift_is_hyperbolic_by_the_period(self):
        line = PeriodicLine((Fraction(1), HALF))
        c = classify(LineMap.shift(line))
        assert isinstance(c, Hyperbolic)
        assert c.axis.translation == Fraction(3, 2)
        assert c.axis.segment == (0, Fraction(3, 2))

    def test_reflection_fixes_its_centre(self):
        c = classify(LineMap.reflection(PeriodicLine(), 3))
        assert isinstance(c, Elliptic)
        assert c.fixed.point == 3

    def test_identity_fixes_the_line(self):
        c = classify(LineMap(PeriodicLine()))
        assert c.fixed.whole

    def test_contraction_nests(self):
        g = LineMap(PeriodicLine(), HALF, Fraction(0), "contract")
        verdict = is_non_nesting(g)
        assert not verdict.non_nesting
        assert not verdict.exhaustive
        with pytest.raises(PreconditionError):
            classify(g)

    def test_periodic_nodes(self):
        line = PeriodicLine((Fraction(1), HALF))
        assert line.nodes_in(Fraction(0), Fraction(3)) == [0, 1, Fraction(3, 2), Fraction(5, 2), 3]

    def test_degenerate_maps(self):
        with pytest.raises(InputError):
            LineMap(PeriodicLine(), Fraction(0))
        with pytest.raises(InputError):
            PeriodicLine(())


class TestGroups:
    def test_reflections_with_disjoint_fixed_points(self):
        line = PeriodicLine()
        r0, r1 = LineMap.reflection(line, 0), LineMap.reflection(line, 1)
        result = global_fixed_point([r0, r1])
        assert result.point is None
        cert = result.certificate
        assert (cert.i, cert.j) == (0, 1)
        assert isinstance(cert.classification, Hyperbolic)
        assert commutator(r0, r1).apply(0) == -4

    def test_common_fixed_point(self):
        line = PeriodicLine()
        result = global_fixed_point([LineMap.reflection(line, 2), LineMap(line)])
        assert result.point == 2

    def test_hyperbolic_generator_is_refused(self):
        with pytest.raises(PreconditionError):
            global_fixed_point([LineMap.shift(PeriodicLine())])


class TestSpineSwaps:
    def test_window_shape(self):
        tree = DyadicEndTree().window(2)
        assert len(tree.nodes) == 7
        assert tree.root == "2.0"

    def test_swap_is_elliptic(self):
        c = classify(SpineSwap(2), bound=3)
        assert isinstance(c, Elliptic)
        assert {"3.0", "2.0"} <= c.fixed.nodes
        assert "1.0" not in c.fixed.nodes

    def test_constant_family_has_a_fixed_point(self):
        assert fixed_end(SwapFamily(1, 0), bound=3) is None

    def test_growing_family_fixes_the_spine_end(self):
        end = fixed_end(SwapFamily(1, 1), bound=3)
        assert end.status == "end"
        assert end.escaping == ((1, 0), (2, 0), (3, 0))

    def test_growth_along_any_step(self):
        end = fixed_end(SwapFamily(2, 2), bound=3)
        assert end.status == "end"
        assert end.escaping == ((2, 0), (4, 0), (6, 0))

    def test_one_member_cannot_show_growth(self):
        assert fixed_end(SwapFamily(1, 1), bound=1).status == "inconclusive"
        assert fixed_end(SwapFamily(1, 0), bound=1).status == "inconclusive"

    def test_invalid_levels(self):
        with pytest.raises(InputError):
            SpineSwap(0)
        with pytest.raises(InputError):
            SwapFamily(0, 1)
