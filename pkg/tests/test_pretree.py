from fractions import Fraction

import pytest

from peano_trees.models import InputError, InvariantViolation
from peano_trees.pretree import (
    BetweennessTable,
    PretreeAxiomError,
    StructuralTree,
    TreeArc,
    TreeNode,
    assemble_tree,
    check_nested_unions,
    check_subset_property,
    classify_nodes,
    interval,
    neighborhood,
    verify_linear_order,
    verify_pretree_axioms,
)


def path_table(*names):
    """Betweenness of points listed in order along a line."""
    index = {n: i for i, n in enumerate(names)}
    return BetweennessTable.from_predicate(
        names, lambda x, z, y: min(index[x], index[y]) < index[z] < max(index[x], index[y])
    )


def star_table():
    """Centre o with leaves a, b, c."""
    return BetweennessTable.from_predicate(
        ("a", "b", "c", "o"), lambda x, z, y: z == "o" and x != "o" and y != "o"
    )


class TestAxioms:
    def test_path_is_a_pretree(self):
        report = verify_pretree_axioms(path_table("a", "b", "c", "d"))
        assert report.ok
        assert [r.axiom for r in report.results] == [1, 2, 3, 4]

    def test_asymmetric_triple_breaks_axiom_two(self):
        table = BetweennessTable(("a", "b", "c"), frozenset({("a", "b", "c")}))
        report = verify_pretree_axioms(table)
        assert not report.ok
        failed = [r for r in report.results if not r.passed]
        assert failed[0].axiom == 2
        assert failed[0].witness == ("a", "b", "c")
        assert "axiom 2" in report.describe()

    def test_endpoint_inside_its_own_interval_breaks_axiom_one(self):
        table = BetweennessTable(("a", "b"), frozenset({("a", "a", "b")}))
        report = verify_pretree_axioms(table)
        failed = [r for r in report.results if not r.passed]
        assert failed[0].axiom == 1
        assert failed[0].witness == ("a", "a", "b")

    def test_unknown_nodes_are_rejected(self):
        with pytest.raises(InputError):
            BetweennessTable(("a", "b"), frozenset({("a", "z", "b")}))

    def test_empty_ground(self):
        with pytest.raises(InputError):
            verify_pretree_axioms(BetweennessTable(()))


class TestIntervals:
    def test_members_follow_the_order_from_x(self):
        table = path_table("a", "b", "c", "d")
        assert interval(table, "d", "a", "closed").members == ("d", "c", "b", "a")
        assert interval(table, "a", "d", "open").members == ("b", "c")
        assert interval(table, "a", "d", "half-open").members == ("a", "b", "c")

    def test_order_from_x_ignores_ground_order(self):
        table = path_table("c", "a", "d", "b", "e")
        assert interval(table, "e", "c", "closed").members == ("e", "b", "d", "a", "c")
        assert verify_linear_order(table, "e", "c") is None

    def test_degenerate_interval(self):
        table = path_table("a", "b")
        assert interval(table, "a", "a", "closed").members == ("a",)
        assert interval(table, "a", "a", "open").members == ()

    def test_unknown_kind(self):
        with pytest.raises(InputError):
            interval(path_table("a", "b"), "a", "b", "sideways")

    def test_linear_order_subset_and_nesting(self):
        table = star_table()
        assert verify_linear_order(table, "a", "b") is None
        assert check_subset_property(table) is None
        assert check_nested_unions(table) is None


class TestAssembly:
    def test_star_assembles_to_a_star(self):
        tree = assemble_tree(star_table())
        assert sorted(tuple(sorted(a.key)) for a in tree.arcs) == [("a", "o"), ("b", "o"), ("c", "o")]
        assert classify_nodes(star_table()).terminal == ("a", "b", "c")

    def test_lengths_and_records(self):
        nodes = {"b": TreeNode("b", "cutpoint", "b")}
        tree = assemble_tree(path_table("a", "b", "c"), lengths=lambda a, b: Fraction(1, 2), nodes=nodes)
        assert tree.node("b").kind == "cutpoint"
        assert tree.total_length == 1

    def test_non_pretree_is_refused(self):
        bad = BetweennessTable(("a", "b", "c"), frozenset({("a", "b", "c")}))
        with pytest.raises(PretreeAxiomError):
            assemble_tree(bad)

    def test_neighborhood_stops_at_the_removed_set(self):
        tree = assemble_tree(path_table("a", "b", "c", "d"))
        hood = neighborhood(tree, "a", {"c"})
        assert hood.nodes == {"a", "b"}
        assert frozenset(("b", "c")) in hood.arcs
        assert neighborhood(tree, "c", {"c"}).nodes == frozenset()


class TestStructuralTree:
    def test_cycle_is_rejected(self):
        nodes = tuple(TreeNode(n) for n in "abc")
        arcs = (TreeArc("a", "b"), TreeArc("b", "c"), TreeArc("c", "a"))
        with pytest.raises(InvariantViolation):
            StructuralTree(nodes, arcs)

    def test_nonpositive_length_is_rejected(self):
        with pytest.raises(InvariantViolation):
            StructuralTree((TreeNode("a"), TreeNode("b")), (TreeArc("a", "b", Fraction(0)),))

    def test_sorted_orients_arcs(self):
        tree = StructuralTree((TreeNode("b"), TreeNode("a")), (TreeArc("b", "a"),)).sorted()
        assert tree.node_ids == ("a", "b")
        assert (tree.arcs[0].a, tree.arcs[0].b) == ("a", "b")

    def test_path_and_betweenness(self):
        tree = assemble_tree(path_table("a", "b", "c"))
        assert tree.path("a", "c") == ["a", "b", "c"]
        assert tree.between("a", "b", "c")
        assert not tree.between("a", "c", "b")
        with pytest.raises(InputError):
            tree.path("a", "zz")
