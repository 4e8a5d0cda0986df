import pytest

from peano_trees.corpus import load_automorphisms
from peano_trees.cutpoint import build_cutpoint_tree, canonical_lengths
from peano_trees.lemmas import (
    PropertyResult,
    action_properties,
    combined_properties,
    command_suite,
    cutpair_properties,
    cutpoint_properties,
    decomposition_digest,
    failures,
    replay_canonical,
    results_frame,
    run_check,
    synthetic_properties,
)
from peano_trees.models import InputError, InvariantViolation, PreconditionError


def statuses(results):
    return {r.prop: r.status for r in results}


class TestRunCheck:
    def test_outcomes(self):
        def precondition():
            raise PreconditionError("not applicable")

        def violation():
            raise InvariantViolation("broken")

        assert run_check("g", "p", lambda: None).status == "PASS"
        assert run_check("g", "p", lambda: "counterexample").detail == "counterexample"
        assert run_check("g", "p", precondition).status == "SKIP"
        failed = run_check("g", "p", violation)
        assert failed.failed
        assert failed.detail == "broken"


class TestCutPointProperties:
    @pytest.mark.parametrize("name", ["barbell", "star", "path3", "two_k4", "theta_pendant"])
    def test_corpus_graphs_pass(self, graph, name):
        results = cutpoint_properties(graph(name), 3)
        assert failures(results) == []
        assert statuses(results)["P:axioms"] == "PASS"
        assert statuses(results)["metric:replay"] == "PASS"

    def test_replay_matches_the_schedule(self, graph):
        tree = build_cutpoint_tree(graph("star"))
        assert replay_canonical(tree) == canonical_lengths(tree)
        assert replay_canonical(tree, "s2") == canonical_lengths(tree, "s2")


class TestCutPairProperties:
    @pytest.mark.parametrize("name", ["c5", "theta", "k4"])
    def test_blocks_pass(self, graph, name):
        X = graph(name)
        results = cutpair_properties(X, 3, load_automorphisms(name, X))
        assert failures(results) == []
        assert statuses(results)["R:axioms"] == "PASS"
        assert statuses(results)["circle:equivariance"] == "PASS"

    def test_graphs_with_cut_points_are_checked_per_block(self, graph):
        results = cutpair_properties(graph("barbell"), 3)
        assert failures(results) == []
        assert "circle:equivariance" not in statuses(results)
        assert statuses(results)["is_circle"] == "PASS"

    def test_no_blocks_skips(self, graph):
        results = cutpair_properties(graph("star"), 3)
        assert statuses(results)["R:axioms"] == "SKIP"
        assert statuses(results)["cint"] == "SKIP"


class TestCombinedProperties:
    def test_theta_pendant(self, graph):
        results = statuses(combined_properties(graph("theta_pendant"), 3))
        assert results["combined:tree"] == "PASS"
        # the theta block has a three-armed JSJ tree
        assert results["combined:circles"] == "SKIP"
        assert results["combined:count"] == "PASS"

    def test_circle_blocks_keep_the_shape(self, graph):
        results = statuses(combined_properties(graph("barbell"), 3))
        assert results["combined:circles"] == "PASS"


class TestActionProperties:
    @pytest.mark.parametrize("name", ["barbell", "k4", "theta", "two_k4"])
    def test_automorphisms_act_elliptically(self, graph, name):
        X = graph(name)
        results = action_properties(X, 3, load_automorphisms(name, X), 3)
        assert failures(results) == []
        assert statuses(results)["actions:elliptic"] == "PASS"

    def test_without_automorphisms(self, graph):
        results = statuses(action_properties(graph("path3"), 3, (), 3))
        assert set(results.values()) == {"SKIP"}

    def test_synthetic_maps(self):
        results = synthetic_properties(3)
        assert [r.status for r in results] == ["PASS"] * 4
        assert {r.graph for r in results} == {"synthetic"}


class TestStability:
    @pytest.mark.parametrize("name", ["barbell", "theta"])
    def test_digest_does_not_depend_on_the_grid(self, graph, name):
        X = graph(name)
        assert decomposition_digest(X, 3) == decomposition_digest(X, 5)


class TestSuites:
    def test_off_runs_nothing(self, graph):
        assert command_suite("cutpoint-tree", graph("arc"), 3, "off") == []

    def test_full_adds_stability(self, graph):
        props = statuses(command_suite("cutpoint-tree", graph("path3"), 3, "full"))
        assert props["stability"] == "PASS"
        assert props["representatives"] == "PASS"

    def test_unknown_command(self, graph):
        with pytest.raises(InputError):
            command_suite("draw", graph("arc"), 3, "lemmas")


class TestResultsFrame:
    def test_matrix_layout(self):
        results = [
            PropertyResult("b", "P:axioms", "PASS"),
            PropertyResult("b", "cint", "SKIP"),
            PropertyResult("a", "P:axioms", "FAIL", "axiom 2"),
        ]
        frame = results_frame(results)
        assert list(frame.index) == ["b", "a"]
        assert list(frame.columns) == ["P:axioms", "cint"]
        assert frame.loc["b", "cint"] == "-"
        assert frame.loc["a", "cint"] == "-"
        assert frame.loc["a", "P:axioms"] == "FAIL"

    def test_empty(self):
        assert results_frame([]).empty
