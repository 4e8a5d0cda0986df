import pytest
from click.testing import CliRunner

from peano_trees.cli import EXIT_HAS_CUT_POINTS, EXIT_INPUT, EXIT_OK, cli
from peano_trees.export import ACTION_HEADER, TREE_HEADER
from peano_trees.models import InputError
from peano_trees.pipeline import load_config


def invoke(*args):
    return CliRunner().invoke(cli, list(args))


class TestTreeCommands:
    def test_cutpoint_tree_from_the_corpus(self):
        result = invoke("cutpoint-tree", "barbell", "--format", "text")
        assert result.exit_code == EXIT_OK
        assert result.output.startswith(TREE_HEADER)
        assert "edge=br" in result.output

    def test_cutpoint_tree_from_a_file(self, tmp_path):
        path = tmp_path / "path.graph"
        path.write_text("v a\nv b\nv c\ne ab a b\ne bc b c 3\n")
        result = invoke("cutpoint-tree", str(path), "--metric", "geometric")
        assert result.exit_code == EXIT_OK
        assert '[label="bc 3", style=solid]' in result.output

    def test_output_file(self, tmp_path):
        out = tmp_path / "k4.txt"
        result = invoke("jsj-tree", "k4", "--format", "text", "-o", str(out))
        assert result.exit_code == EXIT_OK
        assert result.output == ""
        assert "insep:u,v,w,x" in out.read_text()

    def test_jsj_tree_refuses_cut_points(self):
        result = invoke("jsj-tree", "barbell")
        assert result.exit_code == EXIT_HAS_CUT_POINTS
        assert "combined" in result.output

    def test_combined_lists_attachments(self):
        result = invoke("combined", "two_k4", "--format", "text")
        assert result.exit_code == EXIT_OK
        assert "attach cut=w block=class:a1 node=class:a1/insep:a1,a2,a3,w end=no" in result.output

    def test_verify_lemmas_passes(self):
        result = invoke("cutpoint-tree", "theta_pendant", "--verify", "lemmas")
        assert result.exit_code == EXIT_OK

    def test_unknown_graph(self):
        result = invoke("cutpoint-tree", "no-such-graph")
        assert result.exit_code == EXIT_INPUT
        assert "no-such-graph" in result.output

    def test_malformed_graph_file(self, tmp_path):
        path = tmp_path / "bad.graph"
        path.write_text("v a\nv b\n")
        result = invoke("cutpoint-tree", str(path))
        assert result.exit_code == EXIT_INPUT
        assert "disconnected" in result.output

    def test_bad_grid(self):
        result = invoke("cutpoint-tree", "arc", "--grid", "0")
        assert result.exit_code == EXIT_INPUT

    def test_unknown_seed(self):
        result = invoke("cutpoint-tree", "star", "--seed", "nowhere")
        assert result.exit_code == EXIT_INPUT


class TestActionCommand:
    def test_barbell_swap_report(self):
        result = invoke("action", "barbell", "swap")
        assert result.exit_code == EXIT_OK
        lines = result.output.splitlines()
        assert lines[0] == ACTION_HEADER
        assert "map name=swap tree=cutpoint" in lines
        assert "image node=cut:u1 to=cut:v1" in lines
        assert "verdict non_nesting=yes exhaustive=yes witness=-" in lines
        assert "class type=elliptic fixed_nodes= fixed_arcs= fixed_points=cut:u1~cut:v1@1/2" in lines

    def test_action_on_the_jsj_tree(self):
        result = invoke("action", "k4", "rotate", "--tree", "jsj")
        assert result.exit_code == EXIT_OK
        assert "image node=pair:v,w to=pair:w,x" in result.output

    def test_jsj_action_with_cut_points(self):
        result = invoke("action", "barbell", "swap", "--tree", "jsj")
        assert result.exit_code == EXIT_HAS_CUT_POINTS

    def test_unknown_automorphism(self):
        result = invoke("action", "barbell", "spin")
        assert result.exit_code == EXIT_INPUT


class TestCorpusCommand:
    def test_lists_graphs(self):
        result = invoke("corpus")
        assert result.exit_code == EXIT_OK
        assert "c5: reflection, rotation" in result.output.splitlines()
        assert "theta: cycle, flip" in result.output.splitlines()


class TestRunConfig:
    def test_extra_keys_are_refused(self):
        with pytest.raises(InputError):
            load_config(command="combined", graph="k4", colour="red")

    def test_unknown_command(self):
        with pytest.raises(InputError):
            load_config(command="draw", graph="k4")

    def test_defaults(self):
        config = load_config(command="combined", graph="k4")
        assert config.grid == 3
        assert config.tree == "cutpoint"
