import pytest

from asymcolour import cycle_graph, complete_graph, path_graph, serialize_graph
from asymcolour.cli import main


def write_graph(tmp_path, graph, name="graph.adj"):
    path = tmp_path / name
    path.write_text(serialize_graph(graph), encoding="utf-8")
    return str(path)


def kv_report(capsys):
    out = capsys.readouterr().out
    pairs = {}
    for line in out.strip().splitlines():
        key, _, value = line.partition(" ")
        pairs[key] = value
    return pairs


class TestColourCommand:
    def test_tree_family_run(self, tmp_path, capsys):
        out_file = tmp_path / "col.txt"
        trace_file = tmp_path / "trace.txt"
        code = main(
            [
                "colour",
                "--family", "tree", "--degree", "3", "--radius", "2",
                "--root", "0",
                "--out", str(out_file),
                "--trace", str(trace_file),
                "--format", "kv",
            ]
        )
        assert code == 0
        report = kv_report(capsys)
        assert report["oracle.asymmetric"] == "true"
        assert report["checks.all"] == "pass"
        assert int(report["colours.used"]) <= 10
        assert report["run.bound-mode"] == "csg"
        assert out_file.exists() and trace_file.exists()
        assert trace_file.read_text().startswith("trace-format 1\n")

    def test_graph_file_input(self, tmp_path, capsys):
        path = write_graph(tmp_path, cycle_graph(5))
        code = main(["colour", "--input", path, "--root", "0", "--format", "kv"])
        assert code == 0
        report = kv_report(capsys)
        assert report["oracle.asymmetric"] == "true"
        assert report["graph.max-degree"] == "2"

    def test_root_out_of_range(self, capsys):
        code = main(["colour", "--family", "cycle", "--n", "5", "--root", "7"])
        assert code == 1

    def test_invalid_family_params(self, capsys):
        code = main(["colour", "--family", "tree", "--degree", "1", "--radius", "2"])
        assert code == 1

    def test_bad_graph_file(self, tmp_path, capsys):
        path = tmp_path / "bad.adj"
        path.write_text("3\n0 1\n", encoding="utf-8")  # disconnected
        assert main(["colour", "--input", str(path)]) == 1

    def test_cap_exceeded(self, capsys):
        code = main(["colour", "--family", "tree", "--degree", "5", "--radius", "2", "--cap", "1000"])
        assert code == 2

    def test_env_cap(self, capsys, monkeypatch):
        monkeypatch.setenv("ASYM_CAP", "3")
        code = main(["colour", "--family", "complete", "--n", "4"])
        assert code == 2

    def test_flag_overrides_env_cap(self, capsys, monkeypatch):
        monkeypatch.setenv("ASYM_CAP", "3")
        code = main(["colour", "--family", "complete", "--n", "4", "--cap", "1000000", "--format", "kv"])
        assert code == 0
        assert kv_report(capsys)["run.cap"] == "1000000"

    def test_text_format(self, capsys):
        code = main(["colour", "--family", "cycle", "--n", "5"])
        assert code == 0
        out = capsys.readouterr().out
        assert "oracle asymmetric: true" in out

    def test_horizon_flag(self, tmp_path, capsys):
        out_file = tmp_path / "col.txt"
        code = main(
            ["colour", "--family", "path", "--n", "5", "--horizon", "2", "--out", str(out_file), "--format", "kv"]
        )
        assert code == 0
        assert kv_report(capsys)["run.horizon"] == "2"
        assert "inf" in out_file.read_text()

    def test_horizon_out_of_range(self, capsys):
        assert main(["colour", "--family", "path", "--n", "5", "--horizon", "9"]) == 1

    def test_elementary_bound_mode_flag(self, capsys):
        code = main(["colour", "--family", "cycle", "--n", "6", "--bound-mode", "elementary", "--format", "kv"])
        assert code == 0
        assert kv_report(capsys)["run.bound-mode"] == "elementary"

    def test_non_asymmetric_outcome_still_exits_zero(self, capsys):
        # K5 cannot be broken within the sqrt-degree palette; the verdict
        # is reported false but every construction invariant still holds
        code = main(["colour", "--family", "complete", "--n", "5", "--format", "kv"])
        assert code == 0
        report = kv_report(capsys)
        assert report["oracle.asymmetric"] == "false"
        assert report["checks.all"] == "pass"

    def test_single_vertex_run(self, capsys):
        code = main(["colour", "--family", "path", "--n", "1", "--format", "kv"])
        assert code == 0
        report = kv_report(capsys)
        assert report["run.horizon"] == "0"
        assert report["oracle.asymmetric"] == "true"

    def test_bipartite_and_grid_family_flags(self, capsys):
        code = main(["colour", "--family", "complete_bipartite", "--m", "2", "--n", "3", "--format", "kv"])
        assert code == 0
        assert kv_report(capsys)["graph.vertices"] == "5"
        code = main(["colour", "--family", "grid", "--w", "3", "--h", "2", "--format", "kv"])
        assert code == 0
        assert kv_report(capsys)["graph.vertices"] == "6"

    def test_determinism(self, tmp_path, capsys):
        paths = []
        for tag in ("a", "b"):
            out_file = tmp_path / f"col-{tag}.txt"
            trace_file = tmp_path / f"trace-{tag}.txt"
            code = main(
                [
                    "colour",
                    "--family", "tree", "--degree", "3", "--radius", "2",
                    "--out", str(out_file), "--trace", str(trace_file),
                ]
            )
            assert code == 0
            paths.append((out_file.read_bytes(), trace_file.read_bytes()))
        assert paths[0] == paths[1]


class TestVerifyCommand:
    def test_asymmetric(self, tmp_path, capsys):
        graph_path = write_graph(tmp_path, complete_graph(2))
        col = tmp_path / "col.txt"
        col.write_text("0\t0\n1\t1\n", encoding="utf-8")
        assert main(["verify", graph_path, str(col)]) == 0
        assert "asymmetric: true" in capsys.readouterr().out

    def test_constant_colouring_rejected(self, tmp_path, capsys):
        graph_path = write_graph(tmp_path, cycle_graph(5))
        col = tmp_path / "col.txt"
        col.write_text("".join(f"{v}\t1\n" for v in range(5)), encoding="utf-8")
        code = main(["verify", graph_path, str(col)])
        assert code == 4
        out = capsys.readouterr().out
        assert "stabilizer-order: 10" in out

    def test_malformed_colouring(self, tmp_path, capsys):
        graph_path = write_graph(tmp_path, cycle_graph(5))
        col = tmp_path / "col.txt"
        col.write_text("0 zero\n", encoding="utf-8")
        assert main(["verify", graph_path, str(col)]) == 1

    def test_size_mismatch(self, tmp_path, capsys):
        graph_path = write_graph(tmp_path, cycle_graph(5))
        col = tmp_path / "col.txt"
        col.write_text("0\t0\n1\t1\n", encoding="utf-8")
        assert main(["verify", graph_path, str(col)]) == 1

    def test_missing_file(self, tmp_path, capsys):
        graph_path = write_graph(tmp_path, cycle_graph(5))
        assert main(["verify", graph_path, str(tmp_path / "nope.txt")]) == 1


class TestOracleCommand:
    def test_motion_c5(self, tmp_path, capsys):
        path = write_graph(tmp_path, cycle_graph(5))
        assert main(["oracle", path, "motion"]) == 0
        assert "oracle.value 4" in capsys.readouterr().out

    def test_dnumber_k4(self, tmp_path, capsys):
        path = write_graph(tmp_path, complete_graph(4))
        assert main(["oracle", path, "dnumber"]) == 0
        assert "oracle.value 4" in capsys.readouterr().out

    def test_autorder_c5(self, tmp_path, capsys):
        path = write_graph(tmp_path, cycle_graph(5))
        assert main(["oracle", path, "autorder"]) == 0
        assert "oracle.value 10" in capsys.readouterr().out

    def test_motion_lemma(self, tmp_path, capsys):
        path = write_graph(tmp_path, path_graph(5))
        assert main(["oracle", path, "motion-lemma"]) == 0
        assert "oracle.value colouring-found" in capsys.readouterr().out

    def test_motion_lemma_hypothesis_fails(self, tmp_path, capsys):
        path = write_graph(tmp_path, cycle_graph(5))
        assert main(["oracle", path, "motion-lemma"]) == 0
        assert "oracle.value hypothesis-not-satisfied" in capsys.readouterr().out

    def test_interior_support(self, tmp_path, capsys):
        from asymcolour import truncated_tree

        path = write_graph(tmp_path, truncated_tree(3, 2))
        assert main(["oracle", path, "interior-support", "--root", "0", "--horizon", "2"]) == 0
        assert "oracle.value true" in capsys.readouterr().out

    def test_motion_guard_message(self, tmp_path, capsys):
        from .test_oracle import rigid_graph

        path = write_graph(tmp_path, rigid_graph())
        assert main(["oracle", path, "motion"]) == 1
        assert "motion is undefined" in capsys.readouterr().err

    def test_dnumber_guard(self, tmp_path, capsys):
        path = write_graph(tmp_path, path_graph(13))
        assert main(["oracle", path, "dnumber"]) == 1
        assert "distinguishing-number search supports" in capsys.readouterr().err


class TestBoundCommand:
    def test_chain_8(self, capsys):
        assert main(["bound", "chain", "8"]) == 0
        assert capsys.readouterr().out.splitlines()[0] == "10"

    def test_chain_1(self, capsys):
        assert main(["bound", "chain", "1"]) == 0
        assert capsys.readouterr().out.splitlines()[0] == "0"

    def test_colours_4(self, capsys):
        assert main(["bound", "colours", "4"]) == 0
        assert capsys.readouterr().out.splitlines()[0] == "12.0"

    def test_nonpositive(self, capsys):
        assert main(["bound", "chain", "0"]) == 1
