import json
import subprocess
import sys

import pytest

from graphstab.cli import main
from graphstab.graph import parse_dimacs
from graphstab.solvers import vertex_cover_number
from graphstab.stability import StabilityReport

C5 = "p edge 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\n"
K3 = "p edge 3 3\ne 1 2\ne 2 3\ne 1 3\n"
P3 = "p edge 3 2\ne 1 2\ne 2 3\n"
K2 = "p edge 2 1\ne 1 2\n"
SAT = "p cnf 3 1\n1 2 3 0\n"
BLOCK = "p cnf 3 8\n" + "".join(
    f"{a} {b} {c} 0\n" for a in (1, -1) for b in (2, -2) for c in (3, -3)
)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestAnalyze:
    def test_c5_verdicts(self, capsys, write):
        code, out, _ = run(capsys, "analyze", "--xi", "chi", "--json", write("c5.dimacs", C5))
        assert code == 0
        report = json.loads(out)
        assert report["verdicts"]["stable"] is False and report["verdicts"]["unfrozen"] is True
        assert StabilityReport.from_json(report).problems() == []

    def test_human_output(self, capsys, write):
        code, out, _ = run(capsys, "analyze", "--xi", "beta", write("p3.dimacs", P3))
        assert code == 0 and out.startswith("beta = 1") and "vertex 1: critical" in out

    def test_expect(self, capsys, write):
        path = write("c5.dimacs", C5)
        assert run(capsys, "analyze", "--xi", "chi", "--expect", "unfrozen", path)[0] == 0
        code, _, err = run(capsys, "analyze", "--xi", "chi", "--expect", "stable", path)
        assert code == 1 and "not stable" in err

    def test_expect_with_k(self, capsys, write):
        path = write("c5.dimacs", C5)
        assert run(capsys, "analyze", "--xi", "chi", "--k", "3", "--expect", "unfrozen", path)[0] == 0
        assert run(capsys, "analyze", "--xi", "chi", "--k", "4", "--expect", "unfrozen", path)[0] == 1

    def test_byte_identical_json(self, capsys, write):
        path = write("c5.dimacs", C5)
        assert run(capsys, "analyze", "--xi", "omega", "--json", path) == run(
            capsys, "analyze", "--xi", "omega", "--json", path
        )

    def test_budget_exit(self, capsys, tmp_path):
        path = tmp_path / "g.cnf"
        path.write_text(BLOCK)
        out = tmp_path / "g.dimacs"
        assert run(capsys, "reduce", "cai-meyer", str(path), "--out", str(out))[0] == 0
        code, _, err = run(capsys, "analyze", "--xi", "chi", "--node-budget", "1", str(out))
        assert code == 3 and "budget exceeded while solving" in err


class TestUsageErrors:
    @pytest.mark.parametrize(
        "argv",
        [
            [],
            ["frobnicate"],
            ["analyze", "--xi", "theta", "x"],
            ["analyze", "--xi", "chi", "--k", "-1", "x"],
            ["analyze", "--xi", "chi", "missing.dimacs"],
        ],
    )
    def test_exit_two(self, capsys, argv):
        assert run(capsys, *argv)[0] == 2

    def test_parse_error_names_the_line(self, capsys, write):
        code, _, err = run(capsys, "analyze", "--xi", "chi", write("bad.dimacs", "p edge 2 1\ne 1 1\n"))
        assert code == 2 and "line 2" in err

    def test_bad_edge_selector(self, capsys, write, tmp_path):
        path = write("k3.dimacs", K3)
        out = str(tmp_path / "o.dimacs")
        assert run(capsys, "gadget", "beta-stabilize", "--edges", "1-9", path, "--out", out)[0] == 2
        assert run(capsys, "gadget", "beta-stabilize", "--edges", "one-two", path, "--out", out)[0] == 2

    def test_environment_budget_is_validated(self, capsys, write, monkeypatch):
        monkeypatch.setenv("STAB_TIME_BUDGET_S", "-4")
        assert run(capsys, "analyze", "--xi", "chi", write("c5.dimacs", C5))[0] == 2


class TestGadget:
    def test_beta_stabilize_all_edges_of_k3(self, capsys, write, tmp_path):
        out = tmp_path / "k3b.dimacs"
        code, stdout, _ = run(capsys, "gadget", "beta-stabilize", "--edges", "all", write("k3.dimacs", K3),
                              "--out", str(out), "--json")
        assert code == 0
        summary = json.loads(stdout)
        assert summary["xi"] == "beta" and summary["value"] == 8
        g = parse_dimacs(out.read_bytes())
        assert vertex_cover_number(g).value == 8
        sidecar = json.loads((tmp_path / "k3b.dimacs.provenance.json").read_text())
        assert sidecar["value_shift"] == 6 and len(sidecar["elements"]) == g.n + g.m

    def test_edge_list_file(self, capsys, write, tmp_path):
        edges = write("edges.txt", "1-2\n")
        out = str(tmp_path / "o.dimacs")
        code, stdout, _ = run(capsys, "gadget", "chi-stabilize", "--edges", "@" + edges, write("p3.dimacs", P3), "--out", out)
        assert code == 0 and "chi = 4" in stdout

    def test_join_of_two_graphs(self, capsys, write, tmp_path):
        out = str(tmp_path / "j.dimacs")
        code, stdout, _ = run(capsys, "gadget", "join-and", write("c5.dimacs", C5), write("k2.dimacs", K2),
                              "--out", out, "--json")
        assert code == 0 and json.loads(stdout)["value"] == 5


class TestReduce:
    def test_verify_passes(self, capsys, write, tmp_path):
        out = str(tmp_path / "cm.dimacs")
        code, stdout, _ = run(capsys, "reduce", "cai-meyer", write("b.cnf", BLOCK), "--out", out, "--verify", "--json")
        summary = json.loads(stdout)
        assert code == 0 and summary["verified"] and summary["expected"] is False
        assert json.loads((tmp_path / "cm.dimacs.provenance.json").read_text())["construction"] == "cai-meyer"

    def test_graph_pair_pipeline(self, capsys, write, tmp_path):
        out = str(tmp_path / "s.dimacs")
        code, stdout, _ = run(capsys, "reduce", "compare-vc-to-beta-stability", write("k3.dimacs", K3),
                              write("p3.dimacs", P3), "--out", out, "--verify", "--json")
        summary = json.loads(stdout)
        assert code == 0 and summary["expected"] is True and summary["observed"] is True

    def test_union_double_single_vertex_mismatch(self, capsys, write, tmp_path):
        # The one graph where the doubling biconditional fails; --verify reports it.
        out = str(tmp_path / "u.dimacs")
        code, _, err = run(capsys, "reduce", "union-double", write("k1.dimacs", "p edge 1 0\n"), "--out", out, "--verify")
        assert code == 1 and "violated" in err

    def test_compare_colorability_writes_two_graphs(self, capsys, write, tmp_path):
        out = tmp_path / "cc.dimacs"
        code, _, _ = run(capsys, "reduce", "compare-colorability", write("a.cnf", SAT), write("b.cnf", BLOCK),
                         "--out", str(out), "--verify")
        assert code == 0
        assert (tmp_path / "cc.G.dimacs").exists() and (tmp_path / "cc.H.dimacs").exists()

    def test_arity_checked(self, capsys, write, tmp_path):
        out = str(tmp_path / "o.dimacs")
        assert run(capsys, "reduce", "vstab-to-stab", write("a.dimacs", P3), write("b.dimacs", P3), "--out", out)[0] == 2
        assert run(capsys, "reduce", "compare-colorability", write("a.cnf", SAT), "--out", out)[0] == 2


class TestFormula:
    def test_solve_and_stability(self, capsys, write):
        path = write("b.cnf", BLOCK)
        code, out, _ = run(capsys, "formula", "stability", path, "--json")
        data = json.loads(out)
        assert code == 0 and data["minimally_unsatisfiable"] and not data["stable"]
        assert "satisfiable: False" in run(capsys, "formula", "solve", path)[1]

    def test_construction_to_stdout(self, capsys, write):
        code, out, _ = run(capsys, "formula", "to-exact-3cnf", write("w.cnf", "p cnf 4 1\n1 2 3 4 0\n"))
        assert code == 0 and "p cnf" in out

    def test_or2_needs_two(self, capsys, write):
        assert run(capsys, "formula", "or2", write("a.cnf", SAT))[0] == 2

    def test_bad_cnf(self, capsys, write):
        assert run(capsys, "formula", "solve", write("x.cnf", "p cnf 1 1\n2 0\n"))[0] == 2


class TestVerify:
    def test_single_law_json_is_deterministic(self, capsys):
        first = run(capsys, "verify", "lem9.shift", "--seed", "4", "--json")
        second = run(capsys, "verify", "lem9.shift", "--seed", "4", "--json")
        assert first == second and first[0] == 0
        assert json.loads(first[1])["laws"][0]["config"]["seed"] == 4

    def test_list_and_unknown(self, capsys):
        code, out, _ = run(capsys, "verify", "--list")
        assert code == 0 and "thm9.end2end:" in out
        assert run(capsys, "verify", "nope")[0] == 2

    def test_violation_exit(self, capsys, monkeypatch):
        from graphstab import stability

        broken = dict(stability.CLOSED_FORM_PREDICATES, **{"beta-vertex-stable": lambda g: True})
        monkeypatch.setattr(stability, "CLOSED_FORM_PREDICATES", broken)
        assert run(capsys, "verify", "thm10", "--max-n", "3")[0] == 1

    def test_console_script(self, tmp_path):
        path = tmp_path / "c5.dimacs"
        path.write_text(C5)
        proc = subprocess.run([sys.executable, "-m", "graphstab.cli", "analyze", "--xi", "chi", str(path)],
                              capture_output=True, text=True)
        assert proc.returncode == 0 and "chi = 3" in proc.stdout

    def test_whole_suite_at_four_vertices(self, capsys):
        code, out, _ = run(capsys, "verify", "all", "--max-n", "4", "--json")
        data = json.loads(out)
        failing = [r["law"] for r in data["laws"] if not r["passed"]]
        assert code == 0 and data["passed"] and failing == []
