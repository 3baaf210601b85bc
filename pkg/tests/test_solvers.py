import pytest
from hypothesis import given

from graphstab.budget import Budget, BudgetExceeded, default_node_budget
from graphstab.graph import complete, cycle, delete_edge, delete_vertex, empty, path
from graphstab.gadgets import beta_stabilize_edges
from graphstab.reductions import cai_meyer_graph, compare_vc_to_beta_stability
from graphstab.cnf import CnfFormula
from graphstab.solvers import (
    GraphNumber,
    chromatic_number,
    clique_number,
    graph_number,
    independence_number,
    is_k_colorable,
    vertex_cover_number,
    witness_is_valid,
)
from graphstab.verify.families import enumerate_graphs, graphs_up_to, random_graph
from graphstab.verify.oracles import brute_force_number

from conftest import graphs

XIS = [x.value for x in GraphNumber]


def test_chromatic_examples():
    assert chromatic_number(cycle(5)).value == 3
    for k in range(7):
        assert chromatic_number(complete(k)).value == k
    satisfiable = cai_meyer_graph(CnfFormula(3, [(1, 2, 3)])).graph
    assert chromatic_number(satisfiable).value == 3


def test_cover_examples():
    result = vertex_cover_number(path(3))
    assert result.value == 1 and result.witness == frozenset({1})
    assert vertex_cover_number(complete(4)).value == 3
    assert all(vertex_cover_number(empty(n)).value == 0 for n in range(5))


def test_clique_and_independence_examples():
    assert clique_number(cycle(5)).value == 2
    assert independence_number(path(3)).value == 2
    assert independence_number(empty(0)).value == 0


def test_graph_number_dispatch():
    assert graph_number(cycle(5), "chi").value == 3
    assert graph_number(cycle(5), GraphNumber.BETA).value == 3
    assert all(graph_number(empty(0), xi).value == 0 for xi in XIS)
    with pytest.raises(ValueError, match="unknown graph number"):
        graph_number(cycle(5), "theta")


def test_k_colorability():
    assert not is_k_colorable(cycle(5), 2)
    assert is_k_colorable(cycle(5), 3)
    assert is_k_colorable(empty(0), 0)
    assert not is_k_colorable(complete(1), 0)
    with pytest.raises(ValueError):
        is_k_colorable(cycle(5), -1)


def test_every_solver_matches_the_oracle_up_to_five_vertices():
    count = 0
    for g in graphs_up_to(5):
        count += 1
        for xi in XIS:
            result = graph_number(g, xi)
            assert result.value == brute_force_number(g, xi), (g, xi)
            assert witness_is_valid(g, xi, result)
    assert count == 1 + 1 + 2 + 8 + 64 + 1024


@given(graphs(max_n=8))
def test_witnesses_are_valid(g):
    for xi in XIS:
        assert witness_is_valid(g, xi, graph_number(g, xi))


@given(graphs(max_n=6))
def test_deletions_lower_chi_by_at_most_one(g):
    chi = chromatic_number(g).value
    for e in g.edge_list():
        assert chromatic_number(delete_edge(g, e)).value in (chi - 1, chi)
    for v in g.vertices:
        assert chromatic_number(delete_vertex(g, v)).value in (chi - 1, chi)


def test_seeded_random_graphs_match_the_oracle():
    for seed in range(40):
        g = random_graph(8, 0.5, seed)
        assert chromatic_number(g).value == brute_force_number(g, "chi")
        assert vertex_cover_number(g).value == brute_force_number(g, "beta")


def test_solvers_are_deterministic():
    g = random_graph(9, 0.4, 7)
    for xi in XIS:
        assert graph_number(g, xi).witness == graph_number(g, xi).witness


def test_cover_solver_scales_to_pipeline_outputs():
    # Stabilizing every edge adds exactly two to beta per edge, so the oracle on the
    # small input pins the value on the large output.
    h = random_graph(9, 0.5, 3)
    big = beta_stabilize_edges(h).graph
    assert big.n == h.n + 4 * h.m
    assert vertex_cover_number(big).value == brute_force_number(h, "beta") + 2 * h.m
    out = compare_vc_to_beta_stability(complete(3), path(3)).graph
    assert out.n > 150
    result = vertex_cover_number(out)
    assert witness_is_valid(out, "beta", result)


def test_budget_exceeded_is_explicit():
    g = cai_meyer_graph(CnfFormula(3, [(1, 2, 3), (-1, -2, -3), (1, -2, 3)])).graph
    with pytest.raises(BudgetExceeded) as exc:
        chromatic_number(g, Budget(max_nodes=1, query="tiny"))
    assert exc.value.query == "tiny"


def test_budget_environment_overrides(monkeypatch):
    monkeypatch.setenv("STAB_NODE_BUDGET", "12345")
    assert default_node_budget() == 12345
    monkeypatch.setenv("STAB_NODE_BUDGET", "lots")
    with pytest.raises(ValueError, match="STAB_NODE_BUDGET"):
        default_node_budget()


def test_exhaustive_family_sizes():
    assert sum(1 for _ in enumerate_graphs(3)) == 8
    assert sum(1 for _ in enumerate_graphs(4)) == 64
