from itertools import combinations

import pytest
from hypothesis import given, settings

from graphstab.cnf import CnfError, CnfFormula, eight_block, formula_stability
from graphstab.graph import complete, cycle, delete_vertex, disjoint_union, empty, path
from graphstab.reductions import (
    Unfreezer,
    beta_unfrozen_to_beta_twoway,
    cai_meyer_graph,
    compare_colorability_instance,
    compare_vc_to_beta_stability,
    compare_vc_to_beta_unfrozenness,
    conditional_unfrozenness_reduction,
    exact_unfreezer,
    gjs_3col,
    stable3cnf_to_vertex_stability,
    union_double,
    vstab_to_stab,
)
from graphstab.solvers import chromatic_number, is_k_colorable, vertex_cover_number
from graphstab.stability import analyze, decide
from graphstab.verify.oracles import brute_force_number, brute_force_satisfiable

from conftest import formulas, graphs

SAT = CnfFormula(3, [(1, 2, 3)])
BLOCK = CnfFormula(3, eight_block(1))
P3, K2, K3, C5 = path(3), complete(2), complete(3), cycle(5)
KK = disjoint_union(K3, K3)


class TestColouringGraph:
    def test_satisfiable(self):
        assert chromatic_number(cai_meyer_graph(SAT).graph).value == 3

    def test_block(self):
        cm = cai_meyer_graph(BLOCK)
        assert chromatic_number(cm.graph).value == 4
        assert len(cm.t_vertices) == 8
        for t in cm.t_vertices:
            assert is_k_colorable(delete_vertex(cm.graph, t), 3)

    def test_clause_vertices_are_labelled(self):
        cm = cai_meyer_graph(SAT)
        assert cm.vertex(cm.graph.label(cm.t_vertices[0])) == cm.t_vertices[0]

    def test_needs_exact3_and_a_clause(self):
        with pytest.raises(CnfError):
            cai_meyer_graph(CnfFormula(2, [(1, 2)]))
        with pytest.raises(CnfError):
            cai_meyer_graph(CnfFormula(3, []))

    @settings(max_examples=25)
    @given(formulas(max_vars=4, max_clauses=4, exact3=True, min_clauses=1))
    def test_three_colourable_iff_satisfiable(self, phi):
        sat = brute_force_satisfiable(phi)
        assert is_k_colorable(cai_meyer_graph(phi).graph, 3) == sat
        assert is_k_colorable(gjs_3col(phi), 3) == sat

    def test_textbook_construction(self):
        assert chromatic_number(gjs_3col(SAT)).value == 3
        assert chromatic_number(gjs_3col(BLOCK)).value == 4


class TestVertexStabilityPipelines:
    def test_replicated_colouring_graph(self):
        assert decide(stable3cnf_to_vertex_stability(SAT), "chi", "vertex-stable")
        assert not decide(stable3cnf_to_vertex_stability(BLOCK), "chi", "vertex-stable")

    @settings(max_examples=20)
    @given(formulas(max_vars=3, max_clauses=4, exact3=True, min_clauses=1))
    def test_vertex_stable_iff_formula_stable(self, phi):
        g = stable3cnf_to_vertex_stability(phi)
        assert decide(g, "chi", "vertex-stable") == formula_stability(phi).stable

    def test_self_join(self):
        assert not decide(vstab_to_stab(P3), "chi", "stable")
        assert decide(vstab_to_stab(KK), "chi", "stable")
        assert vstab_to_stab(empty(0)) == empty(0)

    def test_union_double(self):
        u = union_double(C5)
        v = analyze(u, "chi").verdicts
        assert chromatic_number(u).value == 3 and v["stable"] and v["two-way-stable"]
        v = analyze(union_double(P3), "chi").verdicts
        assert v["stable"] and not v["two-way-stable"]
        assert union_double(empty(0)) == empty(0)
        assert analyze(empty(0), "chi").verdicts["two-way-stable"]

    def test_union_double_single_vertex(self):
        # K1 has no nonedge, so it is unfrozen; two copies leave a frozen nonedge.
        assert analyze(complete(1), "chi").verdicts["unfrozen"]
        assert not analyze(union_double(complete(1)), "chi").verdicts["two-way-stable"]

    @given(graphs(min_n=2, max_n=4))
    def test_union_double_two_way_iff_unfrozen(self, g):
        assert decide(union_double(g), "chi", "two-way-stable") == decide(g, "chi", "unfrozen")


class TestCoverComparisons:
    def test_stability_yes(self):
        r = compare_vc_to_beta_stability(K2, empty(2))
        assert decide(r.graph, "beta", "stable")

    def test_stability_no(self):
        r = compare_vc_to_beta_stability(empty(2), K2)
        assert r.graph.n > 150
        assert not decide(r.graph, "beta", "stable")

    def test_stabilized_side_size(self):
        r = compare_vc_to_beta_stability(P3, K2)
        assert r.parameters["stabilized_vertices"] == 2 + 4 * 1
        c = r.parameters["side_order"]
        assert r.graph.n == 2 * c + 4 * c * c

    def test_unfrozenness_no(self):
        r = compare_vc_to_beta_unfrozenness(K2, empty(1))
        assert r.graph.n == 12
        # 12 vertices is past the subset oracle's limit; check minimality by hand
        assert vertex_cover_number(r.graph).value == 9
        assert not any(all(e[0] in c or e[1] in c for e in r.graph.edges) for c in map(set, combinations(range(12), 8)))
        assert r.parameters["beta_shift"] == 0 + 2 + 1
        assert not decide(r.graph, "beta", "unfrozen")

    def test_unfrozenness_yes(self):
        r = compare_vc_to_beta_unfrozenness(empty(2), K2)
        assert decide(r.graph, "beta", "unfrozen")

    @settings(max_examples=25)
    @given(graphs(max_n=3), graphs(max_n=3))
    def test_biconditionals(self, g, h):
        bg, bh = brute_force_number(g, "beta"), brute_force_number(h, "beta")
        assert decide(compare_vc_to_beta_stability(g, h).graph, "beta", "stable") == (bg > bh)
        assert decide(compare_vc_to_beta_unfrozenness(g, h).graph, "beta", "unfrozen") == (bg <= bh)


class TestTwoWayPipeline:
    def test_edgeless_graphs(self):
        # Edgeless graphs pass through unchanged; with two or more vertices their
        # nonedges are frozen, so the output is not two-way-stable.
        for n in (2, 3):
            r = beta_unfrozen_to_beta_twoway(empty(n))
            assert r.graph == empty(n)
            assert not analyze(empty(n), "beta").verdicts["unfrozen"]
            assert not decide(r.graph, "beta", "two-way-stable")
        assert decide(beta_unfrozen_to_beta_twoway(empty(1)).graph, "beta", "two-way-stable")

    def test_path(self):
        assert not decide(beta_unfrozen_to_beta_twoway(P3).graph, "beta", "two-way-stable")

    def test_complete_graph(self):
        assert decide(beta_unfrozen_to_beta_twoway(K3).graph, "beta", "two-way-stable")


class TestColourabilityComparison:
    def test_one_each(self):
        g, h = compare_colorability_instance([SAT], [BLOCK])
        assert chromatic_number(g).value > chromatic_number(h).value
        g, h = compare_colorability_instance([BLOCK], [BLOCK])
        assert chromatic_number(g).value == chromatic_number(h).value

    def test_two_each(self):
        phis, psis = [SAT, BLOCK], [SAT, SAT]
        g, h = compare_colorability_instance(phis, psis)
        chi_g, chi_h = chromatic_number(g).value, chromatic_number(h).value
        assert (chi_g, chi_h) == (4 * 2 - 2, 4 * 2 - 1)
        assert (chi_g <= chi_h) == (1 <= 2)

    def test_lists_must_match(self):
        with pytest.raises(ValueError):
            compare_colorability_instance([SAT], [SAT, SAT])


class TestConditionalUnfrozenness:
    def test_examples(self):
        assert decide(conditional_unfrozenness_reduction(K3, C5, exact_unfreezer()), "chi", "unfrozen")
        assert not decide(conditional_unfrozenness_reduction(complete(4), P3, exact_unfreezer()), "chi", "unfrozen")

    def test_unfreezer_is_a_parameter(self):
        seen = []

        def transform(g):
            seen.append(g)
            return complete(chromatic_number(g).value)

        u = Unfreezer(transform, lambda g: 0, "clique of the same chi")
        out = conditional_unfrozenness_reduction(K3, C5, u)
        assert seen and decide(out, "chi", "unfrozen")

    def test_edgeless_pair_stays_frozen_when_chi_grows(self):
        # G'' contains a join with I_2 whose nonedge is frozen; H'' must not dominate it.
        out = conditional_unfrozenness_reduction(complete(4), P3, exact_unfreezer())
        frozen = [s.element.ids for s in analyze(out, "chi").nonedge_statuses if s.status == "frozen"]
        assert frozen == [(4, 5)]
