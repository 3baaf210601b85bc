import json

import pytest
from hypothesis import given

from graphstab.graph import ElementRef, complement, complete, cycle, disjoint_union, empty, path
from graphstab.stability import (
    CLOSED_FORM_PREDICATES,
    StabilityReport,
    analyze,
    closed_form_verdict,
    decide,
    edge_status,
    enumerate_vertex_addition,
    execute_plan,
    nonedge_status,
    query_plan,
    vertex_status,
)
from graphstab.verify.families import graphs_up_to
from graphstab.verify.oracles import brute_force_delta, optimal_colorings

from conftest import graphs

C5, P3, K2 = cycle(5), path(3), complete(2)


class TestElementStatus:
    def test_edges(self):
        for e in C5.edge_list():
            s = edge_status(C5, e, "chi")
            assert (s.status, s.delta) == ("critical", -1)
        assert all(edge_status(P3, e, "beta").status == "stable" for e in P3.edge_list())
        s = edge_status(K2, (0, 1), "beta")
        assert (s.status, s.delta) == ("critical", -1)

    def test_vertices(self):
        assert vertex_status(P3, 1, "chi").status == "critical"
        assert vertex_status(P3, 1, "chi").delta == -1
        assert vertex_status(P3, 1, "alpha").status == "stable"
        assert vertex_status(P3, 1, "beta").status == "critical"
        assert vertex_status(P3, 0, "beta").status == "stable"

    def test_nonedges(self):
        assert all(nonedge_status(C5, e, "chi").status == "unfrozen" for e in C5.nonedges())
        assert nonedge_status(empty(2), (0, 1), "beta").status == "frozen"
        s = nonedge_status(P3, (0, 2), "chi")
        assert (s.status, s.delta) == ("frozen", 1)

    def test_kind_is_checked(self):
        with pytest.raises(ValueError):
            edge_status(P3, (0, 2), "chi")
        with pytest.raises(ValueError):
            nonedge_status(P3, (0, 1), "chi")


class TestAnalyze:
    def test_c5(self):
        v = analyze(C5, "chi").verdicts
        assert not v["stable"] and v["unfrozen"] and not v["two-way-stable"]

    def test_two_triangles_with_k(self):
        v = analyze(disjoint_union(complete(3), complete(3)), "chi", k=3).verdicts
        assert v["k-stable"] and v["k-vertex-stable"]
        v = analyze(disjoint_union(complete(3), complete(3)), "chi", k=4).verdicts
        assert not v["k-stable"] and v["stable"]

    def test_edgeless_is_beta_vertex_stable(self):
        assert analyze(empty(5), "beta").verdicts["vertex-stable"]

    def test_null_graph_is_vacuous(self):
        v = analyze(empty(0), "chi").verdicts
        assert v["stable"] and v["vertex-stable"] and v["unfrozen"] and v["critical"]

    def test_negative_k_rejected(self):
        with pytest.raises(ValueError):
            analyze(C5, "chi", k=-1)

    def test_json_round_trip(self):
        r = analyze(P3, "beta", k=1)
        text = r.dumps()
        back = StabilityReport.from_json(json.loads(text))
        assert back == r and back.problems() == []
        assert set(json.loads(text)) == {"xi", "value", "k", "elements", "verdicts"}

    def test_tampered_report_is_flagged(self):
        data = analyze(C5, "chi").to_json()
        data["verdicts"]["stable"] = True
        assert StabilityReport.from_json(data).problems()

    @pytest.mark.parametrize("prop", ["stable", "vertex-stable", "unfrozen", "critical", "vertex-critical",
                                      "two-way-stable", "vertex-unfrozen", "vertex-two-way-stable"])
    def test_decide_agrees_with_analyze(self, prop):
        for g in graphs_up_to(4):
            for xi in ("chi", "beta"):
                assert decide(g, xi, prop) == analyze(g, xi).verdicts[prop]

    def test_decide_unknown_property(self):
        with pytest.raises(ValueError):
            decide(C5, "chi", "wobbly")


class TestClosedForms:
    def test_examples(self):
        assert closed_form_verdict(empty(7), "beta-vertex-stable")
        assert closed_form_verdict(empty(0), "beta-vertex-unfrozen")
        assert not closed_form_verdict(complete(1), "chi-vertex-unfrozen")
        with pytest.raises(ValueError, match="unknown predicate"):
            closed_form_verdict(C5, "chi-vertex-sleepy")

    def test_vertex_addition_enumeration(self):
        assert enumerate_vertex_addition(empty(0), "chi") == [(frozenset(), 1)]
        deltas = dict(enumerate_vertex_addition(empty(2), "beta"))
        assert deltas[frozenset()] == 0 and deltas[frozenset({0, 1})] >= 1
        assert dict(enumerate_vertex_addition(complete(1), "beta"))[frozenset({0})] == 1
        with pytest.raises(ValueError):
            enumerate_vertex_addition(empty(13), "chi")

    def test_every_closed_form_matches_enumeration(self):
        for g in graphs_up_to(4):
            for name, predicate in CLOSED_FORM_PREDICATES.items():
                xi, _, prop = name.partition("-")
                if prop == "vertex-stable":
                    truth = all(brute_force_delta(g, xi, ElementRef.vertex(v)) == 0 for v in g.vertices)
                else:
                    truth = all(d == 0 for _, d in enumerate_vertex_addition(g, xi))
                    if prop == "vertex-two-way-stable":
                        truth = truth and analyze(g, xi).verdicts["vertex-stable"]
                assert predicate(g) == truth, (name, g)


class TestQueryPlan:
    def test_k2_edges(self):
        plan = query_plan(K2, "edges")
        assert {(q.label, q.k) for q in plan.queries} == {(lbl, k) for lbl in ("G", "G-e(0, 1)") for k in range(3)}
        assert execute_plan(plan) == {"stable": False}

    def test_null_graph(self):
        plan = query_plan(empty(0), "both")
        assert [(q.label, q.k) for q in plan.queries] == [("G", 0)]
        assert execute_plan(plan) == {"stable": True, "vertex-stable": True}

    def test_c5(self):
        plan = query_plan(C5, "both")
        assert len(plan.queries) == 66
        assert execute_plan(plan) == {"stable": False, "vertex-stable": False}

    def test_plan_matches_analyze(self):
        for g in graphs_up_to(5):
            v = analyze(g, "chi").verdicts
            assert execute_plan(query_plan(g)) == {"stable": v["stable"], "vertex-stable": v["vertex-stable"]}


def _deltas(g, xi):
    return {s.element: s.delta for s in analyze(g, xi).elements()}


@given(graphs(max_n=6))
def test_chi_deletions_lower_by_at_most_one(g):
    r = analyze(g, "chi")
    assert all(s.delta in (-1, 0) for s in r.edge_statuses + r.vertex_statuses)


@given(graphs(max_n=6))
def test_critical_edges_have_critical_endpoints(g):
    d = _deltas(g, "chi")
    for u, v in g.edge_list():
        if d[ElementRef.edge(u, v)]:
            assert d[ElementRef.vertex(u)] and d[ElementRef.vertex(v)]


@given(graphs(max_n=6))
def test_edges_at_stable_vertices_are_stable(g):
    d = _deltas(g, "chi")
    for u, v in g.edge_list():
        if not d[ElementRef.vertex(u)] or not d[ElementRef.vertex(v)]:
            assert d[ElementRef.edge(u, v)] == 0


@given(graphs(max_n=5))
def test_critical_vertex_iff_unique_colour_somewhere(g):
    d = _deltas(g, "chi")
    colourings = optimal_colorings(g)
    for v in g.vertices:
        unique = any(frozenset({v}) in c for c in colourings)
        assert bool(d[ElementRef.vertex(v)]) == unique


@given(graphs(max_n=6))
def test_beta_alpha_omega_edge_verdicts_coincide(g):
    beta, alpha = _deltas(g, "beta"), _deltas(g, "alpha")
    omega_c = _deltas(complement(g), "omega")
    for ref, delta in beta.items():
        if ref.kind == "vertex":
            continue
        assert (delta == 0) == (alpha[ref] == 0)
        swapped = ElementRef("nonedge" if ref.kind == "edge" else "edge", ref.ids)
        assert (delta == 0) == (omega_c[swapped] == 0)


@given(graphs(max_n=6))
def test_alpha_stable_vertex_iff_beta_critical(g):
    beta, alpha = _deltas(g, "beta"), _deltas(g, "alpha")
    for v in g.vertices:
        ref = ElementRef.vertex(v)
        assert (alpha[ref] == 0) == (beta[ref] != 0)


@given(graphs(max_n=6))
def test_report_deltas_match_oracle(g):
    for xi in ("alpha", "beta", "omega"):
        for s in analyze(g, xi).elements():
            assert s.delta == brute_force_delta(g, xi, s.element)
