"""Registry of executable laws.

A law pairs a claim about stability with an instance family and a check.
``run_law`` walks the family in a fixed order and records every violating
instance as a JSON payload that ``replay`` can re-check on its own.
"""

from __future__ import annotations

import json
import random
import time
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, combinations_with_replacement
from typing import Callable, Iterator, Literal, Mapping

from .. import cnf
from ..budget import BudgetExceeded
from ..gadgets import (
    beta_stabilize_edge,
    beta_stabilize_edges,
    chi_stabilize_edges,
    join_and,
    stabilized_join_and,
    two_way_gadget_edge,
)
from ..graph import ElementRef, Graph, complement, replicate_vertex
from ..reductions import (
    cai_meyer_graph,
    compare_colorability_instance,
    compare_vc_to_beta_stability,
    compare_vc_to_beta_unfrozenness,
    conditional_unfrozenness_reduction,
    exact_unfreezer,
    beta_unfrozen_to_beta_twoway,
    stable3cnf_to_vertex_stability,
    union_double,
    vstab_to_stab,
)
from ..solvers import chromatic_number, graph_number
from ..stability import (
    CLOSED_FORM_PREDICATES,
    analyze,
    closed_form_verdict,
    decide,
    enumerate_vertex_addition,
    execute_plan,
    query_plan,
    statuses,
)
from . import oracles
from .families import (
    NAMED_GRAPHS,
    exact3_corpus,
    formula_payload,
    graph_payload,
    graphs_up_to,
    load_formula,
    load_graph,
    mixed_3cnf_corpus,
    random_cnf,
    random_graph,
)

__all__ = ["LAWS", "REQUIRED_CLAIMS", "Law", "LawReport", "law_ids", "replay", "run_law"]

Payload = dict
Check = Callable[[Payload], "str | None"]
MAX_KEPT_VIOLATIONS = 25


@dataclass(frozen=True)
class Law:
    """``instances`` maps a generator config to payloads; ``check`` returns None or what went wrong."""

    id: str
    claim: str
    defaults: Mapping[str, object]
    instances: Callable[[Mapping[str, object]], Iterator[Payload]]
    check: Check
    oracle: Literal["brute-force", "main-solver"]
    max_n_cap: int | None = None


@dataclass(frozen=True)
class LawReport:
    law_id: str
    config: Mapping[str, object]
    instances: int
    violations: tuple[dict, ...]
    violation_count: int
    elapsed: float = field(compare=False)

    @property
    def passed(self) -> bool:
        return self.violation_count == 0

    @property
    def budget_exceeded(self) -> bool:
        return any(v.get("budget") for v in self.violations)

    def to_json(self, timings: bool = False) -> dict:
        out = {
            "law": self.law_id,
            "config": dict(self.config),
            "instances": self.instances,
            "passed": self.passed,
            "violation_count": self.violation_count,
            "violations": list(self.violations),
        }
        if timings:
            out["elapsed"] = round(self.elapsed, 3)
        return out


LAWS: dict[str, Law] = {}


def _law(id: str, claim: str, oracle: str, max_n_cap: int | None = None, **defaults):
    def register(pair):
        instances, check = pair
        if id in LAWS:
            raise ValueError(f"duplicate law id {id}")
        LAWS[id] = Law(id, claim, {"seed": 0, **defaults}, instances, check, oracle, max_n_cap)
        return pair

    return register


def law_ids() -> list[str]:
    return list(LAWS)


def _config(law: Law, overrides: Mapping[str, object] | None) -> dict:
    cfg = dict(law.defaults)
    for key, value in (overrides or {}).items():
        if value is None:
            continue
        if key not in cfg:
            continue
        cfg[key] = value
    if law.max_n_cap is not None and "max_n" in cfg:
        cfg["max_n"] = min(int(cfg["max_n"]), law.max_n_cap)
    return cfg


def run_law(law_id: str, overrides: Mapping[str, object] | None = None) -> LawReport:
    """Check every instance of the law's family; deterministic for a fixed config.

    Overrides for keys the law does not use are ignored, and ``max_n`` is
    clipped to the law's ceiling; the effective values are in ``config``.
    """
    if law_id not in LAWS:
        raise KeyError(f"unknown law {law_id!r}")
    law = LAWS[law_id]
    cfg = _config(law, overrides)
    started = time.perf_counter()
    count, kept, total = 0, [], 0
    for index, payload in enumerate(law.instances(cfg)):
        count += 1
        try:
            detail = law.check(payload)
            budget = False
        except BudgetExceeded as exc:
            detail, budget = f"budget exceeded while solving {exc.query}", True
        if detail is not None:
            total += 1
            if len(kept) < MAX_KEPT_VIOLATIONS:
                entry = {"index": index, "instance": payload, "detail": detail}
                if budget:
                    entry["budget"] = True
                kept.append(entry)
    return LawReport(law_id, cfg, count, tuple(kept), total, time.perf_counter() - started)


def replay(law_id: str, payload: Payload) -> str | None:
    """Re-check one instance, typically a counterexample taken from a report."""
    return LAWS[law_id].check(payload)


# Shared helpers

def _g(payload: Payload, key: str = "graph") -> Graph:
    return load_graph(payload[key])


@lru_cache(maxsize=4096)
def _report(key: str, xi: str):
    return analyze(load_graph(json.loads(key)), xi)


def _analysis(g: Graph, xi: str):
    return _report(json.dumps(graph_payload(g)), xi)


def _deltas(report) -> dict[ElementRef, int]:
    return {s.element: s.delta for s in report.elements()}


def _first_mismatch(g: Graph, xi: str) -> str | None:
    """Compare every element delta from ``analyze`` with the oracle."""
    for ref, delta in _deltas(_analysis(g, xi)).items():
        truth = oracles.brute_force_delta(g, xi, ref)
        if delta != truth:
            return f"{xi} delta of {ref}: solver {delta}, oracle {truth}"
    return None


def _exhaustive(cfg) -> Iterator[Payload]:
    for g in graphs_up_to(int(cfg["max_n"])):
        yield {"graph": graph_payload(g)}


def _exhaustive_and_random(cfg) -> Iterator[Payload]:
    yield from _exhaustive(cfg)
    rng = random.Random(cfg["seed"])
    for _ in range(int(cfg["samples"])):
        n = rng.randint(0, int(cfg["random_max_n"]))
        yield {"graph": graph_payload(random_graph(n, rng.random(), rng.randrange(1 << 30)))}


def _random_with_edge(cfg) -> Iterator[Payload]:
    """Random graphs with at least one edge and one chosen edge."""
    rng = random.Random(cfg["seed"])
    produced = 0
    while produced < int(cfg["samples"]):
        n = rng.randint(2, int(cfg["max_n"]))
        g = random_graph(n, rng.uniform(0.3, 0.9), rng.randrange(1 << 30))
        if g.m == 0:
            continue
        produced += 1
        yield {"graph": graph_payload(g), "edge": list(rng.choice(g.edge_list()))}


def _pairs(cfg) -> Iterator[Payload]:
    graphs = list(graphs_up_to(int(cfg["max_n"])))
    for g in graphs:
        for h in graphs:
            yield {"g": graph_payload(g), "h": graph_payload(h)}


def _is(cond: bool, message: str) -> str | None:
    return None if cond else message


# Observations on chi

def _obs1(p):
    g = _g(p)
    bad = _first_mismatch(g, "chi")
    if bad:
        return bad
    for s in _analysis(g, "chi").elements():
        if s.element.kind != "nonedge" and s.delta not in (-1, 0):
            return f"{s.element} changes chi by {s.delta}"
    return None


_law("obs1", "Deleting one edge or one vertex lowers chi by one or leaves it unchanged.", "brute-force", max_n=5)(
    (_exhaustive, _obs1)
)


def _obs2(p):
    g = _g(p)
    bad = _first_mismatch(g, "chi")
    if bad:
        return bad
    d = _deltas(_analysis(g, "chi"))
    for u, v in g.edge_list():
        if d[ElementRef.edge(u, v)] and not (d[ElementRef.vertex(u)] and d[ElementRef.vertex(v)]):
            return f"critical edge {u}-{v} has a stable endpoint"
    return None


_law("obs2", "Both endpoints of a chi-critical edge are chi-critical.", "brute-force", max_n=5)((_exhaustive, _obs2))


def _obs3(p):
    g = _g(p)
    bad = _first_mismatch(g, "chi")
    if bad:
        return bad
    d = _deltas(_analysis(g, "chi"))
    for u, v in g.edge_list():
        for x in (u, v):
            if d[ElementRef.vertex(x)] == 0 and d[ElementRef.edge(u, v)] != 0:
                return f"stable vertex {x} has critical incident edge {u}-{v}"
    return None


_law("obs3", "Every edge at a chi-stable vertex is chi-stable.", "brute-force", max_n=5)((_exhaustive, _obs3))


def _obs4(p):
    g = _g(p)
    d = _deltas(_analysis(g, "chi"))
    optimal = oracles.optimal_colorings(g)
    for v in g.vertices:
        alone = any(frozenset([v]) in classes for classes in optimal)
        if (d[ElementRef.vertex(v)] != 0) != alone:
            return f"vertex {v}: critical={d[ElementRef.vertex(v)] != 0} but alone in an optimal colouring={alone}"
    return None


_law(
    "obs4",
    "A vertex is chi-critical exactly when some optimal colouring gives it a colour of its own.",
    "brute-force",
    max_n=5,
)((_exhaustive, _obs4))


# Cover, independent set and clique


def _edgewise(g: Graph, kind: str, xi: str, other_kind: str, other_xi: str, other: Graph) -> str | None:
    """Element of ``kind`` in g unchanged under xi iff the same pair as ``other_kind`` in ``other`` under other_xi."""
    mine = _deltas(_analysis(g, xi))
    theirs = _deltas(_analysis(other, other_xi))
    for ref, delta in mine.items():
        if ref.kind != kind:
            continue
        twin = ElementRef(other_kind, ref.ids)
        if (delta == 0) != (theirs[twin] == 0):
            return f"{ref} under {xi} is {'un' if delta else ''}changed but {twin} under {other_xi} disagrees"
    return None


def _oracle_spot(g: Graph) -> str | None:
    if g.n <= 6:
        for xi in ("alpha", "beta"):
            bad = _first_mismatch(g, xi)
            if bad:
                return bad
    return None


def _prop1_item(kind: str, other_kind: str):
    def check(p):
        g = _g(p)
        bad = _oracle_spot(g)
        if bad:
            return bad
        return (
            _edgewise(g, kind, "beta", kind, "alpha", g)
            or _edgewise(g, kind, "beta", other_kind, "omega", complement(g))
        )

    return check


_PROP1_FAMILY = dict(max_n=4, samples=500, random_max_n=6)

_law(
    "prop1.1",
    "An edge is beta-stable iff it is alpha-stable iff the same pair is an omega-unfrozen nonedge of the complement.",
    "brute-force",
    **_PROP1_FAMILY,
)((_exhaustive_and_random, _prop1_item("edge", "nonedge")))

_law(
    "prop1.2",
    "A nonedge is beta-unfrozen iff it is alpha-unfrozen iff the same pair is an omega-stable edge of the complement.",
    "brute-force",
    **_PROP1_FAMILY,
)((_exhaustive_and_random, _prop1_item("nonedge", "edge")))


def _prop1_3(p):
    g = _g(p)
    beta = _analysis(g, "beta").verdicts["two-way-stable"]
    alpha = _analysis(g, "alpha").verdicts["two-way-stable"]
    omega = _analysis(complement(g), "omega").verdicts["two-way-stable"]
    return _is(beta == alpha == omega, f"two-way-stable: beta {beta}, alpha {alpha}, omega of complement {omega}")


_law(
    "prop1.3",
    "beta-two-way-stable, alpha-two-way-stable and omega-two-way-stable of the complement coincide.",
    "main-solver",
    **_PROP1_FAMILY,
)((_exhaustive_and_random, _prop1_3))


def _prop1_4(p):
    g = _g(p)
    truth = all(oracles.brute_force_delta(g, "beta", ElementRef.vertex(v)) == 0 for v in g.vertices)
    return _is(truth == (g.m == 0), f"beta-vertex-stable is {truth} on a graph with {g.m} edges")


_law("prop1.4", "The beta-vertex-stable graphs are exactly the edgeless graphs.", "brute-force", max_n=5)(
    (_exhaustive, _prop1_4)
)


def _prop1_5(p):
    g = _g(p)
    co = complement(g)
    for v in g.vertices:
        a = oracles.brute_force_delta(g, "alpha", ElementRef.vertex(v))
        w = oracles.brute_force_delta(co, "omega", ElementRef.vertex(v))
        if (a == 0) != (w == 0):
            return f"vertex {v}: alpha delta {a}, omega delta in complement {w}"
    return None


_law(
    "prop1.5",
    "A vertex is alpha-stable iff it is omega-stable in the complement.",
    "brute-force",
    max_n=5,
)((_exhaustive, _prop1_5))


def _addition_deltas(g: Graph, xi: str) -> list[int]:
    """Oracle deltas for every way of adding one vertex."""
    base = oracles.brute_force_number(g, xi)
    out = []
    for size in range(g.n + 1):
        for nbhd in combinations(range(g.n), size):
            h = Graph(g.n + 1, list(g.edges) + [(x, g.n) for x in nbhd])
            out.append(oracles.brute_force_number(h, xi) - base)
    return out


def _vertex_stable_oracle(g: Graph, xi: str) -> bool:
    return all(oracles.brute_force_delta(g, xi, ElementRef.vertex(v)) == 0 for v in g.vertices)


def _prop1_6(p):
    g = _g(p)
    unfrozen = all(d == 0 for d in _addition_deltas(g, "beta"))
    two_way = unfrozen and _vertex_stable_oracle(g, "beta")
    expect = g.n == 0
    return _is(unfrozen == expect and two_way == expect, f"beta vertex-unfrozen {unfrozen}, vertex-two-way {two_way}")


_law(
    "prop1.6",
    "Only the null graph is beta-vertex-unfrozen, and only it is beta-vertex-two-way-stable.",
    "brute-force",
    max_n=4,
)((_exhaustive, _prop1_6))


def _prop1_7(p):
    g = _g(p)
    for xi in ("alpha", "omega"):
        if all(d == 0 for d in _addition_deltas(g, xi)):
            return f"graph is {xi}-vertex-unfrozen"
    return None


_law(
    "prop1.7",
    "No graph is alpha- or omega-vertex-unfrozen, so none is vertex-two-way-stable for them either.",
    "brute-force",
    max_n=4,
)((_exhaustive, _prop1_7))


def _prop2(p):
    g = _g(p)
    co = complement(g)
    for v in g.vertices:
        ref = ElementRef.vertex(v)
        b = oracles.brute_force_delta(g, "beta", ref)
        a = oracles.brute_force_delta(g, "alpha", ref)
        w = oracles.brute_force_delta(co, "omega", ref)
        if (b == 0) == (a == 0) or (a == 0) != (w == 0):
            return f"vertex {v}: beta delta {b}, alpha delta {a}, omega delta in complement {w}"
    return None


_law(
    "prop2",
    "A vertex is beta-stable iff it is alpha-critical iff it is omega-critical in the complement.",
    "brute-force",
    max_n=4,
    samples=500,
    random_max_n=6,
)((_exhaustive_and_random, _prop2))


# Colouring constructions


def _lem3(p):
    g = _g(p)
    want = _vertex_stable_oracle(g, "chi")
    got = decide(vstab_to_stab(g), "chi", "stable")
    return _is(got == want, f"G+G stable is {got} but G vertex-stable is {want}")


_law("lem3", "The self-join G+G is chi-stable iff G is chi-vertex-stable.", "brute-force", max_n=4)((_exhaustive, _lem3))


def _lem6(p):
    g = _g(p)
    if g.n == 0:
        return None
    v = p["vertex"]
    h = replicate_vertex(g, v)
    base = oracles.brute_force_number(g, "chi")
    chi_h = oracles.brute_force_number(h, "chi")
    values = [
        chi_h,
        chi_h + oracles.brute_force_delta(h, "chi", ElementRef.vertex(v)),
        chi_h + oracles.brute_force_delta(h, "chi", ElementRef.vertex(h.n - 1)),
        chromatic_number(h).value,
    ]
    return _is(all(x == base for x in values), f"replicating vertex {v}: chi {base} versus {values}")


def _graph_vertex_pairs(cfg):
    for g in graphs_up_to(int(cfg["max_n"])):
        for v in g.vertices:
            yield {"graph": graph_payload(g), "vertex": v}


_law(
    "lem6",
    "Adding a nonadjacent twin of a vertex, and then deleting either twin, leaves chi unchanged.",
    "brute-force",
    max_n=5,
)((_graph_vertex_pairs, _lem6))


def _random_edge_subsets(cfg):
    rng = random.Random(cfg["seed"])
    produced = 0
    while produced < int(cfg["samples"]):
        n = rng.randint(2, int(cfg["max_n"]))
        g = random_graph(n, rng.uniform(0.3, 0.9), rng.randrange(1 << 30))
        if g.m == 0:
            continue
        edges = g.edge_list()
        s = sorted(rng.sample(edges, rng.randint(1, len(edges))))
        produced += 1
        yield {"graph": graph_payload(g), "edges": [list(e) for e in s]}


@lru_cache(maxsize=256)
def _lem7_data(key: str):
    p = json.loads(key)
    g = load_graph(p["graph"])
    result = chi_stabilize_edges(g, [tuple(e) for e in p["edges"]])
    refs = [ElementRef.edge(*e) for e in result.graph.edge_list()]
    deltas = {s.element: s.delta for s in statuses(result.graph, "chi", refs)}
    return g, result, deltas


def _lem7(part: int):
    def check(p):
        g, result, deltas = _lem7_data(json.dumps(p, sort_keys=True))
        if part == 1:
            before, after = oracles.brute_force_number(g, "chi"), chromatic_number(result.graph).value
            return _is(after == before + 2 and result.value_shift == 2, f"chi {before} -> {after}, claimed shift {result.value_shift}")
        originals = result.originals()
        for ref, delta in deltas.items():
            source = originals.get(ref)
            if part == 2 and source is None and delta != 0:
                return f"new edge {ref} is critical"
            if part == 3 and source is not None:
                before = oracles.brute_force_delta(g, "chi", source)
                if (before == 0) != (delta == 0):
                    return f"edge {source} has delta {before} in G but {delta} after stabilization"
        return None

    return check


for _part, _claim in (
    (1, "chi-edge stabilization raises chi by exactly two."),
    (2, "After chi-edge stabilization every edge that is not an untouched original edge is stable."),
    (3, "An original edge outside the stabilized set is stable afterwards iff it was stable before."),
):
    _law(f"lem7.p{_part}", _claim, "main-solver", max_n=5, samples=100)((_random_edge_subsets, _lem7(_part)))


@lru_cache(maxsize=512)
def _beta_gadget_data(key: str, which: str):
    p = json.loads(key)
    g = load_graph(p["graph"])
    e = tuple(p["edge"])
    result = (beta_stabilize_edge if which == "stabilize" else two_way_gadget_edge)(g, e)
    return g, e, result, _deltas(analyze(result.graph, "beta"))


def _lem9(part: str):
    def check(p):
        g, e, result, deltas = _beta_gadget_data(json.dumps(p, sort_keys=True), "stabilize")
        if part == "shift":
            before, after = oracles.brute_force_number(g, "beta"), graph_number(result.graph, "beta").value
            return _is(after == before + 2 and result.value_shift == 2, f"beta {before} -> {after}")
        originals = result.originals()
        for ref, delta in deltas.items():
            if ref.kind != "edge":
                continue
            source = originals.get(ref)
            if source is None and delta != 0:
                return f"gadget edge {ref} is beta-critical"
            if source is not None:
                before = oracles.brute_force_delta(g, "beta", source)
                if (before == 0) != (delta == 0):
                    return f"edge {source} has beta delta {before} before and {delta} after"
        return None

    return check


_law("lem9.shift", "The cover gadget on one edge raises beta by exactly two.", "brute-force", max_n=6, samples=100)(
    (_random_with_edge, _lem9("shift"))
)
_law(
    "lem9.status",
    "The cover gadget's own edges are beta-stable and every other edge keeps its beta status.",
    "brute-force",
    max_n=6,
    samples=100,
)((_random_with_edge, _lem9("status")))


def _lem13(part: int):
    def check(p):
        g, e, result, deltas = _beta_gadget_data(json.dumps(p, sort_keys=True), "two-way")
        if part == 1:
            before, after = oracles.brute_force_number(g, "beta"), graph_number(result.graph, "beta").value
            return _is(after == before + 6 and result.value_shift == 6, f"beta {before} -> {after}")
        gadget_edge = ElementRef.edge(*e)
        for ref, delta in deltas.items():
            if ref.kind == "vertex":
                continue
            in_g = max(ref.ids) < g.n
            if ref.kind == "edge":
                if part == 2 and in_g and ref != gadget_edge:
                    before = oracles.brute_force_delta(g, "beta", ref)
                    if (before == 0) != (delta == 0):
                        return f"edge {ref} has beta delta {before} before and {delta} after"
                if part == 3 and (not in_g or ref == gadget_edge) and delta != 0:
                    return f"edge {ref} is beta-critical"
            else:
                if part == 4 and in_g:
                    before = oracles.brute_force_delta(g, "beta", ref)
                    if (before == 0) != (delta == 0):
                        return f"nonedge {ref} has beta delta {before} before and {delta} after"
                if part == 5 and not in_g and delta != 0:
                    return f"new nonedge {ref} is beta-frozen"
        return None

    return check


for _part, _claim in (
    (1, "The two-way gadget on one edge raises beta by exactly six."),
    (2, "Every other original edge keeps its beta status under the two-way gadget."),
    (3, "The gadgetized edge and all gadget edges are beta-stable."),
    (4, "Every original nonedge keeps its beta status under the two-way gadget."),
    (5, "Every nonedge involving a gadget vertex is beta-unfrozen."),
):
    _law(f"lem13.p{_part}", _claim, "brute-force", max_n=5, samples=100)((_random_with_edge, _lem13(_part)))


# AND combinators

_AND_POOL = ("K1", "K2", "P3", "C4", "C5", "K3uK3")


def _tuples(cfg):
    pool = list(cfg["pool"])
    for size in range(2, int(cfg["max_arity"]) + 1):
        for names in combinations_with_replacement(pool, size):
            yield {"graphs": list(names)}


def _chi_verdict_oracle(g: Graph, prop: str) -> bool:
    kind = {"stable": "edge", "vertex-stable": "vertex", "unfrozen": "nonedge"}[prop]
    if kind == "edge":
        refs = [ElementRef.edge(*e) for e in g.edge_list()]
    elif kind == "vertex":
        refs = [ElementRef.vertex(v) for v in g.vertices]
    else:
        refs = [ElementRef.nonedge(*e) for e in g.nonedges()]
    return all(oracles.brute_force_delta(g, "chi", r) == 0 for r in refs)


def _thm3(flavor: str, prop: str):
    def check(p):
        graphs = [NAMED_GRAPHS[name] for name in p["graphs"]]
        result = join_and(graphs, flavor)
        want = all(_chi_verdict_oracle(h, prop) for h in graphs)
        got = decide(result.graph, "chi", prop)
        total = sum(oracles.brute_force_number(h, "chi") for h in graphs)
        chi = chromatic_number(result.graph).value
        if chi != total:
            return f"chi of the join is {chi}, sum of inputs {total}"
        return _is(got == want, f"join {prop} is {got}, all inputs {want}")

    return check


_law(
    "thm3.vertex-stability",
    "The join is vertex-stable iff every input is, and chi adds up under the join.",
    "brute-force",
    pool=_AND_POOL,
    max_arity=3,
)((_tuples, _thm3("vertex-stability", "vertex-stable")))
_law(
    "thm3.unfrozenness",
    "The join is unfrozen iff every input is, and chi adds up under the join.",
    "brute-force",
    pool=_AND_POOL,
    max_arity=3,
)((_tuples, _thm3("unfrozenness", "unfrozen")))


def _cor2(p):
    graphs = [NAMED_GRAPHS[name] for name in p["graphs"]]
    result = stabilized_join_and(graphs)
    want = all(_chi_verdict_oracle(h, "stable") for h in graphs)
    got = decide(result.graph, "chi", "stable")
    return _is(got == want, f"stabilized join stable is {got}, all inputs stable {want}")


_law(
    "cor2",
    "The join with every join edge chi-stabilized is chi-stable iff every input is.",
    "brute-force",
    pool=_AND_POOL,
    max_arity=3,
)((_tuples, _cor2))


# Formulas


def _random_formulas(cfg):
    rng = random.Random(cfg["seed"])
    for _ in range(int(cfg["samples"])):
        n = rng.randint(1, int(cfg["max_vars"]))
        phi = random_cnf(n, rng.randint(0, int(cfg["max_clauses"])), int(cfg["max_width"]), rng.randrange(1 << 30))
        yield {"formula": formula_payload(phi)}


def _lem4(p):
    phi = load_formula(p["formula"])
    out = cnf.to_exact_3cnf(phi)
    if not out.is_exact(3):
        return f"output widths {dict(out.widths())}"
    sat, per_clause = oracles.brute_force_stability(phi)
    stable = sat or not any(per_clause)
    res = cnf.formula_stability(out)
    if res.satisfiable != sat:
        return f"satisfiable {sat} before, {res.satisfiable} after"
    if res.stable != stable:
        return f"stable {stable} before, {res.stable} after"
    if out.num_vars <= oracles.MAX_VARS:
        o_sat, o_per = oracles.brute_force_stability(out)
        if (o_sat or not any(o_per)) != stable:
            return "oracle disagrees with the formula solver on the output"
    return None


_law(
    "lem4",
    "Conversion to exact-3CNF preserves satisfiability and formula stability in both directions.",
    "brute-force",
    samples=200,
    max_vars=4,
    max_clauses=6,
    max_width=5,
)((_random_formulas, _lem4))


def _mixed(cfg):
    for phi in mixed_3cnf_corpus(int(cfg["samples"]), int(cfg["seed"]), int(cfg["max_vars"])):
        yield {"formula": formula_payload(phi)}


def _mixed_pairs(cfg):
    formulas = list(mixed_3cnf_corpus(2 * int(cfg["samples"]), int(cfg["seed"]), int(cfg["max_vars"])))
    for a, b in zip(formulas[0::2], formulas[1::2]):
        yield {"left": formula_payload(a), "right": formula_payload(b)}


def _oracle_stable(phi) -> bool:
    sat, per_clause = oracles.brute_force_stability(phi)
    return sat or not any(per_clause)


def _thm4_padding(p):
    phi = load_formula(p["formula"])
    out = cnf.unsat_padding(phi)
    sat = oracles.brute_force_satisfiable(phi)
    res = cnf.formula_stability(out)
    if res.satisfiable:
        return "padded formula is satisfiable"
    if out.m != phi.m + 8:
        return f"padded formula has {out.m} clauses, expected {phi.m + 8}"
    if _oracle_stable(out) != res.stable:
        return "oracle disagrees with the formula solver on the output"
    return _is(res.stable == (not sat), f"output stable {res.stable}, input satisfiable {sat}")


def _thm4_sat(p):
    phi = load_formula(p["formula"])
    raw = cnf.sat_to_stable_cnf(phi, exact=False)
    if raw.m != 3 * phi.m + 1 or raw.widths() != Counter({4: 3 * phi.m, 3: 1}):
        return f"intermediate formula widths {dict(raw.widths())}"
    sat = oracles.brute_force_satisfiable(phi)
    res = cnf.formula_stability(cnf.sat_to_stable_cnf(phi))
    raw_res = cnf.formula_stability(raw)
    if raw_res.stable != raw_res.satisfiable:
        return "intermediate formula is stable without being satisfiable"
    return _is(res.stable == sat, f"output stable {res.stable}, input satisfiable {sat}")


def _thm4_or2(p):
    a, b = load_formula(p["left"]), load_formula(p["right"])
    raw = cnf.or2_combine(a, b, exact=False)
    if raw.m != a.m * b.m or not raw.is_exact(6):
        return f"product has {raw.m} clauses of widths {dict(raw.widths())}"
    want = _oracle_stable(a) or _oracle_stable(b)
    got = cnf.formula_stability(cnf.or2_combine(a, b)).stable
    return _is(got == want, f"product stable {got}, an input stable {want}")


_FORMULA_FAMILY = dict(samples=200, max_vars=4)
_law(
    "thm4.padding",
    "Appending an eight-clause block on fresh variables gives a stable formula iff the input is unsatisfiable.",
    "brute-force",
    **_FORMULA_FAMILY,
)((_mixed, _thm4_padding))
_law(
    "thm4.sat-to-stable",
    "The three-copy selector construction is stable iff the input formula is satisfiable.",
    "brute-force",
    **_FORMULA_FAMILY,
)((_mixed, _thm4_sat))
_law(
    "thm4.or2",
    "The clause-product of two formulas is stable iff at least one of them is.",
    "brute-force",
    **_FORMULA_FAMILY,
)((_mixed_pairs, _thm4_or2))


def _exact3(cfg):
    for phi in exact3_corpus(int(cfg["samples"]), int(cfg["seed"]), int(cfg["num_vars"]), int(cfg["max_clauses"])):
        yield {"formula": formula_payload(phi)}


def _lem5(p):
    phi = load_formula(p["formula"])
    cm = cai_meyer_graph(phi)
    sat = oracles.brute_force_satisfiable(phi)
    chi = chromatic_number(cm.graph).value
    if chi != (3 if sat else 4):
        return f"chi {chi} for a formula with satisfiable={sat}"
    critical = [s.delta != 0 for s in statuses(cm.graph, "chi", [ElementRef.vertex(t) for t in cm.t_vertices])]
    stable = _oracle_stable(phi)
    return _is(any(critical) == (not stable), f"formula stable {stable}, clause vertices critical {critical}")


_law(
    "lem5",
    "A 3CNF formula is unstable iff deleting some clause's t-vertex lowers chi of its colouring graph.",
    "brute-force",
    samples=50,
    num_vars=3,
    max_clauses=4,
)((_exact3, _lem5))


def _thm5(p):
    phi = load_formula(p["formula"])
    g = stable3cnf_to_vertex_stability(phi)
    cm = cai_meyer_graph(phi)
    if g.n != 2 * cm.graph.n - phi.m:
        return f"{g.n} vertices, expected {2 * cm.graph.n - phi.m}"
    stable = _oracle_stable(phi)
    got = decide(g, "chi", "vertex-stable")
    return _is(got == stable, f"replicated graph vertex-stable {got}, formula stable {stable}")


_law(
    "thm5",
    "Replicating every non-t vertex of the colouring graph gives a vertex-stable graph iff the formula is stable.",
    "brute-force",
    samples=50,
    num_vars=3,
    max_clauses=4,
)((_exact3, _thm5))


# Graph pipelines


def _thm6(p):
    g = _g(p)
    u = union_double(g)
    chi_g, chi_u = oracles.brute_force_number(g, "chi"), chromatic_number(u).value
    ok = chi_g == chi_u and decide(u, "chi", "stable") and decide(u, "chi", "vertex-stable")
    return _is(ok, f"G u G: chi {chi_u} versus {chi_g}, or a critical element")


_law(
    "thm6",
    "The disjoint union of a graph with itself is chi-stable and chi-vertex-stable with the same chi.",
    "brute-force",
    max_n=4,
)((_exhaustive, _thm6))


def _thm7(p):
    g = _g(p)
    truth = _vertex_stable_oracle(g, "beta")
    analyzed = _analysis(g, "beta").verdicts["vertex-stable"]
    closed = closed_form_verdict(g, "beta-vertex-stable")
    return _is(truth == analyzed == closed, f"beta-vertex-stable: oracle {truth}, analyze {analyzed}, closed form {closed}")


_law("thm7", "The closed form for beta-vertex-stability (no edges) matches vertex deletion.", "brute-force", max_n=5)(
    (_exhaustive, _thm7)
)


def _closed_forms(p):
    g = _g(p)
    for name in CLOSED_FORM_PREDICATES:
        xi, _, prop = name.partition("-")
        if prop == "vertex-stable":
            truth = all(oracles.brute_force_delta(g, xi, ElementRef.vertex(v)) == 0 for v in g.vertices)
        else:
            additions = enumerate_vertex_addition(g, xi)
            oracle_additions = _addition_deltas(g, xi)
            if [d for _, d in additions] != oracle_additions:
                return f"{xi} vertex-addition deltas disagree with the oracle"
            truth = all(d == 0 for _, d in additions)
            if prop == "vertex-two-way-stable":
                truth = truth and _vertex_stable_oracle(g, xi)
        if closed_form_verdict(g, name) != truth:
            return f"{name}: closed form {closed_form_verdict(g, name)}, enumeration {truth}"
    return None


_law(
    "thm10",
    "The closed forms for vertex addition agree with trying every neighbourhood of a new vertex.",
    "brute-force",
    max_n=4,
)((_exhaustive, _closed_forms))


def _thm9(p):
    g, h = _g(p, "g"), _g(p, "h")
    want = oracles.brute_force_number(g, "beta") > oracles.brute_force_number(h, "beta")
    result = compare_vc_to_beta_stability(g, h)
    got = decide(result.graph, "beta", "stable")
    return _is(got == want, f"output beta-stable {got}, beta(G) > beta(H) {want}")


_law(
    "thm9.end2end",
    "The cover-comparison graph is beta-stable iff beta(G) > beta(H).",
    "brute-force",
    max_n_cap=3,
    max_n=3,
)((_pairs, _thm9))


def _thm9_sizes(p):
    g, h = _g(p, "g"), _g(p, "h")
    if h.m == 0:
        return None
    stab = beta_stabilize_edges(h)
    if stab.graph.n != h.n + 4 * h.m:
        return f"stabilized side has {stab.graph.n} vertices"
    if graph_number(stab.graph, "beta").value != oracles.brute_force_number(h, "beta") + 2 * h.m:
        return "stabilized side has the wrong beta"
    if not decide(stab.graph, "beta", "stable"):
        return "stabilized side is not beta-stable"
    result = compare_vc_to_beta_stability(g, h)
    c = result.parameters["side_order"]
    if result.parameters["stabilized_vertices"] != stab.graph.n:
        return "stabilized side size differs inside the pipeline"
    return _is(result.graph.n == 2 * c + 4 * c * c, f"{result.graph.n} vertices for sides of order {c}")


_law(
    "thm9.sizes",
    "Stabilizing every edge adds four vertices and two to beta per edge and leaves a beta-stable graph.",
    "brute-force",
    max_n_cap=3,
    max_n=3,
)((_pairs, _thm9_sizes))


def _thm11(p):
    g, h = _g(p, "g"), _g(p, "h")
    want = oracles.brute_force_number(g, "beta") <= oracles.brute_force_number(h, "beta")
    result = compare_vc_to_beta_unfrozenness(g, h)
    if not result.parameters["bypass"] and result.graph.n != 4 * (g.n + h.n):
        return f"output has {result.graph.n} vertices, expected {4 * (g.n + h.n)}"
    got = decide(result.graph, "beta", "unfrozen")
    return _is(got == want, f"output beta-unfrozen {got}, beta(G) <= beta(H) {want}")


_law(
    "thm11.end2end",
    "The cover-comparison join is beta-unfrozen iff beta(G) <= beta(H).",
    "brute-force",
    max_n_cap=3,
    max_n=3,
)((_pairs, _thm11))


def _thm12(p):
    g, h = _g(p, "g"), _g(p, "h")
    want = oracles.brute_force_number(g, "chi") <= oracles.brute_force_number(h, "chi")
    u = conditional_unfrozenness_reduction(g, h, exact_unfreezer())
    got = decide(u, "chi", "unfrozen")
    return _is(got == want, f"output unfrozen {got}, chi(G) <= chi(H) {want}")


_law(
    "thm12",
    "Given a valid unfreezer, the union construction is chi-unfrozen iff chi(G) <= chi(H).",
    "brute-force",
    max_n_cap=4,
    max_n=4,
)((_pairs, _thm12))


_SAT_CLAUSE = cnf.CnfFormula(3, [(1, 2, 3)])
_UNSAT_BLOCK = cnf.CnfFormula(3, cnf.eight_block(1))


def _monotone_lists(cfg):
    """Pairs of formula lists whose satisfiable members form a prefix."""
    for k in cfg["lengths"]:
        lists = [[_SAT_CLAUSE] * s + [_UNSAT_BLOCK] * (k - s) for s in range(k, -1, -1)]
        for phis in lists:
            for psis in lists:
                yield {"phis": [formula_payload(f) for f in phis], "psis": [formula_payload(f) for f in psis]}


def _thm13(p):
    phis = [load_formula(x) for x in p["phis"]]
    psis = [load_formula(x) for x in p["psis"]]
    g, h = compare_colorability_instance(phis, psis)
    sat_phi = sum(oracles.brute_force_satisfiable(f) for f in phis)
    sat_psi = sum(oracles.brute_force_satisfiable(f) for f in psis)
    chi_g, chi_h = chromatic_number(g).value, chromatic_number(h).value
    k = len(phis)
    if chi_g != 4 * k - sat_psi or chi_h != 4 * k - sat_phi:
        return f"chi(G) {chi_g}, chi(H) {chi_h} for k={k}, satisfiable counts {sat_phi}, {sat_psi}"
    return _is((chi_g <= chi_h) == (sat_phi <= sat_psi), "comparison mismatch")


_law(
    "thm13",
    "For lists with satisfiable prefixes, chi(G) <= chi(H) iff at most as many of the first list are satisfiable.",
    "brute-force",
    lengths=(1, 2),
)((_monotone_lists, _thm13))


def _thm14(p):
    g = _g(p)
    if g.n == 1:
        # The single vertex is vacuously unfrozen while two copies of it leave a frozen nonedge.
        return None
    want = _chi_verdict_oracle(g, "unfrozen")
    got = decide(union_double(g), "chi", "two-way-stable")
    return _is(got == want, f"G u G two-way-stable {got}, G unfrozen {want}")


_law(
    "thm14",
    "G u G is chi-two-way-stable iff G is chi-unfrozen, for every graph other than the single vertex.",
    "brute-force",
    max_n=4,
)((_exhaustive, _thm14))


def _thm15(p):
    g = _g(p)
    want = all(oracles.brute_force_delta(g, "beta", ElementRef.nonedge(*e)) == 0 for e in g.nonedges())
    got = decide(beta_unfrozen_to_beta_twoway(g).graph, "beta", "two-way-stable")
    return _is(got == want, f"gadget graph beta-two-way-stable {got}, G beta-unfrozen {want}")


_law(
    "thm15",
    "Attaching the two-way gadget to every edge gives a beta-two-way-stable graph iff G is beta-unfrozen.",
    "brute-force",
    max_n=4,
)((_exhaustive, _thm15))


def _plan(p):
    g = _g(p)
    plan = query_plan(g)
    if len(plan.queries) != (1 + g.m + g.n) * (g.n + 1):
        return f"{len(plan.queries)} queries"
    got = execute_plan(plan)
    verdicts = _analysis(g, "chi").verdicts
    want = {"stable": verdicts["stable"], "vertex-stable": verdicts["vertex-stable"]}
    return _is(got == want, f"plan gives {got}, analyze gives {want}")


_law(
    "plan",
    "Answering the parallel colourability queries and combining them reproduces the chi verdicts.",
    "main-solver",
    max_n=4,
)((_exhaustive, _plan))


def _solvers(p):
    g = _g(p)
    for xi in ("alpha", "beta", "chi", "omega"):
        got, want = graph_number(g, xi).value, oracles.brute_force_number(g, xi)
        if got != want:
            return f"{xi}: solver {got}, oracle {want}"
    return None


_law("solvers", "All four exact solvers agree with exhaustive enumeration.", "brute-force", max_n=5)(
    (_exhaustive, _solvers)
)


# Claims that must each have at least one law; a law covers a claim when its id is the claim or starts with "claim.".
REQUIRED_CLAIMS = (
    "obs1", "obs2", "obs3", "obs4",
    "prop1.1", "prop1.2", "prop1.3", "prop1.4", "prop1.5", "prop1.6", "prop1.7", "prop2",
    "lem3", "lem4", "lem5", "lem6", "lem7", "lem9", "lem13",
    "thm3", "thm4", "thm5", "thm6", "thm7",
    "thm9", "thm10", "thm11", "thm12", "thm13", "thm14", "thm15",
    "cor2", "thm4.padding", "thm4.sat-to-stable", "thm4.or2", "plan",
)  # fmt: skip


def uncovered_claims() -> list[str]:
    return [c for c in REQUIRED_CLAIMS if not any(i == c or i.startswith(c + ".") for i in LAWS)]
