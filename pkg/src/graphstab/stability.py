"""Element statuses and graph-level stability verdicts for alpha, beta, chi and omega.

An edge or vertex is *stable* when deleting it leaves the graph number
unchanged and *critical* otherwise; a nonedge is *unfrozen* when adding it
leaves the number unchanged and *frozen* otherwise. Graph-level verdicts
quantify over all elements, so graphs without the relevant elements satisfy
them vacuously.

Deletion queries under chi and beta are answered as one decision each: one
more or one fewer colour/cover vertex always repairs a single-element edit,
so the new value is one of two known numbers.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterable, Literal, Mapping

from . import coloring, cover
from .budget import Budget
from .clique import max_clique
from .graph import ElementRef, Graph, add_vertex
from .solvers import GraphNumber, chromatic_number, graph_number, is_k_colorable, roles_of, vertex_cover_number

__all__ = [
    "CLOSED_FORM_PREDICATES",
    "ElementStatus",
    "QueryPlan",
    "StabilityReport",
    "analyze",
    "closed_form_verdict",
    "decide",
    "edge_status",
    "enumerate_vertex_addition",
    "execute_plan",
    "nonedge_status",
    "query_plan",
    "vertex_status",
]

Status = Literal["stable", "critical", "unfrozen", "frozen"]

VERDICTS = (
    "stable",
    "vertex-stable",
    "unfrozen",
    "vertex-unfrozen",
    "two-way-stable",
    "vertex-two-way-stable",
    "critical",
    "vertex-critical",
)
_K_VERDICTS = ("stable", "vertex-stable", "unfrozen", "vertex-unfrozen", "two-way-stable", "vertex-two-way-stable")


@dataclass(frozen=True)
class ElementStatus:
    element: ElementRef
    status: Status
    delta: int

    @property
    def unchanged(self) -> bool:
        return self.delta == 0


def _status(ref: ElementRef, delta: int) -> ElementStatus:
    if ref.kind == "nonedge":
        return ElementStatus(ref, "unfrozen" if delta == 0 else "frozen", delta)
    return ElementStatus(ref, "stable" if delta == 0 else "critical", delta)


class _Evaluator:
    """Values of one graph number after single-element edits of one graph."""

    def __init__(self, g: Graph, xi: GraphNumber, time_budget: float | None = None, node_budget: int | None = None):
        self.g = g
        self.xi = xi
        self._limits = {}
        if time_budget is not None:
            self._limits["max_seconds"] = time_budget
        if node_budget is not None:
            self._limits["max_nodes"] = node_budget
        self.roles = roles_of(g)
        b = self.budget(f"{xi.value} of the input graph")
        if xi is GraphNumber.CHI:
            self.value = chromatic_number(g, b).value
        elif xi is GraphNumber.OMEGA:
            self.value = max_clique(g.adjacency, (1 << g.n) - 1, b).bit_count()
        else:
            beta = vertex_cover_number(g, b).value
            self.value = beta if xi is GraphNumber.BETA else g.n - beta
        self._sessions: dict = {}

    def budget(self, query: str) -> Budget:
        return Budget(query=query, **self._limits)

    def _chi_session(self, k: int) -> coloring.ChiSession:
        if k not in self._sessions:
            self._sessions[k] = coloring.ChiSession(self.g.adjacency, k, self.roles)
        return self._sessions[k]

    def _beta_session(self) -> cover.BetaSession:
        if "beta" not in self._sessions:
            self._sessions["beta"] = cover.BetaSession(self.g.adjacency, self.roles)
        return self._sessions["beta"]

    def located_in_core(self, ref: ElementRef) -> bool:
        """Whether an element lies outside every hanging block (cheap to query)."""
        if self.xi is GraphNumber.CHI:
            owner = self._chi_session(max(self.value - 1, 0)).owner
        elif self.xi is GraphNumber.OMEGA:
            return True
        else:
            owner = self._beta_session().owner
        return all(i not in owner for i in ref.ids)

    def delta(self, ref: ElementRef) -> int:
        g, xi = self.g, self.xi
        g.check(ref)
        b = self.budget(f"{xi.value} after editing {ref}")
        if ref.kind == "vertex":
            (v,) = ref.ids
            removed = [(v, w) for w in g.neighbors(v)]
            added = []
        elif ref.kind == "edge":
            removed, added = [ref.ids], []
        else:
            removed, added = [], [ref.ids]
        if xi is GraphNumber.CHI:
            if ref.kind == "nonedge":
                return 0 if self._chi_session(self.value).colorable_after(b, added=added) else 1
            if self.value == 0:
                return 0
            k = self.value - 1
            if k == 0:
                smaller = ref.kind == "vertex" and g.n == 1
            else:
                smaller = self._chi_session(k).colorable_after(b, removed=removed)
            return -1 if smaller else 0
        if xi is GraphNumber.OMEGA:
            adj = list(g.adjacency)
            mask = (1 << g.n) - 1
            for u, w in removed:
                adj[u] &= ~(1 << w)
                adj[w] &= ~(1 << u)
            for u, w in added:
                adj[u] |= 1 << w
                adj[w] |= 1 << u
            if ref.kind == "vertex":
                mask &= ~(1 << ref.ids[0])
            return max_clique(adj, mask, b).bit_count() - self.value
        beta = self._beta_session().value_after(b, removed, added)
        if xi is GraphNumber.BETA:
            return beta - self.value
        order = g.n - (1 if ref.kind == "vertex" else 0)
        return (order - beta) - self.value

    def status(self, ref: ElementRef) -> ElementStatus:
        return _status(ref, self.delta(ref))


def edge_status(g: Graph, e: tuple[int, int], xi: GraphNumber | str) -> ElementStatus:
    ref = ElementRef.edge(*e)
    g.check(ref)
    return _Evaluator(g, GraphNumber.parse(xi)).status(ref)


def vertex_status(g: Graph, v: int, xi: GraphNumber | str) -> ElementStatus:
    ref = ElementRef.vertex(v)
    g.check(ref)
    return _Evaluator(g, GraphNumber.parse(xi)).status(ref)


def nonedge_status(g: Graph, e: tuple[int, int], xi: GraphNumber | str) -> ElementStatus:
    ref = ElementRef.nonedge(*e)
    g.check(ref)
    return _Evaluator(g, GraphNumber.parse(xi)).status(ref)


# Vertex addition may attach a new vertex to any subset of the graph, so these
# verdicts are taken from closed forms rather than 2^n trials.
CLOSED_FORM_PREDICATES: Mapping[str, Callable[[Graph], bool]] = {
    "beta-vertex-stable": lambda g: g.m == 0,
    "chi-vertex-unfrozen": lambda g: False,
    "beta-vertex-unfrozen": lambda g: g.n == 0,
    "alpha-vertex-unfrozen": lambda g: False,
    "omega-vertex-unfrozen": lambda g: False,
    "beta-vertex-two-way-stable": lambda g: g.n == 0,
    "chi-vertex-two-way-stable": lambda g: False,
    "alpha-vertex-two-way-stable": lambda g: False,
    "omega-vertex-two-way-stable": lambda g: False,
}


def closed_form_verdict(g: Graph, predicate: str) -> bool:
    try:
        return CLOSED_FORM_PREDICATES[predicate](g)
    except KeyError:
        known = ", ".join(CLOSED_FORM_PREDICATES)
        raise ValueError(f"unknown predicate {predicate!r}; known: {known}") from None


def enumerate_vertex_addition(
    g: Graph, xi: GraphNumber | str, threshold: int = 12
) -> list[tuple[frozenset[int], int]]:
    """Delta of the graph number for every possible neighbourhood of one added vertex."""
    xi = GraphNumber.parse(xi)
    if g.n > threshold:
        raise ValueError(f"{g.n} vertices exceed the enumeration threshold {threshold}")
    base = graph_number(g, xi).value
    out = []
    for size in range(g.n + 1):
        for nbhd in combinations(range(g.n), size):
            out.append((frozenset(nbhd), graph_number(add_vertex(g, nbhd), xi).value - base))
    return out


@dataclass(frozen=True)
class StabilityReport:
    graph_number: GraphNumber
    value: int
    edge_statuses: tuple[ElementStatus, ...]
    vertex_statuses: tuple[ElementStatus, ...]
    nonedge_statuses: tuple[ElementStatus, ...]
    verdicts: Mapping[str, bool]
    k: int | None = None

    def elements(self) -> tuple[ElementStatus, ...]:
        return self.edge_statuses + self.vertex_statuses + self.nonedge_statuses

    def to_json(self) -> dict:
        return {
            "xi": self.graph_number.value,
            "value": self.value,
            "k": self.k,
            "elements": [
                {"kind": s.element.kind, "ids": list(s.element.ids), "status": s.status, "delta": s.delta}
                for s in self.elements()
            ],
            "verdicts": dict(self.verdicts),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, data: Mapping) -> "StabilityReport":
        by_kind: dict[str, list[ElementStatus]] = {"edge": [], "vertex": [], "nonedge": []}
        for item in data["elements"]:
            ref = ElementRef(item["kind"], tuple(item["ids"]))
            by_kind[ref.kind].append(ElementStatus(ref, item["status"], int(item["delta"])))
        return cls(
            GraphNumber.parse(data["xi"]),
            int(data["value"]),
            tuple(by_kind["edge"]),
            tuple(by_kind["vertex"]),
            tuple(by_kind["nonedge"]),
            dict(data["verdicts"]),
            data.get("k"),
        )

    def problems(self) -> list[str]:
        """Internal inconsistencies; empty for every report ``analyze`` produces."""
        out = []
        for s in self.elements():
            expect = _status(s.element, s.delta).status
            if s.status != expect:
                out.append(f"{s.element}: status {s.status} but delta {s.delta}")
        recomputed = _verdicts(self.graph_number, self.value, self.edge_statuses, self.vertex_statuses,
                               self.nonedge_statuses, self._vertex_unfrozen(), self.k)
        for name, val in recomputed.items():
            if self.verdicts.get(name) != val:
                out.append(f"verdict {name} is {self.verdicts.get(name)} but the statuses give {val}")
        return out

    def _vertex_unfrozen(self) -> bool:
        return bool(self.verdicts.get("vertex-unfrozen"))


def _verdicts(xi, value, edges, vertices, nonedges, vertex_unfrozen, k) -> dict[str, bool]:
    v = {
        "stable": all(s.unchanged for s in edges),
        "vertex-stable": all(s.unchanged for s in vertices),
        "unfrozen": all(s.unchanged for s in nonedges),
        "vertex-unfrozen": vertex_unfrozen,
        "critical": all(not s.unchanged for s in edges),
        "vertex-critical": all(not s.unchanged for s in vertices),
    }
    v["two-way-stable"] = v["stable"] and v["unfrozen"]
    v["vertex-two-way-stable"] = v["vertex-stable"] and v["vertex-unfrozen"]
    if k is not None:
        for name in _K_VERDICTS:
            v[f"k-{name}"] = v[name] and value == k
    return v


def _vertex_unfrozen_closed_form(g: Graph, xi: GraphNumber) -> bool:
    return closed_form_verdict(g, f"{xi.value}-vertex-unfrozen")


def analyze(
    g: Graph,
    xi: GraphNumber | str,
    k: int | None = None,
    time_budget: float | None = None,
    node_budget: int | None = None,
) -> StabilityReport:
    """Every element status of ``g`` under ``xi`` plus the graph-level verdicts.

    ``time_budget`` and ``node_budget`` bound each individual solve; running
    out raises ``BudgetExceeded`` naming the query.
    """
    xi = GraphNumber.parse(xi)
    if k is not None and k < 0:
        raise ValueError("k must be non-negative")
    ev = _Evaluator(g, xi, time_budget, node_budget)
    edges = tuple(ev.status(ElementRef.edge(*e)) for e in g.edge_list())
    vertices = tuple(ev.status(ElementRef.vertex(v)) for v in g.vertices)
    nonedges = tuple(ev.status(ElementRef.nonedge(*e)) for e in g.nonedges())
    verdicts = _verdicts(xi, ev.value, edges, vertices, nonedges, _vertex_unfrozen_closed_form(g, xi), k)
    return StabilityReport(xi, ev.value, edges, vertices, nonedges, verdicts, k)


_DECIDABLE = {
    "stable": ("edge", True),
    "critical": ("edge", False),
    "vertex-stable": ("vertex", True),
    "vertex-critical": ("vertex", False),
    "unfrozen": ("nonedge", True),
}


def decide(
    g: Graph,
    xi: GraphNumber | str,
    prop: str,
    time_budget: float | None = None,
    node_budget: int | None = None,
) -> bool:
    """One graph-level verdict, stopping at the first element that refutes it.

    Elements outside hanging blocks are tried first since they are the
    cheapest to settle.
    """
    xi = GraphNumber.parse(xi)
    if prop == "two-way-stable":
        return decide(g, xi, "stable", time_budget, node_budget) and decide(g, xi, "unfrozen", time_budget, node_budget)
    if prop == "vertex-unfrozen":
        return _vertex_unfrozen_closed_form(g, xi)
    if prop == "vertex-two-way-stable":
        return _vertex_unfrozen_closed_form(g, xi) and decide(g, xi, "vertex-stable", time_budget, node_budget)
    if prop not in _DECIDABLE:
        raise ValueError(f"unknown property {prop!r}")
    kind, want_unchanged = _DECIDABLE[prop]
    if kind == "edge":
        refs = [ElementRef.edge(*e) for e in g.edge_list()]
    elif kind == "vertex":
        refs = [ElementRef.vertex(v) for v in g.vertices]
    else:
        refs = [ElementRef.nonedge(*e) for e in g.nonedges()]
    if not refs:
        return True
    ev = _Evaluator(g, xi, time_budget, node_budget)
    refs.sort(key=lambda r: not ev.located_in_core(r))
    return all((ev.delta(r) == 0) == want_unchanged for r in refs)


@dataclass(frozen=True)
class Query:
    """One colourability question: is ``graph`` ``k``-colourable?"""

    label: str
    element: ElementRef | None
    graph: Graph
    k: int


@dataclass(frozen=True)
class QueryPlan:
    queries: tuple[Query, ...]
    combiner: str
    mode: str
    verdict_names: tuple[str, ...] = field(default=())


def query_plan(g: Graph, mode: str = "both") -> QueryPlan:
    """All colourability queries on G, G-e and G-v for every k in 0..|V(G)|.

    Every query is independent of the others' answers, so the whole plan can
    be answered in one parallel round and combined afterwards.
    """
    from .graph import delete_edge, delete_vertex

    if mode not in ("edges", "vertices", "both"):
        raise ValueError("mode must be edges, vertices or both")
    graphs: list[tuple[str, ElementRef | None, Graph]] = [("G", None, g)]
    names = []
    if mode in ("edges", "both"):
        graphs += [(f"G-e{e}", ElementRef.edge(*e), delete_edge(g, e)) for e in g.edge_list()]
        names.append("stable")
    if mode in ("vertices", "both"):
        graphs += [(f"G-v{v}", ElementRef.vertex(v), delete_vertex(g, v)) for v in g.vertices]
        names.append("vertex-stable")
    queries = tuple(Query(label, ref, h, k) for label, ref, h in graphs for k in range(g.n + 1))
    combiner = (
        "chi(H) is the least k with a yes answer on (H, k); "
        "stable iff chi(G-e) = chi(G) for every edge e; "
        "vertex-stable iff chi(G-v) = chi(G) for every vertex v"
    )
    return QueryPlan(queries, combiner, mode, tuple(names))


def execute_plan(plan: QueryPlan, answer: Callable[[Graph, int], bool] = is_k_colorable) -> dict[str, bool]:
    """Answer every query of the plan and combine the answers into verdicts."""
    answers = {(q.label, q.k): answer(q.graph, q.k) for q in plan.queries}
    chi: dict[str, int] = {}
    kinds: dict[str, str | None] = {}
    for q in plan.queries:
        kinds[q.label] = None if q.element is None else q.element.kind
        if answers[(q.label, q.k)] and (q.label not in chi or q.k < chi[q.label]):
            chi[q.label] = q.k
    base = chi["G"]
    out = {}
    if "stable" in plan.verdict_names:
        out["stable"] = all(chi[label] == base for label, kind in kinds.items() if kind == "edge")
    if "vertex-stable" in plan.verdict_names:
        out["vertex-stable"] = all(chi[label] == base for label, kind in kinds.items() if kind == "vertex")
    return out


def statuses(g: Graph, xi: GraphNumber | str, refs: Iterable[ElementRef]) -> list[ElementStatus]:
    """Statuses of selected elements sharing one set of solver caches."""
    ev = _Evaluator(g, GraphNumber.parse(xi))
    return [ev.status(r) for r in refs]

