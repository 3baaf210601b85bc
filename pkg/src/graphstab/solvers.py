"""Exact graph numbers: chromatic, vertex cover, clique and independence number.

Every solve runs under a :class:`Budget`. Running out raises
:class:`BudgetExceeded`; a solver never returns a guess.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping

from . import coloring, cover
from .blocks import bits, role
from .budget import Budget, BudgetExceeded
from .clique import max_clique
from .graph import Graph

__all__ = [
    "Budget",
    "BudgetExceeded",
    "GraphNumber",
    "SolveResult",
    "SolveStats",
    "chromatic_number",
    "clique_number",
    "graph_number",
    "independence_number",
    "is_k_colorable",
    "vertex_cover_number",
    "witness_is_valid",
]


class GraphNumber(str, Enum):
    ALPHA = "alpha"
    BETA = "beta"
    CHI = "chi"
    OMEGA = "omega"

    @classmethod
    def parse(cls, name: "str | GraphNumber") -> "GraphNumber":
        try:
            return cls(name)
        except ValueError:
            raise ValueError(f"unknown graph number {name!r}; expected one of alpha, beta, chi, omega") from None


@dataclass(frozen=True)
class SolveStats:
    nodes: int
    elapsed: float


@dataclass(frozen=True)
class SolveResult:
    """``witness`` is a colouring (vertex -> colour) for chi and a vertex set otherwise."""

    value: int
    witness: Mapping[int, int] | frozenset[int] | None = None
    stats: SolveStats = field(default_factory=lambda: SolveStats(0, 0.0))


def roles_of(g: Graph) -> list[str | None] | None:
    if all(name is None for name in g.labels):
        return None
    return [role(name) for name in g.labels]


def _budget(budget: Budget | None, query: str) -> Budget:
    return Budget(query=query) if budget is None else budget


def _stats(b: Budget) -> SolveStats:
    return SolveStats(b.nodes, b.elapsed)


def _as_set(mask: int) -> frozenset[int]:
    return frozenset(bits(mask))


def chromatic_number(g: Graph, budget: Budget | None = None) -> SolveResult:
    b = _budget(budget, f"chi of a {g.n}-vertex graph")
    value, color = coloring.chromatic(g.adjacency, b, roles_of(g))
    return SolveResult(value, dict(enumerate(color)), _stats(b))


def is_k_colorable(g: Graph, k: int, budget: Budget | None = None) -> bool:
    if k < 0:
        raise ValueError("k must be non-negative")
    b = _budget(budget, f"{k}-colourability of a {g.n}-vertex graph")
    return coloring.colorable(g.adjacency, k, b, roles=roles_of(g))[0]


def vertex_cover_number(g: Graph, budget: Budget | None = None) -> SolveResult:
    b = _budget(budget, f"beta of a {g.n}-vertex graph")
    value, mask = cover.vertex_cover(g.adjacency, (1 << g.n) - 1, b, witness=True, roles=roles_of(g))
    return SolveResult(value, _as_set(mask), _stats(b))


def independence_number(g: Graph, budget: Budget | None = None) -> SolveResult:
    b = _budget(budget, f"alpha of a {g.n}-vertex graph")
    value, mask = cover.vertex_cover(g.adjacency, (1 << g.n) - 1, b, witness=True, roles=roles_of(g))
    return SolveResult(g.n - value, _as_set(((1 << g.n) - 1) & ~mask), _stats(b))


def clique_number(g: Graph, budget: Budget | None = None) -> SolveResult:
    b = _budget(budget, f"omega of a {g.n}-vertex graph")
    mask = max_clique(g.adjacency, (1 << g.n) - 1, b)
    return SolveResult(mask.bit_count(), _as_set(mask), _stats(b))


_DISPATCH = {
    GraphNumber.ALPHA: independence_number,
    GraphNumber.BETA: vertex_cover_number,
    GraphNumber.CHI: chromatic_number,
    GraphNumber.OMEGA: clique_number,
}


def graph_number(g: Graph, xi: GraphNumber | str, budget: Budget | None = None) -> SolveResult:
    return _DISPATCH[GraphNumber.parse(xi)](g, budget)


def witness_is_valid(g: Graph, xi: GraphNumber | str, result: SolveResult) -> bool:
    """Re-check a witness in linear time."""
    xi = GraphNumber.parse(xi)
    w = result.witness
    if xi is GraphNumber.CHI:
        if set(w) != set(g.vertices):
            return False
        if any(w[u] == w[v] for u, v in g.edges):
            return False
        return len(set(w.values())) == result.value
    if len(w) != result.value or any(not 0 <= v < g.n for v in w):
        return False
    if xi is GraphNumber.BETA:
        return all(u in w or v in w for u, v in g.edges)
    if xi is GraphNumber.ALPHA:
        return not any(u in w and v in w for u, v in g.edges)
    return all(g.has_edge(u, v) for u in w for v in w if u < v)
