"""Exhaustive ground truth for small graphs and formulas.

Nothing here touches the exact solvers or the search code behind them: graph
numbers come from plain subset and partition enumeration, satisfiability
from walking every assignment. The size limits keep each call well under a
second.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterator, Sequence

from ..cnf import CnfFormula
from ..graph import ElementRef, Graph

__all__ = [
    "MAX_CHI_ORDER",
    "MAX_SUBSET_ORDER",
    "MAX_VARS",
    "OracleLimit",
    "brute_force_delta",
    "brute_force_number",
    "brute_force_satisfiable",
    "brute_force_stability",
    "optimal_colorings",
]

MAX_SUBSET_ORDER = 10
MAX_CHI_ORDER = 8
MAX_VARS = 16


class OracleLimit(ValueError):
    """The instance is too large for exhaustive enumeration."""


def _edge_set(edges) -> set[frozenset[int]]:
    return {frozenset(e) for e in edges}


def _independent(nodes: Sequence[int], edges: set[frozenset[int]]) -> bool:
    return not any(frozenset(p) in edges for p in combinations(nodes, 2))


def _clique(nodes: Sequence[int], edges: set[frozenset[int]]) -> bool:
    return all(frozenset(p) in edges for p in combinations(nodes, 2))


def _covers(nodes: Sequence[int], edges: set[frozenset[int]]) -> bool:
    chosen = set(nodes)
    return all(e & chosen for e in edges)


def _partitions(items: list[int]) -> Iterator[list[list[int]]]:
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]


def _colorings(n: int, edges: set[frozenset[int]]) -> Iterator[list[list[int]]]:
    """Every partition of the vertices into independent sets."""
    for part in _partitions(list(range(n))):
        if all(_independent(block, edges) for block in part):
            yield part


def _number(n: int, edges: set[frozenset[int]], xi: str) -> int:
    if xi == "chi":
        if n > MAX_CHI_ORDER:
            raise OracleLimit(f"chi oracle handles at most {MAX_CHI_ORDER} vertices, got {n}")
        return min((len(p) for p in _colorings(n, edges)), default=0)
    if n > MAX_SUBSET_ORDER:
        raise OracleLimit(f"subset oracle handles at most {MAX_SUBSET_ORDER} vertices, got {n}")
    vertices = range(n)
    if xi == "beta":
        return next(k for k in range(n + 1) if any(_covers(s, edges) for s in combinations(vertices, k)))
    test = _independent if xi == "alpha" else _clique
    return next(k for k in range(n, -1, -1) if any(test(s, edges) for s in combinations(vertices, k)))


def _xi_name(xi) -> str:
    name = getattr(xi, "value", xi)
    if name not in ("alpha", "beta", "chi", "omega"):
        raise ValueError(f"unknown graph number {xi!r}")
    return name


def brute_force_number(g: Graph, xi) -> int:
    """Graph number by exhaustive enumeration."""
    return _number(g.n, _edge_set(g.edges), _xi_name(xi))


def brute_force_delta(g: Graph, xi, ref: ElementRef) -> int:
    """Change of the graph number caused by one element edit, from two oracle calls."""
    name = _xi_name(xi)
    edges = _edge_set(g.edges)
    base = _number(g.n, edges, name)
    if ref.kind == "edge":
        edges.discard(frozenset(ref.ids))
        return _number(g.n, edges, name) - base
    if ref.kind == "nonedge":
        edges.add(frozenset(ref.ids))
        return _number(g.n, edges, name) - base
    (v,) = ref.ids
    relabel = {u: i for i, u in enumerate(x for x in range(g.n) if x != v)}
    kept = {frozenset(relabel[x] for x in e) for e in edges if v not in e}
    return _number(g.n - 1, kept, name) - base


def optimal_colorings(g: Graph) -> list[list[frozenset[int]]]:
    """All partitions of V(G) into exactly chi(G) independent sets."""
    if g.n > MAX_CHI_ORDER:
        raise OracleLimit(f"colouring enumeration handles at most {MAX_CHI_ORDER} vertices, got {g.n}")
    parts = [p for p in _colorings(g.n, _edge_set(g.edges))]
    best = min((len(p) for p in parts), default=0)
    return [[frozenset(b) for b in p] for p in parts if len(p) == best]


def _falsified_sets(phi: CnfFormula) -> set[int]:
    """Bitmasks of the clauses falsified by each assignment, deduplicated."""
    if phi.num_vars > MAX_VARS:
        raise OracleLimit(f"assignment oracle handles at most {MAX_VARS} variables, got {phi.num_vars}")
    masks = []
    for clause in phi.clauses:
        pos = sum(1 << (lit - 1) for lit in clause if lit > 0)
        neg = sum(1 << (-lit - 1) for lit in clause if lit < 0)
        masks.append((pos, neg))
    seen = set()
    for a in range(1 << phi.num_vars):
        falsified = 0
        for i, (pos, neg) in enumerate(masks):
            if not (a & pos) and not (~a & neg):
                falsified |= 1 << i
        seen.add(falsified)
    return seen


def brute_force_satisfiable(phi: CnfFormula) -> bool:
    return 0 in _falsified_sets(phi)


def brute_force_stability(phi: CnfFormula) -> tuple[bool, list[bool]]:
    """(satisfiable, satisfiable after deleting clause i for each i) from one pass over assignments."""
    seen = _falsified_sets(phi)
    sat = 0 in seen
    return sat, [sat or (1 << i) in seen for i in range(phi.m)]
