"""Instance families for the law registry: exhaustive and seeded random graphs and formulas.

Every instance converts to and from a JSON payload so a counterexample can be
replayed from a report alone.
"""

from __future__ import annotations

import random
from itertools import combinations
from typing import Iterator

from ..cnf import CnfFormula, eight_block, random_3cnf
from ..graph import Graph, complete, cycle, disjoint_union, empty, path

__all__ = [
    "EXHAUSTIVE_LIMIT",
    "NAMED_GRAPHS",
    "enumerate_graphs",
    "exact3_corpus",
    "formula_payload",
    "graph_payload",
    "graphs_up_to",
    "load_formula",
    "load_graph",
    "mixed_3cnf_corpus",
    "random_cnf",
    "random_graph",
]

EXHAUSTIVE_LIMIT = 7


def enumerate_graphs(n: int) -> Iterator[Graph]:
    """All 2^(n choose 2) labeled graphs on n vertices, ordered by edge bitmask."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > EXHAUSTIVE_LIMIT:
        raise ValueError(f"exhaustive enumeration is limited to n <= {EXHAUSTIVE_LIMIT}, got {n}")
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph(n, [p for i, p in enumerate(pairs) if mask >> i & 1])


def graphs_up_to(max_n: int) -> Iterator[Graph]:
    for n in range(max_n + 1):
        yield from enumerate_graphs(n)


def random_graph(n: int, p: float, seed: int) -> Graph:
    """G(n, p) sample; identical for identical arguments."""
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    rng = random.Random(seed)
    return Graph(n, [e for e in combinations(range(n), 2) if rng.random() < p])


NAMED_GRAPHS = {
    "K0": empty(0),
    "K1": complete(1),
    "K2": complete(2),
    "I2": empty(2),
    "P3": path(3),
    "K3": complete(3),
    "C4": cycle(4),
    "C5": cycle(5),
    "K3uK3": disjoint_union(complete(3), complete(3)),
}


def random_cnf(num_vars: int, num_clauses: int, max_width: int, seed: int) -> CnfFormula:
    """Random clauses of widths 1..max_width (capped at num_vars) over distinct variables."""
    rng = random.Random(seed)
    top = min(max_width, num_vars)
    clauses = []
    for _ in range(num_clauses):
        width = rng.randint(1, top)
        vs = rng.sample(range(1, num_vars + 1), width)
        clauses.append(tuple(v if rng.random() < 0.5 else -v for v in vs))
    return CnfFormula(num_vars, clauses)


def mixed_3cnf_corpus(count: int, seed: int, max_vars: int = 4) -> Iterator[CnfFormula]:
    """Exact-3CNF formulas over at most ``max_vars`` variables.

    Three in four are uniform random. The rest contain the eight-clause
    block: alone (minimally unsatisfiable), with some of its clauses repeated
    (stable exactly when all eight are), or after random clauses.
    """
    rng = random.Random(seed)
    for i in range(count):
        n = rng.randint(3, max(3, max_vars))
        if i % 4 != 3:
            yield random_3cnf(n, rng.randint(1, 6), rng.randrange(1 << 30))
            continue
        block = eight_block(1)
        kind = rng.randrange(3)
        if kind == 0:
            yield CnfFormula(3, block)
        elif kind == 1:
            repeats = rng.sample(block, rng.randint(1, 8))
            yield CnfFormula(3, block + repeats)
        else:
            extra = random_3cnf(n, rng.randint(1, 3), rng.randrange(1 << 30))
            yield CnfFormula(n, list(extra.clauses) + block)


def exact3_corpus(count: int, seed: int, num_vars: int = 3, max_clauses: int = 4) -> Iterator[CnfFormula]:
    """The eight-clause block followed by ``count - 1`` random exact-3CNF formulas."""
    yield CnfFormula(3, eight_block(1))
    rng = random.Random(seed)
    for _ in range(count - 1):
        yield random_3cnf(num_vars, rng.randint(1, max_clauses), rng.randrange(1 << 30))


def graph_payload(g: Graph) -> dict:
    return {"n": g.n, "edges": [list(e) for e in g.edge_list()]}


def load_graph(payload: dict) -> Graph:
    return Graph(payload["n"], [tuple(e) for e in payload["edges"]])


def formula_payload(phi: CnfFormula) -> dict:
    return {"num_vars": phi.num_vars, "clauses": [list(c) for c in phi.clauses]}


def load_formula(payload: dict) -> CnfFormula:
    return CnfFormula(payload["num_vars"], payload["clauses"])

