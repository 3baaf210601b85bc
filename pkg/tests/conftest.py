from itertools import combinations

import pytest
from hypothesis import settings, strategies as st

from graphstab.cnf import CnfFormula
from graphstab.graph import Graph

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@st.composite
def graphs(draw, min_n=0, max_n=6):
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(n), 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(n, [p for p, keep in zip(pairs, mask) if keep])


@st.composite
def graphs_with_vertex(draw, max_n=5):
    g = draw(graphs(min_n=1, max_n=max_n))
    return g, draw(st.integers(0, g.n - 1))


@st.composite
def graphs_with_edge(draw, max_n=5):
    g = draw(graphs(min_n=2, max_n=max_n).filter(lambda h: h.m > 0))
    return g, draw(st.sampled_from(g.edge_list()))


@st.composite
def formulas(draw, max_vars=4, max_clauses=6, max_width=5, exact3=False, min_clauses=0):
    n = draw(st.integers(3 if exact3 else 1, max_vars))
    clauses = []
    for _ in range(draw(st.integers(min_clauses, max_clauses))):
        width = 3 if exact3 else draw(st.integers(1, min(max_width, n)))
        vs = draw(st.lists(st.integers(1, n), min_size=width, max_size=width, unique=True))
        signs = draw(st.lists(st.booleans(), min_size=width, max_size=width))
        clauses.append(tuple(v if s else -v for v, s in zip(vs, signs)))
    return CnfFormula(n, clauses)


@pytest.fixture
def write(tmp_path):
    def _write(name: str, text: str) -> str:
        p = tmp_path / name
        p.write_text(text)
        return str(p)

    return _write


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    if module is not None and module.LINES:
        terminalreporter.section("acceptance criteria")
        for line in module.LINES:
            terminalreporter.write_line(line)
