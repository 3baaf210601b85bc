"""Exact stability analysis of graphs under alpha, beta, chi and omega, with the reduction gadgets."""

from .graph import (
    DimacsError,
    ElementRef,
    Graph,
    GraphError,
    ProvenanceTag,
    complete,
    disjoint_union,
    empty,
    join,
    parse_dimacs,
    to_dimacs,
)
from .solvers import Budget, BudgetExceeded, GraphNumber, graph_number
from .stability import StabilityReport, analyze, decide

__all__ = [
    "Budget",
    "BudgetExceeded",
    "DimacsError",
    "ElementRef",
    "Graph",
    "GraphError",
    "GraphNumber",
    "ProvenanceTag",
    "StabilityReport",
    "analyze",
    "complete",
    "decide",
    "disjoint_union",
    "empty",
    "graph_number",
    "join",
    "parse_dimacs",
    "to_dimacs",
]

__version__ = "0.1.0"
