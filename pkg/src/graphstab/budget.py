"""Search budgets shared by every exact solver."""

from __future__ import annotations

import os
import time
from dataclasses import dataclass, field

DEFAULT_NODE_BUDGET = 10**8
DEFAULT_TIME_BUDGET_S = 120.0


class BudgetExceeded(RuntimeError):
    """A solve ran past its node or time budget; no answer was produced."""

    def __init__(self, query: str, nodes: int, elapsed: float):
        super().__init__(f"budget exceeded after {nodes} nodes / {elapsed:.1f}s while solving {query}")
        self.query = query
        self.nodes = nodes
        self.elapsed = elapsed


def _env_number(name: str, default, cast):
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    try:
        value = cast(raw)
    except ValueError:
        raise ValueError(f"{name} must be a number, got {raw!r}") from None
    if value <= 0:
        raise ValueError(f"{name} must be positive, got {raw!r}")
    return value


def default_node_budget() -> int:
    return _env_number("STAB_NODE_BUDGET", DEFAULT_NODE_BUDGET, int)


def default_time_budget() -> float:
    return _env_number("STAB_TIME_BUDGET_S", DEFAULT_TIME_BUDGET_S, float)


@dataclass
class Budget:
    """Counts search nodes for one solve and enforces the node and wall-clock limits."""

    max_nodes: int = field(default_factory=default_node_budget)
    max_seconds: float = field(default_factory=default_time_budget)
    query: str = "solve"
    nodes: int = 0
    started: float = field(default_factory=time.perf_counter)

    def tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.max_nodes:
            raise BudgetExceeded(self.query, self.nodes, self.elapsed)
        if not self.nodes & 1023 and self.elapsed > self.max_seconds:
            raise BudgetExceeded(self.query, self.nodes, self.elapsed)

    @property
    def elapsed(self) -> float:
        return time.perf_counter() - self.started

    def fresh(self, query: str) -> "Budget":
        """A new budget with the same limits, for an independent solve."""
        return Budget(self.max_nodes, self.max_seconds, query)
