"""Maximum clique by branch and bound with greedy colouring bounds."""

from __future__ import annotations

from typing import Sequence

from .budget import Budget
from .coloring import _ensure_recursion


def _color_sort(adj: Sequence[int], cand: int) -> tuple[list[int], list[int]]:
    order, colors = [], []
    uncolored = cand
    color = 0
    while uncolored:
        color += 1
        q = uncolored
        while q:
            v = (q & -q).bit_length() - 1
            uncolored &= ~(1 << v)
            q &= ~(1 << v) & ~adj[v]
            order.append(v)
            colors.append(color)
    return order, colors


def max_clique(adj: Sequence[int], mask: int, budget: Budget) -> int:
    """A maximum clique of the subgraph induced on ``mask``, as a vertex mask."""
    if not mask:
        return 0
    _ensure_recursion(mask.bit_count())
    best = {"mask": mask & -mask, "size": 1}

    def expand(clique: int, size: int, cand: int) -> None:
        budget.tick()
        order, colors = _color_sort(adj, cand)
        for i in range(len(order) - 1, -1, -1):
            if size + colors[i] <= best["size"]:
                return
            v = order[i]
            grown = clique | 1 << v
            nxt = cand & adj[v]
            if nxt:
                expand(grown, size + 1, nxt)
            elif size + 1 > best["size"]:
                best["mask"], best["size"] = grown, size + 1
            cand &= ~(1 << v)

    expand(0, 0, mask)
    return best["mask"]
