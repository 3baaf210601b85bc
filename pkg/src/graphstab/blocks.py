"""Bitset helpers and detection of hanging blocks.

A hanging block is a vertex set ``inner`` whose neighbourhood outside itself
is at most two vertices (its ``boundary``). Every solver here exploits the same
fact: the rest of the graph only sees a block through the states of its
boundary vertices, so a block can be summarized by a small table computed once
and replaced by a constant-size stand-in.

Blocks are found by running a depth-first search on ``G - a`` for a few
high-degree vertices ``a``: each subtree cut off by an articulation point
``p`` of ``G - a`` hangs on ``{a, p}``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Sequence

# Candidate first separator vertices tried per search, highest degree first.
MAX_SEPARATOR_CANDIDATES = 48


def bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def local(adj: Sequence[int], mask: int) -> tuple[list[int], list[int]]:
    """Induced subgraph on ``mask`` renumbered ``0..k-1``; returns (adjacency, original ids)."""
    verts = list(bits(mask))
    index = {v: i for i, v in enumerate(verts)}
    out = []
    for v in verts:
        m = 0
        for w in bits(adj[v] & mask):
            m |= 1 << index[w]
        out.append(m)
    return out, verts


def components(adj: Sequence[int], mask: int) -> list[int]:
    comps = []
    while mask:
        seed = mask & -mask
        comp = frontier = seed
        while frontier:
            grow = 0
            for v in bits(frontier):
                grow |= adj[v]
            frontier = grow & mask & ~comp
            comp |= frontier
        comps.append(comp)
        mask &= ~comp
    return comps


@dataclass(frozen=True)
class Block:
    inner: int
    boundary: tuple[int, ...]

    @property
    def boundary_mask(self) -> int:
        m = 0
        for b in self.boundary:
            m |= 1 << b
        return m


def _cut_subtrees(adj: Sequence[int], mask: int, root: int) -> tuple[list[tuple[int, int]], int]:
    """DFS over ``mask`` from ``root``; yields (subtree mask, cut vertex) pairs and the reached set."""
    disc: dict[int, int] = {root: 0}
    low = {root: 0}
    order = [root]
    size = {}
    cuts = []
    stack = [(root, -1, adj[root] & mask)]
    while stack:
        v, parent, pending = stack[-1]
        if pending:
            w = (pending & -pending).bit_length() - 1
            stack[-1] = (v, parent, pending & (pending - 1))
            if w not in disc:
                disc[w] = low[w] = len(order)
                order.append(w)
                stack.append((w, v, adj[w] & mask))
            elif w != parent and disc[w] < low[v]:
                low[v] = disc[w]
            continue
        stack.pop()
        size[v] = len(order) - disc[v]
        if parent >= 0:
            if low[v] < low[parent]:
                low[parent] = low[v]
            if low[v] >= disc[parent]:
                cuts.append((v, parent))
    reached = 0
    for v in order:
        reached |= 1 << v
    out = []
    for child, cut in cuts:
        start = disc[child]
        sub = 0
        # a DFS subtree is exactly a preorder interval
        for w in order[start : start + size[child]]:
            sub |= 1 << w
        out.append((sub, cut))
    return out, reached


def find_blocks(adj: Sequence[int], mask: int, max_fraction: float = 0.5) -> list[Block]:
    """Pairwise independent hanging blocks of the graph induced on ``mask``.

    Chosen blocks never overlap each other's inner sets or boundaries, each is
    at most ``max_fraction`` of the vertices, and smaller blocks win.
    """
    total = mask.bit_count()
    if total < 3:
        return []
    limit = max(1, int(total * max_fraction))
    degree = {v: (adj[v] & mask).bit_count() for v in bits(mask)}
    candidates = sorted(degree, key=lambda v: (-degree[v], v))[:MAX_SEPARATOR_CANDIDATES]
    found: dict[int, tuple[int, ...]] = {}
    for a in candidates:
        rest = mask & ~(1 << a)
        if not rest:
            continue
        root = max(bits(rest), key=lambda v: (degree[v], -v))
        cut_list, reached = _cut_subtrees(adj, rest, root)
        pieces = [(sub, (cut,)) for sub, cut in cut_list]
        pieces.extend((comp, ()) for comp in components(adj, rest & ~reached))
        for sub, cut in pieces:
            if sub.bit_count() > limit:
                continue
            boundary = cut + ((a,) if adj[a] & sub else ())
            if not boundary:
                continue
            outside = 0
            for v in bits(sub):
                outside |= adj[v]
            outside &= mask & ~sub
            bmask = sum(1 << b for b in boundary)
            if outside & ~bmask:
                continue
            boundary = tuple(sorted(b for b in boundary if outside >> b & 1))
            if not boundary:
                continue
            if sub not in found:
                found[sub] = boundary
    chosen: list[Block] = []
    used_inner = used_boundary = 0
    for sub in sorted(found, key=lambda s: (s.bit_count(), s)):
        blk = Block(sub, found[sub])
        if sub & (used_inner | used_boundary) or blk.boundary_mask & used_inner:
            continue
        chosen.append(blk)
        used_inner |= sub
        used_boundary |= blk.boundary_mask
    return chosen


def block_instance(adj, blk: Block, removed=frozenset(), added=frozenset()):
    """Local adjacency of block plus boundary with edits applied and boundary-boundary edges dropped."""
    sub, verts = local(adj, blk.inner | blk.boundary_mask)
    index = {v: i for i, v in enumerate(verts)}
    for u, w in removed:
        if u in index and w in index:
            sub[index[u]] &= ~(1 << index[w])
            sub[index[w]] &= ~(1 << index[u])
    for u, w in added:
        if u in index and w in index:
            sub[index[u]] |= 1 << index[w]
            sub[index[w]] |= 1 << index[u]
    slots = [index[b] for b in blk.boundary]
    if len(slots) == 2:
        a, b = slots
        sub[a] &= ~(1 << b)
        sub[b] &= ~(1 << a)
    return sub, slots


_INSTANCE_TAG = re.compile(r"\[[^\]]*\]")


def role(label: str | None) -> str | None:
    """A label with its bracketed instance tag blanked, e.g. ``u'[3-7]`` becomes ``u'[]``."""
    return None if label is None else _INSTANCE_TAG.sub("[]", label)


def block_key(
    adj: Sequence[int],
    roles: Sequence[str | None] | None,
    blk: Block,
    removed: frozenset = frozenset(),
    added: frozenset = frozenset(),
) -> tuple | None:
    """A key equal for two blocks only when they are the same labelled graph.

    Inner vertices are ordered by role; boundary vertices by slot. Keys are
    ``None`` when roles are missing or repeat inside the block, in which case
    no sharing happens. Equal keys describe identical graphs, so sharing a
    table between them is exact whatever the labels mean.
    """
    if roles is None:
        return None
    inner = list(bits(blk.inner))
    names = [roles[v] for v in inner]
    if any(r is None for r in names) or len(set(names)) != len(names):
        return None
    order = [v for _, v in sorted(zip(names, inner))] + list(blk.boundary)
    pos = {v: i for i, v in enumerate(order)}
    edges = []
    for v in inner:
        for w in bits(adj[v]):
            if w in pos and (pos[w] > pos[v] or w in blk.boundary):
                e = (v, w) if v < w else (w, v)
                if e not in removed:
                    edges.append((pos[v], pos[w]))
    for u, w in added:
        if u in pos and w in pos and (u not in blk.boundary or w not in blk.boundary):
            a, b = sorted((pos[u], pos[w]))
            edges.append((a, b))
    return (tuple(sorted(names)), len(blk.boundary), tuple(sorted(edges)))
