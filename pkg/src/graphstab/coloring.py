"""Exact k-colourability and chromatic number over bitset adjacency lists.

A decision runs four stages, each exact:

1. peeling: a vertex with fewer than k neighbours, or one whose neighbourhood
   sits inside the neighbourhood of a nonadjacent vertex, can always be
   coloured last, so it is set aside;
2. the rest splits into connected components;
3. large components are cut along hanging blocks (see ``blocks``): with k
   colours a block with boundary {a, b} either accepts any boundary colouring,
   forces a != b, forces a == b, or accepts none; the core graph absorbs that
   as an extra edge or a merge of a and b;
4. what remains goes to a DSATUR branch and bound with forward checking.
"""

from __future__ import annotations

import heapq
import sys
from typing import Sequence

from .blocks import Block, bits, block_instance, block_key, components, find_blocks, local
from .budget import Budget

# Components at least this large are searched for hanging blocks.
DECOMPOSE_MIN = 24

_FREE, _DIFF, _EQ, _NONE = "free", "diff", "eq", "none"


def _ensure_recursion(depth: int) -> None:
    need = depth + 200
    if sys.getrecursionlimit() < need:
        sys.setrecursionlimit(need)


def greedy_clique(adj: Sequence[int], mask: int, tries: int = 8) -> list[int]:
    """A maximal clique grown greedily from each of the highest-degree vertices."""
    verts = sorted(bits(mask), key=lambda v: (-(adj[v] & mask).bit_count(), v))
    best: list[int] = []
    for s in verts[:tries]:
        clique = [s]
        cand = adj[s] & mask
        while cand:
            v = max(bits(cand), key=lambda w: ((adj[w] & cand).bit_count(), -w))
            clique.append(v)
            cand &= adj[v]
        if len(clique) > len(best):
            best = clique
    return best


def smallest_last_coloring(adj: Sequence[int]) -> list[int]:
    """Greedy colouring in smallest-last order; an upper bound for the search."""
    n = len(adj)
    deg = [a.bit_count() for a in adj]
    heap = [(d, v) for v, d in enumerate(deg)]
    heapq.heapify(heap)
    removed = [False] * n
    order = []
    while heap:
        d, v = heapq.heappop(heap)
        if removed[v] or d != deg[v]:
            continue
        removed[v] = True
        order.append(v)
        for w in bits(adj[v]):
            if not removed[w]:
                deg[w] -= 1
                heapq.heappush(heap, (deg[w], w))
    color = [-1] * n
    for v in reversed(order):
        used = 0
        for w in bits(adj[v]):
            if color[w] >= 0:
                used |= 1 << color[w]
        color[v] = (~used & (used + 1)).bit_length() - 1
    return color


def _peel(adj: Sequence[int], alive: int, k: int) -> tuple[int, list[tuple[int, int]]]:
    stack: list[tuple[int, int]] = []
    changed = True
    while changed:
        changed = False
        for v in bits(alive):
            if not alive >> v & 1:
                continue
            nv = adj[v] & alive
            if nv.bit_count() < k:
                alive &= ~(1 << v)
                stack.append((v, -1))
                changed = True
                continue
            pivot = min(bits(nv), key=lambda w: (adj[w] & alive).bit_count())
            for y in bits(adj[pivot] & alive & ~nv & ~(1 << v)):
                if not nv & ~adj[y]:
                    alive &= ~(1 << v)
                    stack.append((v, y))
                    changed = True
                    break
    return alive, stack


def _unpeel(adj: Sequence[int], stack: list[tuple[int, int]], color: list[int]) -> None:
    for v, twin in reversed(stack):
        if twin >= 0:
            color[v] = color[twin]
            continue
        used = 0
        for w in bits(adj[v]):
            if color[w] >= 0:
                used |= 1 << color[w]
        color[v] = (~used & (used + 1)).bit_length() - 1


def _dsatur(adj: Sequence[int], k: int, budget: Budget) -> list[int] | None:
    n = len(adj)
    _ensure_recursion(n)
    avail = [(1 << k) - 1] * n
    color = [-1] * n
    deg = [a.bit_count() for a in adj]
    state = {"unc": (1 << n) - 1}

    def pick(unc: int) -> int:
        best, best_avail, best_deg = -1, k + 1, -1
        for v in bits(unc):
            c = avail[v].bit_count()
            if c < best_avail or (c == best_avail and deg[v] > best_deg):
                best, best_avail, best_deg = v, c, deg[v]
        return best

    def rec(used: int) -> bool:
        unc = state["unc"]
        if not unc:
            return True
        budget.tick()
        v = pick(unc)
        opts = avail[v] & ((1 << used) - 1)
        if used < k:
            opts |= 1 << used
        vb = 1 << v
        unc ^= vb
        state["unc"] = unc
        nb = adj[v] & unc
        for c in bits(opts):
            cb = 1 << c
            touched = []
            ok = True
            for w in bits(nb):
                if avail[w] & cb:
                    avail[w] ^= cb
                    touched.append(w)
                    if not avail[w]:
                        ok = False
                        break
            if ok:
                color[v] = c
                if rec(used + 1 if c == used else used):
                    return True
            for w in touched:
                avail[w] |= cb
        color[v] = -1
        state["unc"] = unc | vb
        return False

    return color if rec(0) else None


def _sub_roles(roles, verts):
    return None if roles is None else [roles[v] for v in verts]


def colorable(
    adj: Sequence[int],
    k: int,
    budget: Budget,
    witness: bool = False,
    roles: Sequence[str | None] | None = None,
    memo: dict | None = None,
) -> tuple[bool, list[int] | None]:
    """Decide whether the graph is k-colourable; with ``witness`` also return a colouring."""
    n = len(adj)
    if n == 0:
        return True, []
    if k <= 0:
        return False, None
    if memo is None:
        memo = {}
    alive, stack = _peel(adj, (1 << n) - 1, k)
    color = [-1] * n
    for comp in components(adj, alive):
        sub, verts = local(adj, comp)
        ok, col = _component(sub, k, budget, witness, _sub_roles(roles, verts), memo)
        if not ok:
            return False, None
        if witness:
            for i, v in enumerate(verts):
                color[v] = col[i]
    if not witness:
        return True, None
    _unpeel(adj, stack, color)
    return True, color


def co_components(adj: Sequence[int]) -> list[int]:
    """Vertex masks of the connected components of the complement graph."""
    n = len(adj)
    left = (1 << n) - 1
    out = []
    while left:
        start = left & -left
        comp = frontier = start
        left &= ~start
        while frontier:
            v = (frontier & -frontier).bit_length() - 1
            frontier &= frontier - 1
            nxt = left & ~adj[v]
            left &= ~nxt
            comp |= nxt
            frontier |= nxt
        out.append(comp)
    return out


def _join_parts(adj, budget, roles, memo):
    """Chromatic number and colouring of a graph that is a join of its co-components, or None."""
    parts = co_components(adj)
    if len(parts) < 2:
        return None
    color = [0] * len(adj)
    total = 0
    for part in parts:
        sub, verts = local(adj, part)
        value, col = chromatic(sub, budget, _sub_roles(roles, verts), memo)
        for i, v in enumerate(verts):
            color[v] = total + col[i]
        total += value
    return total, color


def _component(adj, k, budget, witness, roles, memo):
    n = len(adj)
    if n <= k:
        return True, list(range(n))
    if len(greedy_clique(adj, (1 << n) - 1)) > k:
        return False, None
    # chi of a join is the sum over its parts
    joined = _join_parts(adj, budget, roles, memo)
    if joined is not None:
        return (True, joined[1]) if joined[0] <= k else (False, None)
    if n >= DECOMPOSE_MIN:
        blocks = find_blocks(adj, (1 << n) - 1)
        if blocks:
            return _by_blocks(adj, blocks, k, budget, witness, roles, memo)
    col = _dsatur(adj, k, budget)
    return (col is not None), col


def _with_edge(sub, a, b):
    out = list(sub)
    out[a] |= 1 << b
    out[b] |= 1 << a
    return out


def _merged(sub, a, b):
    """Identify b into a; b becomes an isolated placeholder that is dropped."""
    keep = [v for v in range(len(sub)) if v != b]
    index = {v: i for i, v in enumerate(keep)}
    index[b] = index[a]
    out = [0] * len(keep)
    for v in range(len(sub)):
        for w in bits(sub[v]):
            out[index[v]] |= 1 << index[w]
    return out, index


def block_outcome(adj, roles, blk: Block, k, budget, memo, removed=frozenset(), added=frozenset()) -> str:
    key = block_key(adj, roles, blk, removed, added)
    if key is not None and ("chi", k, key) in memo:
        return memo[("chi", k, key)]
    sub, slots = block_instance(adj, blk, removed, added)
    if len(slots) == 1:
        out = _FREE if colorable(sub, k, budget, memo=memo)[0] else _NONE
    else:
        a, b = slots
        diff = colorable(_with_edge(sub, a, b), k, budget, memo=memo)[0]
        eq = colorable(_merged(sub, a, b)[0], k, budget, memo=memo)[0]
        out = {(True, True): _FREE, (True, False): _DIFF, (False, True): _EQ}.get((diff, eq), _NONE)
    if key is not None:
        memo[("chi", k, key)] = out
    return out


def build_core(adj, mask, blocks, outcomes, removed=frozenset(), added=frozenset()):
    """Core graph after replacing blocks by their outcomes; ``None`` when a merge is contradictory."""
    inner = 0
    for blk in blocks:
        inner |= blk.inner
    core = mask & ~inner
    parent = {v: v for v in bits(core)}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    extra = []
    for blk, out in zip(blocks, outcomes):
        if out == _EQ:
            a, b = blk.boundary
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
        elif out == _DIFF:
            extra.append(blk.boundary)
    reps = sorted({find(v) for v in bits(core)})
    index = {r: i for i, r in enumerate(reps)}
    where = {v: index[find(v)] for v in bits(core)}
    out_adj = [0] * len(reps)

    def link(u, w):
        iu, iw = where[u], where[w]
        if iu == iw:
            return False
        out_adj[iu] |= 1 << iw
        out_adj[iw] |= 1 << iu
        return True

    for v in bits(core):
        for w in bits(adj[v] & core):
            if v < w and ((v, w) not in removed) and not link(v, w):
                return None
    for u, w in added:
        if u in where and w in where and not link(u, w):
            return None
    for a, b in extra:
        if not link(a, b):
            return None
    return out_adj, where


def _by_blocks(adj, blocks, k, budget, witness, roles, memo):
    n = len(adj)
    outcomes = []
    for blk in blocks:
        out = block_outcome(adj, roles, blk, k, budget, memo)
        if out == _NONE:
            return False, None
        outcomes.append(out)
    built = build_core(adj, (1 << n) - 1, blocks, outcomes)
    if built is None:
        return False, None
    core_adj, where = built
    core_roles = None
    if roles is not None:
        core_roles = [None] * len(core_adj)
        for v, i in where.items():
            core_roles[i] = roles[v]
    ok, core_col = colorable(core_adj, k, budget, witness, core_roles, memo)
    if not ok:
        return False, None
    if not witness:
        return True, None
    color = [-1] * n
    for v, i in where.items():
        color[v] = core_col[i]
    for blk in blocks:
        _extend_block(adj, blk, color, k, budget)
    return True, color


def _extend_block(adj, blk: Block, color, k, budget) -> None:
    sub, slots = block_instance(adj, blk)
    verts = list(bits(blk.inner | blk.boundary_mask))
    want = [color[b] for b in blk.boundary]
    if len(slots) == 2 and want[0] == want[1]:
        inst, index = _merged(sub, *slots)
    elif len(slots) == 2:
        inst, index = _with_edge(sub, *slots), {v: v for v in range(len(sub))}
    else:
        inst, index = sub, {v: v for v in range(len(sub))}
    ok, col = colorable(inst, k, budget, witness=True)
    assert ok, "block outcome and extension disagree"
    perm = {}
    for slot, c in zip(slots, want):
        perm[col[index[slot]]] = c
    spare = iter(c for c in range(k) if c not in perm.values())
    for c in range(k):
        if c not in perm:
            perm[c] = next(spare)
    for i, v in enumerate(verts):
        if blk.inner >> v & 1:
            color[v] = perm[col[index[i]]]


def normalize(color: list[int]) -> list[int]:
    """Renumber colours 0.. in order of first use."""
    seen: dict[int, int] = {}
    return [seen.setdefault(c, len(seen)) for c in color]


def chromatic(adj: Sequence[int], budget: Budget, roles=None, memo: dict | None = None) -> tuple[int, list[int]]:
    n = len(adj)
    if n == 0:
        return 0, []
    if not any(adj):
        return 1, [0] * n
    if memo is None:
        memo = {}
    key = ("chi-value", tuple(adj))
    if key in memo:
        return memo[key]
    joined = _join_parts(adj, budget, roles, memo)
    if joined is not None:
        memo[key] = joined
        return joined
    lower = len(greedy_clique(adj, (1 << n) - 1, tries=16))
    best = normalize(smallest_last_coloring(adj))
    upper = max(best) + 1
    while upper > lower:
        ok, col = colorable(adj, upper - 1, budget, True, roles, memo)
        if not ok:
            break
        best = normalize(col)
        upper = max(best) + 1
    memo[key] = (upper, best)
    return upper, best


class ChiSession:
    """Repeated k-colourability questions about small edge edits of one graph.

    The hanging blocks of the base graph are found once. An edit inside a block
    only recomputes that block's outcome; the core result is cached per
    combination of changed outcomes and core edits. Edits that would join two
    different blocks fall back to a fresh decision.
    """

    def __init__(self, adj: Sequence[int], k: int, roles=None, decompose: bool | None = None):
        self.adj = list(adj)
        self.n = len(adj)
        self.k = k
        self.roles = roles
        self.memo: dict = {}
        self._core_memo: dict = {}
        if decompose is None:
            decompose = self.n >= DECOMPOSE_MIN
        self.blocks = find_blocks(self.adj, (1 << self.n) - 1) if decompose and self.n else []
        self.owner: dict[int, int] = {}
        for i, blk in enumerate(self.blocks):
            for v in bits(blk.inner):
                self.owner[v] = i
        self._base: list[str] | None = None

    def _locate(self, u: int, w: int) -> int | None | bool:
        """Block index touched by edge uw, ``None`` for a core edge, ``False`` when it crosses blocks."""
        ou, ow = self.owner.get(u), self.owner.get(w)
        if ou is None and ow is None:
            return None
        if ou is not None and ow is not None:
            return ou if ou == ow else False
        i = ou if ou is not None else ow
        other = w if ou is not None else u
        return i if other in self.blocks[i].boundary else False

    def colorable_after(self, budget: Budget, removed=(), added=()) -> bool:
        removed = frozenset(tuple(sorted(e)) for e in removed)
        added = frozenset(tuple(sorted(e)) for e in added)
        if self.k <= 0:
            return self.n == 0
        affected = set()
        core_removed, core_added = set(), set()
        for e in removed | added:
            where = self._locate(*e)
            if where is False:
                return self._fresh(budget, removed, added)
            if where is None:
                (core_removed if e in removed else core_added).add(e)
            else:
                affected.add(where)
        if self._base is None:
            self._base = [block_outcome(self.adj, self.roles, b, self.k, budget, self.memo) for b in self.blocks]
        outcomes = list(self._base)
        changes = []
        for i in sorted(affected):
            out = block_outcome(self.adj, self.roles, self.blocks[i], self.k, budget, self.memo, removed, added)
            if out != outcomes[i]:
                outcomes[i] = out
                changes.append((i, out))
        if _NONE in outcomes:
            return False
        key = (tuple(changes), frozenset(core_removed), frozenset(core_added))
        if key not in self._core_memo:
            built = build_core(self.adj, (1 << self.n) - 1, self.blocks, outcomes, core_removed, core_added)
            if built is None:
                self._core_memo[key] = False
            else:
                core_adj, where = built
                core_roles = None
                if self.roles is not None:
                    core_roles = [None] * len(core_adj)
                    for v, i in where.items():
                        core_roles[i] = self.roles[v]
                self._core_memo[key] = colorable(core_adj, self.k, budget, roles=core_roles, memo=self.memo)[0]
        return self._core_memo[key]

    def _fresh(self, budget, removed, added) -> bool:
        adj = list(self.adj)
        for u, w in removed:
            adj[u] &= ~(1 << w)
            adj[w] &= ~(1 << u)
        for u, w in added:
            adj[u] |= 1 << w
            adj[w] |= 1 << u
        return colorable(adj, self.k, budget, roles=self.roles, memo=self.memo)[0]
