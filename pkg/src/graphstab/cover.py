"""Exact minimum vertex cover over bitset adjacency lists.

The branch and bound applies the classic safe reductions at every node
(isolated vertices, pendant vertices, degree-2 vertices in a triangle,
dominated neighbours), splits components, bounds with a greedy clique cover
and branches on a maximum-degree vertex. Components whose maximum degree is
at most two are paths or cycles and are solved directly.

Large graphs are first cut along hanging blocks. A block's cover cost as a
function of its boundary states is summarized into one of a few stand-ins: a
constant, a core edge between the two boundary vertices, or pendant vertices
that force a boundary vertex into the cover. Each stand-in gives the same
optimum as the block it replaces (an exchange argument: adding a boundary
vertex to the cover costs one and never raises any other cost).
"""

from __future__ import annotations

import sys
from typing import Sequence

from .blocks import Block, bits, block_instance, block_key, components, find_blocks, local
from .budget import Budget

DECOMPOSE_MIN = 24

_KEEP = ("keep",)


def _ensure_recursion(depth: int) -> None:
    need = 2 * depth + 200
    if sys.getrecursionlimit() < need:
        sys.setrecursionlimit(need)


def _reduce(adj: Sequence[int], alive: int) -> tuple[int, int]:
    taken = 0
    changed = True
    while changed:
        changed = False
        for v in bits(alive):
            if not alive >> v & 1:
                continue
            vb = 1 << v
            nv = adj[v] & alive
            d = nv.bit_count()
            if d == 0:
                alive ^= vb
                changed = True
            elif d == 1:
                taken |= nv
                alive &= ~(nv | vb)
                changed = True
            elif d == 2 and adj[(nv & -nv).bit_length() - 1] & (nv & (nv - 1)):
                taken |= nv
                alive &= ~(nv | vb)
                changed = True
            else:
                closed = nv | vb
                for u in bits(nv):
                    if not closed & ~adj[u] & ~(1 << u):
                        taken |= 1 << u
                        alive &= ~(1 << u)
                        changed = True
                        break
    return alive, taken


def _clique_cover_bound(adj: Sequence[int], alive: int) -> int:
    cliques: list[int] = []
    for v in bits(alive):
        for i, c in enumerate(cliques):
            if not c & ~adj[v]:
                cliques[i] = c | 1 << v
                break
        else:
            cliques.append(1 << v)
    return alive.bit_count() - len(cliques)


def _path_or_cycle(adj: Sequence[int], alive: int) -> int:
    """Minimum cover of a connected graph with maximum degree at most two."""
    ends = [v for v in bits(alive) if (adj[v] & alive).bit_count() < 2]
    start = ends[0] if ends else (alive & -alive).bit_length() - 1
    order = [start]
    seen = 1 << start
    while True:
        nxt = adj[order[-1]] & alive & ~seen
        if not nxt:
            break
        w = (nxt & -nxt).bit_length() - 1
        order.append(w)
        seen |= 1 << w
    cover = 0
    for v in order[1::2]:
        cover |= 1 << v
    if not ends and len(order) % 2:
        cover |= 1 << order[0]
    return cover


def _search(adj: Sequence[int], alive: int, budget: Budget, limit: int) -> tuple[int, int] | None:
    """Smallest cover of size below ``limit``, or ``None`` if there is none."""
    alive, taken = _reduce(adj, alive)
    t = taken.bit_count()
    if not alive:
        return (t, taken) if t < limit else None
    if t + _clique_cover_bound(adj, alive) >= limit:
        return None
    comps = components(adj, alive)
    if len(comps) > 1:
        total, cover = t, taken
        bounds = [_clique_cover_bound(adj, c) for c in comps]
        rest = sum(bounds)
        for comp, lb in sorted(zip(comps, bounds), key=lambda p: (p[0].bit_count(), p[0])):
            rest -= lb
            found = _search(adj, comp, budget, limit - total - rest)
            if found is None:
                return None
            total += found[0]
            cover |= found[1]
        return total, cover
    budget.tick()
    v = max(bits(alive), key=lambda x: ((adj[x] & alive).bit_count(), -x))
    nv = adj[v] & alive
    if nv.bit_count() <= 2:
        c = _path_or_cycle(adj, alive)
        size = t + c.bit_count()
        return (size, taken | c) if size < limit else None
    best = None
    found = _search(adj, alive & ~(1 << v), budget, limit - t - 1)
    if found is not None:
        best = (t + 1 + found[0], taken | 1 << v | found[1])
        limit = best[0]
    k = nv.bit_count()
    found = _search(adj, alive & ~nv & ~(1 << v), budget, limit - t - k)
    if found is not None:
        best = (t + k + found[0], taken | nv | found[1])
    return best


def block_table(adj, roles, blk: Block, budget, memo, removed=frozenset(), added=frozenset()) -> tuple:
    """Inner cover cost per boundary state; 1 means the boundary vertex is in the cover."""
    key = block_key(adj, roles, blk, removed, added)
    if key is not None and ("beta", key) in memo:
        return memo[("beta", key)]
    sub, slots = block_instance(adj, blk, removed, added)
    inner = (1 << len(sub)) - 1
    for s in slots:
        inner &= ~(1 << s)

    def cost(out_slots) -> int:
        forced = 0
        for s in out_slots:
            forced |= sub[s] & inner
        return forced.bit_count() + vertex_cover(sub, inner & ~forced, budget, memo=memo)[0]

    if len(slots) == 1:
        table = (cost(()), cost(slots))
    else:
        a, b = slots
        table = (cost(()), cost((b,)), cost((a,)), cost((a, b)))
    if key is not None:
        memo[("beta", key)] = table
    return table


def stand_in(table: tuple, inner_size: int) -> tuple:
    """Replace a block table by ("form", constant, pendant slots) or keep the block."""
    if len(table) == 2:
        t1, t0 = table
        pend = (0,) if t0 >= t1 + 1 else ()
        form = ("pend", t1, pend) if pend else ("drop", t1, ())
    else:
        t11, t10, t01, t00 = table
        force_a = t01 >= t11 + 1 and t00 >= t10 + 1
        force_b = t10 >= t11 + 1 and t00 >= t01 + 1
        if force_a:
            form = ("pend", t11, (0, 1) if t10 >= t11 + 1 else (0,))
        elif force_b:
            form = ("pend", t11, (0, 1) if t01 >= t11 + 1 else (1,))
        elif t10 == t01 == t11:
            form = ("edge", t11, ()) if t00 > t11 else ("drop", t11, ())
        else:
            return _KEEP
    if len(form[2]) >= inner_size:
        return _KEEP
    return form


def _core(adj, mask, blocks, forms, removed=frozenset(), added=frozenset()):
    """Core graph with stand-ins; returns (adjacency, original ids or anchors, constant)."""
    gone = 0
    for blk, form in zip(blocks, forms):
        if form is not _KEEP:
            gone |= blk.inner
    core = mask & ~gone
    sub, verts = local(adj, core)
    index = {v: i for i, v in enumerate(verts)}

    def link(u, w):
        sub[u] |= 1 << w
        sub[w] |= 1 << u

    for u, w in removed:
        if u in index and w in index:
            sub[index[u]] &= ~(1 << index[w])
            sub[index[w]] &= ~(1 << index[u])
    for u, w in added:
        if u in index and w in index:
            link(index[u], index[w])
    owners: list[int] = list(verts)
    const = 0
    for blk, form in zip(blocks, forms):
        if form is _KEEP:
            continue
        kind, c, pend = form
        const += c
        if kind == "edge":
            link(index[blk.boundary[0]], index[blk.boundary[1]])
        for slot in pend:
            anchor = index[blk.boundary[slot]]
            sub.append(0)
            owners.append(-1 - blk.boundary[slot])
            link(len(sub) - 1, anchor)
    return sub, owners, const


def _roles_for(roles, owners):
    if roles is None:
        return None
    return [roles[v] if v >= 0 else "pendant" + str(-1 - v) for v in owners]


def vertex_cover(
    adj: Sequence[int],
    alive: int,
    budget: Budget,
    witness: bool = False,
    roles: Sequence[str | None] | None = None,
    memo: dict | None = None,
) -> tuple[int, int | None]:
    """Minimum cover size of the subgraph induced on ``alive`` and, with ``witness``, a cover mask."""
    _ensure_recursion(alive.bit_count())
    if memo is None:
        memo = {}
    if alive.bit_count() >= DECOMPOSE_MIN:
        blocks = find_blocks(adj, alive)
        if blocks:
            forms = [stand_in(block_table(adj, roles, b, budget, memo), b.inner.bit_count()) for b in blocks]
            if any(f is not _KEEP for f in forms):
                return _by_blocks(adj, alive, blocks, forms, budget, witness, roles, memo)
    found = _search(adj, alive, budget, alive.bit_count() + 1)
    assert found is not None
    return found[0], (found[1] if witness else None)


def _by_blocks(adj, alive, blocks, forms, budget, witness, roles, memo):
    sub, owners, const = _core(adj, alive, blocks, forms)
    value, core_cover = vertex_cover(sub, (1 << len(sub)) - 1, budget, witness, _roles_for(roles, owners), memo)
    if not witness:
        return value + const, None
    cover = 0
    for i in bits(core_cover):
        v = owners[i]
        cover |= 1 << (v if v >= 0 else -1 - v)
    for blk, form in zip(blocks, forms):
        if form is _KEEP:
            continue
        forced = 0
        for b in blk.boundary:
            if not cover >> b & 1:
                forced |= adj[b] & blk.inner
        rest = vertex_cover(adj, blk.inner & ~forced, budget, True, roles, memo)[1]
        cover |= forced | rest
    return value + const, cover


class BetaSession:
    """Repeated exact cover numbers for small edge edits of one graph."""

    def __init__(self, adj: Sequence[int], roles=None, decompose: bool | None = None):
        self.adj = list(adj)
        self.n = len(adj)
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
        self._base: list | None = None

    def _locate(self, u, w):
        ou, ow = self.owner.get(u), self.owner.get(w)
        if ou is None and ow is None:
            return None
        if ou is not None and ow is not None:
            return ou if ou == ow else False
        i = ou if ou is not None else ow
        other = w if ou is not None else u
        return i if other in self.blocks[i].boundary else False

    def value_after(self, budget: Budget, removed=(), added=()) -> int:
        removed = frozenset(tuple(sorted(e)) for e in removed)
        added = frozenset(tuple(sorted(e)) for e in added)
        full = (1 << self.n) - 1
        affected = set()
        for e in removed | added:
            where = self._locate(*e)
            if where is False:
                adj = list(self.adj)
                for u, w in removed:
                    adj[u] &= ~(1 << w)
                    adj[w] &= ~(1 << u)
                for u, w in added:
                    adj[u] |= 1 << w
                    adj[w] |= 1 << u
                return vertex_cover(adj, full, budget, roles=self.roles, memo=self.memo)[0]
            if where is not None:
                affected.add(where)
        if self._base is None:
            self._base = [
                stand_in(block_table(self.adj, self.roles, b, budget, self.memo), b.inner.bit_count())
                for b in self.blocks
            ]
        forms = list(self._base)
        changes = []
        for i in sorted(affected):
            blk = self.blocks[i]
            form = stand_in(block_table(self.adj, self.roles, blk, budget, self.memo, removed, added), blk.inner.bit_count())
            if form != forms[i]:
                forms[i] = form
                changes.append((i, form))
        core_edits = frozenset(
            (e, e in added) for e in removed | added if all(self.owner.get(x) is None or forms[self.owner[x]] is _KEEP for x in e)
        )
        key = (tuple(changes), core_edits)
        if key not in self._core_memo:
            sub, owners, const = _core(self.adj, full, self.blocks, forms, removed, added)
            value = vertex_cover(sub, (1 << len(sub)) - 1, budget, roles=_roles_for(self.roles, owners), memo=self.memo)[0]
            self._core_memo[key] = value + const
        return self._core_memo[key]
