"""Formula-to-graph and graph-to-graph reductions between the stability problems.

Each pipeline is a pure construction. Pipelines that feed hardness
arguments come with the biconditional they are meant to satisfy; the
verification harness checks those biconditionals with exact solvers.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Sequence

from .cnf import CnfError, CnfFormula
from .gadgets import GADGET, ConstructionResult, _beta_gadget, _Builder, two_way_gadget_all
from .graph import (
    ElementRef,
    Graph,
    ProvenanceTag,
    complete,
    disjoint_union,
    empty,
    join,
    replicate_vertex,
)
from .solvers import chromatic_number, vertex_cover_number

__all__ = [
    "CaiMeyerGraph",
    "Unfreezer",
    "beta_unfrozen_to_beta_twoway",
    "cai_meyer_graph",
    "compare_colorability_instance",
    "compare_vc_to_beta_stability",
    "compare_vc_to_beta_unfrozenness",
    "conditional_unfrozenness_reduction",
    "exact_unfreezer",
    "gjs_3col",
    "stable3cnf_to_vertex_stability",
    "union_double",
    "vstab_to_stab",
]


def _require_exact3(phi: CnfFormula, op: str) -> None:
    if not phi.is_exact(3):
        raise CnfError(f"{op} needs an exact-3CNF formula, got clause widths {dict(phi.widths())}")


# Formula to graph

@dataclass(frozen=True)
class CaiMeyerGraph:
    """The 3-colourability graph of a formula; ``t_vertices[i]`` tracks clause ``i``."""

    graph: Graph
    t_vertices: tuple[int, ...]

    def vertex(self, label: str) -> int:
        return self.graph.find(label)


def cai_meyer_graph(phi: CnfFormula) -> CaiMeyerGraph:
    """Graph that is 3-colourable iff ``phi`` is satisfiable, otherwise 4-chromatic.

    Vertices: v_c and v_s (adjacent); per variable k the adjacent pair x_k,
    ~x_k, both adjacent to v_c; per clause i and literal j an edge
    a_ij - b_ij with both ends adjacent to v_s, a_ij adjacent to its literal
    vertex and b_ij to t_ij; the t_i1, t_i2, t_i3 form a triangle. Deleting
    t_i1 has the same effect on 3-colourability as deleting clause i.
    Labels use 1-based clause and literal indices (``t_11``).
    """
    _require_exact3(phi, "cai_meyer_graph")
    if phi.m == 0:
        raise CnfError("cai_meyer_graph needs at least one clause")
    labels = ["v_c", "v_s"]
    edges = [(0, 1)]
    lit_vertex = {}
    for k in range(1, phi.num_vars + 1):
        pos, neg = len(labels), len(labels) + 1
        labels += [f"x{k}", f"~x{k}"]
        lit_vertex[k], lit_vertex[-k] = pos, neg
        edges += [(pos, neg), (0, pos), (0, neg)]
    ts = []
    for i, clause in enumerate(phi.clauses, 1):
        base = len(labels)
        labels += [f"a_{i}{j}" for j in (1, 2, 3)] + [f"b_{i}{j}" for j in (1, 2, 3)] + [f"t_{i}{j}" for j in (1, 2, 3)]
        a, b, t = range(base, base + 3), range(base + 3, base + 6), range(base + 6, base + 9)
        for j, lit in enumerate(clause):
            edges += [(a[j], b[j]), (a[j], 1), (b[j], 1), (a[j], lit_vertex[lit]), (b[j], t[j])]
        edges += [(t[0], t[1]), (t[1], t[2]), (t[0], t[2])]
        ts.append(t[0])
    return CaiMeyerGraph(Graph(len(labels), edges, labels), tuple(ts))


def stable3cnf_to_vertex_stability(phi: CnfFormula) -> Graph:
    """Replicate every vertex of the Cai-Meyer graph except the t_i1; vertex-stable iff ``phi`` is stable.

    Replication is sequential in id order, so each replica is an exact
    nonadjacent twin in the final graph. Replicas are appended in that order
    and labelled with a trailing prime.
    """
    cm = cai_meyer_graph(phi)
    g = cm.graph
    skip = set(cm.t_vertices)
    for v in range(cm.graph.n):
        if v not in skip:
            g = replicate_vertex(g, v)
    return g


def gjs_3col(phi: CnfFormula) -> Graph:
    """Graph with chromatic number 3 if ``phi`` is satisfiable and 4 otherwise.

    A palette triangle T, F, B; per variable a triangle x_k, ~x_k, B; per
    clause (a | b | c) two chained OR triangles: a-o1, b-o2 with o1, o2, o3 a
    triangle, then o3-o5, c-o4 with o4, o5, o6 a triangle, and o6 adjacent
    to F and B so that o6 must take the colour of T.
    """
    _require_exact3(phi, "gjs_3col")
    labels = ["T", "F", "B"]
    T, F, B = 0, 1, 2
    edges = [(T, F), (F, B), (T, B)]
    lit_vertex = {}
    for k in range(1, phi.num_vars + 1):
        pos, neg = len(labels), len(labels) + 1
        labels += [f"x{k}", f"~x{k}"]
        lit_vertex[k], lit_vertex[-k] = pos, neg
        edges += [(pos, neg), (pos, B), (neg, B)]
    for i, (a, b, c) in enumerate(phi.clauses, 1):
        o = [len(labels) + r for r in range(6)]
        labels += [f"o{r}[{i}]" for r in range(1, 7)]
        edges += [(lit_vertex[a], o[0]), (lit_vertex[b], o[1]), (o[0], o[1]), (o[1], o[2]), (o[0], o[2])]
        edges += [(lit_vertex[c], o[3]), (o[2], o[4]), (o[3], o[4]), (o[4], o[5]), (o[3], o[5])]
        edges += [(o[5], F), (o[5], B)]
    return Graph(len(labels), edges, labels)


def compare_colorability_instance(phis: Sequence[CnfFormula], psis: Sequence[CnfFormula]) -> tuple[Graph, Graph]:
    """Pair (G, H) with chi(G) <= chi(H) iff at most as many ``phis`` as ``psis`` are satisfiable.

    Each gadget graph has chi 3 when its formula is satisfiable and 4
    otherwise, so a join of k of them has chi 4k minus the number of
    satisfiable formulas. G is therefore built from ``psis`` and H from
    ``phis``. The count comparison is only meaningful under the premise
    that satisfiability is monotone along each list.
    """
    if len(phis) != len(psis):
        raise ValueError(f"lists differ in length: {len(phis)} and {len(psis)}")
    if not phis:
        raise ValueError("at least one formula per side is required")

    def joined(formulas: Sequence[CnfFormula]) -> Graph:
        out = Graph(0)
        for phi in formulas:
            out = join(out, gjs_3col(phi))
        return out

    return joined(psis), joined(phis)


# Graph to graph

def vstab_to_stab(g: Graph) -> Graph:
    """Self-join G + G; stable iff G is vertex-stable."""
    return join(g, g)


def union_double(g: Graph) -> Graph:
    """Disjoint union G with G; stable and vertex-stable with the same chi as G."""
    return disjoint_union(g, g)


def compare_vc_to_beta_stability(g: Graph, h: Graph) -> ConstructionResult:
    """Graph S that is beta-stable iff beta(G) > beta(H).

    Every edge of H is replaced by the stabilizing cover gadget, giving a
    beta-stable H' with beta raised by 2|E(H)|. G gets a disjoint K2 and
    K_{2|E(H)|}, which raise beta by the same amount and leave a critical
    edge. The smaller side is padded with isolated vertices, the two sides
    are joined and every join edge is replaced by the same gadget (G side
    first). An optimal cover of S takes one whole side plus an optimal
    cover of the side with the smaller beta, so S inherits the stability of
    the stabilized H side exactly when beta(H) < beta(G).

    When H has no edges the K2 alone would shift the G side by one, so G and
    H are compared directly and a fixed instance is returned: I_1
    (vacuously stable) for yes, K2 for no.
    """
    m = h.m
    if m == 0:
        yes = g.m > 0
        b = _Builder()
        x = b.vertex("canonical0", ProvenanceTag("padding"))
        if not yes:
            b.edge(x, b.vertex("canonical1", ProvenanceTag("padding")), ProvenanceTag("padding"))
        return b.result(0, "compare vertex cover to beta-stability", bypass=True, answer=yes)
    b = _Builder()
    pad = ProvenanceTag("padding")
    g_side = b.copy_of(g, part=0)
    k2 = [b.vertex(f"k2:{i}", GADGET) for i in range(2)]
    b.edge(*k2, GADGET)
    clique = [b.vertex(f"kq:{i}", GADGET) for i in range(2 * m)]
    for x, y in combinations(clique, 2):
        b.edge(x, y, GADGET)
    g_side += k2 + clique
    g_n = len(g_side)
    h_start = b.n
    h_side = b.copy_of(h, part=1)
    for v1, v2 in h.edge_list():
        b.drop(h_side[v1], h_side[v2])
        _beta_gadget(b, h_side[v1], h_side[v2], f"[{v1}-{v2}]")
    h_side = list(range(h_start, b.n))
    h_n = len(h_side)
    g_side += [b.vertex(f"pg{i}", pad) for i in range(max(0, h_n - g_n))]
    h_side += [b.vertex(f"ph{i}", pad) for i in range(max(0, g_n - h_n))]
    c = len(g_side)
    for x in g_side:
        for y in h_side:
            _beta_gadget(b, x, y, f"[J{x}-{y}]")
    return b.result(
        0,
        "compare vertex cover to beta-stability",
        bypass=False,
        stabilized_vertices=h_n,
        padded_vertices=g_n,
        side_order=c,
        padding_shift=2 * m,
        join_gadget_cover=2 * c * c,
    )


def compare_vc_to_beta_unfrozenness(g: Graph, h: Graph) -> ConstructionResult:
    """Graph J that is beta-unfrozen iff beta(G) <= beta(H).

    With g = |V(G)| and h = |V(H)|: G' = (G u I_h) + (G u I_h) and
    H' = (H + K_{g+h}) u I_g, both of order 2(g+h) with beta raised by g+h,
    and J = G' + H'. The construction needs g >= 2 and h >= 1 (for h = 0 the
    clique K_g only adds g-1). Outside that range beta(G) and beta(H) are
    compared directly and a fixed instance is returned: I_1 (unfrozen) for
    yes, I_2 (frozen nonedge) for no.
    """
    gn, hn = g.n, h.n
    if gn <= 1 or hn == 0:
        yes = vertex_cover_number(g).value <= vertex_cover_number(h).value
        b = _Builder()
        for i in range(1 if yes else 2):
            b.vertex(f"canonical{i}", ProvenanceTag("padding"))
        return b.result(0, "compare vertex cover to beta-unfrozenness", bypass=True, answer=yes)
    b = _Builder()
    pad = ProvenanceTag("padding")
    join_tag = ProvenanceTag("join")

    def g_union_pad(copy: int) -> list[int]:
        if copy == 0:
            ids = b.copy_of(g, part=0)
        else:
            ids = [b.vertex(g.label(v), ProvenanceTag("replica", ElementRef.vertex(v))) for v in g.vertices]
            for u, v in g.edge_list():
                b.edge(ids[u], ids[v], ProvenanceTag("replica", ElementRef.edge(u, v)))
        return ids + [b.vertex(f"pad{copy}:{i}", pad) for i in range(hn)]

    left, right = g_union_pad(0), g_union_pad(1)
    for x in left:
        for y in right:
            b.edge(x, y, join_tag)
    g_prime = left + right
    h_ids = b.copy_of(h, part=1)
    clique = [b.vertex(f"kq:{i}", GADGET) for i in range(gn + hn)]
    for x, y in combinations(clique, 2):
        b.edge(x, y, GADGET)
    for x in h_ids:
        for y in clique:
            b.edge(x, y, join_tag)
    h_prime = h_ids + clique + [b.vertex(f"pi:{i}", pad) for i in range(gn)]
    for x in g_prime:
        for y in h_prime:
            b.edge(x, y, join_tag)
    return b.result(0, "compare vertex cover to beta-unfrozenness", bypass=False, beta_shift=gn + hn, side_order=2 * (gn + hn))


def beta_unfrozen_to_beta_twoway(g: Graph) -> ConstructionResult:
    """Two-way cover gadget on every edge; the result is beta-two-way-stable iff G is beta-unfrozen."""
    return two_way_gadget_all(g)


# Conditional reduction

@dataclass(frozen=True)
class Unfreezer:
    """A map to unfrozen graphs with ``chi(transform(G)) == chi(G) + shift(G)``; the contract is not checked here."""

    transform: Callable[[Graph], Graph]
    shift: Callable[[Graph], int]
    name: str = "unfreezer"


def exact_unfreezer() -> Unfreezer:
    """Test-only unfreezer G -> K_chi(G); it solves chi exactly, so it is exponential in general."""
    return Unfreezer(lambda g: complete(chromatic_number(g).value), lambda g: 0, "exact clique unfreezer")


def conditional_unfrozenness_reduction(g: Graph, h: Graph, u: Unfreezer) -> Graph:
    """Graph U that is unfrozen iff chi(G) <= chi(H), provided ``u`` meets its contract.

    G'' = G + I_2 + K_{max(0, s-1)} keeps the frozen nonedge of I_2, and
    H'' = u(H) + K_{1 + max(1-s, 0)} with s = u.shift(H) is unfrozen with
    chi exactly one above chi(G'') - chi(G) + chi(H). U is their disjoint union.
    """
    s = u.shift(h)
    g2 = join(join(g, empty(2)), complete(max(0, s - 1)))
    h2 = join(u.transform(h), complete(1 + max(1 - s, 0)))
    return disjoint_union(g2, h2)
