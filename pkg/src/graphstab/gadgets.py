"""Local graph surgeries with a proven effect on a graph number and on element statuses.

Every construction returns a :class:`ConstructionResult` that tags each output
vertex and edge with its provenance. Input vertices keep their ids; new
vertices are appended in the order documented per construction. Gadget
vertices carry labels of the form ``name[tag]`` where the bracketed tag
identifies the gadget instance, so repeated copies of one gadget share a role.

Iterated constructions visit edges in ascending ``(min id, max id)`` order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Literal, Mapping, Sequence

from .graph import ElementRef, Graph, GraphError, Origin, ProvenanceTag

__all__ = [
    "ConstructionResult",
    "beta_stabilize_edge",
    "beta_stabilize_edges",
    "chi_stabilize_edges",
    "join_and",
    "stabilized_join_and",
    "two_way_gadget_all",
    "two_way_gadget_edge",
]

Flavor = Literal["vertex-stability", "unfrozenness"]


@dataclass(frozen=True)
class ConstructionResult:
    """``value_shift`` is the claimed change of the relevant graph number."""

    graph: Graph
    element_provenance: Mapping[ElementRef, ProvenanceTag]
    value_shift: int
    notes: str
    parameters: Mapping[str, object] = field(default_factory=dict)

    def originals(self) -> dict[ElementRef, ElementRef]:
        """Output element -> input element, for every element tagged original."""
        return {ref: tag.source for ref, tag in self.element_provenance.items() if tag.origin == "original"}

    def by_origin(self, origin: Origin, kind: str | None = None) -> list[ElementRef]:
        return sorted(
            (r for r, t in self.element_provenance.items() if t.origin == origin and (kind is None or r.kind == kind)),
            key=lambda r: (r.kind, r.ids),
        )

    def provenance_json(self) -> dict:
        return {
            "construction": self.notes,
            "parameters": {k: _jsonable(v) for k, v in self.parameters.items()},
            "value_shift": self.value_shift,
            "elements": [
                {
                    "kind": r.kind,
                    "ids": list(r.ids),
                    "origin": t.origin,
                    "part": t.part,
                    "source": None if t.source is None else {"kind": t.source.kind, "ids": list(t.source.ids)},
                }
                for r, t in sorted(self.element_provenance.items(), key=lambda p: (p[0].kind, p[0].ids))
            ],
        }


def _jsonable(v):
    if isinstance(v, (list, tuple, set, frozenset)):
        return [_jsonable(x) for x in (sorted(v) if isinstance(v, (set, frozenset)) else v)]
    return v


class _Builder:
    """Mutable scratch graph that records provenance as it grows."""

    def __init__(self):
        self.labels: list[str | None] = []
        self.edges: dict[tuple[int, int], ProvenanceTag] = {}
        self.vtags: list[ProvenanceTag] = []

    @property
    def n(self) -> int:
        return len(self.labels)

    def vertex(self, label: str | None, tag: ProvenanceTag) -> int:
        self.labels.append(label)
        self.vtags.append(tag)
        return self.n - 1

    def edge(self, u: int, v: int, tag: ProvenanceTag) -> None:
        e = (u, v) if u < v else (v, u)
        if u == v or e in self.edges:
            raise GraphError(f"construction produced a loop or duplicate edge {e}")
        self.edges[e] = tag

    def drop(self, u: int, v: int) -> None:
        del self.edges[(u, v) if u < v else (v, u)]

    def neighbors(self, v: int) -> list[int]:
        return sorted({b if a == v else a for a, b in self.edges if v in (a, b)})

    def copy_of(self, g: Graph, part: int = 0) -> list[int]:
        """Add ``g`` as original elements of input ``part``; returns the new ids in input order."""
        ids = [self.vertex(g.label(v), ProvenanceTag("original", ElementRef.vertex(v), part)) for v in g.vertices]
        for u, v in g.edge_list():
            self.edge(ids[u], ids[v], ProvenanceTag("original", ElementRef.edge(u, v), part))
        return ids

    @classmethod
    def from_graph(cls, g: Graph) -> "_Builder":
        b = cls()
        b.copy_of(g)
        return b

    @classmethod
    def from_result(cls, r: ConstructionResult) -> "_Builder":
        """Continue building on a previous output, keeping its provenance."""
        b = cls()
        g = r.graph
        for v in g.vertices:
            b.vertex(g.label(v), r.element_provenance[ElementRef.vertex(v)])
        for u, v in g.edge_list():
            b.edges[(u, v)] = r.element_provenance[ElementRef.edge(u, v)]
        return b

    def result(self, shift: int, notes: str, **parameters) -> ConstructionResult:
        graph = Graph._trusted(self.n, frozenset(self.edges), tuple(self.labels))
        prov: dict[ElementRef, ProvenanceTag] = {ElementRef.vertex(v): t for v, t in enumerate(self.vtags)}
        for (u, v), t in self.edges.items():
            prov[ElementRef.edge(u, v)] = t
        return ConstructionResult(graph, prov, shift, notes, parameters)


def _name(label: str | None, v: int) -> str:
    return label if label is not None else str(v)


def _edge_set(g: Graph, edges: Iterable[Sequence[int]]) -> list[tuple[int, int]]:
    out = []
    for e in edges:
        ref = ElementRef.edge(*e)
        g.check(ref)
        out.append(ref.ids)
    return sorted(set(out))


GADGET = ProvenanceTag("gadget")


def chi_stabilize_edges(g: Graph, s: Iterable[Sequence[int]]) -> ConstructionResult:
    """Raise chi by exactly two while making every edge of ``s`` and every new edge stable.

    A 4-cycle w1'-w2'-w1''-w2'' is joined to all of G. For each e = {v1, v2}
    in ``s`` (v1 the smaller id) a copy G'_e of G is joined to v1, a vertex
    u'_e is joined to G'_e and v2, and u'_e and all of G'_e are replicated
    at once (each replica gets its original's neighbourhood at that moment),
    giving u''_e and an edgeless copy G''_e. Finally e is deleted. Edges of
    G outside ``s`` keep their status.

    New vertices in order: the 4-cycle, then per edge of ``s`` in ascending
    order G'_e, u'_e, G''_e, u''_e.
    """
    edges = _edge_set(g, s)
    if not edges:
        raise GraphError("the edge set to stabilize must be nonempty")
    b = _Builder.from_graph(g)
    cyc = [b.vertex(name, GADGET) for name in ("w1'", "w2'", "w1''", "w2''")]
    for i in range(4):
        b.edge(cyc[i], cyc[(i + 1) % 4], GADGET)
    for w in cyc:
        for v in g.vertices:
            b.edge(w, v, GADGET)
    for v1, v2 in edges:
        tag = f"[{v1}-{v2}]"
        copy = [b.vertex(f"G'{tag}:{_name(g.label(x), x)}", GADGET) for x in g.vertices]
        for x, y in g.edge_list():
            b.edge(copy[x], copy[y], GADGET)
        for c in copy:
            b.edge(c, v1, GADGET)
        u1 = b.vertex(f"u'{tag}", GADGET)
        for c in copy:
            b.edge(u1, c, GADGET)
        b.edge(u1, v2, GADGET)
        before = {v: b.neighbors(v) for v in copy + [u1]}
        replicas = {}
        for x in g.vertices:
            replicas[copy[x]] = b.vertex(f"G''{tag}:{_name(g.label(x), x)}", ProvenanceTag("replica", ElementRef.vertex(copy[x])))
        replicas[u1] = b.vertex(f"u''{tag}", ProvenanceTag("replica", ElementRef.vertex(u1)))
        for orig, rep in replicas.items():
            for w in before[orig]:
                b.edge(rep, w, GADGET)
        b.drop(v1, v2)
    return b.result(2, "chi edge stabilization", edges=edges)


def _beta_gadget(b: _Builder, v1: int, v2: int, tag: str) -> None:
    u = [b.vertex(f"u{i}{tag}", GADGET) for i in range(1, 5)]
    for i in range(4):
        b.edge(u[i], u[(i + 1) % 4], GADGET)
    for x, y in ((v1, u[0]), (v1, u[2]), (v2, u[1]), (v2, u[3])):
        b.edge(x, y, GADGET)


def beta_stabilize_edges(g: Graph, s: Iterable[Sequence[int]] | None = None) -> ConstructionResult:
    """Replace each edge {v1, v2} of ``s`` (all edges by default) by a stable cover gadget.

    The gadget is a 4-cycle u1-u2-u3-u4 with v1 joined to u1, u3 and v2 to
    u2, u4. Each application raises beta by exactly two, all gadget edges
    are stable and every other edge keeps its status. New vertices u1..u4
    are appended per edge in ascending edge order.
    """
    edges = g.edge_list() if s is None else _edge_set(g, s)
    b = _Builder.from_graph(g)
    for v1, v2 in edges:
        b.drop(v1, v2)
        _beta_gadget(b, v1, v2, f"[{v1}-{v2}]")
    return b.result(2 * len(edges), "beta edge stabilization", edges=edges)


def beta_stabilize_edge(g: Graph, e: Sequence[int]) -> ConstructionResult:
    return beta_stabilize_edges(g, [e])


def _two_way_gadget(b: _Builder, v: int, w: int, tag: str) -> None:
    u = [b.vertex(f"q{i}{tag}", GADGET) for i in range(1, 5)]
    u2 = [b.vertex(f"q{i}'{tag}", GADGET) for i in range(1, 5)]
    pairs = {frozenset(p) for p in zip(u, u2)}
    for x, y in combinations(u + u2, 2):
        if frozenset((x, y)) not in pairs:
            b.edge(x, y, GADGET)
    for x, y in ((v, u[0]), (v, u[1]), (w, u[2]), (w, u[3])):
        b.edge(x, y, GADGET)


def two_way_gadget_all(g: Graph, s: Iterable[Sequence[int]] | None = None) -> ConstructionResult:
    """Attach the two-way cover gadget to each edge of ``s`` (all edges by default).

    The edge {v, v'} itself stays. The gadget is the complete 4-partite graph
    with parts {q_i, q_i'} (K8 minus a perfect matching), with v joined to
    q1, q2 and v' to q3, q4. Each application raises beta by exactly six; old
    edges and nonedges keep their status, gadget edges are stable and every
    new nonedge is unfrozen. New vertices q1..q4, q1'..q4' are appended per
    edge in ascending edge order.
    """
    edges = g.edge_list() if s is None else _edge_set(g, s)
    if edges and g.n == 0:
        raise GraphError("the two-way gadget needs a nonempty graph")
    b = _Builder.from_graph(g)
    for v, w in edges:
        _two_way_gadget(b, v, w, f"[{v}-{w}]")
    return b.result(6 * len(edges), "beta two-way gadget", edges=edges)


def two_way_gadget_edge(g: Graph, e: Sequence[int]) -> ConstructionResult:
    if g.n == 0:
        raise GraphError("the two-way gadget needs a nonempty graph")
    return two_way_gadget_all(g, [e])


def _joined(graphs: Sequence[Graph]) -> tuple[_Builder, list[tuple[int, int]]]:
    if not graphs:
        raise GraphError("at least one graph is required")
    b = _Builder()
    parts = [b.copy_of(h, part=i) for i, h in enumerate(graphs)]
    join_edges = []
    for i, j in combinations(range(len(parts)), 2):
        for x in parts[i]:
            for y in parts[j]:
                b.edge(x, y, ProvenanceTag("join"))
                join_edges.append((x, y))
    return b, join_edges


def join_and(graphs: Sequence[Graph], flavor: Flavor = "vertex-stability") -> ConstructionResult:
    """Iterated join; chi of the output is the sum of the inputs' chi (``value_shift`` 0 against that sum).

    The join is vertex-stable iff every input is, and unfrozen iff every
    input is. Inputs keep their order; input i occupies the next block of ids.
    """
    if flavor not in ("vertex-stability", "unfrozenness"):
        raise ValueError(f"unknown flavor {flavor!r}")
    b, _ = _joined(graphs)
    return b.result(0, "join", flavor=flavor, parts=[h.n for h in graphs])


def stabilized_join_and(graphs: Sequence[Graph]) -> ConstructionResult:
    """Join, then chi-stabilize all join edges in one application.

    The output is stable iff every input is, and its chi is the sum of the
    inputs' chi plus two. With a single input there are no join edges and
    the input is returned as is.
    """
    b, join_edges = _joined(graphs)
    joined = b.result(0, "join", parts=[h.n for h in graphs])
    if not join_edges:
        return ConstructionResult(joined.graph, joined.element_provenance, 0, "stabilized join", joined.parameters)
    stab = chi_stabilize_edges(joined.graph, join_edges)
    prov = {}
    for ref, tag in stab.element_provenance.items():
        prov[ref] = joined.element_provenance[tag.source] if tag.origin == "original" else tag
    return ConstructionResult(stab.graph, prov, 2, "stabilized join", {"parts": [h.n for h in graphs]})
