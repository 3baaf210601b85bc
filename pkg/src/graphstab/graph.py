"""Immutable simple graphs, graph algebra and DIMACS edge-format I/O.

Vertices are the dense ids ``0..n-1``. Every operation returns a new graph;
ids of an input graph are preserved where the operation allows it, and new
vertices are appended after the existing ones in a documented order.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Literal, Mapping, Sequence

__all__ = [
    "DimacsError",
    "ElementRef",
    "Graph",
    "GraphError",
    "ProvenanceTag",
    "add_edge",
    "add_vertex",
    "complement",
    "complete",
    "cycle",
    "delete_edge",
    "delete_vertex",
    "disjoint_union",
    "empty",
    "induced_subgraph",
    "join",
    "parse_dimacs",
    "path",
    "replicate_vertex",
    "to_dimacs",
]

ElementKind = Literal["vertex", "edge", "nonedge"]
Origin = Literal["original", "gadget", "join", "replica", "padding"]


class GraphError(ValueError):
    """An element reference does not fit the graph it was applied to."""

    def __init__(self, message: str, ref: "ElementRef | None" = None):
        super().__init__(message if ref is None else f"{message}: {ref}")
        self.ref = ref


class DimacsError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True, order=True)
class ElementRef:
    """A vertex, an edge or a nonedge, named by vertex ids.

    Pairs are stored sorted, so ``ElementRef.edge(3, 1) == ElementRef.edge(1, 3)``.
    """

    kind: ElementKind
    ids: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.kind == "vertex":
            if len(self.ids) != 1:
                raise GraphError("a vertex reference carries one id")
        elif self.kind in ("edge", "nonedge"):
            if len(self.ids) != 2 or self.ids[0] == self.ids[1]:
                raise GraphError(f"an {self.kind} reference carries two distinct ids")
            if self.ids[0] > self.ids[1]:
                object.__setattr__(self, "ids", (self.ids[1], self.ids[0]))
        else:
            raise GraphError(f"unknown element kind {self.kind!r}")

    @classmethod
    def vertex(cls, v: int) -> "ElementRef":
        return cls("vertex", (v,))

    @classmethod
    def edge(cls, u: int, v: int) -> "ElementRef":
        return cls("edge", (u, v))

    @classmethod
    def nonedge(cls, u: int, v: int) -> "ElementRef":
        return cls("nonedge", (u, v))

    def __str__(self) -> str:
        if self.kind == "vertex":
            return f"vertex {self.ids[0]}"
        return f"{self.kind} {self.ids[0]}-{self.ids[1]}"


@dataclass(frozen=True)
class ProvenanceTag:
    """Where an output element came from; ``part`` indexes the input graph for multi-input constructions."""

    origin: Origin
    source: ElementRef | None = None
    part: int = 0

    def __post_init__(self) -> None:
        if self.origin == "original" and self.source is None:
            raise GraphError("an original element must name its source")


def _pair(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


class Graph:
    """A simple undirected graph on vertices ``0..n-1``.

    ``labels`` optionally names vertices; names travel through the graph
    algebra but do not take part in equality.
    """

    __slots__ = ("_n", "_edges", "_labels", "_adj")

    def __init__(
        self,
        n: int,
        edges: Iterable[tuple[int, int]] = (),
        labels: Sequence[str | None] | Mapping[int, str] | None = None,
    ):
        if n < 0:
            raise GraphError("vertex count must be non-negative")
        adj = [0] * n
        normalized = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge {u}-{v} has an endpoint outside 0..{n - 1}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            e = _pair(u, v)
            if e in normalized:
                raise GraphError(f"duplicate edge {e[0]}-{e[1]}")
            normalized.add(e)
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self._n = n
        self._edges = frozenset(normalized)
        self._adj = tuple(adj)
        if labels is None:
            self._labels: tuple[str | None, ...] = (None,) * n
        elif isinstance(labels, Mapping):
            if any(not 0 <= k < n for k in labels):
                raise GraphError("label key outside the vertex range")
            self._labels = tuple(labels.get(v) for v in range(n))
        else:
            if len(labels) != n:
                raise GraphError("labels must name every vertex")
            self._labels = tuple(labels)

    @classmethod
    def _trusted(cls, n: int, edges: frozenset, labels: tuple) -> "Graph":
        g = cls.__new__(cls)
        adj = [0] * n
        for u, v in edges:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        g._n, g._edges, g._labels, g._adj = n, edges, labels, tuple(adj)
        return g

    @property
    def n(self) -> int:
        return self._n

    @property
    def vertices(self) -> range:
        return range(self._n)

    @property
    def edges(self) -> frozenset[tuple[int, int]]:
        return self._edges

    @property
    def labels(self) -> tuple[str | None, ...]:
        return self._labels

    @property
    def adjacency(self) -> tuple[int, ...]:
        """Neighbourhoods as bitmasks: bit ``w`` of entry ``v`` is set iff ``vw`` is an edge."""
        return self._adj

    @property
    def m(self) -> int:
        return len(self._edges)

    def edge_list(self) -> list[tuple[int, int]]:
        return sorted(self._edges)

    def nonedges(self) -> list[tuple[int, int]]:
        return [(u, v) for u, v in combinations(range(self._n), 2) if not self._adj[u] >> v & 1]

    def has_edge(self, u: int, v: int) -> bool:
        return 0 <= u < self._n and 0 <= v < self._n and bool(self._adj[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        mask, out = self._adj[v], []
        while mask:
            low = mask & -mask
            out.append(low.bit_length() - 1)
            mask ^= low
        return out

    def degree(self, v: int) -> int:
        return self._adj[v].bit_count()

    def label(self, v: int) -> str | None:
        return self._labels[v]

    def find(self, label: str) -> int:
        """The vertex carrying ``label``; raises ``KeyError`` when absent or ambiguous."""
        hits = [v for v, name in enumerate(self._labels) if name == label]
        if len(hits) != 1:
            raise KeyError(label)
        return hits[0]

    def with_labels(self, labels: Sequence[str | None] | Mapping[int, str] | None) -> "Graph":
        return Graph(self._n, self._edges, labels)

    def is_complete(self) -> bool:
        return self.m == self._n * (self._n - 1) // 2

    def check(self, ref: ElementRef) -> None:
        """Raise ``GraphError`` unless ``ref`` names an element of the required kind."""
        if any(not 0 <= i < self._n for i in ref.ids):
            raise GraphError("unknown vertex", ref)
        if ref.kind == "edge" and ref.ids not in self._edges:
            raise GraphError("not an edge", ref)
        if ref.kind == "nonedge" and ref.ids in self._edges:
            raise GraphError("not a nonedge", ref)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self._n, self._edges))

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, edges={self.edge_list()})"


def complete(k: int) -> Graph:
    return Graph(k, combinations(range(k), 2))


def empty(k: int) -> Graph:
    return Graph(k)


def path(k: int) -> Graph:
    return Graph(k, ((i, i + 1) for i in range(k - 1)))


def cycle(k: int) -> Graph:
    if k < 3:
        raise GraphError("a cycle needs at least three vertices")
    return Graph(k, [(i, (i + 1) % k) for i in range(k)])


def disjoint_union(g: Graph, h: Graph) -> Graph:
    """``g`` keeps its ids; ``h``'s ids are shifted by ``g.n``."""
    s = g.n
    edges = g.edges | {(u + s, v + s) for u, v in h.edges}
    return Graph._trusted(g.n + h.n, frozenset(edges), g.labels + h.labels)


def join(g: Graph, h: Graph) -> Graph:
    s = g.n
    cross = {(u, v + s) for u in range(g.n) for v in range(h.n)}
    edges = g.edges | {(u + s, v + s) for u, v in h.edges} | cross
    return Graph._trusted(g.n + h.n, frozenset(edges), g.labels + h.labels)


def complement(g: Graph) -> Graph:
    return Graph._trusted(g.n, frozenset(g.nonedges()), g.labels)


def delete_edge(g: Graph, e: tuple[int, int]) -> Graph:
    ref = ElementRef.edge(*e)
    g.check(ref)
    return Graph._trusted(g.n, g.edges - {ref.ids}, g.labels)


def add_edge(g: Graph, e: tuple[int, int]) -> Graph:
    ref = ElementRef.nonedge(*e)
    g.check(ref)
    return Graph._trusted(g.n, g.edges | {ref.ids}, g.labels)


def delete_vertex(g: Graph, v: int) -> Graph:
    """Remove ``v`` and its edges; ids above ``v`` move down by one to stay dense."""
    g.check(ElementRef.vertex(v))

    def shift(x: int) -> int:
        return x - 1 if x > v else x

    edges = frozenset((shift(a), shift(b)) for a, b in g.edges if v not in (a, b))
    return Graph._trusted(g.n - 1, edges, g.labels[:v] + g.labels[v + 1 :])


def add_vertex(g: Graph, neighborhood: Iterable[int], label: str | None = None) -> Graph:
    """Append vertex ``g.n`` adjacent to exactly ``neighborhood``."""
    nb = set(neighborhood)
    for w in nb:
        g.check(ElementRef.vertex(w))
    edges = g.edges | {(w, g.n) for w in nb}
    return Graph._trusted(g.n + 1, frozenset(edges), g.labels + (label,))


def replicate_vertex(g: Graph, v: int, label: str | None = None) -> Graph:
    """Append a nonadjacent twin of ``v`` with the same neighbourhood.

    The twin's default label is the original label with a trailing prime.
    """
    g.check(ElementRef.vertex(v))
    if label is None and g.label(v) is not None:
        label = g.label(v) + "'"
    return add_vertex(g, g.neighbors(v), label)


def induced_subgraph(g: Graph, keep: Iterable[int]) -> Graph:
    """The subgraph on ``keep``, renumbered in ascending id order."""
    order = sorted(set(keep))
    index = {v: i for i, v in enumerate(order)}
    edges = frozenset(
        _pair(index[a], index[b]) for a, b in g.edges if a in index and b in index
    )
    return Graph._trusted(len(order), edges, tuple(g.labels[v] for v in order))


def parse_dimacs(text: str | bytes) -> Graph:
    """Read the DIMACS edge format, with optional ``c label <id> <name>`` lines (1-indexed)."""
    if isinstance(text, bytes):
        text = text.decode()
    n = None
    declared_m = 0
    edges: set[tuple[int, int]] = set()
    labels: dict[int, str] = {}
    pending_labels: list[tuple[int, int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        parts = raw.split()
        if not parts:
            continue
        tag = parts[0]
        if tag == "c":
            if len(parts) >= 4 and parts[1] == "label":
                try:
                    pending_labels.append((lineno, int(parts[2]), " ".join(parts[3:])))
                except ValueError:
                    raise DimacsError("label id is not an integer", lineno) from None
            continue
        if tag == "p":
            if n is not None:
                raise DimacsError("second problem line", lineno)
            if len(parts) != 4 or parts[1] not in ("edge", "col"):
                raise DimacsError("malformed header, expected 'p edge <n> <m>'", lineno)
            try:
                n, declared_m = int(parts[2]), int(parts[3])
            except ValueError:
                raise DimacsError("header counts are not integers", lineno) from None
            if n < 0 or declared_m < 0:
                raise DimacsError("negative header count", lineno)
            continue
        if tag == "e":
            if n is None:
                raise DimacsError("edge line before header", lineno)
            if len(parts) != 3:
                raise DimacsError("malformed edge line", lineno)
            try:
                u, v = int(parts[1]) - 1, int(parts[2]) - 1
            except ValueError:
                raise DimacsError("edge endpoints are not integers", lineno) from None
            if not (0 <= u < n and 0 <= v < n):
                raise DimacsError("vertex index out of range", lineno)
            if u == v:
                raise DimacsError("self-loop", lineno)
            e = _pair(u, v)
            if e in edges:
                raise DimacsError("duplicate edge", lineno)
            edges.add(e)
            continue
        raise DimacsError(f"unknown line type {tag!r}", lineno)
    if n is None:
        raise DimacsError("missing 'p edge' header", 1)
    if declared_m != len(edges):
        raise DimacsError(f"header declares {declared_m} edges, found {len(edges)}", 1)
    for lineno, vid, name in pending_labels:
        if not 1 <= vid <= n:
            raise DimacsError("label id out of range", lineno)
        labels[vid - 1] = name
    return Graph(n, edges, labels)


def to_dimacs(g: Graph, comments: Iterable[str] = ()) -> str:
    lines = [f"c {c}" for c in comments]
    lines.append(f"p edge {g.n} {g.m}")
    for v, name in enumerate(g.labels):
        if name is not None:
            lines.append(f"c label {v + 1} {name}")
    lines.extend(f"e {u + 1} {v + 1}" for u, v in g.edge_list())
    return "\n".join(lines) + "\n"
