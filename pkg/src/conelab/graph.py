"""Finite graphs on dense integer vertices, standard generators, direct product
and the plain-text graph format.

A graph is immutable. Adjacency is stored as one frozenset per vertex; a loop
at ``v`` is recorded by ``v in adj[v]``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence


class InvalidParameterError(ValueError):
    """Raised when a constructor or operation gets parameters outside its range."""


class GraphFormatError(ValueError):
    """Raised for malformed graph text."""


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[frozenset[int], ...]

    def __post_init__(self):
        if len(self.adj) != self.n:
            raise InvalidParameterError("adjacency length differs from vertex count")
        for u, nbrs in enumerate(self.adj):
            for v in nbrs:
                if not 0 <= v < self.n:
                    raise InvalidParameterError(f"neighbour {v} of {u} out of range")
                if u not in self.adj[v]:
                    raise InvalidParameterError(f"asymmetric adjacency {u}->{v}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidParameterError(f"edge ({u}, {v}) out of range for n={n}")
            adj[u].add(v)
            adj[v].add(u)
        return cls(n, tuple(frozenset(a) for a in adj))

    @property
    def vertices(self) -> range:
        return range(self.n)

    @cached_property
    def loops(self) -> frozenset[int]:
        return frozenset(v for v in range(self.n) if v in self.adj[v])

    @cached_property
    def masks(self) -> tuple[int, ...]:
        """Neighbourhood bitmasks (loops included)."""
        return tuple(sum(1 << w for w in nbrs) for nbrs in self.adj)

    def edges(self) -> Iterator[tuple[int, int]]:
        """Each edge once as ``(u, v)`` with ``u <= v``; loops appear as ``(v, v)``."""
        for u in range(self.n):
            for v in sorted(self.adj[u]):
                if u <= v:
                    yield (u, v)

    @cached_property
    def edge_count(self) -> int:
        """Number of edges, loops included."""
        return sum(1 for _ in self.edges())

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def induced_subgraph(self, vertices: Sequence[int]) -> "Graph":
        """Subgraph induced on ``vertices``, renumbered in the given order."""
        pos = {v: i for i, v in enumerate(vertices)}
        return Graph.from_edges(
            len(vertices),
            ((pos[u], pos[v]) for u in vertices for v in self.adj[u] if v in pos),
        )

    def complement(self) -> "Graph":
        """Loop-free complement (loops are dropped)."""
        return Graph.from_edges(
            self.n,
            ((u, v) for u, v in itertools.combinations(range(self.n), 2) if v not in self.adj[u]),
        )

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.edge_count}, loops={sorted(self.loops)})"


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise InvalidParameterError(msg)


def cycle(n: int) -> Graph:
    _need(n >= 3, "cycle requires n >= 3")
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def complete(n: int) -> Graph:
    _need(n >= 1, "complete requires n >= 1")
    return Graph.from_edges(n, itertools.combinations(range(n), 2))


def empty(n: int) -> Graph:
    _need(n >= 1, "empty requires n >= 1")
    return Graph.from_edges(n, ())


def path_with_loop(n: int) -> Graph:
    """Path on 0..n with a loop at 0."""
    _need(n >= 1, "path_with_loop requires n >= 1")
    return Graph.from_edges(n + 1, [(0, 0), *((i, i + 1) for i in range(n))])


def circulant(n: int, gaps: Sequence[int]) -> Graph:
    """Vertices Z_n, u ~ v iff u - v = +-g for some g in ``gaps``."""
    _need(n >= 1, "circulant requires n >= 1")
    _need(len(gaps) > 0, "circulant requires at least one gap")
    for g in gaps:
        _need(0 < g <= n / 2, f"circulant gap {g} must satisfy 0 < g <= n/2")
    return Graph.from_edges(n, ((i, (i + g) % n) for i in range(n) for g in gaps))


def kneser_vertices(s: int, t: int) -> list[tuple[int, ...]]:
    """The t-subsets of {0, ..., s-1} in colexicographic order."""
    return sorted(itertools.combinations(range(s), t), key=lambda c: c[::-1])


def kneser(s: int, t: int) -> Graph:
    """Kneser graph K(s, t); vertex order is :func:`kneser_vertices`."""
    _need(s >= t >= 1, "kneser requires s >= t >= 1")
    verts = [frozenset(c) for c in kneser_vertices(s, t)]
    return Graph.from_edges(
        len(verts),
        ((i, j) for i, j in itertools.combinations(range(len(verts)), 2) if not verts[i] & verts[j]),
    )


FAMILIES = {
    "cycle": (1, lambda p: cycle(p[0])),
    "complete": (1, lambda p: complete(p[0])),
    "empty": (1, lambda p: empty(p[0])),
    "path_with_loop": (1, lambda p: path_with_loop(p[0])),
    "circulant": (None, lambda p: circulant(p[0], p[1:])),
    "kneser": (2, lambda p: kneser(p[0], p[1])),
}


def generate(family: str, params: Sequence[int]) -> Graph:
    """Build a named graph, e.g. ``generate("circulant", [7, 1, 2])``."""
    if family not in FAMILIES:
        raise InvalidParameterError(f"unknown family {family!r}; choose from {sorted(FAMILIES)}")
    arity, build = FAMILIES[family]
    params = [int(p) for p in params]
    if arity is not None and len(params) != arity:
        raise InvalidParameterError(f"{family} takes {arity} parameter(s), got {len(params)}")
    if arity is None and len(params) < 2:
        raise InvalidParameterError(f"{family} takes n followed by at least one gap")
    return build(params)


def direct_product(G: Graph, H: Graph) -> tuple[Graph, list[tuple[int, int]]]:
    """Direct (tensor) product. Vertex ``x * H.n + y`` carries the label ``(x, y)``."""
    _need(G.n > 0 and H.n > 0, "direct product of an empty graph")
    labels = [(x, y) for x in range(G.n) for y in range(H.n)]
    edges = (
        (x * H.n + y, x2 * H.n + y2)
        for x, y in labels
        for x2 in G.adj[x]
        for y2 in H.adj[y]
    )
    return Graph.from_edges(G.n * H.n, edges), labels


def disjoint_union(G: Graph, H: Graph) -> Graph:
    return Graph.from_edges(
        G.n + H.n,
        itertools.chain(G.edges(), ((u + G.n, v + G.n) for u, v in H.edges())),
    )


# -- text format --------------------------------------------------------------

def serialize_graph(G: Graph) -> str:
    edges = list(G.edges())
    lines = [f"p {G.n} {len(edges)}"]
    lines += [f"e {u} {v}" for u, v in edges]
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Graph:
    """Parse ``p n m`` / ``e u v`` text. ``c`` comments and ``l`` label lines are skipped."""
    n = m = None
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line[0] in "cl":
            continue
        parts = line.split()
        try:
            nums = [int(p) for p in parts[1:]]
        except ValueError:
            raise GraphFormatError(f"line {lineno}: non-integer field in {raw!r}") from None
        if parts[0] == "p":
            if n is not None or len(nums) != 2 or min(nums) < 0:
                raise GraphFormatError(f"line {lineno}: bad header {raw!r}")
            n, m = nums
        elif parts[0] == "e":
            if n is None:
                raise GraphFormatError(f"line {lineno}: edge before header")
            if len(nums) != 2:
                raise GraphFormatError(f"line {lineno}: edge needs two endpoints")
            u, v = nums
            if not (0 <= u < n and 0 <= v < n):
                raise GraphFormatError(f"line {lineno}: vertex out of range [0, {n})")
            edges.append((u, v))
        else:
            raise GraphFormatError(f"line {lineno}: unknown record {parts[0]!r}")
    if n is None:
        raise GraphFormatError("missing 'p' header")
    if len(edges) != m:
        raise GraphFormatError(f"header declares {m} edges, found {len(edges)}")
    return Graph.from_edges(n, edges)
