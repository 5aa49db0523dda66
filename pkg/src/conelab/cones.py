"""Cones and generalized (H, h)-cones over graphs, plus the explicit
homomorphisms between them.

Vertex numbering of every cone is fixed: base block first (in G order), then
each copy v of H in H order with its inner layers ascending (each layer in G
order), then the apexes in H order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence, Union

from .graph import Graph, InvalidParameterError, complete, disjoint_union


# dataclasses rather than NamedTuples: Base(0) must not equal Apex(0)
@dataclass(frozen=True)
class Base:
    x: int


@dataclass(frozen=True)
class Inner:
    x: int
    i: int
    v: int


@dataclass(frozen=True)
class Apex:
    v: int


ConeLabel = Union[Base, Inner, Apex]


@dataclass(frozen=True)
class ConeGraph:
    graph: Graph
    labels: tuple[ConeLabel, ...]
    base_graph: Graph
    pattern_graph: Graph
    heights: tuple[int, ...]
    index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "index", {lab: k for k, lab in enumerate(self.labels)})

    def vertex(self, label: ConeLabel) -> int:
        """Index of a structured label. ``Inner(x, 0, v)`` resolves to the base vertex."""
        if isinstance(label, Inner) and label.i == 0:
            label = Base(label.x)
        elif isinstance(label, Inner) and label.i == self.heights[label.v]:
            label = Apex(label.v)
        return self.index[label]

    def layer(self, i: int, v: int = 0) -> list[int]:
        """Vertices of layer ``i`` in copy ``v`` (layer 0 is the shared base)."""
        return [self.vertex(Inner(x, i, v)) for x in range(self.base_graph.n)]

    def copy_vertices(self, v: int) -> list[int]:
        """Base, inner layers and apex of copy ``v``, in cone-(G, h(v)) order."""
        out = self.layer(0)
        for i in range(1, self.heights[v]):
            out += self.layer(i, v)
        out.append(self.index[Apex(v)])
        return out

    @property
    def n(self) -> int:
        return self.graph.n


def _check_simple(G: Graph, name: str) -> None:
    if G.n == 0:
        raise InvalidParameterError(f"{name} must be nonempty")
    if G.loops:
        raise InvalidParameterError(f"{name} must be loop-free")


def generalized_cone(G: Graph, H: Graph, h: Sequence[int] | Mapping[int, int] | int) -> ConeGraph:
    """The (H, h)-cone over G.

    ``h`` may be an int (constant height) or a per-vertex sequence/mapping. A
    copy with ``h(v) == 1`` consists of its apex alone, joined to the whole base.
    """
    _check_simple(G, "G")
    _check_simple(H, "H")
    if isinstance(h, int):
        heights = (h,) * H.n
    elif isinstance(h, Mapping):
        heights = tuple(h[v] for v in range(H.n))
    else:
        heights = tuple(h)
    if len(heights) != H.n:
        raise InvalidParameterError("need one height per vertex of H")
    if any(k < 1 for k in heights):
        raise InvalidParameterError("heights must be positive")

    labels: list[ConeLabel] = [Base(x) for x in range(G.n)]
    for v in range(H.n):
        labels += [Inner(x, i, v) for i in range(1, heights[v]) for x in range(G.n)]
    labels += [Apex(v) for v in range(H.n)]
    idx = {lab: k for k, lab in enumerate(labels)}

    def at(x, i, v):
        if i == 0:
            return idx[Base(x)]
        if i == heights[v]:
            return idx[Apex(v)]
        return idx[Inner(x, i, v)]

    edges = [(idx[Base(x)], idx[Base(y)]) for x, y in G.edges()]
    for v in range(H.n):
        for i in range(heights[v] - 1):
            for x, y in G.edges():
                edges.append((at(x, i, v), at(y, i + 1, v)))
                edges.append((at(y, i, v), at(x, i + 1, v)))
        top = heights[v] - 1
        edges += [(at(x, top, v), idx[Apex(v)]) for x in range(G.n)]
    edges += [(idx[Apex(u)], idx[Apex(v)]) for u, v in H.edges()]
    graph = Graph.from_edges(len(labels), edges)
    assert not graph.loops
    return ConeGraph(graph, tuple(labels), G, H, heights)


def cone(G: Graph, n: int) -> ConeGraph:
    """The n-th cone over G, built as the (K1, n)-cone."""
    if n < 1:
        raise InvalidParameterError("cone height n must be >= 1")
    return generalized_cone(G, complete(1), n)


def join(G: Graph, H: Graph) -> Graph:
    """Disjoint union of G and H plus every edge between them."""
    if G.loops or H.loops:
        raise InvalidParameterError("join inputs must be loop-free")
    U = disjoint_union(G, H)
    cross = [(x, G.n + y) for x in range(G.n) for y in range(H.n)]
    return Graph.from_edges(U.n, [*U.edges(), *cross])


# -- homomorphisms -------------------------------------------------------------

@dataclass(frozen=True)
class HomomorphismMap:
    source: Graph
    target: Graph
    mapping: tuple[int, ...]
    source_cone: ConeGraph | None = None
    target_cone: ConeGraph | None = None

    def __call__(self, u: int) -> int:
        return self.mapping[u]

    def compose(self, after: "HomomorphismMap") -> "HomomorphismMap":
        """``after o self``."""
        if after.source != self.target:
            raise InvalidParameterError("composition: target of first != source of second")
        return HomomorphismMap(
            self.source, after.target, tuple(after.mapping[w] for w in self.mapping),
            self.source_cone, after.target_cone,
        )


class PartialMapError(ValueError):
    pass


def verify_homomorphism(hm: HomomorphismMap) -> tuple[bool, tuple[int, int] | None]:
    """Check that every edge (loops included) maps onto an edge.

    Returns ``(ok, witness)``; ``witness`` is the first offending source edge.
    """
    f = hm.mapping
    if len(f) != hm.source.n:
        raise PartialMapError(f"map covers {len(f)} of {hm.source.n} vertices")
    if any(not 0 <= w < hm.target.n for w in f):
        raise PartialMapError("map value outside target vertex range")
    for u, v in hm.source.edges():
        if not hm.target.has_edge(f[u], f[v]):
            return False, (u, v)
    return True, None


def _label_map(src: ConeGraph, dst: ConeGraph, rule) -> HomomorphismMap:
    return HomomorphismMap(
        src.graph, dst.graph, tuple(dst.vertex(rule(lab)) for lab in src.labels), src, dst,
    )


def _one_step(G: Graph, H: Graph, heights: tuple[int, ...], u: int) -> HomomorphismMap:
    """Map from the cone with copy ``u`` one layer taller down to ``heights``.

    ``((x, i), u) -> ((x, i-1), u)`` for 1 <= i <= h(u)+1, identity elsewhere.
    """
    taller = list(heights)
    taller[u] += 1
    src = generalized_cone(G, H, taller)
    dst = generalized_cone(G, H, heights)

    def rule(lab):
        if isinstance(lab, Inner) and lab.v == u:
            return Inner(lab.x, lab.i - 1, u)
        if isinstance(lab, Apex) and lab.v == u:
            # the apex is layer h(u)+1, sent to layer h(u): the target's apex
            return Apex(u)
        return lab

    return _label_map(src, dst, rule)


def _heights(H: Graph, h) -> tuple[int, ...]:
    if isinstance(h, int):
        return (h,) * H.n
    if isinstance(h, Mapping):
        return tuple(h[v] for v in range(H.n))
    return tuple(h)


def shift_homomorphism(G: Graph, H: Graph, h, h_prime) -> HomomorphismMap:
    """Homomorphism from the (H, h')-cone onto the (H, h)-cone for h <= h' pointwise,
    composed from single-layer collapses, one vertex of H at a time."""
    h, h_prime = _heights(H, h), _heights(H, h_prime)
    if len(h) != H.n or len(h_prime) != H.n:
        raise InvalidParameterError("need one height per vertex of H")
    if any(a > b for a, b in zip(h, h_prime)):
        raise InvalidParameterError("shift_homomorphism requires h(v) <= h'(v) for all v")
    start = generalized_cone(G, H, h_prime)
    result = HomomorphismMap(start.graph, start.graph, tuple(range(start.n)), start, start)
    current = list(h_prime)
    for u in range(H.n):
        while current[u] > h[u]:
            current[u] -= 1
            result = result.compose(_one_step(G, H, tuple(current), u))
    ok, bad = verify_homomorphism(result)
    assert ok, f"shift map failed on edge {bad}"
    return result


def k2_collapse_homomorphism(G: Graph, n: int) -> HomomorphismMap:
    """Homomorphism from the (K2, (n, n+1))-cone over G onto the n-th cone over G.

    The apex of the taller copy goes to ``(x0, n-1)`` with ``x0 = 0``.
    """
    if n < 1:
        raise InvalidParameterError("n must be >= 1")
    if G.edge_count == 0:
        raise InvalidParameterError("G must have at least one edge")
    src = generalized_cone(G, complete(2), (n, n + 1))
    dst = cone(G, n)
    x0 = 0

    def rule(lab):
        if isinstance(lab, Base):
            return lab
        if isinstance(lab, Inner):
            if lab.i <= n - 1:
                return Inner(lab.x, lab.i, 0)
            return Apex(0)  # layer n of the taller copy
        if lab.v == 0:
            return Apex(0)
        return Inner(x0, n - 1, 0)

    hm = _label_map(src, dst, rule)
    ok, bad = verify_homomorphism(hm)
    assert ok, f"collapse map failed on edge {bad}"
    return hm


# -- cone text format ------------------------------------------------------------

def serialize_labels(C: ConeGraph) -> str:
    lines = []
    for k, lab in enumerate(C.labels):
        if isinstance(lab, Base):
            lines.append(f"l {k} B {lab.x}")
        elif isinstance(lab, Inner):
            lines.append(f"l {k} I {lab.x} {lab.i} {lab.v}")
        else:
            lines.append(f"l {k} A {lab.v}")
    return "\n".join(lines) + "\n"


def parse_labels(text: str) -> dict[int, ConeLabel]:
    out: dict[int, ConeLabel] = {}
    for raw in text.splitlines():
        parts = raw.split()
        if not parts or parts[0] != "l":
            continue
        k, kind, *rest = parts[1:]
        nums = [int(r) for r in rest]
        lab = {"B": Base, "I": Inner, "A": Apex}[kind](*nums)
        out[int(k)] = lab
    return out


def pattern_homomorphism(G: Graph, phi: HomomorphismMap, h) -> HomomorphismMap:
    """Lift a homomorphism ``phi: H -> K`` to the cones: (H, h)-cone -> (K, n)-cone.

    ``h`` must be a constant height ``n`` so every copy has a same-height target.
    """
    if not isinstance(h, int):
        raise InvalidParameterError("pattern lift needs a constant height")
    src = generalized_cone(G, phi.source, h)
    dst = generalized_cone(G, phi.target, h)
    f = phi.mapping

    def rule(lab):
        if isinstance(lab, Inner):
            return Inner(lab.x, lab.i, f[lab.v])
        if isinstance(lab, Apex):
            return Apex(f[lab.v])
        return lab

    hm = _label_map(src, dst, rule)
    ok, bad = verify_homomorphism(hm)
    if not ok:
        raise InvalidParameterError(f"pattern map is not a homomorphism (edge {bad})")
    return hm
