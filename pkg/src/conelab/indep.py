"""Independent sets: testing, maximal-set enumeration, and the per-copy
decomposition of independent sets in generalized cones."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .cones import Apex, ConeGraph, cone
from .graph import Graph, InvalidParameterError

DEFAULT_CAP = 5_000_000


def is_independent(G: Graph, S: Iterable[int]) -> bool:
    S = set(S)
    for v in S:
        if not 0 <= v < G.n:
            raise InvalidParameterError(f"vertex {v} out of range")
    return all(not (G.adj[v] & S) for v in S)


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


@dataclass(frozen=True)
class IndependentSetFamily:
    sets: tuple[tuple[int, ...], ...]
    graph: Graph
    truncated: bool = False

    def __len__(self):
        return len(self.sets)

    def __iter__(self):
        return iter(self.sets)

    @property
    def masks(self) -> list[int]:
        return [sum(1 << v for v in s) for s in self.sets]


class TruncatedFamilyError(RuntimeError):
    """The maximal independent set family hit its cap and cannot back an exact answer."""


def maximal_independent_sets(G: Graph, cap: int = DEFAULT_CAP) -> IndependentSetFamily:
    """All maximal independent sets of G, sorted lexicographically as vertex tuples.

    Bron-Kerbosch with Tomita pivoting, run on the complement's cliques.
    Looped vertices never appear. When more than ``cap`` sets exist the
    returned family holds the first ``cap`` found and ``truncated`` is set.
    """
    if cap < 1:
        raise InvalidParameterError("cap must be >= 1")
    full = (1 << G.n) - 1
    # neighbours in the complement, restricted to loop-free vertices
    allowed = full & ~sum(1 << v for v in G.loops)
    comp = [allowed & ~G.masks[v] & ~(1 << v) for v in range(G.n)]

    found: list[int] = []
    truncated = False

    def expand(R: int, P: int, X: int) -> bool:
        nonlocal truncated
        if not P and not X:
            if len(found) >= cap:
                truncated = True
                return False
            found.append(R)
            return True
        # pivot maximizing |P & N(u)|
        best, pivot = -1, 0
        for u in _bits(P | X):
            c = (P & comp[u]).bit_count()
            if c > best:
                best, pivot = c, u
        for v in _bits(P & ~comp[pivot]):
            bit = 1 << v
            if not expand(R | bit, P & comp[v], X & comp[v]):
                return False
            P &= ~bit
            X |= bit
        return True

    if G.n:
        expand(0, allowed, 0)
    sets = sorted(tuple(_bits(m)) for m in found)
    return IndependentSetFamily(tuple(sets), G, truncated)


def brute_force_maximal_independent_sets(G: Graph) -> list[tuple[int, ...]]:
    """Reference enumeration over all 2^n subsets. For tests; n <= ~18."""
    indep = []
    for mask in range(1 << G.n):
        if all(not (mask & G.masks[v]) for v in _bits(mask)):
            indep.append(mask)
    indep_set = set(indep)
    maximal = [
        m for m in indep
        if not any((m | (1 << v)) in indep_set for v in range(G.n) if not m >> v & 1)
    ]
    return sorted(tuple(_bits(m)) for m in maximal)


@dataclass(frozen=True)
class ConeDecomposition:
    restrictions: dict[int, frozenset[int]]   # copy v -> subset of cone(G, h(v)) vertices
    apex_set: frozenset[int]
    copies_independent: dict[int, bool]
    apex_set_independent: bool

    @property
    def verdict(self) -> bool:
        return all(self.copies_independent.values()) and self.apex_set_independent


def decompose_cone_independent(C: ConeGraph, S: Iterable[int]) -> ConeDecomposition:
    """Split S by copy and test each piece inside its own freshly built cone.

    The restriction to copy v is translated into the vertex numbering of
    ``cone(G, h(v))`` so the check does not reuse the ambient graph.
    """
    S = set(S)
    G, H = C.base_graph, C.pattern_graph
    singles: dict[int, ConeGraph] = {}
    restrictions, ok = {}, {}
    for v in range(H.n):
        k = C.heights[v]
        if k not in singles:
            singles[k] = cone(G, k)
        D = singles[k]
        # copy_vertices lists base, layers, apex in the same order cone(G, k) numbers them
        local = {pos for pos, w in enumerate(C.copy_vertices(v)) if w in S}
        restrictions[v] = frozenset(local)
        ok[v] = is_independent(D.graph, local)
    apex_set = frozenset(v for v in range(H.n) if C.index[Apex(v)] in S)
    return ConeDecomposition(restrictions, apex_set, ok, is_independent(H, apex_set))
