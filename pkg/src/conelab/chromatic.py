"""Exact chromatic number, homomorphism search and finite exponential graphs."""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass

from .cones import ConeGraph, HomomorphismMap, Inner, cone, verify_homomorphism
from .graph import Graph, InvalidParameterError, complete

DEFAULT_MAX_VERTICES = 64
DEFAULT_NODE_CAP = 5_000_000
DEFAULT_EXP_BOUND = 10**6


class SearchCapError(RuntimeError):
    """A search hit its node cap before reaching a verdict."""


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass
class ColouringResult:
    chi: int
    colouring: list[int]
    nodes_explored: int
    clique: list[int]

    def classes(self) -> list[list[int]]:
        return [[v for v, c in enumerate(self.colouring) if c == k] for k in range(self.chi)]


def greedy_clique(G: Graph) -> list[int]:
    """A maximal clique grown greedily from every start vertex; the largest is kept."""
    best: list[int] = []
    for s in range(G.n):
        Q, cand = [s], set(G.adj[s]) - {s}
        while cand:
            v = max(sorted(cand), key=lambda w: len(G.adj[w] & cand))
            Q.append(v)
            cand &= G.adj[v]
            cand.discard(v)
        if len(Q) > len(best):
            best = sorted(Q)
    return best


def dsatur_greedy(G: Graph) -> list[int]:
    colour = [-1] * G.n
    for _ in range(G.n):
        v = max(
            (u for u in range(G.n) if colour[u] < 0),
            key=lambda u: (len({colour[w] for w in G.adj[u] if colour[w] >= 0}), G.degree(u), -u),
        )
        used = {colour[w] for w in G.adj[v]}
        colour[v] = next(c for c in itertools.count() if c not in used)
    return colour


def k_colouring(G: Graph, k: int, precolour: dict[int, int] | None = None,
                node_cap: int = DEFAULT_NODE_CAP) -> tuple[list[int] | None, int]:
    """Search for a proper k-colouring by DSATUR-ordered backtracking.

    Returns ``(colouring or None, nodes)``. ``None`` means the search space was
    exhausted. Colours not fixed by ``precolour`` are interchangeable, so a
    fresh colour is only tried once per node. Raises :class:`SearchCapError`
    if ``node_cap`` is reached.
    """
    if G.loops:
        raise InvalidParameterError("graph with loops has no proper colouring")
    colour = [-1] * G.n
    pre = precolour or {}
    for v, c in pre.items():
        colour[v] = c
    for v, c in pre.items():
        if any(colour[w] == c for w in G.adj[v]):
            return None, 0
    fixed_top = max(pre.values(), default=-1)
    nodes = 0

    def forbidden(v):
        m = 0
        for w in G.adj[v]:
            if colour[w] >= 0:
                m |= 1 << colour[w]
        return m

    def solve(used_top: int) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > node_cap:
            raise SearchCapError(f"colouring search exceeded {node_cap} nodes")
        best, best_key, best_forb = -1, None, 0
        for v in range(G.n):
            if colour[v] >= 0:
                continue
            f = forbidden(v)
            key = (f.bit_count(), sum(1 for w in G.adj[v] if colour[w] < 0), -v)
            if best_key is None or key > best_key:
                best, best_key, best_forb = v, key, f
        if best < 0:
            return True
        limit = min(k, max(used_top, fixed_top) + 2)
        for c in range(limit):
            if best_forb >> c & 1:
                continue
            colour[best] = c
            if solve(max(used_top, c)):
                return True
        colour[best] = -1
        return False

    found = solve(-1)
    return (list(colour) if found else None), nodes


def chromatic_number(G: Graph, max_vertices: int = DEFAULT_MAX_VERTICES,
                     node_cap: int = DEFAULT_NODE_CAP) -> ColouringResult:
    """Exact chromatic number.

    A greedy clique gives the lower bound and is precoloured 0..q-1; DSATUR
    gives an upper bound; every k in between is decided by exhaustive search.
    """
    if G.n > max_vertices:
        raise InvalidParameterError(f"{G.n} vertices exceeds the bound {max_vertices}")
    if G.loops:
        raise InvalidParameterError("graph with loops has no proper colouring")
    if G.n == 0:
        return ColouringResult(0, [], 0, [])
    Q = greedy_clique(G)
    best = dsatur_greedy(G)
    ub = max(best) + 1
    total = 0
    for k in range(len(Q), ub):
        col, nodes = k_colouring(G, k, {v: i for i, v in enumerate(Q)}, node_cap - total)
        total += nodes
        if col is not None:
            return ColouringResult(k, col, total, Q)
    return ColouringResult(ub, best, total, Q)


# -- homomorphisms ------------------------------------------------------------------

@dataclass
class HomSearchResult:
    status: str  # "found", "none" or "cap"
    mapping: HomomorphismMap | None
    nodes: int

    @property
    def found(self) -> bool:
        return self.status == "found"


def degeneracy_order(G: Graph) -> list[int]:
    """Reverse smallest-last order: densest core first."""
    deg = {v: len(G.adj[v] - {v}) for v in range(G.n)}
    left = set(range(G.n))
    order = []
    while left:
        v = min(left, key=lambda u: (deg[u], u))
        order.append(v)
        left.remove(v)
        for w in G.adj[v]:
            if w in left:
                deg[w] -= 1
    return order[::-1]


def find_homomorphism(G: Graph, K: Graph, node_cap: int = DEFAULT_NODE_CAP,
                      fixed: dict[int, int] | None = None) -> HomSearchResult:
    """Backtracking search for a homomorphism G -> K with forward checking.

    ``fixed`` pins some images in advance. Status ``"none"`` is a certified
    non-existence (search exhausted); ``"cap"`` means undecided.
    """
    full = (1 << K.n) - 1
    looped = sum(1 << c for c in K.loops)
    dom = [looped if v in G.loops else full for v in range(G.n)]
    for v, c in (fixed or {}).items():
        dom[v] &= 1 << c
    order = degeneracy_order(G)
    if fixed:
        order = sorted(fixed) + [v for v in order if v not in fixed]
    image = [-1] * G.n
    nodes = 0

    def assign(pos: int, dom: list[int]) -> bool | None:
        nonlocal nodes
        if pos == len(order):
            return True
        u = order[pos]
        for c in _bits(dom[u]):
            nodes += 1
            if nodes > node_cap:
                return None
            image[u] = c
            new = list(dom)
            new[u] = 1 << c
            ok = True
            for w in G.adj[u]:
                if image[w] < 0:
                    new[w] &= K.masks[c]
                    if not new[w]:
                        ok = False
                        break
            if ok:
                r = assign(pos + 1, new)
                if r is None or r:
                    return r
            image[u] = -1
        return False

    if any(d == 0 for d in dom):
        return HomSearchResult("none", None, 0)
    r = assign(0, dom)
    if r is None:
        return HomSearchResult("cap", None, nodes)
    if not r:
        return HomSearchResult("none", None, nodes)
    hm = HomomorphismMap(G, K, tuple(image))
    ok, bad = verify_homomorphism(hm)
    assert ok, bad
    return HomSearchResult("found", hm, nodes)


def is_k_colourable_brute(G: Graph, k: int) -> bool:
    """All k^n assignments; test oracle for tiny graphs."""
    edges = [(u, v) for u, v in G.edges()]
    return any(
        all(c[u] != c[v] for u, v in edges)
        for c in itertools.product(range(k), repeat=G.n)
    )


# -- exponential graphs --------------------------------------------------------------

@dataclass
class ExponentialGraph:
    graph: Graph
    maps: list[tuple[int, ...]]   # vertex index -> map V(G) -> V(K)
    loop_set: frozenset[int]
    constant_set: dict[int, int]  # colour c -> index of the constant map
    base: Graph
    target: Graph

    def index_of(self, f) -> int:
        idx = 0
        for x in range(self.base.n):
            idx = idx * self.target.n + f[x]
        return idx


def exponential_graph(K: Graph, G: Graph, bound: int = DEFAULT_EXP_BOUND) -> ExponentialGraph:
    """K^G: maps V(G) -> V(K), f ~ g iff f(x) g(y) is an edge of K for every edge xy of G.

    Maps are indexed as base-|V(K)| numerals, most significant digit at vertex 0.
    """
    size = K.n ** G.n
    if size > bound:
        raise InvalidParameterError(f"|V(K)|^|V(G)| = {size} exceeds bound {bound}")
    maps = list(itertools.product(range(K.n), repeat=G.n))
    weights = [K.n ** (G.n - 1 - x) for x in range(G.n)]
    edges = []
    allK = list(range(K.n))
    for fi, f in enumerate(maps):
        allowed = []
        for y in range(G.n):
            choice = set(allK)
            for x in G.adj[y]:
                choice &= K.adj[f[x]]
            allowed.append(sorted(choice))
        for g in itertools.product(*allowed):
            gi = sum(w * c for w, c in zip(weights, g))
            if fi <= gi:
                edges.append((fi, gi))
    graph = Graph.from_edges(size, edges)
    consts = {c: sum(w * c for w in weights) for c in range(K.n)}
    return ExponentialGraph(graph, maps, graph.loops, consts, G, K)


@dataclass
class DistanceTable:
    distances: dict[int, int | None]   # constant colour -> walk length from nearest loop
    parents: dict[int, int]
    exp: ExponentialGraph

    @property
    def minimum(self) -> int | None:
        finite = [d for d in self.distances.values() if d is not None]
        return min(finite) if finite else None

    def walk_to(self, c: int) -> list[int] | None:
        """A shortest walk (list of map indices) from a loop vertex to the constant c."""
        if self.distances.get(c) is None:
            return None
        node = self.exp.constant_set[c]
        walk = [node]
        while node in self.parents:
            node = self.parents[node]
            walk.append(node)
        return walk[::-1]


def loop_to_constant_distances(K: Graph, G: Graph, bound: int = DEFAULT_EXP_BOUND,
                               exp: ExponentialGraph | None = None) -> DistanceTable:
    """Multi-source BFS from the loops of K^G; walk length to each constant map.

    A walk of length d from a loop to the constant c is the same thing as a
    homomorphism from the d-th cone over G to K sending the apex to c.
    """
    E = exp or exponential_graph(K, G, bound)
    dist = {v: 0 for v in sorted(E.loop_set)}
    parents: dict[int, int] = {}
    queue = deque(sorted(E.loop_set))
    while queue:
        u = queue.popleft()
        for w in sorted(E.graph.adj[u]):
            if w not in dist:
                dist[w] = dist[u] + 1
                parents[w] = u
                queue.append(w)
    table = {c: dist.get(idx) for c, idx in E.constant_set.items()}
    return DistanceTable(table, parents, E)


def walk_to_cone_homomorphism(E: ExponentialGraph, walk: list[int]) -> HomomorphismMap:
    """Turn a walk f_0 (loop), f_1, ..., f_d (constant) into a map cone(G, d) -> K."""
    d = len(walk) - 1
    if d < 1:
        raise InvalidParameterError("walk must have length >= 1")
    C = cone(E.base, d)
    image = [0] * C.n
    for i in range(d):
        f = E.maps[walk[i]]
        for x in range(E.base.n):
            image[C.vertex(Inner(x, i, 0))] = f[x]
    image[C.vertex(Inner(0, d, 0))] = E.maps[walk[d]][0]
    return HomomorphismMap(C.graph, E.target, tuple(image), C, None)


def cone_homomorphism_to_walk(E: ExponentialGraph, C: ConeGraph, hm: HomomorphismMap) -> list[int]:
    """Layer restrictions of a map cone(G, d) -> K, ending in the apex constant."""
    d = C.heights[0]
    walk = []
    for i in range(d):
        walk.append(E.index_of([hm.mapping[C.vertex(Inner(x, i, 0))] for x in range(E.base.n)]))
    apex = hm.mapping[C.vertex(Inner(0, d, 0))]
    walk.append(E.constant_set[apex])
    return walk


def is_walk(E: ExponentialGraph, walk: list[int]) -> bool:
    return walk[0] in E.loop_set and all(E.graph.has_edge(a, b) for a, b in zip(walk, walk[1:]))


def colouring_as_homomorphism(G: Graph, colouring: list[int]) -> HomomorphismMap:
    k = max(colouring, default=-1) + 1
    return HomomorphismMap(G, complete(max(k, 1)), tuple(colouring))
