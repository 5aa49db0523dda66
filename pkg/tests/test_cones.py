import pytest
from hypothesis import given, settings, strategies as st

from conelab.cones import (
    Apex,
    Base,
    HomomorphismMap,
    Inner,
    PartialMapError,
    cone,
    generalized_cone,
    join,
    k2_collapse_homomorphism,
    parse_labels,
    serialize_labels,
    shift_homomorphism,
    verify_homomorphism,
)
from conelab.graph import Graph, InvalidParameterError, complete, cycle, empty, generate, parse_graph
from conelab.ratlp import fractional_chromatic

from .test_graph import graphs


def cone_by_definition(G, n):
    """Edge set straight from the definition, on (x, i) / 'star' labels."""
    E = set()
    for x, y in G.edges():
        for i in range(n):
            for j in range(n):
                if abs(i - j) == 1 or i == j == 0:
                    E.add(frozenset({(x, i), (y, j)}))
                    E.add(frozenset({(y, i), (x, j)}))
    for x in G.vertices:
        E.add(frozenset({(x, n - 1), "star"}))
    return E


def cone_edges_as_labels(C):
    out = set()
    for u, v in C.graph.edges():
        out.add(frozenset({_plain(C.labels[u]), _plain(C.labels[v])}))
    return out


def _plain(lab):
    if isinstance(lab, Base):
        return (lab.x, 0)
    if isinstance(lab, Inner):
        return (lab.x, lab.i)
    return "star"


def test_grotzsch():
    C = cone(cycle(5), 2)
    assert C.n == 11 and C.graph.edge_count == 20


def test_first_cone_adds_universal_vertex():
    G = generate("circulant", [7, 1, 2])
    C = cone(G, 1)
    apex = C.index[Apex(0)]
    assert C.graph.degree(apex) == G.n
    assert C.graph.edge_count == G.edge_count + G.n


def test_cone_k2_3():
    C = cone(complete(2), 3)
    assert C.n == 7
    assert C.graph.has_edge(*C.layer(0))
    for i in (1, 2):
        a, b = C.layer(i)
        assert not C.graph.has_edge(a, b)
    apex = C.index[Apex(0)]
    assert set(C.graph.adj[apex]) == set(C.layer(2))


@settings(max_examples=40, deadline=None)
@given(graphs(6, loops=False), st.integers(1, 5))
def test_cone_counts_and_definition(G, n):
    C = cone(G, n)
    assert C.n == n * G.n + 1
    assert C.graph.edge_count == G.edge_count * (2 * n - 1) + G.n
    assert cone_edges_as_labels(C) == cone_by_definition(G, n)
    assert not C.graph.loops


def test_generalized_cone_c5_k2():
    C = generalized_cone(cycle(5), complete(2), 3)
    assert C.n == 27
    assert C.graph.has_edge(C.index[Apex(0)], C.index[Apex(1)])


@settings(max_examples=30, deadline=None)
@given(graphs(4, loops=False), graphs(3, loops=False), st.data())
def test_generalized_cone_structure(G, H, data):
    h = tuple(data.draw(st.integers(1, 4)) for _ in range(H.n))
    C = generalized_cone(G, H, h)
    assert C.n == G.n * (1 + sum(k - 1 for k in h)) + H.n
    base = C.layer(0)
    assert C.graph.induced_subgraph(base).adj == G.adj
    apexes = [C.index[Apex(v)] for v in range(H.n)]
    assert C.graph.induced_subgraph(apexes).adj == H.adj
    # each copy with the base is the cone of its height
    for v in range(H.n):
        single = cone(G, h[v])
        assert C.graph.induced_subgraph(C.copy_vertices(v)).adj == single.graph.adj


def test_k1_pattern_is_plain_cone():
    G = cycle(5)
    assert generalized_cone(G, complete(1), 3).graph == cone(G, 3).graph


def test_height_one_everywhere_is_join():
    C = generalized_cone(complete(3), complete(2), 1)
    assert C.graph.edge_count == 10 and C.n == 5


def test_join_examples():
    assert join(complete(3), complete(2)).edge_count == 10
    W = join(cycle(5), complete(1))
    assert (W.n, W.edge_count) == (6, 10)
    C4 = join(empty(2), empty(2))
    assert C4.edge_count == 4 and all(C4.degree(v) == 2 for v in C4.vertices)


def test_cone_rejects_bad_input():
    with pytest.raises(InvalidParameterError):
        cone(cycle(5), 0)
    with pytest.raises(InvalidParameterError):
        cone(Graph.from_edges(2, [(0, 0), (0, 1)]), 2)
    with pytest.raises(InvalidParameterError):
        generalized_cone(cycle(5), complete(2), (2,))


def test_verify_homomorphism_examples():
    C5 = cycle(5)
    assert verify_homomorphism(HomomorphismMap(C5, C5, tuple(range(5)))) == (True, None)
    looped = Graph.from_edges(1, [(0, 0)])
    assert verify_homomorphism(HomomorphismMap(C5, looped, (0,) * 5))[0]
    ok, bad = verify_homomorphism(HomomorphismMap(C5, complete(1), (0,) * 5))
    assert not ok and bad is not None
    assert verify_homomorphism(HomomorphismMap(C5, complete(3), (0, 1, 0, 1, 2)))[0]
    with pytest.raises(PartialMapError):
        verify_homomorphism(HomomorphismMap(C5, C5, (0, 1)))


def test_shift_one_layer():
    G, H = cycle(5), complete(2)
    hm = shift_homomorphism(G, H, (3, 3), (3, 4))
    src, dst = hm.source_cone, hm.target_cone
    for k, lab in enumerate(src.labels):
        w = dst.labels[hm.mapping[k]]
        if isinstance(lab, Inner) and lab.v == 1:
            assert w == dst.labels[dst.vertex(Inner(lab.x, lab.i - 1, 1))]
        elif isinstance(lab, Apex) and lab.v == 1:
            assert w == Apex(1)
        else:
            assert w == lab
    assert verify_homomorphism(hm)[0]


def test_shift_identity_and_two_steps():
    hm = shift_homomorphism(cycle(5), complete(2), 3, 3)
    assert hm.mapping == tuple(range(hm.source.n))
    hm = shift_homomorphism(complete(2), complete(1), 2, 4)
    assert hm.source.n == 9 and hm.target.n == 5
    assert verify_homomorphism(hm)[0]
    with pytest.raises(InvalidParameterError):
        shift_homomorphism(complete(2), complete(1), 4, 2)


@pytest.mark.parametrize("G,n", [(cycle(5), 3), (complete(3), 2), (complete(2), 1)])
def test_k2_collapse(G, n):
    hm = k2_collapse_homomorphism(G, n)
    assert hm.source.n == G.n * (1 + (n - 1) + n) + 2
    assert hm.target.n == n * G.n + 1
    assert verify_homomorphism(hm)[0]
    longer = shift_homomorphism(G, complete(2), (n, n + 1), (n, n + 3)).compose(hm)
    assert verify_homomorphism(longer)[0]


def test_k2_collapse_needs_an_edge():
    with pytest.raises(InvalidParameterError):
        k2_collapse_homomorphism(empty(3), 2)


def test_monotone_in_heights():
    G, H = complete(3), complete(2)
    low = fractional_chromatic(generalized_cone(G, H, (2, 2)).graph).value
    high = fractional_chromatic(generalized_cone(G, H, (2, 3)).graph).value
    assert high <= low


def test_label_sidecar_round_trip():
    C = generalized_cone(cycle(5), complete(2), (2, 3))
    from conelab.graph import serialize_graph
    text = serialize_graph(C.graph) + serialize_labels(C)
    assert parse_graph(text) == C.graph
    labels = parse_labels(text)
    assert [labels[k] for k in range(C.n)] == list(C.labels)
