import itertools
import math

import pytest
from hypothesis import given, settings, strategies as st

from ramsey_senders.graph import (
    GammaClass, Graph, Graph6Error, GraphError, bridges, classify_gamma, complete_graph,
    connected_components, cycle_graph, delete_edge, disjoint_union, edge_distance,
    find_cycle_at_least, identify, is_3_connected, is_connected, is_cycle, parse_graph6,
    path_graph, remove_isolated, to_graph6,
)


@st.composite
def graphs(draw, max_n=12):
    n = draw(st.integers(0, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph(n, tuple(chosen))


@given(graphs())
@settings(max_examples=300, deadline=None)
def test_graph6_round_trip(g):
    s = to_graph6(g)
    assert parse_graph6(s) == g
    assert to_graph6(parse_graph6(s)) == s


def hand_graph6(g: Graph) -> str:
    # Independent encoder: column-major upper triangle, 6 bits per byte, +63.
    bits = [1 if (i, j) in g.edge_set else 0 for j in range(g.n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    body = "".join(chr(63 + int("".join(map(str, bits[k:k + 6])), 2)) for k in range(0, len(bits), 6))
    return chr(63 + g.n) + body


@given(graphs(max_n=12))
@settings(max_examples=200, deadline=None)
def test_graph6_matches_hand_encoder(g):
    assert to_graph6(g) == hand_graph6(g)


def test_graph6_constants():
    assert to_graph6(complete_graph(3)) == "Bw"
    assert parse_graph6("Bw") == Graph(3, ((0, 1), (0, 2), (1, 2)))
    assert to_graph6(Graph(0, ())) == "?"
    assert parse_graph6("@") == Graph(1, ())
    assert to_graph6(complete_graph(6)) == "E~~w"
    assert parse_graph6(">>graph6<<Bw") == complete_graph(3)


def test_graph6_large_order():
    g = path_graph(70)
    assert to_graph6(g).startswith("~")
    assert parse_graph6(to_graph6(g)) == g


@pytest.mark.parametrize("text, offset", [("B", 1), ("B\x7f", 1), ("Bww", 2), ("", 0), ("\x1f", 0)])
def test_graph6_errors_name_offset(text, offset):
    with pytest.raises(Graph6Error) as info:
        parse_graph6(text)
    assert info.value.offset == offset


def test_graph_validation():
    with pytest.raises(GraphError):
        Graph(2, ((0, 0),))
    with pytest.raises(GraphError):
        Graph(2, ((0, 2),))
    with pytest.raises(GraphError):
        Graph.from_json({"n": 2, "edges": [[1, 0]]})


def test_edge_distance():
    p = path_graph(4)
    assert edge_distance(p, (0, 1), (2, 3)) == 1
    assert edge_distance(p, (0, 1), (0, 1)) == 0
    assert edge_distance(p, (0, 1), (1, 2)) == 0
    two = disjoint_union(complete_graph(2), complete_graph(2))
    assert edge_distance(two, (0, 1), (2, 3)) == math.inf
    with pytest.raises(GraphError):
        edge_distance(p, (0, 2), (2, 3))


def test_components():
    assert is_connected(complete_graph(3))
    assert len(connected_components(disjoint_union(complete_graph(3), complete_graph(3)))) == 2
    assert is_connected(Graph(1, ())) and connected_components(Graph(1, ())) == [[0]]


def test_classify_gamma():
    assert classify_gamma(complete_graph(3)) is GammaClass.GAMMA3
    assert classify_gamma(complete_graph(4)) is GammaClass.GAMMA3
    assert classify_gamma(cycle_graph(5)) is GammaClass.GAMMA2_PRIME
    assert classify_gamma(path_graph(3)) is GammaClass.NEITHER
    assert classify_gamma(disjoint_union(cycle_graph(3), cycle_graph(3))) is GammaClass.NEITHER
    assert not is_3_connected(cycle_graph(6))
    assert bridges(path_graph(3)) == [(0, 1), (1, 2)]
    assert bridges(cycle_graph(4)) == []


def test_three_connected_wheel_and_prism():
    wheel = Graph(6, tuple(cycle_graph(5).edges) + tuple((i, 5) for i in range(5)))
    assert is_3_connected(wheel)
    # Two triangles joined by a matching; removing 2 vertices never disconnects it.
    prism = Graph(6, ((0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)))
    assert is_3_connected(prism)
    # K4 minus an edge has a 2-cut.
    assert not is_3_connected(delete_edge(complete_graph(4), (0, 1)))


def test_find_cycle():
    c6 = cycle_graph(6)
    cyc = find_cycle_at_least(c6, 6)
    assert cyc is not None and len(cyc) == 6 and is_cycle(c6, cyc)
    assert find_cycle_at_least(c6, 7) is None
    assert find_cycle_at_least(path_graph(7), 3) is None
    k5 = complete_graph(5)
    assert len(find_cycle_at_least(k5, 5)) == 5


def test_delete_edge():
    assert delete_edge(complete_graph(3), (0, 1)) == Graph(3, ((0, 2), (1, 2)))
    empty = delete_edge(path_graph(2), (0, 1))
    assert empty.n == 2 and empty.m == 0
    once = delete_edge(complete_graph(3), (0, 1))
    with pytest.raises(GraphError):
        delete_edge(once, (0, 1))
    g, vmap = remove_isolated(Graph(4, ((1, 3),)))
    assert g == Graph(2, ((0, 1),)) and vmap == {1: 0, 3: 1}


def test_identify_c6_trace():
    # Traced by hand: 5~a rewires to c=3, 2~b rewires to d=4, x'=(3,4) survives.
    ident = identify(cycle_graph(6), (0, 1), (3, 4))
    old = {(2, 3), (3, 4), (4, 5), (3, 5), (2, 4)}
    inv = {v: k for k, v in ident.vertex_map.items()}
    assert {tuple(sorted((inv[u], inv[v]))) for u, v in ident.graph.edges} == old
    assert ident.graph == Graph(4, ((0, 1), (0, 2), (1, 2), (1, 3), (2, 3)))
    assert ident.vertex_map == {2: 0, 3: 1, 4: 2, 5: 3}


def test_identify_p6_trace():
    ident = identify(path_graph(6), (0, 1), (3, 4))
    inv = {v: k for k, v in ident.vertex_map.items()}
    got = {tuple(sorted((inv[u], inv[v]))) for u, v in ident.graph.edges}
    assert got == {(2, 3), (3, 4), (4, 5), (2, 4)}


def test_identify_orientation_and_errors():
    ident = identify(cycle_graph(6), (1, 0), (3, 4))
    inv = {v: k for k, v in ident.vertex_map.items()}
    got = {tuple(sorted((inv[u], inv[v]))) for u, v in ident.graph.edges}
    assert got == {(2, 3), (3, 4), (4, 5)}
    with pytest.raises(GraphError):
        identify(path_graph(4), (0, 1), (1, 2))


def test_structure_against_networkx():
    nx = pytest.importorskip("networkx")
    import random
    rng = random.Random(11)
    for _ in range(150):
        n = rng.randint(1, 9)
        g = Graph(n, tuple(e for e in itertools.combinations(range(n), 2) if rng.random() < 0.45))
        h = nx.Graph()
        h.add_nodes_from(range(n))
        h.add_edges_from(g.edges)
        assert is_connected(g) == nx.is_connected(h)
        assert set(bridges(g)) == {tuple(sorted(e)) for e in nx.bridges(h)}
        three = n >= 4 and nx.is_connected(h) and nx.node_connectivity(h) >= 3
        assert is_3_connected(g) == three
        for e, f in itertools.combinations(g.edges, 2):
            want = min((nx.shortest_path_length(h, a, b) if nx.has_path(h, a, b) else math.inf)
                       for a in e for b in f)
            assert edge_distance(g, e, f) == want
