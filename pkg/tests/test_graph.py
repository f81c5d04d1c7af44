import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from digitop import graph as gc
from digitop.canon import isomorphism_check
from digitop.errors import GraphError
from digitop.graph import Graph
from oracles import bfs_components


@st.composite
def graphs(draw, max_n=8):
    n = draw(st.integers(0, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph.from_edges(edges, range(n))


def test_rejects_self_loop():
    with pytest.raises(GraphError, match="self-loop"):
        Graph.from_edges([(1, 1)])
    with pytest.raises(GraphError, match="self-loop"):
        Graph({0: [0]})


def test_adjacency_is_symmetrized():
    g = Graph({0: [1], 1: []})
    assert g.has_edge(1, 0)
    assert g.edges == ((0, 1),)


def test_induced_subgraph_octahedron_minus_vertex(octahedron):
    sub = gc.induced_subgraph(octahedron, {1, 2, 3, 4, 5})
    # oracle: filter the explicit edge list
    expected = [e for e in octahedron.edges if 0 not in e]
    assert list(sub.edges) == expected
    assert sorted(sub.degree(v) for v in sub.vertices) == [3, 3, 3, 3, 4]
    assert isomorphism_check(sub, Graph.from_edges(
        [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (1, 4), (2, 4), (3, 4)]))


def test_induced_subgraph_trivial_cases(octahedron):
    assert gc.induced_subgraph(octahedron, octahedron.vertices) == octahedron
    assert len(gc.induced_subgraph(octahedron, ())) == 0
    with pytest.raises(GraphError):
        gc.induced_subgraph(octahedron, {99})


def test_rim_octahedron_is_four_cycle(octahedron):
    for v in octahedron.vertices:
        r = gc.rim(octahedron, v)
        assert len(r) == 4 and all(r.degree(u) == 2 for u in r)
        assert gc.is_connected(r)


def test_rim_isolated_vertex():
    assert len(gc.rim(gc.empty_graph(2), 0)) == 0


def test_ball(octahedron):
    assert len(gc.ball(octahedron, 0)) == 5


def test_mutual_rim(octahedron, triangle):
    mr = gc.mutual_rim(octahedron, (0, 2))
    assert mr.vertices == (4, 5) and not mr.edges
    assert gc.mutual_rim(octahedron, (3,)) == gc.rim(octahedron, 3)
    assert gc.mutual_rim(triangle, (0, 1)).vertices == (2,)
    with pytest.raises(GraphError):
        gc.mutual_rim(triangle, ())


def test_join_counts():
    s0 = gc.zero_sphere()
    c4 = gc.join(s0, s0)
    assert len(c4) == 4 and c4.number_of_edges() == 4
    assert isomorphism_check(c4, gc.cycle_graph(4))
    g = gc.path_graph(3)
    assert gc.join(g, Graph()) == g
    assert gc.join(Graph(), g) == g


@settings(max_examples=40, deadline=None)
@given(graphs(4), graphs(4), graphs(4))
def test_join_edge_count_and_associativity(a, b, c):
    ab = gc.join(a, b)
    assert len(ab) == len(a) + len(b)
    assert ab.number_of_edges() == a.number_of_edges() + b.number_of_edges() + len(a) * len(b)
    assert isomorphism_check(gc.join(ab, c), gc.join(a, gc.join(b, c)))


def test_connected_components_examples(octahedron):
    assert gc.connected_components(gc.zero_sphere()) == [{0}, {1}]
    assert len(gc.connected_components(octahedron)) == 1
    poles = octahedron.without({2, 3, 4, 5})
    assert gc.connected_components(poles) == [{0}, {1}]


@settings(max_examples=60, deadline=None)
@given(graphs())
def test_components_partition_vertices(g):
    comps = gc.connected_components(g)
    assert [set(c) for c in comps] == bfs_components(g.vertices, g.edges)
    owner = {v: i for i, c in enumerate(comps) for v in c}
    assert len(owner) == len(g)
    assert all(owner[u] == owner[v] for u, v in g.edges)
    assert [min(c) for c in comps] == sorted(min(c) for c in comps)


@settings(max_examples=40, deadline=None)
@given(graphs())
def test_rim_excludes_center(g):
    for v in g.vertices:
        r = gc.rim(g, v)
        assert v not in r
        assert all(g.has_edge(v, u) for u in r)


def test_quotient_examples():
    p = gc.path_graph(3)
    q = gc.quotient_identify(p, [{0, 2}])
    assert len(q) == 2 and q.edges == ((0, 1),)
    assert isomorphism_check(gc.quotient_identify(p, []), p)
    with pytest.raises(GraphError):
        gc.quotient_identify(p, [{0, 1}, {1, 2}])


@settings(max_examples=40, deadline=None)
@given(graphs())
def test_quotient_singletons_is_isomorphism(g):
    q = gc.quotient_identify(g, [{v} for v in g.vertices])
    assert isomorphism_check(g, q)


def test_digest_ignores_labels():
    a = Graph.from_edges([(0, 1)], labels={0: "x"})
    b = Graph.from_edges([(0, 1)])
    assert a == b and a.digest() == b.digest()


def test_immutability(triangle):
    before = triangle.key()
    triangle.without((0,))
    triangle.with_vertex(7, (0, 1))
    triangle.without_edge(0, 1)
    assert triangle.key() == before
