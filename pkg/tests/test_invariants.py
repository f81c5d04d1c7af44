import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from digitop import graph as gc
from digitop import homotopy as hp
from digitop.errors import BudgetExceeded
from digitop.graph import Graph
from digitop.invariants import (
    MOD2,
    betti_numbers,
    cliques,
    enumerate_cliques,
    euler_characteristic,
    smith_diagonal,
)
from digitop.lattice import WindowSpec, generate_window
from digitop.recognition import minimal_sphere
from oracles import brute_force_cliques

# the six-vertex real projective plane
RP2_TRIANGLES = [
    (0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 5, 1),
    (1, 2, 4), (2, 3, 5), (3, 4, 1), (4, 5, 2), (5, 1, 3),
]


def barycentric_graph(facets) -> Graph:
    """Comparability graph of the face poset; its flag complex is the subdivision."""
    faces = sorted({frozenset(f) for t in facets for k in (1, 2, 3) for f in itertools.combinations(t, k)},
                   key=lambda f: (len(f), sorted(f)))
    idx = {f: i for i, f in enumerate(faces)}
    edges = [(idx[a], idx[b]) for a in faces for b in faces if a < b]
    return Graph.from_edges(edges, range(len(faces)))


@st.composite
def graphs(draw, max_n=7):
    n = draw(st.integers(1, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph.from_edges(edges, range(n))


def test_octahedron_cliques(octahedron):
    assert enumerate_cliques(octahedron).counts == (6, 12, 8)
    assert enumerate_cliques(octahedron)[3] == 8
    assert enumerate_cliques(octahedron)[4] == 0
    assert euler_characteristic(octahedron) == 2


@settings(max_examples=60, deadline=None)
@given(graphs())
def test_clique_counts_match_brute_force(g):
    assert list(enumerate_cliques(g).counts) == brute_force_cliques(g.vertices, g.edges)


def test_max_size_truncates(octahedron):
    assert enumerate_cliques(octahedron, max_size=2).counts == (6, 12)


def test_clique_budget():
    with pytest.raises(BudgetExceeded):
        cliques(gc.complete_graph(10), max_cliques=100)


def test_betti_examples(octahedron):
    assert betti_numbers(octahedron).betti == (1, 0, 1)
    assert betti_numbers(gc.cycle_graph(4)).betti == (1, 1)
    assert betti_numbers(gc.zero_sphere()).betti == (2,)
    assert betti_numbers(gc.complete_graph(5)).betti == (1,)
    assert betti_numbers(octahedron).to_json() == {"euler": 2, "betti": [1, 0, 1], "torsion": [False, False, False]}


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_sphere_invariants(n):
    h = betti_numbers(minimal_sphere(n))
    assert h.euler == 1 + (-1) ** n
    assert h.betti == (2,) if n == 0 else h.betti == (1,) + (0,) * (n - 1) + (1,)


def test_contractible_window_is_acyclic():
    g = generate_window(WindowSpec("normal", ((0, 3), (0, 2), (0, 1))))
    assert hp.contractible(g)
    h = betti_numbers(g)
    assert h.euler == 1 and h.betti == (1,) and not any(h.torsion)


def test_rp2_torsion():
    g = barycentric_graph(RP2_TRIANGLES)
    assert len(g) == 31
    z = betti_numbers(g)
    assert z.euler == 1
    assert z.betti == (1, 0) and z.torsion == (False, True)
    assert betti_numbers(g, MOD2).betti == (1, 1, 1)


def test_mod2_agrees_without_torsion(octahedron):
    for g in (octahedron, gc.cycle_graph(7), minimal_sphere(3)):
        assert betti_numbers(g).betti == betti_numbers(g, MOD2).betti


def test_unknown_coefficients(triangle):
    with pytest.raises(ValueError):
        betti_numbers(triangle, "rationals")


def test_smith_diagonal_small():
    # [[2, 0], [0, 3]] has invariant factors 1, 6
    assert smith_diagonal([{0: 2}, {1: 3}], 2) == [1, 6]
    assert smith_diagonal([{0: 2, 1: 4}], 2) == [2]
    assert smith_diagonal([], 3) == []


def test_invariance_under_random_steps(octahedron):
    rng = random.Random(17)
    ref = betti_numbers(octahedron)
    g = octahedron
    for _ in range(40):
        g = hp.apply_step(g, hp.random_step(g, rng))
        h = betti_numbers(g)
        assert (h.euler, h.betti) == (ref.euler, ref.betti)
