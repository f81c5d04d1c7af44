import random

import pytest

from digitop import graph as gc
from digitop import homotopy as hp
from digitop.errors import BudgetExceeded, GraphError, PreconditionError, StepError
from digitop.graph import Graph
from digitop.homotopy import TransformationStep
from digitop.lattice import WindowSpec, generate_window
from oracles import oracle_contractible


def test_simple_points(triangle):
    assert all(hp.is_simple_point(triangle, v) for v in triangle)
    c4 = gc.cycle_graph(4)
    assert not any(hp.is_simple_point(c4, v) for v in c4)
    assert not hp.is_simple_point(gc.empty_graph(2), 0)


def test_simple_edges(triangle):
    assert hp.is_simple_edge(triangle, 0, 1)
    assert not hp.is_simple_edge(gc.cycle_graph(4), 0, 1)
    with pytest.raises(GraphError):
        hp.is_simple_edge(gc.cycle_graph(4), 0, 2)


def test_diagonal_of_complete_box_is_simple():
    spec = WindowSpec("complete", ((0, 1), (0, 1)))
    y = generate_window(spec)
    x, z = spec.index((0, 1)), spec.index((1, 0))
    assert hp.is_simple_edge(y, x, z)
    # joint rim is the other diagonal pair, joined to each other
    joint = gc.mutual_rim(y, (x, z))
    assert joint.vertices == (spec.index((0, 0)), spec.index((1, 1)))
    assert joint.number_of_edges() == 1


def test_is_contractible_examples():
    v = hp.is_contractible(gc.empty_graph(1))
    assert v and len(v.trace) == 0
    assert not hp.is_contractible(gc.zero_sphere())
    v = hp.is_contractible(gc.cycle_graph(4))
    assert not v and len(v.stuck) == 4
    assert hp.is_contractible(gc.path_graph(3))
    assert not hp.is_contractible(Graph())


def test_stuck_witness_has_no_simple_point():
    g = Graph.from_edges([(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5), (5, 6)])
    v = hp.is_contractible(g)
    assert not v
    assert len(v.stuck) > 1 and not hp.simple_points(v.stuck)


def test_greedy_agrees_with_exhaustive_on_random_graphs():
    rng = random.Random(7)
    for _ in range(150):
        n = rng.randint(1, 8)
        g = Graph.from_edges(
            [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.5], range(n)
        )
        o = oracle_contractible(g)
        assert bool(hp.is_contractible(g)) == o
        assert hp.contractible(g) == o


def test_trace_replays():
    g = generate_window(WindowSpec("normal", ((0, 2), (0, 3))))
    v = hp.is_contractible(g)
    assert v
    end = hp.replay(g, v.trace)
    assert len(end) == 1
    assert hp.ReductionTrace.from_json(v.trace.to_json()) == v.trace


def test_replay_rejects_wrong_start(triangle):
    v = hp.is_contractible(triangle)
    with pytest.raises(StepError):
        hp.replay(gc.path_graph(3), v.trace)


def test_apply_step_examples(triangle):
    g = hp.apply_step(triangle, TransformationStep(hp.DELETE_POINT, 0))
    assert g.edges == ((1, 2),)
    with pytest.raises(StepError):
        hp.apply_step(gc.cycle_graph(4), TransformationStep(hp.DELETE_POINT, 0))
    # without validation the same deletion is allowed
    assert len(hp.apply_step(gc.cycle_graph(4), TransformationStep(hp.DELETE_POINT, 0), False)) == 3
    with pytest.raises(StepError):
        hp.apply_step(triangle, TransformationStep(hp.ATTACH_POINT, 1, {0}))
    with pytest.raises(StepError):
        hp.apply_step(triangle, TransformationStep(hp.ATTACH_POINT, 5, frozenset()))


def test_attach_point_over_disk_boundary_minus_point(wheel):
    # rim of the new point: boundary cycle minus vertex 0, a 3-path
    step = TransformationStep(hp.ATTACH_POINT, 5, {1, 2, 3})
    g = hp.apply_step(wheel, step)
    assert hp.contractible(g)
    assert hp.apply_step(g, step.inverse()) == wheel


def test_attach_then_delete_edge_is_identity():
    spec = WindowSpec("normal", ((0, 2), (0, 2)))
    g = generate_window(spec)
    u, v = spec.index((0, 1)), spec.index((1, 0))
    assert not g.has_edge(u, v)
    step = TransformationStep(hp.ATTACH_EDGE, (u, v))
    g2 = hp.apply_step(g, step)
    assert hp.apply_step(g2, step.inverse()) == g


def test_step_json_roundtrip():
    for s in (TransformationStep(hp.DELETE_POINT, 3, {1, 2}),
              TransformationStep(hp.ATTACH_EDGE, (5, 2))):
        assert TransformationStep.from_json(s.to_json()) == s
    assert TransformationStep(hp.DELETE_EDGE, (5, 2)).subject == (2, 5)
    with pytest.raises(StepError):
        TransformationStep("teleport", 1)
    with pytest.raises(StepError):
        TransformationStep.from_json({"v": 1})


def test_reduce_to_subgraph_examples(triangle):
    assert len(hp.reduce_to_subgraph(triangle, {2})) == 2
    spec = WindowSpec("normal", ((0, 2), (0, 2)))
    box = generate_window(spec)
    trace = hp.reduce_to_subgraph(box, {spec.index((1, 1))})
    assert len(trace) == 8
    assert hp.replay(box, trace).vertices == (spec.index((1, 1)),)
    assert len(hp.reduce_to_subgraph(triangle, triangle.vertices)) == 0


def test_reduce_to_subgraph_preconditions(triangle):
    with pytest.raises(PreconditionError):
        hp.reduce_to_subgraph(gc.cycle_graph(4), {0})
    with pytest.raises(PreconditionError):
        hp.reduce_to_subgraph(triangle, set())
    with pytest.raises(PreconditionError):
        hp.reduce_to_subgraph(triangle, {9})


def test_random_contractible_subspace(octahedron):
    s1 = hp.random_contractible_subspace(octahedron, 1, 4)
    assert len(s1) == 1
    s3 = hp.random_contractible_subspace(octahedron, 3, 9)
    assert len(s3) == 3 and hp.is_contractible(octahedron.induced(s3))
    assert hp.random_contractible_subspace(octahedron, 3, 9) == s3


def test_contractible_implies_connected():
    rng = random.Random(1)
    for _ in range(80):
        n = rng.randint(1, 7)
        g = Graph.from_edges(
            [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.4], range(n)
        )
        if hp.contractible(g):
            assert gc.is_connected(g)


def test_simple_point_is_rim_contractibility(octahedron, wheel):
    for g in (octahedron, wheel):
        for v in g:
            assert hp.is_simple_point(g, v) == bool(hp.is_contractible(gc.rim(g, v)))


def test_budget_exceeded():
    hp.clear_caches()
    g = generate_window(WindowSpec("normal", ((0, 4), (0, 4))))
    with pytest.raises(BudgetExceeded):
        with hp.work_budget(3):
            hp.is_contractible(g)


def test_cache_is_shared_across_threads():
    from concurrent.futures import ThreadPoolExecutor

    hp.clear_caches()
    g = generate_window(WindowSpec("normal", ((0, 3), (0, 3))))
    with ThreadPoolExecutor(4) as pool:
        results = list(pool.map(lambda _: hp.contractible(g), range(8)))
    assert all(results)
