import random
from itertools import combinations

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from octkernel.graph import Graph, complete_graph, cycle_graph, is_bipartite
from octkernel.instances import AnnotatedInstance, OctInstance, RestrictedInstance
from octkernel.solvers import (
    InvalidModulatorError,
    SolverCeilingError,
    check_solution,
    min_oct_size,
    solve_annotated,
    solve_instance,
    solve_oct,
    solve_restricted,
    solve_vertex_cover,
    solve_weighted_oct,
)

from oracles import brute_oct, brute_vc
from strategies import graphs

METHODS = ["brute", "branch", "maxsat"]


def test_small_examples():
    assert solve_oct(cycle_graph(5)).cost == 1
    assert solve_oct(complete_graph(5)).cost == 3
    assert solve_oct(complete_graph(5), budget=2) is None


def test_weighted_triangle():
    g = Graph(range(3), [(0, 1), (1, 2), (0, 2)], {0: 1, 1: 5, 2: 5})
    sol = solve_weighted_oct(g)
    assert sol.deleted == {0} and sol.cost == 1


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=11, weighted=True))
def test_all_methods_agree_with_oracle(g):
    want = brute_oct(g)
    want_w = brute_oct(g, weighted=True)
    for method in METHODS:
        assert solve_oct(g, method=method).cost == want
        assert solve_weighted_oct(g, method=method).cost == want_w


def test_random_g12():
    rng = random.Random(31)
    for _ in range(20):
        g = Graph(range(12), [e for e in combinations(range(12), 2) if rng.random() < 0.3])
        assert min_oct_size(g) == brute_oct(g)


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=10), st.data())
def test_annotated_and_restricted(g, data):
    x = frozenset(data.draw(st.sets(st.sampled_from(g.vertices)))) if len(g) else frozenset()
    assume(is_bipartite(g.remove_vertices(x)))
    xs = sorted(x)
    pairs = list(combinations(xs, 2))
    mono = frozenset(data.draw(st.sets(st.sampled_from(pairs)))) if pairs else frozenset()
    z = frozenset(data.draw(st.sets(st.sampled_from(g.vertices)))) if len(g) else frozenset()
    budget = data.draw(st.integers(0, 4))
    ann = AnnotatedInstance(graph=g, modulator=x, budget=budget, mono=mono)
    res = RestrictedInstance(graph=g, modulator=x, budget=budget, mono=mono, deletable=z)
    want_a = brute_oct(g, budget, mono)
    want_r = brute_oct(g, budget, mono, deletable=z)
    for method in METHODS:
        a = solve_annotated(ann, method=method)
        r = solve_restricted(res, method=method)
        assert (a.cost if a else None) == want_a
        assert (r.cost if r else None) == want_r
        if r is not None:
            assert r.deleted <= z and check_solution(g, r.deleted, r.coloring, mono, z)


def test_annotated_edge_and_mono_forces_deletion():
    g = Graph(range(3), [(0, 1), (1, 2)])
    inst = AnnotatedInstance(graph=g, modulator=frozenset({0, 1}), budget=1, mono=frozenset({(0, 1)}))
    sol = solve_annotated(inst)
    assert sol.cost == 1 and sol.deleted & {0, 1}
    assert solve_annotated(AnnotatedInstance(graph=g, modulator=frozenset({0, 1}), budget=0, mono=frozenset({(0, 1)}))) is None


def test_plain_annotation_agrees():
    g = complete_graph(4)
    inst = RestrictedInstance(graph=g, modulator=frozenset(g.vertices), budget=3, deletable=frozenset(g.vertices))
    assert solve_restricted(inst).cost == solve_oct(g).cost


@settings(max_examples=40, deadline=None)
@given(graphs(max_n=10))
def test_monotone_and_idempotent(g):
    sol = solve_oct(g)
    assert solve_oct(g, sol.cost + 1).cost == sol.cost
    assert solve_oct(g.remove_vertices(sol.deleted)).cost == 0
    assert check_solution(g, sol.deleted, sol.coloring)


def test_check_solution_catches_bad_coloring():
    g = complete_graph(3)
    assert not check_solution(g, {0}, {1: 0, 2: 0})
    assert check_solution(g, {0}, {1: 0, 2: 1})


def test_vertex_cover_examples():
    assert solve_vertex_cover(complete_graph(3)).cost == 2
    star = Graph(range(6), [(0, i) for i in range(1, 6)])
    assert solve_vertex_cover(star).cost == 1
    assert solve_vertex_cover(complete_graph(3), 1) is None


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=10))
def test_vertex_cover_oracle(g):
    assert solve_vertex_cover(g).cost == brute_vc(g) == solve_vertex_cover(g, method="brute").cost


def test_invalid_modulator_rejected():
    inst = AnnotatedInstance(graph=complete_graph(3), modulator=frozenset(), budget=1)
    with pytest.raises(InvalidModulatorError):
        solve_annotated(inst)


def test_ceilings():
    g = complete_graph(25)
    with pytest.raises(SolverCeilingError):
        solve_oct(g, method="branch")
    with pytest.raises(SolverCeilingError):
        solve_oct(g, method="brute")


def test_dispatch():
    tri = complete_graph(3)
    assert solve_instance(OctInstance(tri, frozenset(), 1)).cost == 1
    assert solve_instance(OctInstance(tri, frozenset(), 0)) is None
    assert solve_instance(OctInstance(tri, frozenset(), -1)) is None
    heavy = tri.with_weights({0: 3, 1: 3, 2: 3})
    assert solve_instance(OctInstance(heavy, frozenset(), 2)) is None
