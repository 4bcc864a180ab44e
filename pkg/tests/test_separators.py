import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from octkernel.graph import Bipartition, Graph, bipartition, path_graph
from octkernel.separators import (
    EnumerationCeilingError,
    LabeledGraph,
    cut_characteristic,
    enumerate_characteristics,
    enumerate_important_separators,
    kappa_bound,
    min_vertex_cut,
    reachable_labels,
    vertex_cut_typed,
)

from oracles import bfs_reach, brute_important, brute_min_cut, brute_separates, labels_reached
from strategies import graphs


def _rand_graph(rng, n, p):
    return Graph(range(n), [e for e in combinations(range(n), 2) if rng.random() < p])


# -- minimum vertex cuts -------------------------------------------------


def test_two_disjoint_paths():
    g = Graph(range(4), [(0, 1), (1, 3), (0, 2), (2, 3)])  # s=0, a=1, b=2, t=3
    res = min_vertex_cut(g, 0, 3)
    assert res.size == 2 and len(res.paths) == 2


def test_disconnected_terminals():
    res = min_vertex_cut(Graph(range(2)), 0, 1)
    assert res.cut == frozenset() and not res.paths


def test_adjacent_terminals_rejected():
    with pytest.raises(ValueError, match="no finite vertex cut"):
        min_vertex_cut(path_graph(2), 0, 1)


def test_bound_reports_exceeded():
    g = Graph(range(5), [(0, i) for i in (1, 2, 3)] + [(i, 4) for i in (1, 2, 3)])
    res = min_vertex_cut(g, 0, 4, bound=2)
    assert res.exceeded and res.cut is None
    assert min_vertex_cut(g, 0, 4, bound=3).size == 3


def test_random_cuts_match_brute_force():
    rng = random.Random(11)
    for _ in range(150):
        n = rng.randint(2, 10)
        g = _rand_graph(rng, n, 0.3)
        s, t = rng.sample(range(n), 2)
        if g.has_edge(s, t):
            continue
        res = min_vertex_cut(g, s, t)
        assert res.size == brute_min_cut(g, s, t) == len(res.paths)
        assert not res.cut & {s, t} and t not in bfs_reach(g, [s], res.cut)
        inner = [set(p[1:-1]) for p in res.paths]
        assert all(not a & b for a, b in combinations(inner, 2))
        assert all(p[0] == s and p[-1] == t and all(g.has_edge(a, b) for a, b in zip(p, p[1:])) for p in res.paths)


# -- typed cuts ----------------------------------------------------------


def test_typed_cut_triangle():
    g = Graph(range(3), [(0, 1), (1, 2), (0, 2)])  # v=0, a=1, b=2
    bip = Bipartition(frozenset({1}), frozenset({2}))
    res = vertex_cut_typed(g, bip, 0, 0, 0, 1)
    assert res.cut in ({1}, {2})


def test_typed_cut_isolated_source():
    g = Graph(range(4), [(1, 2), (0, 2), (2, 3)])
    bip = Bipartition(frozenset({1}), frozenset({2}))
    # 0 has no neighbor on side 0
    assert vertex_cut_typed(g, bip, 0, 0, 0, 1).cut == frozenset()


def test_typed_cut_matches_brute_force():
    rng = random.Random(12)
    checked = 0
    for _ in range(200):
        n = rng.randint(4, 10)
        g = _rand_graph(rng, n, 0.35)
        x = set(rng.sample(range(n), 2))
        scope = set(range(n)) - x
        bip = bipartition(g, scope)
        if not isinstance(bip, Bipartition):
            continue
        u, v = sorted(x)
        for si, so in [(0, 0), (1, 1), (0, 1), (1, 0)]:
            src = g.neighbors(u) & bip.side(si)
            dst = g.neighbors(v) & bip.side(so)
            res = vertex_cut_typed(g, bip, u, v, si, so)
            # brute force: smallest Y inside the sides separating src from dst in g[sides]
            h = g.subgraph(scope)
            best = next(
                k
                for k in range(len(scope) + 1)
                for y in combinations(sorted(scope), k)
                if not (bfs_reach(h, src - set(y), y) & (dst - set(y)))
            )
            assert res.size == best
            assert not (bfs_reach(h, src - res.cut, res.cut) & (dst - res.cut))
            checked += 1
    assert checked > 100


# -- important separators ------------------------------------------------


def test_different_components_gives_empty_separator():
    g = Graph(range(4), [(0, 1), (2, 3)])
    seps = enumerate_important_separators(g, {0}, {3}, 2)
    assert [s.vertices for s in seps] == [frozenset()]


def test_path_gives_closest_to_y():
    seps = enumerate_important_separators(path_graph(4), {0}, {3}, 2)
    assert [s.vertices for s in seps] == [frozenset({2})]


def test_separators_are_tagged():
    for s in enumerate_important_separators(path_graph(5), {0}, {4}, 2):
        assert s.minimal and s.important and brute_separates(path_graph(5), {0}, {4}, s.vertices)


@pytest.mark.parametrize("allow", [False, True])
def test_important_match_brute_force(allow):
    rng = random.Random(13 + allow)
    for _ in range(120):
        n = rng.randint(2, 9)
        g = _rand_graph(rng, n, 0.25)
        vs = list(range(n))
        rng.shuffle(vs)
        x = set(vs[: rng.randint(1, 2)])
        y = set(vs[len(x) : len(x) + rng.randint(0, 2)])
        m = rng.randint(0, 3)
        got = [s.vertices for s in enumerate_important_separators(g, x, y, m, allow)]
        assert got == brute_important(g, x, y, m, allow)
        assert len(got) <= 4**m


# -- labeled graphs and characteristics ----------------------------------


def test_reachable_labels_examples():
    g = path_graph(2)  # t=0, v=1
    lg = LabeledGraph(g, {"x", "t"}, {0: {"t"}, 1: {"x"}})
    assert reachable_labels(lg, 0, set()) == {"x", "t"}
    assert reachable_labels(lg, 0, {1}) == {"t"}
    assert reachable_labels(lg, 0, {0}) == frozenset()


def test_labels_outside_label_set_rejected():
    with pytest.raises(ValueError):
        LabeledGraph(path_graph(2), {"a"}, {0: {"b"}})


@settings(max_examples=100)
@given(graphs(min_n=1, max_n=8), st.data())
def test_reachable_labels_oracle(g, data):
    labels = ["a", "b", "c"]
    labeling = {v: set(data.draw(st.sets(st.sampled_from(labels)))) for v in g.vertices}
    lg = LabeledGraph(g, labels, labeling)
    t = data.draw(st.sampled_from(g.vertices))
    s = set(data.draw(st.sets(st.sampled_from(g.vertices))))
    assert reachable_labels(lg, t, s) == labels_reached(g, labeling, t, s)


def test_characteristic_empty_cut_connected():
    g = path_graph(4)
    lg = LabeledGraph(g, {"a", "b"}, {0: {"a"}, 3: {"b"}})
    k = cut_characteristic(lg, (0, 3), set())
    assert k.entries == (frozenset({"a", "b"}),) * 2


def test_characteristic_cut_everything_else():
    g = path_graph(4)
    lg = LabeledGraph(g, {"a", "b", "c"}, {0: {"a"}, 1: {"c"}, 3: {"b"}})
    k = cut_characteristic(lg, (0, 3), {1, 2})
    assert k.entries == (frozenset({"a"}), frozenset({"b"}))


def test_self_labeled_terminals_show_up():
    # terminal labeled by itself: its entry contains it exactly when it is not cut
    g = path_graph(3)
    lg = LabeledGraph(g, {0, 2, "x"}, {0: {0}, 1: {"x"}, 2: {2}})
    for s in [set(), {1}, {2}, {0}]:
        k = cut_characteristic(lg, (0, 2), s)
        assert (0 in k[0]) == (0 not in s) and (2 in k[1]) == (2 not in s)


def test_terminals_distinct():
    lg = LabeledGraph(path_graph(2), set(), {})
    with pytest.raises(ValueError):
        cut_characteristic(lg, (0, 0), set())


def test_no_candidates_single_class():
    lg = LabeledGraph(path_graph(3), {"a"}, {0: {"a"}})
    classes = enumerate_characteristics(lg, (0,), 2, candidates=[])
    assert list(classes.values()) == [()]


def test_star_classes():
    g = Graph(range(4), [(0, 1), (0, 2), (0, 3)])
    lg = LabeledGraph(g, {"a", "b", "c"}, {1: {"a"}, 2: {"b"}, 3: {"c"}})
    classes = enumerate_characteristics(lg, (1,), 1, candidates=[0])
    assert set(classes.values()) == {(), (0,)}
    assert {k[0] for k in classes} == {frozenset({"a", "b", "c"}), frozenset({"a"})}


def test_representative_is_smallest_then_lexicographic():
    g = path_graph(5)
    lg = LabeledGraph(g, {"a", "b"}, {0: {"a"}, 4: {"b"}})
    classes = enumerate_characteristics(lg, (0,), 2)
    # cutting 1, 2 or 3 all give {a}; the representative is (1,)
    assert classes[cut_characteristic(lg, (0,), {2})] == (1,)


def test_enumeration_ceiling():
    lg = LabeledGraph(path_graph(10), set(), {})
    with pytest.raises(EnumerationCeilingError):
        enumerate_characteristics(lg, (0,), 3, ceiling=50)


def test_kappa_examples():
    assert kappa_bound(1, 1, 1) == 8
    assert kappa_bound(3, 0, 7) == 1


@given(st.integers(0, 3), st.integers(0, 3), st.integers(0, 5))
def test_kappa_monotone(n, m, r):
    k = kappa_bound(n, m, r)
    assert kappa_bound(n + 1, m, r) >= k and kappa_bound(n, m + 1, r) >= k and kappa_bound(n, m, r + 1) >= k


def test_class_count_within_kappa():
    rng = random.Random(14)
    for _ in range(80):
        nv = rng.randint(3, 8)
        g = _rand_graph(rng, nv, 0.4)
        n = rng.randint(1, min(3, nv))
        terms = tuple(sorted(rng.sample(range(nv), n)))
        r = rng.randint(0, 3)
        labels = list(range(100, 100 + r))
        labeling = {v: {lab for lab in labels if rng.random() < 0.4} for v in g.vertices}
        lg = LabeledGraph(g, labels, labeling)
        m = rng.randint(0, 2)
        classes = enumerate_characteristics(lg, terms, m)
        assert len(classes) <= kappa_bound(n, m, r)
        for key, rep in classes.items():
            assert cut_characteristic(lg, terms, rep) == key and len(rep) <= m
