"""Exact solvers for OCT and its variants, plus vertex cover.

Three interchangeable methods:

``branch``  branch and bound on short odd cycles (default up to ``ceiling`` vertices)
``maxsat``  a weighted MaxSAT encoding solved by RC2, for larger instances
``brute``   exhaustive subset search, the cross-check oracle

``auto`` picks ``branch`` up to the ceiling and ``maxsat`` beyond it.
Annotations are handled by ``branch``/``maxsat`` through an undeletable
common neighbor per monochromatic pair, and by ``brute`` directly through
colorings of the modulator, so the two routes stay independent.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Mapping

from .graph import Graph, extend_two_coloring, is_bipartite, is_proper_coloring, two_coloring, ColoringConflict
from .instances import AnnotatedInstance, OctInstance, RestrictedInstance, norm_pair

DEFAULT_CEILING = 20
BRUTE_CEILING = 12
MAXSAT_CEILING = 20000


class InvalidModulatorError(ValueError):
    """An annotated instance whose graph minus the modulator is not bipartite."""


class SolverCeilingError(RuntimeError):
    pass


@dataclass(frozen=True)
class Solution:
    deleted: frozenset[int]
    cost: int
    coloring: Mapping[int, int] | None = None


# -- certificate checking ------------------------------------------------


def check_solution(
    g: Graph,
    deleted: Iterable[int],
    coloring: Mapping[int, int],
    mono: Iterable[tuple[int, int]] = (),
    deletable: Iterable[int] | None = None,
) -> bool:
    """Independent certificate check for every OCT variant."""
    deleted = frozenset(deleted)
    if deletable is not None and not deleted <= frozenset(deletable):
        return False
    rest = [v for v in g.vertices if v not in deleted]
    if any(v not in coloring or coloring[v] not in (0, 1) for v in rest):
        return False
    if not is_proper_coloring(g, coloring, rest):
        return False
    for u, v in mono:
        if u not in deleted and v not in deleted and coloring[u] != coloring[v]:
            return False
    return True


def feasible_coloring(
    g: Graph, deleted: Iterable[int], mono: Iterable[tuple[int, int]] = (), modulator: Iterable[int] = ()
) -> dict[int, int] | None:
    """A 2-coloring of g - deleted respecting ``mono``, found by trying every
    coloring of the surviving modulator and extending it.

    Requires ``g - modulator`` bipartite and every mono pair inside the modulator.
    """
    deleted = frozenset(deleted)
    rest = g.remove_vertices(deleted)
    xs = sorted(v for v in modulator if v not in deleted)
    live_mono = [(u, v) for u, v in mono if u not in deleted and v not in deleted]
    for u, v in live_mono:
        if u not in xs or v not in xs:
            raise ValueError("monochromatic pairs must lie inside the modulator")
    for colors in product((0, 1), repeat=len(xs)):
        c = dict(zip(xs, colors))
        if any(c[u] != c[v] for u, v in live_mono):
            continue
        if not is_proper_coloring(rest, c):
            continue
        ext = extend_two_coloring(rest, c.keys(), c)
        if not isinstance(ext, ColoringConflict):
            return ext
    return None


# -- shared problem form -------------------------------------------------


@dataclass
class _Problem:
    graph: Graph  # with gadget vertices for mono pairs
    original: frozenset[int]
    weight: dict[int, int]
    locked: frozenset[int]  # undeletable


def _build(g: Graph, mono: Iterable[tuple[int, int]], deletable: Iterable[int] | None, weighted: bool) -> _Problem:
    mono = sorted({norm_pair(u, v) for u, v in mono})
    original = frozenset(g.vertices)
    locked = set() if deletable is None else original - frozenset(deletable)
    nxt = g.fresh_id()
    gadgets = list(range(nxt, nxt + len(mono)))
    h = Graph(list(g.vertices) + gadgets, g.edges() + [e for w, (u, v) in zip(gadgets, mono) for e in ((u, w), (v, w))])
    locked |= set(gadgets)
    weight = {v: (g.weight(v) if weighted else 1) for v in g.vertices}
    return _Problem(h, original, weight, frozenset(locked))


def _odd_walk(adj: Mapping[int, set[int]] | Mapping[int, frozenset[int]], alive: Iterable[int]) -> list[int] | None:
    """Vertex set of a shortest odd closed walk (contains an odd cycle), or None."""
    alive = set(alive)
    best = None
    for r in sorted(alive):
        dist = {r: 0}
        par = {r: None}
        queue = deque([r])
        found = None
        while queue and found is None:
            u = queue.popleft()
            if best is not None and 2 * dist[u] + 1 >= len(best):
                break
            for v in adj[u]:
                if v not in alive:
                    continue
                if v not in dist:
                    dist[v] = dist[u] + 1
                    par[v] = u
                    queue.append(v)
                elif dist[v] == dist[u]:
                    found = (u, v)
                    break
        if found is None:
            continue
        walk = set()
        for a in found:
            while a is not None:
                walk.add(a)
                a = par[a]
        if best is None or len(walk) < len(best):
            best = sorted(walk)
        if len(best) == 3:
            break
    return best


def _lower_bound(p: _Problem, alive: set[int], banned: set[int]) -> float:
    """Weight bound from a greedy packing of vertex-disjoint odd cycles."""
    adj = p.graph.adj
    left = set(alive)
    total = 0
    while True:
        walk = _odd_walk(adj, left)
        if walk is None:
            return total
        costs = [p.weight[v] for v in walk if v not in p.locked and v not in banned]
        if not costs:
            return float("inf")
        total += min(costs)
        left -= set(walk)


def _branch(p: _Problem, limit: int) -> frozenset[int] | None:
    """Minimum-weight deletion set of weight <= limit, or None."""
    adj = p.graph.adj
    best: list = [limit + 1, None]

    def rec(alive: set[int], chosen: list[int], cost: int, banned: set[int]):
        if cost + _lower_bound(p, alive, banned) >= best[0]:
            return
        walk = _odd_walk(adj, alive)
        if walk is None:
            best[0], best[1] = cost, frozenset(chosen)
            return
        options = [v for v in walk if v not in p.locked and v not in banned]
        options.sort(key=lambda v: (p.weight[v], -len(adj[v]), v))
        newly = []
        for v in options:
            alive.discard(v)
            chosen.append(v)
            rec(alive, chosen, cost + p.weight[v], banned)
            chosen.pop()
            alive.add(v)
            # later branches keep v
            banned.add(v)
            newly.append(v)
        banned.difference_update(newly)

    rec(set(p.graph.vertices), [], 0, set())
    return best[1]


def _maxsat(p: _Problem, limit: int | None) -> frozenset[int] | None:
    from pysat.examples.rc2 import RC2
    from pysat.formula import WCNF

    ids = {v: i for i, v in enumerate(p.graph.vertices)}
    x = lambda v: 2 * ids[v] + 1  # noqa: E731  deleted
    c = lambda v: 2 * ids[v] + 2  # noqa: E731  color
    wcnf = WCNF()
    for u, v in p.graph.edges():
        wcnf.append([x(u), x(v), c(u), c(v)])
        wcnf.append([x(u), x(v), -c(u), -c(v)])
    for v in p.graph.vertices:
        if v in p.locked:
            wcnf.append([-x(v)])
        elif p.weight[v] > 0:
            wcnf.append([-x(v)], weight=p.weight[v])
    # core exhaustion and minimization keep RC2 fast on the composition outputs
    with RC2(wcnf, solver="g3", adapt=True, exhaust=True, minz=True) as rc2:
        model = rc2.compute()
        if model is None:
            return None
        cost = rc2.cost
    if limit is not None and cost > limit:
        return None
    chosen = {lit for lit in model if lit > 0}
    return frozenset(v for v in p.original if x(v) in chosen)


def _brute(
    g: Graph, weight: Mapping[int, int], mono, deletable, modulator, limit: int | None
) -> frozenset[int] | None:
    cands = sorted(g.vertices if deletable is None else deletable)
    options = []
    for k in range(len(cands) + 1):
        for s in combinations(cands, k):
            cost = sum(weight[v] for v in s)
            if limit is None or cost <= limit:
                options.append((cost, k, s))
    options.sort()
    mono = list(mono)
    for cost, _, s in options:
        if mono or modulator is not None:
            if feasible_coloring(g, s, mono, modulator if modulator is not None else g.vertices) is not None:
                return frozenset(s)
        elif is_bipartite(g.remove_vertices(s)):
            return frozenset(s)
    return None


def _solve(
    g: Graph,
    budget: int | None,
    mono=(),
    deletable=None,
    modulator=None,
    weighted: bool = False,
    method: str = "auto",
    ceiling: int = DEFAULT_CEILING,
) -> Solution | None:
    n = len(g)
    if method == "auto":
        method = "branch" if n <= ceiling else "maxsat"
        if n > MAXSAT_CEILING:
            raise SolverCeilingError(f"{n} vertices exceed the solver ceiling {MAXSAT_CEILING}")
    weight = {v: (g.weight(v) if weighted else 1) for v in g.vertices}
    if method == "brute":
        if n > max(ceiling, BRUTE_CEILING):
            raise SolverCeilingError(f"brute force refused: {n} vertices > ceiling")
        s = _brute(g, weight, mono, deletable, modulator, budget)
    else:
        p = _build(g, mono, deletable, weighted)
        if method == "branch":
            if n > ceiling:
                raise SolverCeilingError(f"branching solver refused: {n} vertices > ceiling {ceiling}")
            limit = budget if budget is not None else sum(weight.values())
            s = _branch(p, limit)
        elif method == "maxsat":
            s = _maxsat(p, budget)
        else:
            raise ValueError(f"unknown method {method!r}")
    if s is None:
        return None
    coloring = two_coloring(g, [v for v in g.vertices if v not in s]) if not mono else None
    if mono:
        coloring = _mono_coloring(g, s, mono)
    assert coloring is not None and check_solution(g, s, coloring, mono, deletable), "solver produced an invalid certificate"
    return Solution(s, sum(weight[v] for v in s), coloring)


def _mono_coloring(g: Graph, s, mono) -> dict[int, int] | None:
    # color through the gadget graph so mono pairs come out equal
    mono = sorted({norm_pair(u, v) for u, v in mono if u not in s and v not in s})
    nxt = g.fresh_id()
    h = Graph(
        [v for v in g.vertices if v not in s] + list(range(nxt, nxt + len(mono))),
        [(u, v) for u, v in g.edges() if u not in s and v not in s]
        + [e for w, (u, v) in zip(range(nxt, nxt + len(mono)), mono) for e in ((u, w), (v, w))],
    )
    col = two_coloring(h)
    return None if col is None else {v: col[v] for v in g.vertices if v not in s}


# -- public entry points -------------------------------------------------


def solve_oct(g: Graph, budget: int | None = None, method: str = "auto", ceiling: int = DEFAULT_CEILING) -> Solution | None:
    """Minimum-cardinality odd cycle transversal, or None if it exceeds ``budget``."""
    return _solve(g, budget, method=method, ceiling=ceiling)


def solve_weighted_oct(g: Graph, budget: int | None = None, method: str = "auto", ceiling: int = DEFAULT_CEILING) -> Solution | None:
    """Minimum-weight odd cycle transversal, or None if it exceeds ``budget``."""
    return _solve(g, budget, weighted=True, method=method, ceiling=ceiling)


def _check_modulator(inst: AnnotatedInstance) -> None:
    if not is_bipartite(inst.graph, set(inst.graph.vertices) - inst.modulator):
        raise InvalidModulatorError("annotated instance: G - X is not bipartite")


def solve_annotated(inst: AnnotatedInstance, method: str = "auto", ceiling: int = DEFAULT_CEILING) -> Solution | None:
    _check_modulator(inst)
    return _solve(
        inst.graph, inst.budget, inst.mono, None, inst.modulator,
        weighted=inst.graph.is_weighted, method=method, ceiling=ceiling,
    )


def solve_restricted(inst: RestrictedInstance, method: str = "auto", ceiling: int = DEFAULT_CEILING) -> Solution | None:
    _check_modulator(inst)
    return _solve(
        inst.graph, inst.budget, inst.mono, inst.deletable, inst.modulator,
        weighted=inst.graph.is_weighted, method=method, ceiling=ceiling,
    )


def solve_instance(inst: OctInstance, method: str = "auto", ceiling: int = DEFAULT_CEILING) -> Solution | None:
    """Dispatch on the instance type; returns a solution within the budget or None."""
    if inst.budget < 0:
        return None
    if isinstance(inst, RestrictedInstance):
        return solve_restricted(inst, method, ceiling)
    if isinstance(inst, AnnotatedInstance):
        return solve_annotated(inst, method, ceiling)
    if inst.graph.is_weighted:
        return solve_weighted_oct(inst.graph, inst.budget, method, ceiling)
    return solve_oct(inst.graph, inst.budget, method, ceiling)


def decide(inst: OctInstance, method: str = "auto", ceiling: int = DEFAULT_CEILING) -> bool:
    return solve_instance(inst, method, ceiling) is not None


def min_oct_size(g: Graph, method: str = "auto", ceiling: int = DEFAULT_CEILING) -> int:
    sol = solve_oct(g, None, method, ceiling)
    assert sol is not None
    return sol.cost


# -- vertex cover --------------------------------------------------------


def _is_cover(g: Graph, s) -> bool:
    return all(u in s or v in s for u, v in g.edges())


def solve_vertex_cover(g: Graph, budget: int | None = None, method: str = "branch", ceiling: int = 40) -> Solution | None:
    """Minimum vertex cover of size <= budget, or None."""
    n = len(g)
    if method == "brute":
        if n > max(ceiling, BRUTE_CEILING):
            raise SolverCeilingError(f"brute force refused: {n} vertices > ceiling")
        for k in range(n + 1 if budget is None else min(n, budget) + 1):
            for s in combinations(g.vertices, k):
                if _is_cover(g, s):
                    return Solution(frozenset(s), k)
        return None
    if method != "branch":
        raise ValueError(f"unknown method {method!r}")
    if n > ceiling:
        raise SolverCeilingError(f"vertex cover refused: {n} vertices > ceiling {ceiling}")
    best: list = [n + 1 if budget is None else budget + 1, None]

    def rec(h: Graph, chosen: frozenset[int]):
        if len(chosen) >= best[0]:
            return
        edges = h.edges()
        if not edges:
            best[0], best[1] = len(chosen), chosen
            return
        # matching lower bound
        matched: set[int] = set()
        for u, v in edges:
            if u not in matched and v not in matched:
                matched |= {u, v}
        if len(chosen) + len(matched) // 2 >= best[0]:
            return
        v = max(h.vertices, key=lambda u: (h.degree(u), -u))
        if h.degree(v) <= 1:
            # a matching: take one endpoint per edge
            best_set = chosen | {min(e) for e in edges}
            if len(best_set) < best[0]:
                best[0], best[1] = len(best_set), best_set
            return
        rec(h.remove_vertices([v]), chosen | {v})
        nb = h.neighbors(v)
        rec(h.remove_vertices(nb | {v}), chosen | nb)

    rec(g, frozenset())
    if best[1] is None:
        return None
    assert _is_cover(g, best[1])
    return Solution(best[1], len(best[1]))
