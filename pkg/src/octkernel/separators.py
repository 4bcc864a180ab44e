"""Vertex cuts, important separators and cut characteristics of labeled graphs."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Hashable, Iterable, Mapping, Sequence

from .graph import Bipartition, Graph, reachable

INF = 1 << 40


class EnumerationCeilingError(RuntimeError):
    """An exhaustive enumeration would exceed its configured ceiling."""


# -- flow core -----------------------------------------------------------


class _VertexFlow:
    """Unit vertex-capacity max flow by BFS augmentation.

    ``adj`` maps nodes (any hashable) to out-neighbors. Vertices outside
    ``cuttable`` have unbounded capacity; every cuttable vertex v is split
    into ``(v, 0)`` -> ``(v, 1)`` with capacity 1.
    """

    def __init__(self, adj: Mapping[Hashable, Iterable[Hashable]], source, sink, cuttable: Iterable[Hashable]):
        self.source, self.sink = source, sink
        self.cuttable = frozenset(cuttable)
        self.cap: dict = {}
        self.res: dict = {}
        for v in adj:
            self.res.setdefault(self.head(v), {})
            self.res.setdefault(self.tail(v), {})
            if v in self.cuttable:
                self._arc(self.head(v), self.tail(v), 1)
        for u, ns in adj.items():
            for v in ns:
                self._arc(self.tail(u), self.head(v), INF)
        self.value = 0

    def head(self, v):
        return (v, 0) if v in self.cuttable else v

    def tail(self, v):
        return (v, 1) if v in self.cuttable else v

    def vertex(self, node):
        if isinstance(node, tuple) and len(node) == 2 and node[0] in self.cuttable:
            return node[0]
        return node

    def _arc(self, a, b, c):
        self.res.setdefault(a, {}).setdefault(b, 0)
        self.res.setdefault(b, {}).setdefault(a, 0)
        self.res[a][b] += c
        self.cap.setdefault(a, {})
        self.cap[a][b] = self.cap[a].get(b, 0) + c

    def _augment(self) -> bool:
        s, t = self.tail(self.source), self.head(self.sink)
        prev = {s: None}
        queue = deque([s])
        while queue and t not in prev:
            a = queue.popleft()
            for b, c in self.res[a].items():
                if c > 0 and b not in prev:
                    prev[b] = a
                    queue.append(b)
        if t not in prev:
            return False
        b = t
        while prev[b] is not None:
            a = prev[b]
            self.res[a][b] -= 1
            self.res[b][a] += 1
            b = a
        self.value += 1
        return True

    def run(self, bound: int | None = None) -> bool:
        """Saturate; returns False if the flow exceeded ``bound`` (stopped early)."""
        while self._augment():
            if self.value > len(self.cuttable):
                raise ValueError("unbounded flow: source and sink joined by uncuttable vertices")
            if bound is not None and self.value > bound:
                return False
        return True

    def source_side(self) -> set:
        start = self.tail(self.source)
        seen = {start}
        stack = [start]
        while stack:
            a = stack.pop()
            for b, c in self.res[a].items():
                if c > 0 and b not in seen:
                    seen.add(b)
                    stack.append(b)
        return seen

    def sink_side(self) -> set:
        """Nodes that can still reach the sink in the residual graph."""
        start = self.head(self.sink)
        seen = {start}
        stack = [start]
        while stack:
            b = stack.pop()
            for a in self.res[b]:
                if a not in seen and self.res[a][b] > 0:
                    seen.add(a)
                    stack.append(a)
        return seen

    def closest_cut(self) -> frozenset:
        side = self.source_side()
        return frozenset(v for v in self.cuttable if (v, 0) in side and (v, 1) not in side)

    def furthest_cut(self) -> frozenset:
        side = self.sink_side()
        return frozenset(v for v in self.cuttable if (v, 1) in side and (v, 0) not in side)

    def paths(self) -> list[list]:
        """Decompose the flow into source-sink paths of original vertices."""
        left = {a: {b: c - self.res[a][b] for b, c in arcs.items() if c - self.res[a][b] > 0}
                for a, arcs in self.cap.items()}
        s, t = self.tail(self.source), self.head(self.sink)
        out = []
        for _ in range(self.value):
            walk, a = [s], s
            while a != t:
                b = next(iter(left[a]))
                left[a][b] -= 1
                if not left[a][b]:
                    del left[a][b]
                walk.append(b)
                a = b
            # loop-erase: flow cycles through uncuttable nodes may be picked up
            path: list = []
            where: dict = {}
            for node in walk:
                v = self.vertex(node)
                if path and path[-1] == v:
                    continue
                if v in where:
                    for w in path[where[v] + 1:]:
                        del where[w]
                    del path[where[v] + 1:]
                    continue
                where[v] = len(path)
                path.append(v)
            out.append(path)
        return out


@dataclass(frozen=True)
class VertexCut:
    """Result of a minimum vertex cut computation.

    ``exceeded`` means the flow passed the requested bound; ``cut`` is then
    None and ``paths`` holds bound+1 disjoint paths.
    """

    cut: frozenset[int] | None
    paths: tuple[tuple[int, ...], ...]
    exceeded: bool = False

    @property
    def size(self) -> int:
        return len(self.paths)


def _flow(adj, source, sink, cuttable) -> _VertexFlow:
    return _VertexFlow(adj, source, sink, cuttable)


def min_vertex_cut(g: Graph, s: int, t: int, bound: int | None = None) -> VertexCut:
    """Minimum s-t vertex cut together with a maximum packing of disjoint s-t paths."""
    if s == t:
        raise ValueError("s and t must differ")
    if s not in g or t not in g:
        raise ValueError("s or t not in graph")
    if g.has_edge(s, t):
        raise ValueError("no finite vertex cut exists: s and t are adjacent")
    inner = [v for v in g.vertices if v != s and v != t]
    net = _flow(g.adj, s, t, inner)
    done = net.run(bound)
    paths = tuple(tuple(p) for p in net.paths())
    if not done:
        return VertexCut(None, paths, True)
    return VertexCut(net.closest_cut(), paths)


def _side_set(bip: Bipartition, side) -> frozenset[int]:
    if side in (0, "P", "p"):
        return bip.side0
    if side in (1, "Q", "q"):
        return bip.side1
    raise ValueError(f"unknown side {side!r}")


def vertex_cut_typed(
    g: Graph, bip: Bipartition, u: int, v: int, side_in, side_out, bound: int | None = None
) -> VertexCut:
    """Minimum cut in G[P u Q] between N(u) on ``side_in`` and N(v) on ``side_out``.

    A fresh source is joined to N(u) & side_in and a fresh sink to
    N(v) & side_out. Returned paths are the vertex sequences strictly between
    source and sink, i.e. X-paths from u to v.
    """
    body = bip.side0 | bip.side1
    if u in body or v in body:
        raise ValueError("u and v must lie outside the bipartition")
    src_nb = g.neighbors(u) & _side_set(bip, side_in)
    dst_nb = g.neighbors(v) & _side_set(bip, side_out)
    source, sink = ("src",), ("dst",)
    adj: dict = {x: g.neighbors(x) & body for x in body}
    adj[source] = src_nb
    adj[sink] = frozenset()
    adj = {x: set(ns) for x, ns in adj.items()}
    for x in dst_nb:
        adj[x].add(sink)
    net = _flow(adj, source, sink, body)
    done = net.run(bound)
    paths = tuple(tuple(p[1:-1]) for p in net.paths())
    if not done:
        return VertexCut(None, paths, True)
    return VertexCut(net.closest_cut(), paths)


# -- important separators ------------------------------------------------


@dataclass(frozen=True)
class Separator:
    vertices: frozenset[int]
    x: frozenset[int]
    y: frozenset[int]
    minimal: bool = True
    important: bool = True

    def key(self) -> tuple:
        return (len(self.vertices), tuple(sorted(self.vertices)))


def reach(g: Graph, x: Iterable[int], s: Iterable[int]) -> frozenset[int]:
    """R(X, S): vertices reachable from X minus S in G - S."""
    s = frozenset(s)
    return reachable(g, (v for v in x if v not in s), s)


def is_separator(g: Graph, x, y, s) -> bool:
    return not (reach(g, x, s) & frozenset(y))


def is_minimal_separator(g: Graph, x, y, s) -> bool:
    s = frozenset(s)
    return is_separator(g, x, y, s) and all(not is_separator(g, x, y, s - {v}) for v in s)


class _SepContext:
    """Shared state for one enumeration: the graph with X and Y as given."""

    def __init__(self, g: Graph, x: frozenset[int], y: frozenset[int]):
        self.g = g
        self.x = x
        self.y = y
        self.domain = frozenset(g.vertices) - x - y

    def flow(self, sources: frozenset[int], removed: frozenset[int] = frozenset()):
        """Flow from ``sources`` to Y in G - removed, only domain vertices cuttable."""
        src, dst = ("src",), ("dst",)
        live = [v for v in self.g.vertices if v not in removed]
        liveset = frozenset(live)
        adj = {v: set(self.g.adj[v] & liveset) for v in live}
        adj[src] = set(v for v in sources if v in liveset)
        adj[dst] = set()
        for v in self.y:
            if v in liveset:
                adj[v].add(dst)
        cuttable = [v for v in live if v in self.domain and v not in sources]
        return _flow(adj, src, dst, cuttable)


def _blocked(g: Graph, sources: frozenset[int], y: frozenset[int], domain: frozenset[int]) -> bool:
    """True if some source reaches Y without passing a domain vertex."""
    if sources & y:
        return True
    free = reachable(g, sources, removed=domain - sources)
    return bool(free & y)


def _is_important(ctx: _SepContext, s: frozenset[int]) -> bool:
    g = ctx.g
    if not s <= ctx.domain:
        return False
    if not is_minimal_separator(g, ctx.x, ctx.y, s):
        return False
    r = reach(g, ctx.x, s)
    # any dominating separator avoids R(X,S); it must be a cut between R(X,S) and Y
    net = ctx.flow(r)
    done = net.run(len(s))
    if not done:
        return True
    if net.value < len(s):
        return False
    return net.furthest_cut() == s


def enumerate_important_separators(
    g: Graph, x: Iterable[int], y: Iterable[int], m: int, allow_terminals: bool = False
) -> list[Separator]:
    """All important (X,Y)-separators of size at most m.

    By default separators are drawn from V - (X u Y). With
    ``allow_terminals`` any vertex may be used, X and Y included.
    """
    if m < 0:
        raise ValueError("m must be non-negative")
    x, y = frozenset(x), frozenset(y)
    if allow_terminals:
        src, dst = g.fresh_id(), g.fresh_id() + 1
        aug = g.add_vertices([src, dst]).add_edges([(src, v) for v in x] + [(v, dst) for v in y])
        found = enumerate_important_separators(aug, {src}, {dst}, m)
        return sorted((Separator(sep.vertices, x, y) for sep in found), key=Separator.key)
    ctx = _SepContext(g, x, y)
    found: set[frozenset[int]] = set()
    _branch(ctx, g, x, frozenset(), m, found)
    out = [Separator(s, x, y) for s in found if _is_important(ctx, s)]
    return sorted(out, key=Separator.key)


def _branch(ctx: _SepContext, g: Graph, sources: frozenset[int], chosen: frozenset[int], m: int, found: set):
    if _blocked(g, sources, ctx.y, ctx.domain):
        return
    net = ctx.flow(sources, chosen)
    if not net.run(m):
        return
    if net.value == 0:
        found.add(chosen)
        return
    cut = net.furthest_cut()
    v = min(cut)
    # v joins the separator
    if m >= 1:
        _branch(ctx, g, sources, chosen | {v}, m - 1, found)
    # v stays reachable: grow the source side up to the furthest minimum cut
    grown = reachable(g, sources, removed=chosen | cut) | {v}
    _branch(ctx, g, grown, chosen, m, found)


# -- labeled graphs ------------------------------------------------------


@dataclass(frozen=True)
class LabeledGraph:
    graph: Graph
    labels: frozenset
    labeling: Mapping[int, frozenset]

    def __post_init__(self):
        object.__setattr__(self, "labels", frozenset(self.labels))
        lab = {v: frozenset(self.labeling.get(v, ())) for v in self.graph.vertices}
        for v, ls in lab.items():
            if not ls <= self.labels:
                raise ValueError(f"vertex {v} carries labels outside the label set")
        object.__setattr__(self, "labeling", lab)

    def f(self, v: int) -> frozenset:
        return self.labeling[v]

    def carriers(self, labels: Iterable) -> frozenset[int]:
        """V_G(J): vertices carrying at least one label of J."""
        labels = frozenset(labels)
        return frozenset(v for v, ls in self.labeling.items() if ls & labels)


@dataclass(frozen=True)
class CutCharacteristic:
    entries: tuple[frozenset, ...]

    def __getitem__(self, i: int) -> frozenset:
        return self.entries[i]

    def __len__(self) -> int:
        return len(self.entries)


def reachable_labels(lg: LabeledGraph, t: int, s: Iterable[int]) -> frozenset:
    """L(t, S): union of labels over R(t, S); empty when t is in S."""
    s = frozenset(s)
    if t in s:
        return frozenset()
    out: set = set()
    for v in reachable(lg.graph, [t], s):
        out |= lg.labeling[v]
    return frozenset(out)


def cut_characteristic(lg: LabeledGraph, terminals: Sequence[int], s: Iterable[int]) -> CutCharacteristic:
    if len(set(terminals)) != len(terminals):
        raise ValueError("terminals must be distinct")
    s = frozenset(s)
    return CutCharacteristic(tuple(reachable_labels(lg, t, s) for t in terminals))


def count_subsets(n: int, m: int) -> int:
    return sum(comb(n, i) for i in range(min(n, m) + 1))


def enumerate_characteristics(
    lg: LabeledGraph,
    terminals: Sequence[int],
    m: int,
    candidates: Iterable[int] | None = None,
    ceiling: int = 1_000_000,
) -> dict[CutCharacteristic, tuple[int, ...]]:
    """Map each cut characteristic of a separator of size <= m to its canonical representative.

    Subsets of ``candidates`` are visited by size, then lexicographically, so
    the stored representative is the smallest one of minimum size.
    """
    cands = sorted(lg.graph.vertices if candidates is None else set(candidates))
    total = count_subsets(len(cands), m)
    if total > ceiling:
        raise EnumerationCeilingError(f"{total} candidate subsets exceed the ceiling {ceiling}")
    classes: dict[CutCharacteristic, tuple[int, ...]] = {}
    for size in range(min(m, len(cands)) + 1):
        for sub in combinations(cands, size):
            key = cut_characteristic(lg, terminals, sub)
            if key not in classes:
                classes[key] = sub
    return classes


def binom_le(r: int, k: int) -> int:
    """Number of subsets of an r-set with at most k elements."""
    return sum(comb(r, i) for i in range(min(r, k) + 1)) if r >= 0 and k >= 0 else 0


def kappa_bound(n: int, m: int, r: int) -> int:
    """Upper bound on the number of cut characteristics: (binom(r, <= m') * 4^m)^n, m' = m(m+3)/2."""
    if min(n, m, r) < 0:
        raise ValueError("arguments must be non-negative")
    m_prime = m * (m + 3) // 2
    return (binom_le(r, m_prime) * 4**m) ** n
