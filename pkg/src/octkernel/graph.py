"""Simple undirected graphs, 2-colorings and the related helpers.

Path length and parity always count *vertices*, not edges: the path
``(p, a, b, q)`` has length 4 and two internal vertices.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping


class Graph:
    """Immutable simple graph on integer vertex ids.

    Vertex ids are stable: deleting vertices never renumbers the rest.
    Weights are stored only for vertices that were given one explicitly;
    every other vertex weighs 1.
    """

    __slots__ = ("_adj", "_weights", "_sorted", "_hash")

    def __init__(
        self,
        vertices: Iterable[int] = (),
        edges: Iterable[tuple[int, int]] = (),
        weights: Mapping[int, int] | None = None,
    ):
        adj: dict[int, set[int]] = {int(v): set() for v in vertices}
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if u not in adj or v not in adj:
                raise ValueError(f"edge ({u}, {v}) has an endpoint outside the vertex set")
            adj[u].add(v)
            adj[v].add(u)
        self._adj = {v: frozenset(ns) for v, ns in adj.items()}
        ws = {}
        for v, w in (weights or {}).items():
            if v not in adj:
                raise ValueError(f"weight given for unknown vertex {v}")
            if w < 0:
                raise ValueError(f"negative weight at vertex {v}")
            ws[v] = int(w)
        self._weights = ws
        self._sorted = tuple(sorted(adj))
        self._hash = None

    @classmethod
    def _from_adj(cls, adj: dict[int, frozenset[int]], weights: dict[int, int]) -> Graph:
        g = cls.__new__(cls)
        g._adj = adj
        g._weights = weights
        g._sorted = tuple(sorted(adj))
        g._hash = None
        return g

    # -- queries ---------------------------------------------------------

    @property
    def vertices(self) -> tuple[int, ...]:
        return self._sorted

    @property
    def adj(self) -> Mapping[int, frozenset[int]]:
        return self._adj

    @property
    def weights(self) -> Mapping[int, int]:
        """Explicitly assigned weights only."""
        return self._weights

    @property
    def is_weighted(self) -> bool:
        return bool(self._weights)

    def weight(self, v: int) -> int:
        return self._weights.get(v, 1)

    def __len__(self) -> int:
        return len(self._adj)

    def __contains__(self, v: object) -> bool:
        return v in self._adj

    def __iter__(self):
        return iter(self._sorted)

    def neighbors(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return u in self._adj and v in self._adj[u]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in self._sorted for v in sorted(self._adj[u]) if u < v]

    @property
    def num_edges(self) -> int:
        return sum(len(ns) for ns in self._adj.values()) // 2

    def neighborhood(self, vs: Iterable[int]) -> frozenset[int]:
        """Open neighborhood N(S)."""
        vs = set(vs)
        out: set[int] = set()
        for v in vs:
            out |= self._adj[v]
        return frozenset(out - vs)

    def fresh_id(self) -> int:
        return self._sorted[-1] + 1 if self._sorted else 0

    # -- derived graphs --------------------------------------------------

    def subgraph(self, vs: Iterable[int]) -> Graph:
        keep = frozenset(vs)
        missing = keep - self._adj.keys()
        if missing:
            raise ValueError(f"unknown vertices {sorted(missing)}")
        adj = {v: self._adj[v] & keep for v in keep}
        ws = {v: w for v, w in self._weights.items() if v in keep}
        return Graph._from_adj(adj, ws)

    def remove_vertices(self, vs: Iterable[int]) -> Graph:
        drop = set(vs)
        return self.subgraph(v for v in self._adj if v not in drop)

    def add_vertices(self, vs: Iterable[int], weights: Mapping[int, int] | None = None) -> Graph:
        adj = dict(self._adj)
        for v in vs:
            if v in adj:
                raise ValueError(f"vertex {v} already present")
            adj[v] = frozenset()
        ws = dict(self._weights)
        ws.update(weights or {})
        return Graph._from_adj(adj, ws)

    def add_edges(self, pairs: Iterable[tuple[int, int]]) -> Graph:
        extra: dict[int, set[int]] = {}
        for u, v in pairs:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if u not in self._adj or v not in self._adj:
                raise ValueError(f"edge ({u}, {v}) has an endpoint outside the vertex set")
            extra.setdefault(u, set()).add(v)
            extra.setdefault(v, set()).add(u)
        adj = dict(self._adj)
        for v, ns in extra.items():
            adj[v] = adj[v] | ns
        return Graph._from_adj(adj, dict(self._weights))

    def with_weights(self, weights: Mapping[int, int]) -> Graph:
        return Graph(self._sorted, self.edges(), weights)

    def relabel(self, mapping: Mapping[int, int]) -> Graph:
        return Graph(
            (mapping[v] for v in self._sorted),
            ((mapping[u], mapping[v]) for u, v in self.edges()),
            {mapping[v]: w for v, w in self._weights.items()},
        )

    def complement(self) -> Graph:
        vs = self._sorted
        return Graph(
            vs,
            ((u, v) for i, u in enumerate(vs) for v in vs[i + 1:] if v not in self._adj[u]),
            self._weights,
        )

    # -- dunder ----------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._adj == other._adj and self._weights == other._weights

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((frozenset(self._adj.items()), frozenset(self._weights.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={len(self)}, m={self.num_edges})"


def path_graph(n: int, start: int = 0) -> Graph:
    vs = range(start, start + n)
    return Graph(vs, zip(vs, vs[1:]))


def cycle_graph(n: int) -> Graph:
    return Graph(range(n), [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph(range(n), [(i, j) for i in range(n) for j in range(i + 1, n)])


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(range(10), outer + spokes + inner)


# -- 2-colorings ---------------------------------------------------------


@dataclass(frozen=True)
class Bipartition:
    side0: frozenset[int]
    side1: frozenset[int]

    def side(self, index: int) -> frozenset[int]:
        return self.side1 if index else self.side0

    def color(self, v: int) -> int:
        if v in self.side0:
            return 0
        if v in self.side1:
            return 1
        raise KeyError(v)

    @property
    def vertices(self) -> frozenset[int]:
        return self.side0 | self.side1


@dataclass(frozen=True)
class OddCycle:
    """A closed walk ``vertices[0] .. vertices[-1]`` back to the start, odd length."""

    vertices: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.vertices)


def _scope(g: Graph, scope: Iterable[int] | None) -> frozenset[int]:
    if scope is None:
        return frozenset(g.vertices)
    scope = frozenset(scope)
    if not scope <= g.adj.keys():
        raise ValueError("scope is not a subset of the vertex set")
    return scope


def _tree_path(parent: dict[int, int | None], a: int, b: int) -> tuple[int, ...]:
    """Cycle formed by the BFS-tree paths to ``a`` and ``b`` plus the edge ab."""
    up_a = [a]
    while parent[up_a[-1]] is not None:
        up_a.append(parent[up_a[-1]])
    on_a = {v: i for i, v in enumerate(up_a)}
    up_b = [b]
    while up_b[-1] not in on_a:
        up_b.append(parent[up_b[-1]])
    lca = up_b[-1]
    return tuple(up_a[: on_a[lca] + 1][::-1]) + tuple(up_b[:-1])


def bipartition(g: Graph, scope: Iterable[int] | None = None) -> Bipartition | OddCycle:
    """2-color ``g[scope]`` by BFS, roots and neighbors in ascending id order.

    Returns the first odd cycle BFS closes if the induced graph is not bipartite.
    """
    scope = _scope(g, scope)
    color: dict[int, int] = {}
    parent: dict[int, int | None] = {}
    adj = g.adj
    for root in sorted(scope):
        if root in color:
            continue
        color[root] = 0
        parent[root] = None
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v in sorted(adj[u]):
                if v not in scope:
                    continue
                if v not in color:
                    color[v] = 1 - color[u]
                    parent[v] = u
                    queue.append(v)
                elif color[v] == color[u]:
                    return OddCycle(_tree_path(parent, u, v))
    return Bipartition(
        frozenset(v for v, c in color.items() if c == 0),
        frozenset(v for v, c in color.items() if c == 1),
    )


def two_coloring(g: Graph, scope: Iterable[int] | None = None) -> dict[int, int] | None:
    """Color map of a proper 2-coloring of ``g[scope]``, or None."""
    bip = bipartition(g, scope)
    if isinstance(bip, OddCycle):
        return None
    return {**dict.fromkeys(bip.side0, 0), **dict.fromkeys(bip.side1, 1)}


def is_bipartite(g: Graph, scope: Iterable[int] | None = None) -> bool:
    return isinstance(bipartition(g, scope), Bipartition)


def is_proper_coloring(g: Graph, coloring: Mapping[int, int], scope: Iterable[int] | None = None) -> bool:
    scope = frozenset(coloring) if scope is None else frozenset(scope)
    for u in scope:
        for v in g.adj[u]:
            if v in scope and coloring[u] == coloring[v]:
                return False
    return True


@dataclass(frozen=True)
class ColoringConflict:
    """A p-q path through uncolored vertices whose parity contradicts c(p), c(q).

    Either the path has an odd number of internal vertices and c(p) != c(q),
    or an even number and c(p) == c(q). ``p == q`` means the path is an odd
    cycle through p.
    """

    component: frozenset[int]
    p: int
    q: int
    path: tuple[int, ...]

    @property
    def internal(self) -> tuple[int, ...]:
        return self.path[1:-1]


def extend_two_coloring(
    g: Graph, s: Iterable[int], c: Mapping[int, int]
) -> dict[int, int] | ColoringConflict:
    """Extend a proper 2-coloring of ``g[s]`` to all of ``g``.

    Requires ``g - s`` bipartite. Returns the full coloring, or a conflict
    path between two colored vertices whose internal vertices avoid ``s``.
    """
    s = frozenset(s)
    if set(c) != s:
        raise ValueError("coloring must assign exactly the vertices of s")
    if any(col not in (0, 1) for col in c.values()):
        raise ValueError("colors must be 0 or 1")
    if not is_proper_coloring(g, c, s):
        raise ValueError("coloring is not proper on g[s]")
    rest = frozenset(g.vertices) - s
    if not is_bipartite(g, rest):
        raise ValueError("g - s is not bipartite")

    adj = g.adj
    color = dict(c)
    parent: dict[int, int | None] = dict.fromkeys(s)
    queue = deque(sorted(s))
    while queue:
        u = queue.popleft()
        for v in sorted(adj[u]):
            if v not in color:
                color[v] = 1 - color[u]
                parent[v] = u
                queue.append(v)
            elif color[v] == color[u] and not (u in s and v in s):
                return _conflict(g, s, parent, u, v)
    # components of g - s that never touch s
    free = [v for v in g.vertices if v not in color]
    if free:
        bip = bipartition(g, free)
        assert isinstance(bip, Bipartition)
        color.update(dict.fromkeys(bip.side0, 0))
        color.update(dict.fromkeys(bip.side1, 1))
    return color


def _conflict(g: Graph, s: frozenset[int], parent: dict[int, int | None], u: int, v: int) -> ColoringConflict:
    def chain(x: int) -> list[int]:
        out = [x]
        while parent[out[-1]] is not None:
            out.append(parent[out[-1]])
        return out[::-1]

    path = tuple(chain(u) + chain(v)[::-1])
    inner = [x for x in path[1:-1] if x not in s]
    comp = connected_components(g, frozenset(g.vertices) - s)
    component = next((cc for cc in comp if inner and inner[0] in cc), frozenset())
    return ColoringConflict(component, path[0], path[-1], path)


# -- components and helpers ----------------------------------------------


def connected_components(g: Graph, scope: Iterable[int] | None = None) -> list[frozenset[int]]:
    """Components of ``g[scope]``, ordered by smallest vertex."""
    scope = _scope(g, scope)
    seen: set[int] = set()
    out = []
    adj = g.adj
    for root in sorted(scope):
        if root in seen:
            continue
        comp = {root}
        stack = [root]
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if v in scope and v not in comp:
                    comp.add(v)
                    stack.append(v)
        seen |= comp
        out.append(frozenset(comp))
    return out


def reachable(g: Graph, sources: Iterable[int], removed: Iterable[int] = ()) -> frozenset[int]:
    """Vertices reachable from ``sources`` in ``g - removed`` (sources in removed are skipped)."""
    removed = frozenset(removed)
    start = [v for v in sources if v not in removed]
    seen = set(start)
    stack = list(start)
    adj = g.adj
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if v not in seen and v not in removed:
                seen.add(v)
                stack.append(v)
    return frozenset(seen)


def subdivide_edges_p2(g: Graph) -> Graph:
    """Replace every edge uv (u < v) by a path u - a - b - v with fresh a, b."""
    nxt = g.fresh_id()
    vertices = list(g.vertices)
    edges = []
    for u, v in g.edges():
        a, b = nxt, nxt + 1
        nxt += 2
        vertices += [a, b]
        edges += [(u, a), (a, b), (b, v)]
    return Graph(vertices, edges, g.weights)


def is_simple_path(g: Graph, path: tuple[int, ...] | list[int]) -> bool:
    if not path or len(set(path)) != len(path):
        return False
    return all(g.has_edge(a, b) for a, b in zip(path, path[1:]))
