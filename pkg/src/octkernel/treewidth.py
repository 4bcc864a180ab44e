"""Tree decompositions of small width and OCT by dynamic programming over them."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Iterable, Mapping

from .graph import Graph, bipartition, connected_components, is_bipartite, OddCycle


class CeilingError(RuntimeError):
    """An exact search was refused because the instance exceeds its size ceiling."""


@dataclass(frozen=True)
class TreeDecomposition:
    bags: Mapping[int, frozenset[int]]
    parent: Mapping[int, int | None]
    root: int = field(default=0)

    @classmethod
    def from_edges(cls, bags: Mapping[int, Iterable[int]], tree_edges: Iterable[tuple[int, int]]) -> TreeDecomposition:
        bags = {b: frozenset(vs) for b, vs in bags.items()}
        parent: dict[int, int | None] = dict.fromkeys(bags)
        for p, c in tree_edges:
            if p not in bags or c not in bags:
                raise ValueError(f"tree edge ({p}, {c}) references an unknown bag")
            if parent[c] is not None:
                raise ValueError(f"bag {c} has two parents")
            parent[c] = p
        roots = [b for b, p in parent.items() if p is None]
        if len(roots) != 1:
            raise ValueError(f"decomposition tree must have exactly one root, found {len(roots)}")
        td = cls(bags, parent, roots[0])
        if len(td.preorder()) != len(bags):
            raise ValueError("decomposition tree contains a cycle")
        return td

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags.values()), default=0) - 1

    def children(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {b: [] for b in self.bags}
        for c, p in self.parent.items():
            if p is not None:
                out[p].append(c)
        for cs in out.values():
            cs.sort()
        return out

    def preorder(self) -> list[int]:
        kids = self.children()
        order, stack = [], [self.root]
        seen = set()
        while stack:
            b = stack.pop()
            if b in seen:
                break
            seen.add(b)
            order.append(b)
            stack.extend(reversed(kids[b]))
        return order

    def depth(self) -> dict[int, int]:
        d = {}
        for b in self.preorder():
            p = self.parent[b]
            d[b] = 0 if p is None else d[p] + 1
        return d

    def tree_edges(self) -> list[tuple[int, int]]:
        return sorted((p, c) for c, p in self.parent.items() if p is not None)


def validate(g: Graph, td: TreeDecomposition) -> list[str]:
    """Check the decomposition axioms; returns violations (empty list means valid)."""
    problems = []
    try:
        TreeDecomposition.from_edges(td.bags, td.tree_edges())
    except ValueError as e:
        return [f"tree structure invalid: {e}"]
    covered = set()
    for b, vs in td.bags.items():
        extra = vs - set(g.vertices)
        if extra:
            problems.append(f"bag {b} contains unknown vertices {sorted(extra)}")
        covered |= vs
    for v in g.vertices:
        if v not in covered:
            problems.append(f"vertex uncovered: {v}")
    for u, v in g.edges():
        if not any(u in vs and v in vs for vs in td.bags.values()):
            problems.append(f"edge uncovered: ({u}, {v})")
    for v in sorted(covered & set(g.vertices)):
        holding = {b for b, vs in td.bags.items() if v in vs}
        # occurrence set is a subtree iff exactly one holding bag has a non-holding parent
        tops = [b for b in holding if td.parent[b] not in holding]
        if len(tops) != 1:
            problems.append(f"connectivity violated for vertex {v}")
    return problems


def is_valid(g: Graph, td: TreeDecomposition, w: int | None = None) -> bool:
    return not validate(g, td) and (w is None or td.width <= w)


# -- elimination orderings -----------------------------------------------


def _eliminate(adj: dict[int, set[int]], v: int) -> set[int]:
    ns = adj.pop(v)
    for a in ns:
        adj[a].discard(v)
        adj[a] |= ns - {a}
    return ns


def _greedy_order(g: Graph, w: int, min_fill: bool) -> list[int] | None:
    adj = {v: set(g.adj[v]) for v in g.vertices}
    order = []
    while adj:
        def score(v):
            if not min_fill:
                return (len(adj[v]), v)
            ns = list(adj[v])
            fill = sum(1 for i, a in enumerate(ns) for b in ns[i + 1:] if b not in adj[a])
            return (fill, len(adj[v]), v)

        v = min(adj, key=score)
        if len(adj[v]) > w:
            return None
        _eliminate(adj, v)
        order.append(v)
    return order


def _reduction_order(g: Graph, w: int) -> list[int] | None:
    """Eliminate vertices of degree <= w while possible; complete for w <= 2."""
    adj = {v: set(g.adj[v]) for v in g.vertices}
    order = []
    ready = sorted(v for v in adj if len(adj[v]) <= w)
    while ready:
        v = ready.pop(0)
        if v not in adj or len(adj[v]) > w:
            continue
        ns = _eliminate(adj, v)
        order.append(v)
        for a in sorted(ns):
            if len(adj[a]) <= w and a not in ready:
                ready.append(a)
        ready.sort()
    return order if not adj else None


def _exact_order(g: Graph, w: int, ceiling: int) -> list[int] | None:
    """Exhaustive elimination-order search with memoized dead states."""
    vs = list(g.vertices)
    if len(vs) > ceiling:
        raise CeilingError(f"exact treewidth search refused: {len(vs)} vertices > ceiling {ceiling}")
    index = {v: i for i, v in enumerate(vs)}
    nbr = [sum(1 << index[u] for u in g.adj[v]) for v in vs]
    full = (1 << len(vs)) - 1
    dead: set[int] = set()

    def qset(elim: int, v: int) -> int:
        # vertices outside elim reachable from v through elim
        seen = 1 << v
        frontier = 1 << v
        out = 0
        while frontier:
            i = (frontier & -frontier).bit_length() - 1
            frontier &= frontier - 1
            ns = nbr[i] & ~seen
            seen |= ns
            out |= ns & ~elim
            frontier |= ns & elim
        return out & ~(1 << v)

    def search(elim: int, order: list[int]) -> list[int] | None:
        if elim == full:
            return order
        if elim in dead:
            return None
        rest = full & ~elim
        cand = []
        while rest:
            i = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            d = bin(qset(elim, i)).count("1")
            if d <= w:
                cand.append((d, i))
        cand.sort()
        # a vertex whose remaining neighborhood is a clique can be eliminated greedily
        for d, i in cand:
            got = search(elim | (1 << i), order + [i])
            if got is not None:
                return got
        dead.add(elim)
        return None

    found = search(0, [])
    return None if found is None else [vs[i] for i in found]


def _from_order(g: Graph, order: list[int]) -> TreeDecomposition:
    if not order:
        return TreeDecomposition({0: frozenset()}, {0: None}, 0)
    pos = {v: i for i, v in enumerate(order)}
    adj = {v: set(g.adj[v]) for v in g.vertices}
    bags: dict[int, frozenset[int]] = {}
    parent: dict[int, int | None] = {}
    for i, v in enumerate(order):
        ns = _eliminate(adj, v)
        bags[i] = frozenset(ns | {v})
        parent[i] = min(pos[a] for a in ns) if ns else None
    roots = [b for b, p in parent.items() if p is None]
    # chain the component roots into a single tree
    for a, b in zip(roots, roots[1:]):
        parent[a] = b
    return TreeDecomposition(bags, parent, roots[-1])


def elimination_order(g: Graph, w: int, exact_ceiling: int = 24) -> list[int] | None:
    if w < 0:
        return [] if len(g) == 0 else None
    if w <= 2:
        return _reduction_order(g, w)
    for min_fill in (False, True):
        order = _greedy_order(g, w, min_fill)
        if order is not None:
            return order
    out = []
    for comp in connected_components(g):
        sub = g.subgraph(comp)
        order = _reduction_order(sub, w) or _exact_order(sub, w, exact_ceiling)
        if order is None:
            return None
        out += order
    return out


def decompose(g: Graph, w: int, exact_ceiling: int = 24) -> TreeDecomposition | None:
    """A decomposition of width <= w, or None if the treewidth exceeds w."""
    order = elimination_order(g, w, exact_ceiling)
    if order is None:
        return None
    return _from_order(g, order)


def treewidth(g: Graph, exact_ceiling: int = 24) -> int:
    w = -1 if len(g) == 0 else 0
    while decompose(g, w, exact_ceiling) is None:
        w += 1
    return w


# -- OCT by dynamic programming ------------------------------------------

DELETED = 2


def oct_dp(g: Graph, td: TreeDecomposition) -> frozenset[int]:
    """Minimum-weight S with g - S bipartite, by a 3-state DP over the bags.

    Each bag vertex is deleted or placed on side 0 or 1. With unit weights
    this is a minimum-cardinality odd cycle transversal.
    """
    problems = validate(g, td)
    if problems:
        raise ValueError("invalid decomposition: " + "; ".join(problems))
    kids = td.children()
    tables: dict[int, dict[tuple, int]] = {}
    choice: dict[int, dict[tuple, dict[int, tuple]]] = {}
    order = td.preorder()
    for b in reversed(order):
        bag = tuple(sorted(td.bags[b]))
        bagset = set(bag)
        table, picks = {}, {}
        child_best = []
        for c in kids[b]:
            shared = tuple(v for v in sorted(td.bags[c]) if v in bagset)
            cbag = tuple(sorted(td.bags[c]))
            idx = [cbag.index(v) for v in shared]
            best: dict[tuple, tuple[int, tuple]] = {}
            for state, cost in tables[c].items():
                adj_cost = cost - sum(g.weight(cbag[i]) for i in idx if state[i] == DELETED)
                key = tuple(state[i] for i in idx)
                if key not in best or adj_cost < best[key][0]:
                    best[key] = (adj_cost, state)
            child_best.append((c, [bag.index(v) for v in shared], best))
        for state in product((0, 1, DELETED), repeat=len(bag)):
            if not _proper(g, bag, state):
                continue
            cost = sum(g.weight(v) for v, s in zip(bag, state) if s == DELETED)
            pick = {}
            ok = True
            for c, idx, best in child_best:
                key = tuple(state[i] for i in idx)
                if key not in best:
                    ok = False
                    break
                cost += best[key][0]
                pick[c] = best[key][1]
            if ok:
                table[state] = cost
                picks[state] = pick
        tables[b] = table
        choice[b] = picks
    root_table = tables[td.root]
    state = min(root_table, key=lambda s: (root_table[s], s))
    deleted: set[int] = set()
    stack = [(td.root, state)]
    while stack:
        b, st = stack.pop()
        bag = tuple(sorted(td.bags[b]))
        deleted |= {v for v, s in zip(bag, st) if s == DELETED}
        for c, cst in choice[b][st].items():
            stack.append((c, cst))
    return frozenset(deleted)


def _proper(g: Graph, bag: tuple[int, ...], state: tuple[int, ...]) -> bool:
    for i, u in enumerate(bag):
        if state[i] == DELETED:
            continue
        for j in range(i + 1, len(bag)):
            if state[j] == state[i] and g.has_edge(u, bag[j]):
                return False
    return True


# -- deletion sets -------------------------------------------------------


def is_deletion_set(g: Graph, x: Iterable[int], w: int) -> bool:
    rest = g.remove_vertices(x)
    return is_bipartite(rest) and decompose(rest, w) is not None


def compute_deletion_set(g: Graph, w: int, mode: str = "exact", ceiling: int = 16) -> frozenset[int]:
    """A set X with g - X bipartite and of treewidth at most w.

    ``exact`` returns a minimum one by exhaustive search (refused above
    ``ceiling`` vertices); ``greedy`` returns an inclusion-minimal one.
    """
    if mode == "exact":
        if len(g) > ceiling:
            raise CeilingError(f"exact deletion set refused: {len(g)} vertices > ceiling {ceiling}")
        for k in range(len(g) + 1):
            for x in combinations(g.vertices, k):
                if is_deletion_set(g, x, w):
                    return frozenset(x)
        raise AssertionError("unreachable: deleting everything is always valid")
    if mode != "greedy":
        raise ValueError(f"unknown mode {mode!r}")
    x: set[int] = set()
    while not is_deletion_set(g, x, w):
        rest = g.remove_vertices(x)
        bip = bipartition(rest)
        pool = bip.vertices if isinstance(bip, OddCycle) else rest.vertices
        v = max(pool, key=lambda u: (rest.degree(u), -u))
        x.add(v)
    for v in sorted(x, key=lambda u: (g.degree(u), u)):
        if is_deletion_set(g, x - {v}, w):
            x.discard(v)
    return frozenset(x)
