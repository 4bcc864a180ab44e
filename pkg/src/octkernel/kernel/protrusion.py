"""Growing a vertex set so every leftover component sees few of its vertices."""

from __future__ import annotations

from ..graph import Graph
from ..treewidth import TreeDecomposition, validate


def mark_bags(td: TreeDecomposition, s) -> set[int]:
    """One bag per vertex of s, closed under lowest common ancestors of active bags."""
    depth = td.depth()
    holders: dict[int, int] = {}
    for b in sorted(td.bags, key=lambda b: (depth[b], b)):
        for v in td.bags[b]:
            holders.setdefault(v, b)
    marked = {holders[v] for v in s}
    active = set(marked)
    kids = td.children()
    order = td.preorder()
    while len(active) > 1:
        count: dict[int, int] = {}
        for b in reversed(order):
            count[b] = (b in active) + sum(count[c] for c in kids[b])
        lowest = max((b for b in order if count[b] >= 2), key=lambda b: (depth[b], -b))
        # deactivate everything marked below, then activate the common ancestor
        stack = [lowest]
        while stack:
            b = stack.pop()
            active.discard(b)
            stack.extend(kids[b])
        marked.add(lowest)
        active.add(lowest)
    return marked


def protrusion_decompose(g: Graph, td: TreeDecomposition, s) -> frozenset[int]:
    """Superset S' of s with |S'| <= 2(w+1)|s| and every component of g - S'
    adjacent to at most 2w vertices of S'."""
    problems = validate(g, td)
    if problems:
        raise ValueError("invalid decomposition: " + "; ".join(problems))
    s = frozenset(s)
    if not s:
        return frozenset()
    if not s <= set(g.vertices):
        raise ValueError("s contains vertices outside the graph")
    out: set[int] = set()
    for b in mark_bags(td, s):
        out |= td.bags[b]
    return frozenset(out)
