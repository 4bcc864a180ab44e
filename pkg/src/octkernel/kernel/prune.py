"""Dropping components of (G - X) - H that add no new path parities."""

from __future__ import annotations

from itertools import combinations_with_replacement

from ..graph import Bipartition, bipartition, connected_components
from ..instances import AnnotatedInstance

ODD, EVEN = 1, 0


def component_parities(inst: AnnotatedInstance, comp, terminals) -> set[tuple[int, int, int]]:
    """(p, q, parity) for which comp provides a p-q path; parity counts internal vertices.

    p == q is only reported with even parity, i.e. an odd cycle through p.
    """
    g = inst.graph
    bip = bipartition(g, comp)
    assert isinstance(bip, Bipartition)
    touch: dict[int, set[int]] = {}
    for v in comp:
        for t in g.adj[v]:
            if t in terminals:
                touch.setdefault(t, set()).add(bip.color(v))
    out = set()
    for p, q in combinations_with_replacement(sorted(touch), 2):
        if p == q:
            if len(touch[p]) == 2:
                out.add((p, p, EVEN))
            continue
        if touch[p] & touch[q]:
            out.add((p, q, ODD))
        if any(cp != cq for cp in touch[p] for cq in touch[q]):
            out.add((p, q, EVEN))
    return out


def prune_components(inst: AnnotatedInstance, h) -> AnnotatedInstance:
    """Keep, per (pair, parity), only the first ell+1 components providing such a path."""
    h = frozenset(h)
    x = inst.modulator
    if h & x:
        raise ValueError("h must avoid the modulator")
    terminals = x | h
    comps = connected_components(inst.graph, set(inst.graph.vertices) - terminals)
    quota = max(inst.budget, 0) + 1
    used: dict[tuple[int, int, int], int] = {}
    drop: set[int] = set()
    for comp in comps:
        keep = False
        for key in sorted(component_parities(inst, comp, terminals)):
            if used.get(key, 0) < quota:
                used[key] = used.get(key, 0) + 1
                keep = True
        if not keep:
            drop |= comp
    if not drop:
        return inst
    return AnnotatedInstance(graph=inst.graph.remove_vertices(drop), modulator=x, budget=inst.budget, mono=inst.mono)
