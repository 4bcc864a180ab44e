"""From the restricted annotated problem back to plain OCT with a modulator."""

from __future__ import annotations

from itertools import combinations_with_replacement

from ..graph import Bipartition, Graph, bipartition, connected_components, is_bipartite
from ..instances import OctInstance, RestrictedInstance


def canonical_yes() -> OctInstance:
    return OctInstance(Graph([0]), frozenset(), 0)


def canonical_no() -> OctInstance:
    return OctInstance(Graph(range(3), [(0, 1), (1, 2), (0, 2)]), frozenset({0}), 0)


def zpath_parities(g: Graph, z: frozenset[int]) -> set[tuple[int, int, int]]:
    """(p, q, parity) for every Z-path; parity is the number of internal vertices mod 2."""
    out = set()
    for comp in connected_components(g, set(g.vertices) - z):
        bip = bipartition(g, comp)
        assert isinstance(bip, Bipartition)
        touch: dict[int, set[int]] = {}
        for v in comp:
            for p in g.adj[v] & z:
                touch.setdefault(p, set()).add(bip.color(v))
        for p, q in combinations_with_replacement(sorted(touch), 2):
            if p == q:
                if len(touch[p]) == 2:
                    out.add((p, p, 0))
                continue
            if touch[p] & touch[q]:
                out.add((p, q, 1))
            if any(a != b for a in touch[p] for b in touch[q]):
                out.add((p, q, 0))
    return out


def back_transform(inst: RestrictedInstance) -> OctInstance:
    """Equivalent plain instance on Z: even Z-paths become edges, odd Z-paths
    become ell+1 common neighbors; Z is the new modulator."""
    g, z, ell = inst.graph, inst.deletable, inst.budget
    if ell < 0 or not is_bipartite(g, set(g.vertices) - z):
        return canonical_no()
    # each annotated pair gets an undeletable common neighbor
    nxt = g.fresh_id()
    mono = sorted(inst.mono)
    gadgets = list(range(nxt, nxt + len(mono)))
    g = g.add_vertices(gadgets).add_edges(e for w, (u, v) in zip(gadgets, mono) for e in ((u, w), (v, w)))
    paths = zpath_parities(g, z)
    # an even p-p Z-path closes an odd cycle whose other vertices are undeletable
    forced = sorted({p for p, q, par in paths if p == q and par == 0})
    ell -= len(forced)
    if ell < 0:
        return canonical_no()
    keep = z - set(forced)
    out = g.subgraph(keep)
    extra_edges = [(p, q) for p, q, par in sorted(paths) if par == 0 and p != q and p in keep and q in keep]
    out = out.add_edges(e for e in extra_edges if not out.has_edge(*e))
    odd_pairs = [(p, q) for p, q, par in sorted(paths) if par == 1 and p in keep and q in keep]
    nxt = max(g.fresh_id(), out.fresh_id())
    new = []
    new_edges = []
    for p, q in odd_pairs:
        for _ in range(ell + 1):
            new.append(nxt)
            new_edges += [(p, nxt), (q, nxt)]
            nxt += 1
    out = out.add_vertices(new).add_edges(new_edges)
    return OctInstance(out, frozenset(keep), ell)


def _same_plain(inst, ref: OctInstance) -> bool:
    # compared by value so annotated or restricted copies also qualify
    return (
        inst.graph.vertices == ref.graph.vertices
        and inst.graph.edges() == ref.graph.edges()
        and inst.modulator == ref.modulator
        and inst.budget == ref.budget
        and not getattr(inst, "mono", ())
    )


def is_canonical_no(inst) -> bool:
    return _same_plain(inst, canonical_no())


def is_canonical_yes(inst) -> bool:
    return _same_plain(inst, canonical_yes())


def back_bound(z: int, ell: int) -> int:
    return z + (ell + 1) * z * z

