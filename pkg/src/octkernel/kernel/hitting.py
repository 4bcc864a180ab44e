"""Hitting sets for X-paths and the annotations they imply."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from ..graph import Bipartition, Graph, OddCycle, bipartition
from ..instances import AnnotatedInstance, OctInstance, as_annotated, norm_pair
from ..separators import vertex_cut_typed
from .back import canonical_no

P, Q = 0, 1


@dataclass(frozen=True)
class HittingSetResult:
    """Pairs forced bichromatic (A) or monochromatic (B), forced deletions C, hitting set H.

    ``certificates`` maps each A/B pair and C vertex to the disjoint X-paths
    that forced it: more than ell of them, all of the stated parity.
    """

    a: frozenset[tuple[int, int]]
    b: frozenset[tuple[int, int]]
    c: frozenset[int]
    h: frozenset[int]
    certificates: dict = field(default_factory=dict, compare=False)


def _sides(g: Graph, x: frozenset[int]) -> Bipartition:
    bip = bipartition(g, set(g.vertices) - x)
    if isinstance(bip, OddCycle):
        raise ValueError("G - X is not bipartite")
    return bip


def compute_hitting_set(g: Graph, x, ell: int) -> HittingSetResult:
    x = frozenset(x)
    bip = _sides(g, x)
    a, b, c = set(), set(), set()
    h: set[int] = set()
    certs: dict = {}
    bound = max(ell, 0)
    for u, v in combinations(sorted(x), 2):
        pp = vertex_cut_typed(g, bip, u, v, P, P, bound)
        qq = vertex_cut_typed(g, bip, u, v, Q, Q, bound)
        pq = vertex_cut_typed(g, bip, u, v, P, Q, bound)
        qp = None if pq.exceeded else vertex_cut_typed(g, bip, u, v, Q, P, bound)
        # even X-paths: ends on opposite sides
        if pq.exceeded or qp.exceeded:
            a.add((u, v))
            certs[("A", u, v)] = (pq if pq.exceeded else qp).paths
        else:
            h |= pq.cut | qp.cut
        # odd X-paths: ends on the same side
        if pp.exceeded or qq.exceeded:
            b.add((u, v))
            certs[("B", u, v)] = (pp if pp.exceeded else qq).paths
        else:
            h |= pp.cut | qq.cut
    for v in sorted(x):
        pq = vertex_cut_typed(g, bip, v, v, P, Q, bound)
        if pq.exceeded:
            c.add(v)
            certs[("C", v)] = pq.paths
        else:
            h |= pq.cut
    return HittingSetResult(frozenset(a), frozenset(b), frozenset(c), frozenset(h), certs)


def apply_annotations(inst: OctInstance, hsr: HittingSetResult) -> AnnotatedInstance:
    """Delete forced vertices, add edges for A-pairs and annotations for B-pairs.

    Returns the canonical NO instance if the budget drops below zero.
    """
    base = as_annotated(inst)
    ell = base.budget - len(hsr.c)
    if ell < 0:
        return as_annotated(canonical_no())
    g = base.graph.remove_vertices(hsr.c)
    keep = lambda pair: pair[0] not in hsr.c and pair[1] not in hsr.c  # noqa: E731
    new_edges = [p for p in sorted(hsr.a) if keep(p) and not g.has_edge(*p)]
    g = g.add_edges(new_edges)
    mono = {p for p in base.mono if keep(p)} | {norm_pair(*p) for p in hsr.b if keep(p)}
    return AnnotatedInstance(graph=g, modulator=base.modulator - hsr.c, budget=ell, mono=frozenset(mono))
