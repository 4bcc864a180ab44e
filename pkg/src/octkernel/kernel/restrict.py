"""Restricting deletions to one minimum separator per cut-characteristic class."""

from __future__ import annotations

from dataclasses import dataclass

from ..graph import connected_components
from ..instances import AnnotatedInstance, RestrictedInstance
from ..separators import LabeledGraph, cut_characteristic, enumerate_characteristics, kappa_bound


@dataclass(frozen=True)
class ComponentView:
    """A component C of (G - X) - H with its terminals T = N(C) - X and labeled graph on C + T."""

    vertices: frozenset[int]
    terminals: tuple[int, ...]
    labeled: LabeledGraph


def component_views(inst: AnnotatedInstance, h) -> list[ComponentView]:
    g, x = inst.graph, inst.modulator
    h = frozenset(h)
    out = []
    for comp in connected_components(g, set(g.vertices) - x - h):
        terms = tuple(sorted(g.neighborhood(comp) - x))
        d = g.subgraph(comp | set(terms))
        labeling = {v: (g.adj[v] & x) | ({v} if v in terms else set()) for v in d.vertices}
        out.append(ComponentView(comp, terms, LabeledGraph(d, x | set(terms), labeling)))
    return out


def restrict_bound(n_x: int, n_h: int, alpha: int, delta: int) -> int:
    return n_x + n_h + alpha * delta * kappa_bound(delta, max(delta - 1, 0), n_x + delta)


def restrict_deletable(
    inst: AnnotatedInstance, h, w: int, ceiling: int = 1_000_000
) -> RestrictedInstance:
    """Z = X + H + the C-part of a canonical minimum representative of every
    class of separators inside C + T of size below |T| (|T| <= 2w)."""
    h = frozenset(h)
    delta = 2 * w
    marked: set[int] = set()
    for view in component_views(inst, h):
        t = len(view.terminals)
        if t > delta:
            raise ValueError(f"component at {min(view.vertices)} has {t} terminals, more than 2w = {delta}")
        size = min(delta, t) - 1
        if size < 0:
            continue
        cands = view.vertices | set(view.terminals)
        classes = enumerate_characteristics(view.labeled, view.terminals, size, cands, ceiling)
        for rep in classes.values():
            marked |= set(rep) & view.vertices
    z = inst.modulator | h | marked
    return RestrictedInstance(
        graph=inst.graph, modulator=inst.modulator, budget=inst.budget, mono=inst.mono, deletable=frozenset(z)
    )


def separator_replace(inst: AnnotatedInstance, h, solution, comp, s_new) -> frozenset[int]:
    """Swap the solution's part inside ``comp`` for ``s_new`` of the same cut characteristic.

    The characteristic is taken in the component's labeled graph with the
    solution's deleted terminals added to both sides, so both separators
    are compared in the same surroundings.
    """
    comp = frozenset(comp)
    s_new = frozenset(s_new)
    solution = frozenset(solution)
    view = next((v for v in component_views(inst, h) if v.vertices == comp), None)
    if view is None:
        raise ValueError("comp is not a component of (G - X) - H")
    if not s_new <= comp:
        raise ValueError("replacement must lie inside the component")
    gone = solution & set(view.terminals)
    old = solution & comp
    k_old = cut_characteristic(view.labeled, view.terminals, old | gone)
    k_new = cut_characteristic(view.labeled, view.terminals, s_new | gone)
    if k_old != k_new:
        raise ValueError("separators have different cut characteristics")
    return (solution - old) | s_new
