"""Random instances pushed part-way through the kernel, shared by the kernel and acceptance tests."""

import random
from itertools import combinations

from octkernel.generators import random_instance
from octkernel.kernel import (
    apply_annotations,
    component_views,
    compute_hitting_set,
    protrusion_decompose,
    prune_components,
    separator_replace,
)
from octkernel.separators import LabeledGraph, cut_characteristic
from octkernel.solvers import feasible_coloring, solve_annotated
from octkernel.treewidth import decompose


def pipeline_stages(seed, w=None):
    """Random instance pushed through hitting set, annotations, protrusions and pruning."""
    rng = random.Random(seed)
    w = w or 1 + seed % 2
    n = rng.randint(7, 14)
    k = rng.randint(2, 4)
    inst = random_instance(seed, n, p=rng.choice([0.4, 0.6]), w=w, k=k, budget=rng.randint(0, k - 1))
    hsr = compute_hitting_set(inst.graph, inst.modulator, inst.budget)
    if len(hsr.c) > inst.budget:
        return None
    ann = apply_annotations(inst, hsr)
    rest = ann.graph.remove_vertices(ann.modulator)
    h1 = protrusion_decompose(rest, decompose(rest, w), hsr.h)
    return inst, w, hsr, ann, h1, prune_components(ann, h1)


def swap_outcomes(seeds):
    """(valid, differs_without_terminal_x_labels) for every same-class swap of a solution's separator."""
    out = []
    for seed in seeds:
        st = pipeline_stages(seed)
        if st is None:
            continue
        _, _, _, _, h1, pruned = st
        sol = solve_annotated(pruned)
        if sol is None:
            continue
        x = pruned.modulator
        for view in component_views(pruned, h1):
            comp = sorted(view.vertices)
            if len(comp) > 8:
                continue
            lg = view.labeled
            own = LabeledGraph(lg.graph, lg.labels, {v: lg.f(v) - x if v in view.terminals else lg.f(v) for v in lg.graph.vertices})
            gone = sol.deleted & set(view.terminals)
            old = sol.deleted & view.vertices
            base = cut_characteristic(lg, view.terminals, old | gone)
            base_own = cut_characteristic(own, view.terminals, old | gone)
            for size in range(len(comp) + 1):
                for s_new in combinations(comp, size):
                    if cut_characteristic(lg, view.terminals, set(s_new) | gone) != base:
                        continue
                    r2 = separator_replace(pruned, h1, sol.deleted, view.vertices, s_new)
                    valid = feasible_coloring(pruned.graph, r2, pruned.mono, pruned.modulator) is not None
                    split = cut_characteristic(own, view.terminals, set(s_new) | gone) != base_own
                    out.append((valid, split))
    return out
