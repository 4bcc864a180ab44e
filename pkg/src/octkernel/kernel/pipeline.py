"""The full kernelization: hitting set, annotations, protrusions, pruning,
restriction to deletable vertices, and back to plain OCT."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..graph import connected_components, is_bipartite
from ..instances import AnnotatedInstance, OctInstance
from ..treewidth import decompose
from .back import back_bound, back_transform, canonical_no, canonical_yes, is_canonical_no
from .hitting import HittingSetResult, apply_annotations, compute_hitting_set
from .protrusion import protrusion_decompose
from .prune import prune_components
from .restrict import restrict_bound, restrict_deletable


class PreconditionError(ValueError):
    """The input does not satisfy the kernel's requirements (e.g. an invalid modulator)."""


@dataclass(frozen=True)
class TraceRow:
    stage: str
    metric: str
    value: int
    bound: int | None = None

    @property
    def slack(self) -> int | None:
        return None if self.bound is None else self.bound - self.value

    def line(self) -> str:
        parts = [f"stage={self.stage}", f"metric={self.metric}", f"value={self.value}"]
        if self.bound is not None:
            parts += [f"bound={self.bound}", f"slack={self.slack}"]
        return " ".join(parts)


@dataclass
class KernelResult:
    instance: OctInstance
    trace: list[TraceRow] = field(default_factory=list)
    verdict: str | None = None  # "yes"/"no" when decided outright
    stages: dict = field(default_factory=dict)

    def violations(self) -> list[TraceRow]:
        return [r for r in self.trace if r.bound is not None and r.value > r.bound]

    def trace_text(self) -> str:
        return "".join(r.line() + "\n" for r in self.trace)


def check_modulator(inst: OctInstance, w: int) -> None:
    g, x = inst.graph, inst.modulator
    if g.is_weighted:
        raise PreconditionError("kernelization expects an unweighted instance")
    if isinstance(inst, AnnotatedInstance) and (inst.mono or getattr(inst, "deletable", None) is not None):
        raise PreconditionError("kernelization expects a plain instance without annotations")
    rest = g.remove_vertices(x)
    if not is_bipartite(rest):
        raise PreconditionError("missing or invalid modulator: G - X is not bipartite")
    if decompose(rest, w) is None:
        raise PreconditionError(f"missing or invalid modulator: G - X has treewidth above {w}")


def _size(trace: list[TraceRow], stage: str, g) -> None:
    trace.append(TraceRow(stage, "vertices", len(g)))
    trace.append(TraceRow(stage, "edges", g.num_edges))


def kernelize(inst: OctInstance, w: int, enum_ceiling: int = 1_000_000) -> KernelResult:
    if w < 1:
        raise PreconditionError("width must be at least 1")
    trace: list[TraceRow] = []
    g, x, ell = inst.graph, frozenset(inst.modulator), inst.budget
    _size(trace, "input", g)
    if ell < 0:
        return KernelResult(canonical_no(), trace, "no")
    check_modulator(inst, w)
    k = len(x)
    trace.append(TraceRow("input", "modulator", k))
    if ell >= k:
        return KernelResult(canonical_yes(), trace, "yes")

    hsr: HittingSetResult = compute_hitting_set(g, x, ell)
    trace.append(TraceRow("hitting", "H", len(hsr.h), 4 * ell * k * k))
    ann = apply_annotations(inst, hsr)
    stages = {"hitting": hsr, "annotated": ann}
    if hsr.c and ell - len(hsr.c) < 0:
        return KernelResult(canonical_no(), trace, "no", stages)
    x1, ell1 = ann.modulator, ann.budget
    _size(trace, "annotated", ann.graph)

    rest = ann.graph.remove_vertices(x1)
    td = decompose(rest, w)
    if td is None:
        raise PreconditionError(f"no tree decomposition of width {w} for G' - X'")
    h1 = protrusion_decompose(rest, td, hsr.h)
    stages["protrusion"] = h1
    trace.append(TraceRow("protrusion", "H'", len(h1), 2 * (w + 1) * len(hsr.h)))
    worst = max((len(rest.neighborhood(c) & h1) for c in connected_components(rest, set(rest.vertices) - h1)), default=0)
    trace.append(TraceRow("protrusion", "component-neighbors", worst, 2 * w))

    pruned = prune_components(ann, h1)
    stages["pruned"] = pruned
    alpha = 2 * (ell1 + 1) * (len(x1) + len(h1)) ** 2
    comps = connected_components(pruned.graph, set(pruned.graph.vertices) - x1 - h1)
    trace.append(TraceRow("prune", "components", len(comps), alpha))
    _size(trace, "prune", pruned.graph)

    restricted = restrict_deletable(pruned, h1, w, enum_ceiling)
    stages["restricted"] = restricted
    trace.append(TraceRow("restrict", "Z", len(restricted.deletable), restrict_bound(len(x1), len(h1), alpha, 2 * w)))

    out = back_transform(restricted)
    stages["back"] = out
    z = len(restricted.deletable)
    trace.append(TraceRow("back", "vertices", len(out.graph), back_bound(z, ell1)))
    _size(trace, "output", out.graph)

    if is_canonical_no(out) or out.budget < 0:
        return KernelResult(canonical_no(), trace, "no", stages)
    if out.budget == 0:
        if is_bipartite(out.graph):
            return KernelResult(canonical_yes(), trace, "yes", stages)
        return KernelResult(canonical_no(), trace, "no", stages)
    return KernelResult(out, trace, None, stages)
