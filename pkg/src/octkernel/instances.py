"""Problem instances and the line-oriented instance/decomposition formats.

Instance file directives, one per line (``#`` starts a comment)::

    p oct <n> <m>
    e <u> <v>
    x <v>          modulator vertex
    m <u> <v>      pair that must receive the same color
    z <v>          deletable vertex (restricted instances)
    w <v> <weight>
    l <budget>
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable, TextIO

from .graph import Graph


class FormatError(ValueError):
    pass


def norm_pair(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class OctInstance:
    """Delete at most ``budget`` (total weight) vertices to make the graph bipartite.

    ``modulator`` is a set X with ``graph - X`` bipartite and of small treewidth.
    """

    graph: Graph
    modulator: frozenset[int]
    budget: int

    def __post_init__(self):
        object.__setattr__(self, "modulator", frozenset(self.modulator))
        if not self.modulator <= set(self.graph.vertices):
            raise ValueError("modulator contains unknown vertices")

    @property
    def n(self) -> int:
        return len(self.graph)

    def relabel(self, mapping) -> OctInstance:
        return OctInstance(self.graph.relabel(mapping), frozenset(mapping[v] for v in self.modulator), self.budget)


@dataclass(frozen=True, kw_only=True)
class AnnotatedInstance(OctInstance):
    """OCT with pairs ``mono`` whose surviving endpoints must share a color."""

    mono: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self):
        super().__post_init__()
        pairs = frozenset(norm_pair(u, v) for u, v in self.mono)
        for u, v in pairs:
            if u == v or u not in self.modulator or v not in self.modulator:
                raise ValueError(f"monochromatic pair ({u}, {v}) must join two distinct modulator vertices")
        object.__setattr__(self, "mono", pairs)

    def relabel(self, mapping) -> AnnotatedInstance:
        base = OctInstance.relabel(self, mapping)
        return AnnotatedInstance(
            graph=base.graph,
            modulator=base.modulator,
            budget=self.budget,
            mono=frozenset(norm_pair(mapping[u], mapping[v]) for u, v in self.mono),
        )


@dataclass(frozen=True, kw_only=True)
class RestrictedInstance(AnnotatedInstance):
    """Annotated OCT where only vertices of ``deletable`` may be removed."""

    deletable: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        super().__post_init__()
        object.__setattr__(self, "deletable", frozenset(self.deletable))
        if not self.deletable <= set(self.graph.vertices):
            raise ValueError("deletable set contains unknown vertices")

    def relabel(self, mapping) -> RestrictedInstance:
        base = AnnotatedInstance.relabel(self, mapping)
        return RestrictedInstance(
            graph=base.graph,
            modulator=base.modulator,
            budget=self.budget,
            mono=base.mono,
            deletable=frozenset(mapping[v] for v in self.deletable),
        )


def as_annotated(inst: OctInstance) -> AnnotatedInstance:
    if isinstance(inst, AnnotatedInstance):
        return inst
    return AnnotatedInstance(graph=inst.graph, modulator=inst.modulator, budget=inst.budget)


def with_budget(inst: OctInstance, budget: int) -> OctInstance:
    return replace(inst, budget=budget)


def relabel_dense(inst: OctInstance) -> tuple[OctInstance, dict[int, int]]:
    """Renumber vertices to 0..n-1 preserving order. Returns the instance and old->new map."""
    mapping = {v: i for i, v in enumerate(inst.graph.vertices)}
    return inst.relabel(mapping), mapping


# -- instance text format ------------------------------------------------


def _ints(parts: list[str], count: int, lineno: int, what: str) -> list[int]:
    if len(parts) != count:
        raise FormatError(f"line {lineno}: '{what}' expects {count} integer field(s)")
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise FormatError(f"line {lineno}: non-integer field in '{what}' line") from None


def parse_instance(text: str) -> OctInstance:
    """Parse an instance; returns the most specific instance type the file needs."""
    header = None
    edges: list[tuple[int, int]] = []
    xs: list[int] = []
    mono: list[tuple[int, int]] = []
    zs: list[int] = []
    weights: dict[int, int] = {}
    budget = None
    saw_z = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        kind, *rest = line.split()
        if kind == "p":
            if header is not None:
                raise FormatError(f"line {lineno}: duplicate header")
            if len(rest) != 3 or rest[0] != "oct":
                raise FormatError(f"line {lineno}: header must be 'p oct <n> <m>'")
            header = _ints(rest[1:], 2, lineno, "p")
            if min(header) < 0:
                raise FormatError(f"line {lineno}: negative count in header")
            continue
        if header is None:
            raise FormatError(f"line {lineno}: '{kind}' before header")
        if kind == "e":
            u, v = _ints(rest, 2, lineno, "e")
            edges.append((u, v))
        elif kind == "x":
            xs.append(_ints(rest, 1, lineno, "x")[0])
        elif kind == "m":
            u, v = _ints(rest, 2, lineno, "m")
            mono.append((u, v))
        elif kind == "z":
            saw_z = True
            zs.append(_ints(rest, 1, lineno, "z")[0])
        elif kind == "w":
            v, w = _ints(rest, 2, lineno, "w")
            if w < 0:
                raise FormatError(f"line {lineno}: negative weight")
            weights[v] = w
        elif kind == "l":
            if budget is not None:
                raise FormatError(f"line {lineno}: duplicate budget line")
            budget = _ints(rest, 1, lineno, "l")[0]
        else:
            raise FormatError(f"line {lineno}: unknown directive '{kind}'")
    if header is None:
        raise FormatError("missing 'p oct' header")
    if budget is None:
        raise FormatError("missing budget line 'l <budget>'")
    n, m = header
    for v in [*xs, *zs, *weights, *(x for e in edges for x in e), *(x for e in mono for x in e)]:
        if not 0 <= v < n:
            raise FormatError(f"vertex id {v} out of range 0..{n - 1}")
    if len(edges) != m:
        raise FormatError(f"header declares {m} edges, found {len(edges)}")
    if len({norm_pair(u, v) for u, v in edges}) != m or any(u == v for u, v in edges):
        raise FormatError("duplicate edge or self-loop")
    g = Graph(range(n), edges, weights)
    if saw_z:
        return RestrictedInstance(graph=g, modulator=frozenset(xs), budget=budget, mono=frozenset(mono), deletable=frozenset(zs))
    if mono:
        return AnnotatedInstance(graph=g, modulator=frozenset(xs), budget=budget, mono=frozenset(mono))
    return OctInstance(g, frozenset(xs), budget)


def write_instance(inst: OctInstance) -> str:
    """Serialize with vertices 0..n-1; directives and their contents sorted."""
    g = inst.graph
    if g.vertices != tuple(range(len(g))):
        raise ValueError("vertex ids must be exactly 0..n-1; use relabel_dense first")
    out = [f"p oct {len(g)} {g.num_edges}"]
    out += [f"e {u} {v}" for u, v in g.edges()]
    out += [f"x {v}" for v in sorted(inst.modulator)]
    if isinstance(inst, AnnotatedInstance):
        out += [f"m {u} {v}" for u, v in sorted(inst.mono)]
    if isinstance(inst, RestrictedInstance):
        if not inst.deletable:
            # without a z line the file would read back as unrestricted
            raise ValueError("a restricted instance needs at least one deletable vertex to be written")
        out += [f"z {v}" for v in sorted(inst.deletable)]
    out += [f"w {v} {w}" for v, w in sorted(g.weights.items())]
    out.append(f"l {inst.budget}")
    return "\n".join(out) + "\n"


def read_instance(fh: TextIO) -> OctInstance:
    return parse_instance(fh.read())


# -- decomposition text format -------------------------------------------


def parse_decomposition(text: str):
    from .treewidth import TreeDecomposition

    bags: dict[int, frozenset[int]] = {}
    tree_edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        kind, *rest = line.split()
        try:
            nums = [int(p) for p in rest]
        except ValueError:
            raise FormatError(f"line {lineno}: non-integer field") from None
        if kind == "b":
            if not nums:
                raise FormatError(f"line {lineno}: bag line needs an id")
            if nums[0] in bags:
                raise FormatError(f"line {lineno}: duplicate bag id {nums[0]}")
            bags[nums[0]] = frozenset(nums[1:])
        elif kind == "t":
            if len(nums) != 2:
                raise FormatError(f"line {lineno}: tree edge needs parent and child")
            tree_edges.append((nums[0], nums[1]))
        else:
            raise FormatError(f"line {lineno}: unknown directive '{kind}'")
    try:
        return TreeDecomposition.from_edges(bags, tree_edges)
    except ValueError as e:
        raise FormatError(str(e)) from None


def write_decomposition(td) -> str:
    out = [f"b {b} " + " ".join(map(str, sorted(td.bags[b]))) if td.bags[b] else f"b {b}" for b in sorted(td.bags)]
    out += [f"t {p} {c}" for p, c in sorted((p, c) for c, p in td.parent.items() if p is not None)]
    return "\n".join(out) + "\n"


def instance_from_edges(n: int, edges: Iterable[tuple[int, int]], modulator=(), budget: int = 0) -> OctInstance:
    return OctInstance(Graph(range(n), edges), frozenset(modulator), budget)
