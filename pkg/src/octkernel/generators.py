"""Seeded random instances and the OR-compositions used for kernel lower bounds.

Every composition takes t equivalent inputs (same vertex count n, edge count
m and budget), pads t to a power of two 2^R by repeating the last input, and
returns one OCT instance that is YES iff some input is YES. Instances are
numbered 1..t; bit p (1-based, least significant first) of instance i is
read from i mod 2^R, so instance 2^R is all zeros.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations

from .graph import Graph, connected_components, is_bipartite
from .instances import OctInstance
from .treewidth import compute_deletion_set, decompose


class GenerationError(RuntimeError):
    pass


# -- random instances ----------------------------------------------------


def random_partial_ktree(rng: random.Random, n: int, w: int) -> list[tuple[int, int]]:
    """Edges of a random w-tree on vertices 0..n-1 (every subgraph has treewidth <= w)."""
    if n <= 0:
        return []
    base = list(range(min(n, w + 1)))
    edges = [(u, v) for u, v in combinations(base, 2)]
    cliques = [tuple(base)]
    for v in range(len(base), n):
        host = rng.choice(cliques)
        attach = tuple(sorted(rng.sample(host, min(w, len(host)))))
        edges += [(u, v) for u in attach]
        cliques.append(attach + (v,))
    return edges


def random_instance(
    seed: int,
    n: int,
    p: float = 0.5,
    strategy: str = "planted",
    w: int = 1,
    k: int | None = None,
    budget: int | None = None,
    retries: int = 100,
) -> OctInstance:
    """A random OCT instance whose modulator leaves a bipartite graph of treewidth <= w.

    ``planted`` draws a bipartite partial w-tree and adds k modulator
    vertices with random edges; ``computed`` draws G(n, p) and computes a
    modulator greedily. Deterministic per seed.
    """
    if n < 1 or w < 1 or not 0 <= p <= 1:
        raise ValueError("need n >= 1, w >= 1 and 0 <= p <= 1")
    rng = random.Random(seed)
    for _ in range(retries):
        if strategy == "planted":
            kk = max(1, n // 4) if k is None else k
            if not 0 <= kk <= n:
                raise ValueError("k must lie in 0..n")
            nb = n - kk
            order = list(range(n))
            rng.shuffle(order)
            body, xs = order[:nb], order[nb:]
            color = {v: rng.randrange(2) for v in body}
            edges = [
                (body[a], body[b])
                for a, b in random_partial_ktree(rng, nb, w)
                if color[body[a]] != color[body[b]] and rng.random() < p
            ]
            edges += [(x, v) for x in xs for v in order if v != x and (v not in xs or x < v) and rng.random() < p]
            g = Graph(range(n), edges)
            x = frozenset(xs)
        elif strategy == "computed":
            g = Graph(range(n), [(u, v) for u, v in combinations(range(n), 2) if rng.random() < p])
            x = compute_deletion_set(g, w, "greedy")
        else:
            raise ValueError(f"unknown strategy {strategy!r}")
        rest = g.remove_vertices(x)
        if is_bipartite(rest) and decompose(rest, w) is not None:
            ell = rng.randint(0, max(len(x), 0)) if budget is None else budget
            return OctInstance(g, x, ell)
    raise GenerationError(f"no valid instance after {retries} attempts")


# -- gadgets -------------------------------------------------------------


K4_TERMINALS = {0: (0, 2), 1: (1, 3)}


def k4_in_a_box() -> tuple[Graph, dict[int, tuple[int, int]]]:
    """K4 on 0..3 plus a degree-2 vertex on each of the pairs 01, 12, 23, 30.

    0-terminals are {0, 2}, 1-terminals are {1, 3}.
    """
    edges = list(combinations(range(4), 2))
    for i, (u, v) in enumerate([(0, 1), (1, 2), (2, 3), (3, 0)]):
        edges += [(u, 4 + i), (v, 4 + i)]
    return Graph(range(8), edges), dict(K4_TERMINALS)


@dataclass
class CompositionOutput:
    instance: OctInstance
    parameter: int
    roles: dict[str, list] = field(default_factory=dict)
    t: int = 0
    r: int = 0

    def sidecar(self) -> dict:
        def runs(vs):
            vs = sorted(vs)
            out, start = [], None
            for i, v in enumerate(vs):
                if start is None:
                    start = v
                if i + 1 == len(vs) or vs[i + 1] != v + 1:
                    out.append([start, v])
                    start = None
            return out

        return {
            "t": self.t,
            "R": self.r,
            "parameter": self.parameter,
            "budget": self.instance.budget,
            "roles": {role: [runs(group) for group in groups] for role, groups in sorted(self.roles.items())},
        }


class _Builder:
    def __init__(self):
        self.n = 0
        self.edges: list[tuple[int, int]] = []
        self.weights: dict[int, int] = {}

    def new(self, count: int = 1) -> list[int]:
        out = list(range(self.n, self.n + count))
        self.n += count
        return out

    def edge(self, u: int, v: int):
        self.edges.append((u, v) if u < v else (v, u))

    def box(self) -> list[int]:
        g, _ = k4_in_a_box()
        vs = self.new(8)
        for u, v in g.edges():
            self.edge(vs[u], vs[v])
        return vs

    def graph(self) -> Graph:
        return Graph(range(self.n), sorted(set(self.edges)), self.weights)


def _check_inputs(inputs: list[OctInstance], slack: int = 0) -> tuple[int, int, int]:
    if not inputs:
        raise ValueError("need at least one input instance")
    shapes = {(len(i.graph), i.graph.num_edges, i.budget) for i in inputs}
    if len(shapes) != 1:
        raise ValueError(f"inputs not R-equivalent: differing (n, m, budget) {sorted(shapes)}")
    n, m, ell = shapes.pop()
    if not 0 <= ell < n - slack:
        raise ValueError(f"inputs not R-equivalent: need 0 <= budget < n - {slack}, got budget {ell}, n {n}")
    for inst in inputs:
        if inst.graph.vertices != tuple(range(n)):
            raise ValueError("input vertices must be 0..n-1")
    return n, m, ell


def pad_inputs(inputs: list[OctInstance]) -> tuple[list[OctInstance], int]:
    """Repeat the last input up to a power of two t = 2^R with R >= 1."""
    t = 2
    while t < len(inputs):
        t *= 2
    padded = list(inputs) + [inputs[-1]] * (t - len(inputs))
    return padded, t.bit_length() - 1


def bit(i: int, p: int, r: int) -> int:
    """Bit p (1-based) of instance number i in an R-bit expansion where 0...0 means 2^R."""
    return ((i % (1 << r)) >> (p - 1)) & 1


def compose_outerplanar(inputs: list[OctInstance], seed: int | None = None) -> CompositionOutput:
    """Vertex Cover inputs (G_i, ell) into OCT with a modulator to an outerplanar graph.

    ``seed`` is accepted for a uniform interface; the construction is deterministic.
    """
    n, m, ell = _check_inputs(inputs)
    insts, r = pad_inputs(inputs)
    t = len(insts)
    b = _Builder()
    roles: dict[str, list] = {"instance-selector": [], "solution-selector": [], "edge-checker": []}
    # n instance selectors, each R triangles (0-vertex, 1-vertex, third)
    selectors = []
    for _ in range(n):
        tris = []
        for _ in range(r):
            tri = b.new(3)
            for u, v in combinations(tri, 2):
                b.edge(u, v)
            tris.append(tri)
        selectors.append(tris)
        roles["instance-selector"].append([v for tri in tris for v in tri])
    # solution selector: K_n with every edge subdivided once
    sol = b.new(n)
    sub = {}
    for u, v in combinations(range(n), 2):
        (s,) = b.new(1)
        sub[(u, v)] = s
        b.edge(sol[u], s)
        b.edge(s, sol[v])
    roles["solution-selector"].append(sol + sorted(sub.values()))
    length = r if r % 2 == 0 else r + 1
    for i, inst in enumerate(insts, start=1):
        for p, q in inst.graph.edges():
            for _ in range(n):
                path = b.new(length)
                chk = list(path)
                for a, c in zip(path, path[1:]):
                    b.edge(a, c)
                for j in range(1, r + 1):
                    v = path[j - 1]
                    av, bv, cv = b.new(3)
                    chk += [av, bv, cv]
                    b.edge(v, av)
                    b.edge(v, bv)
                    b.edge(av, bv)
                    b.edge(bv, cv)
                    for tris in selectors:
                        target = tris[j - 1][bit(i, j, r)]
                        b.edge(bv, target)
                        b.edge(cv, target)
                b.edge(path[0], sol[p])
                b.edge(path[-1], sol[q])
                roles["edge-checker"].append(chk)
    x = frozenset(v for grp in roles["instance-selector"] + roles["solution-selector"] for v in grp)
    budget = n * r + n * m * t * r + ell
    return CompositionOutput(OctInstance(b.graph(), x, budget), len(x), roles, t, r)


def _p2_identified(b: _Builder, insts: list[OctInstance], n: int, m: int):
    """Independent sets I_1..I_t of numbered vertices plus m shared P2s.

    Edge number e of G_i is its e-th edge (u, v), u < v, in sorted order; the
    P2 a_e - b_e attaches a_e to u and b_e to v in every input.
    """
    indep = [b.new(n) for _ in insts]
    p2s = []
    for _ in range(m):
        a, c = b.new(2)
        b.edge(a, c)
        p2s.append((a, c))
    for i, inst in enumerate(insts):
        for e, (u, v) in enumerate(inst.graph.edges()):
            b.edge(p2s[e][0], indep[i][u])
            b.edge(p2s[e][1], indep[i][v])
    return indep, p2s


def compose_cluster(inputs: list[OctInstance], seed: int | None = None) -> CompositionOutput:
    """OCT inputs into OCT with a modulator to a cluster graph."""
    n, m, ell = _check_inputs(inputs)
    insts, r = pad_inputs(inputs)
    t = len(insts)
    b = _Builder()
    indep, p2s = _p2_identified(b, insts, n, m)
    roles: dict[str, list] = {"P2-block": [list(p) for p in p2s], "clique": [], "K4-box": []}
    for v in range(n):
        clique = [indep[i][v] for i in range(t)] + b.new(1)
        for u, w_ in combinations(clique, 2):
            b.edge(u, w_)
        roles["clique"].append(clique)
    for p in range(1, r + 1):
        for _ in range(n):
            box = b.box()
            roles["K4-box"].append(box)
            for alpha, terms in K4_TERMINALS.items():
                for i in range(1, t + 1):
                    if bit(i, p, r) == alpha:
                        for u in indep[i - 1]:
                            for tv in terms:
                                b.edge(box[tv], u)
    x = frozenset(v for grp in roles["P2-block"] + roles["K4-box"] for v in grp)
    budget = (t - 1) * n + 2 * n * r + ell
    return CompositionOutput(OctInstance(b.graph(), x, budget), len(x), roles, t, r)


def compose_cocluster(inputs: list[OctInstance], seed: int | None = None) -> CompositionOutput:
    """OCT inputs (budget < n - 2) into OCT with a modulator to a co-cluster graph."""
    n, m, ell = _check_inputs(inputs, slack=2)
    insts, r = pad_inputs(inputs)
    t = len(insts)
    b = _Builder()
    indep, p2s = _p2_identified(b, insts, n, m)
    roles: dict[str, list] = {"P2-block": [list(p) for p in p2s], "independent-set": [list(s) for s in indep], "selector": []}
    for i, j in combinations(range(t), 2):
        for u in indep[i]:
            for v in indep[j]:
                b.edge(u, v)
    for p in range(1, r + 1):
        for i in range(n):
            for j in range(n):
                copies = b.new(2 * n)
                roles["selector"].append(copies)
                for c in copies:
                    for s in range(1, t + 1):
                        b.edge(c, indep[s - 1][i] if bit(s, p, r) == 0 else indep[s - 1][j])
    x = frozenset(v for grp in roles["P2-block"] + roles["selector"] for v in grp)
    budget = (t - 1) * n + ell
    return CompositionOutput(OctInstance(b.graph(), x, budget), len(x), roles, t, r)


def compose_weighted_vc(inputs: list[OctInstance], seed: int | None = None) -> CompositionOutput:
    """OCT inputs into weighted OCT with a small vertex cover as modulator.

    One K4-box per bit position, its alpha-terminals joined to every vertex
    of each I_i whose bit is alpha; box vertices weigh w = t * n.
    """
    n, m, ell = _check_inputs(inputs)
    insts, r = pad_inputs(inputs)
    t = len(insts)
    b = _Builder()
    indep, p2s = _p2_identified(b, insts, n, m)
    roles: dict[str, list] = {"P2-block": [list(p) for p in p2s], "K4-box": [], "independent-set": [list(s) for s in indep]}
    heavy = t * n
    for p in range(1, r + 1):
        box = b.box()
        roles["K4-box"].append(box)
        for v in box:
            b.weights[v] = heavy
        for alpha, terms in K4_TERMINALS.items():
            for i in range(1, t + 1):
                if bit(i, p, r) == alpha:
                    for u in indep[i - 1]:
                        for tv in terms:
                            b.edge(box[tv], u)
    x = frozenset(v for grp in roles["P2-block"] + roles["K4-box"] for v in grp)
    budget = 2 * heavy * r + (t - 1) * n + ell
    return CompositionOutput(OctInstance(b.graph(), x, budget), len(x), roles, t, r)


COMPOSITIONS = {
    "outerplanar": compose_outerplanar,
    "cluster": compose_cluster,
    "cocluster": compose_cocluster,
    "weighted-vc": compose_weighted_vc,
}


# -- class validators ----------------------------------------------------


def is_cluster_graph(g: Graph) -> bool:
    """No induced P3: every component is a clique."""
    for comp in connected_components(g):
        k = len(comp)
        if any(g.degree(v) != k - 1 for v in comp):
            return False
    return True


def is_cocluster_graph(g: Graph) -> bool:
    return is_cluster_graph(g.complement())


def is_edgeless(g: Graph) -> bool:
    return g.num_edges == 0


def _nx(g: Graph):
    import networkx as nx

    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    h.add_edges_from(g.edges())
    return h


def _has_minor(g: Graph, h: Graph) -> bool:
    """Exhaustive minor test by vertex deletion and edge contraction, memoized up to isomorphism."""
    import networkx as nx
    from networkx.algorithms.isomorphism import GraphMatcher

    target = _nx(h)
    min_deg = min(h.degree(v) for v in h.vertices)
    seen: dict[str, list] = {}

    def trim(x):
        x = x.copy()
        changed = True
        while changed:
            changed = False
            for v in list(x.nodes):
                if x.degree(v) < min_deg:
                    x.remove_node(v)
                    changed = True
        return x

    def rec(x) -> bool:
        x = trim(x)
        if x.number_of_nodes() < target.number_of_nodes() or x.number_of_edges() < target.number_of_edges():
            return False
        key = nx.weisfeiler_lehman_graph_hash(x)
        bucket = seen.setdefault(key, [])
        if any(nx.is_isomorphic(x, y) for y in bucket):
            return False
        bucket.append(x)
        if GraphMatcher(x, target).subgraph_is_monomorphic():
            return True
        for v in list(x.nodes):
            y = x.copy()
            y.remove_node(v)
            if rec(y):
                return True
        for u, v in list(x.edges):
            if rec(nx.contracted_nodes(x, u, v, self_loops=False)):
                return True
        return False

    return rec(_nx(g))


K4 = Graph(range(4), list(combinations(range(4), 2)))
K23 = Graph(range(5), [(a, c) for a in (0, 1) for c in (2, 3, 4)])


def is_outerplanar(g: Graph) -> bool:
    """No K4 and no K2,3 minor, checked per component (isomorphic components checked once)."""
    import networkx as nx

    checked: dict[str, list] = {}
    for comp in connected_components(g):
        sub = _nx(g.subgraph(comp))
        if sub.number_of_nodes() < 4:
            continue
        key = nx.weisfeiler_lehman_graph_hash(sub)
        bucket = checked.setdefault(key, [])
        if any(nx.is_isomorphic(sub, y) for y in bucket):
            continue
        bucket.append(sub)
        if _has_minor(g.subgraph(comp), K4) or _has_minor(g.subgraph(comp), K23):
            return False
    return True


def is_outerplanar_apex(g: Graph) -> bool:
    """Cross-check: g is outerplanar iff g plus a universal vertex is planar."""
    import networkx as nx

    h = _nx(g)
    apex = ("apex",)
    h.add_edges_from((apex, v) for v in g.vertices)
    h.add_node(apex)
    return nx.check_planarity(h)[0]


def validate_composition(kind: str, out: CompositionOutput) -> list[str]:
    """Class membership of G - X and the declared parameter; returns problems found."""
    inst = out.instance
    rest = inst.graph.remove_vertices(inst.modulator)
    problems = []
    if out.parameter != len(inst.modulator):
        problems.append("declared parameter differs from |X|")
    n_groups = {k: len(v) for k, v in out.roles.items()}
    if kind == "outerplanar":
        if not is_outerplanar(rest):
            problems.append("G - X is not outerplanar")
        n = len(out.roles["solution-selector"][0])
        # solution selector holds n + C(n,2) vertices; recover n
        nv = next(k for k in range(n + 1) if k + k * (k - 1) // 2 == n)
        if out.parameter > nv * 3 * out.r + nv + nv * (nv - 1) // 2:
            problems.append("parameter exceeds n*3R + n + C(n,2)")
    elif kind == "cluster":
        if not is_cluster_graph(rest):
            problems.append("G - X is not a cluster graph")
        nv = n_groups["clique"]
        if out.parameter != 2 * n_groups["P2-block"] + 8 * nv * out.r:
            problems.append("parameter differs from 2m + 8nR")
    elif kind == "cocluster":
        if not is_cocluster_graph(rest):
            problems.append("G - X is not a co-cluster graph")
        indep = set().union(*map(set, out.roles["independent-set"]))
        for copies in out.roles["selector"]:
            for c in copies:
                if len(inst.graph.neighbors(c) & indep) != out.t:
                    problems.append(f"selector vertex {c} does not have exactly t neighbors")
                    break
    elif kind == "weighted-vc":
        if not is_edgeless(rest):
            problems.append("X is not a vertex cover")
    else:
        raise ValueError(f"unknown composition {kind!r}")
    return problems
