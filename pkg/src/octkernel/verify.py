"""Seeded property suite behind ``octkernel verify``.

Each check draws its own cases from the master seed, runs them in case-id
order and records failures with a witness that can be dumped to disk.
``kernelize_fn`` is injectable so that a corrupted stage can be caught.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Callable

from .generators import COMPOSITIONS, random_instance, validate_composition
from .graph import Graph
from .instances import OctInstance, relabel_dense, write_instance
from .kernel import kernelize
from .separators import (
    LabeledGraph,
    cut_characteristic,
    enumerate_characteristics,
    enumerate_important_separators,
    kappa_bound,
    min_vertex_cut,
)
from .solvers import solve_instance, solve_vertex_cover

SCHEMA_VERSION = 1


@dataclass
class CheckResult:
    name: str
    cases: int = 0
    failures: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def as_dict(self) -> dict:
        return {"name": self.name, "cases": self.cases, "failed": len(self.failures), "passed": self.passed, "counterexamples": self.failures}


@dataclass
class Report:
    seed: int
    checks: list[CheckResult]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def as_dict(self) -> dict:
        return {"schema": SCHEMA_VERSION, "seed": self.seed, "passed": self.passed, "checks": [c.as_dict() for c in self.checks]}

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=True)

    def summary(self) -> str:
        return "".join(
            f"{'PASS' if c.passed else 'FAIL'} {c.name} cases={c.cases} failed={len(c.failures)}\n" for c in self.checks
        )


def _text(inst: OctInstance) -> str:
    return write_instance(relabel_dense(inst)[0])


def _random_graph(rng: random.Random, n: int, p: float) -> Graph:
    return Graph(range(n), [e for e in combinations(range(n), 2) if rng.random() < p])


def check_equivalence(seed: int, count: int, kernelize_fn: Callable = kernelize, instances=None) -> tuple[CheckResult, CheckResult]:
    """Verdict before and after kernelization, plus every stage bound in the trace."""
    eq, ledger = CheckResult("equivalence"), CheckResult("bound-ledger")
    cases = instances if instances is not None else _kernel_cases(seed, count)
    for cid, (inst, w) in enumerate(cases):
        res = kernelize_fn(inst, w)
        before = solve_instance(inst) is not None
        after = solve_instance(res.instance) is not None
        eq.cases += 1
        ledger.cases += 1
        if before != after:
            eq.failures.append({"case": cid, "w": w, "before": before, "after": after, "instance": _text(inst), "kernel": _text(res.instance)})
        bad = [r.line() for r in res.violations()]
        if bad:
            ledger.failures.append({"case": cid, "w": w, "violations": bad, "instance": _text(inst)})
    return eq, ledger


def _kernel_cases(seed: int, count: int):
    rng = random.Random(seed)
    for _ in range(count):
        w = rng.choice([1, 2])
        n = rng.randint(6, 18)
        k = rng.randint(1, max(1, n // 3))
        inst = random_instance(rng.randrange(1 << 30), n, p=rng.choice([0.3, 0.5, 0.7]), w=w, k=k, budget=rng.randint(0, k))
        yield inst, w


def check_menger(seed: int, count: int) -> CheckResult:
    out = CheckResult("menger")
    rng = random.Random(seed + 1)
    for cid in range(count):
        n = rng.randint(3, 12)
        g = _random_graph(rng, n, rng.uniform(0.15, 0.6))
        s, t = rng.sample(range(n), 2)
        if g.has_edge(s, t):
            g = Graph(g.vertices, [e for e in g.edges() if e != (min(s, t), max(s, t))])
        cut = min_vertex_cut(g, s, t)
        inner = [set(p[1:-1]) for p in cut.paths]
        disjoint = all(not (a & b) for a, b in combinations(inner, 2))
        out.cases += 1
        if cut.size != len(cut.paths) or not disjoint:
            out.failures.append({"case": cid, "edges": g.edges(), "s": s, "t": t, "cut": sorted(cut.cut or []), "paths": cut.paths})
    return out


def check_important_count(seed: int, count: int) -> CheckResult:
    out = CheckResult("important-separator-count")
    rng = random.Random(seed + 2)
    for cid in range(count):
        n = rng.randint(4, 12)
        g = _random_graph(rng, n, rng.uniform(0.2, 0.5))
        vs = list(range(n))
        rng.shuffle(vs)
        x, y = vs[: rng.randint(1, 2)], vs[2 : 2 + rng.randint(1, 2)]
        m = rng.randint(0, 3)
        seps = enumerate_important_separators(g, x, y, m)
        out.cases += 1
        if len(seps) > 4**m:
            out.failures.append({"case": cid, "edges": g.edges(), "x": x, "y": y, "m": m, "count": len(seps)})
    return out


def check_kappa(seed: int, count: int) -> CheckResult:
    """Class count within kappa_bound, and equal-class swaps keep the characteristic."""
    out = CheckResult("characteristic-classes")
    rng = random.Random(seed + 3)
    for cid in range(count):
        nv = rng.randint(3, 8)
        g = _random_graph(rng, nv, 0.4)
        n_terms = rng.randint(1, min(3, nv))
        terms = tuple(sorted(rng.sample(range(nv), n_terms)))
        r = rng.randint(1, 3)
        labels = [("l", i) for i in range(r)]
        labeling = {v: {lab for lab in labels if rng.random() < 0.4} | ({v} if v in terms else set()) for v in g.vertices}
        lg = LabeledGraph(g, set(labels) | set(terms), labeling)
        m = rng.randint(0, 2)
        classes = enumerate_characteristics(lg, terms, m)
        out.cases += 1
        bound = kappa_bound(n_terms, m, r + n_terms)
        if len(classes) > bound:
            out.failures.append({"case": cid, "edges": g.edges(), "terminals": terms, "m": m, "classes": len(classes), "bound": bound})
            continue
        for char, rep in classes.items():
            if cut_characteristic(lg, terms, set(rep)) != char:
                out.failures.append({"case": cid, "edges": g.edges(), "terminals": terms, "rep": list(rep)})
                break
    return out


def check_or_equivalence(seed: int, count: int) -> CheckResult:
    out = CheckResult("or-equivalence")
    rng = random.Random(seed + 4)
    kinds = sorted(COMPOSITIONS)
    for cid in range(count):
        kind = kinds[cid % len(kinds)]
        t = rng.randint(1, 4)
        n = rng.randint(4, 6)
        m = rng.randint(1, min(6, n * (n - 1) // 2))
        ell = rng.randint(max(0, n - 4), n - 3 if kind == "cocluster" else n - 1)
        pairs = list(combinations(range(n), 2))
        inputs = [OctInstance(Graph(range(n), rng.sample(pairs, m)), frozenset(), ell) for _ in range(t)]
        comp = COMPOSITIONS[kind](inputs)
        problems = validate_composition(kind, comp)
        if kind == "outerplanar":
            want = any(solve_vertex_cover(i.graph, ell) is not None for i in inputs)
        else:
            want = any(solve_instance(i) is not None for i in inputs)
        got = solve_instance(comp.instance) is not None
        out.cases += 1
        if problems or want != got:
            out.failures.append(
                {"case": cid, "kind": kind, "problems": problems, "inputs_yes": want, "output_yes": got, "inputs": [_text(i) for i in inputs]}
            )
    return out


def run_suite(
    seed: int = 0,
    scale: int = 1,
    kernelize_fn: Callable = kernelize,
    instances=None,
    dump_dir: str | Path | None = None,
) -> Report:
    """Run every check; ``instances`` replaces the random kernel cases with (instance, w) pairs."""
    eq, ledger = check_equivalence(seed, 60 * scale, kernelize_fn, instances)
    checks = [
        eq,
        ledger,
        check_menger(seed, 100 * scale),
        check_important_count(seed, 40 * scale),
        check_kappa(seed, 40 * scale),
        check_or_equivalence(seed, 8 * scale),
    ]
    report = Report(seed, checks)
    if dump_dir is not None:
        dump = Path(dump_dir)
        dump.mkdir(parents=True, exist_ok=True)
        for c in checks:
            for f in c.failures:
                for key in ("instance", "kernel"):
                    if key in f:
                        (dump / f"{c.name}-{f['case']}-{key}.oct").write_text(f[key])
    return report
