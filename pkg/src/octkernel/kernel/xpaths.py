"""X-paths: paths through G - X whose ends attach to modulator vertices."""

from __future__ import annotations

import enum
from typing import Sequence

from ..instances import AnnotatedInstance, norm_pair


class XPathKind(enum.Enum):
    IMPORTANT = "important"
    NOT_IMPORTANT = "not-important"
    NOT_AN_XPATH = "not-an-x-path"


def is_xpath(inst: AnnotatedInstance, p: int, q: int, path: Sequence[int]) -> bool:
    g, x = inst.graph, inst.modulator
    if p not in x or q not in x or not path:
        return False
    if len(set(path)) != len(path) or any(v in x or v not in g for v in path):
        return False
    if not all(g.has_edge(a, b) for a, b in zip(path, path[1:])):
        return False
    if not (g.has_edge(p, path[0]) and g.has_edge(path[-1], q)):
        return False
    # the two attaching edges must differ
    return not (p == q and len(path) == 1)


def classify_xpath(inst: AnnotatedInstance, p: int, q: int, path: Sequence[int]) -> XPathKind:
    """Odd paths conflict unless the ends are annotated equal; even paths unless adjacent."""
    if not is_xpath(inst, p, q, path):
        return XPathKind.NOT_AN_XPATH
    if len(path) % 2 == 1:
        important = p != q and norm_pair(p, q) not in inst.mono
    else:
        important = p == q or not inst.graph.has_edge(p, q)
    return XPathKind.IMPORTANT if important else XPathKind.NOT_IMPORTANT
