"""Polynomial kernel for Odd Cycle Transversal parameterized by a modulator to bounded-treewidth bipartite graphs."""

from .graph import Graph
from .instances import AnnotatedInstance, OctInstance, RestrictedInstance, parse_instance, write_instance
from .kernel import KernelResult, PreconditionError, kernelize
from .solvers import solve_instance

__all__ = [
    "AnnotatedInstance",
    "Graph",
    "KernelResult",
    "OctInstance",
    "PreconditionError",
    "RestrictedInstance",
    "kernelize",
    "parse_instance",
    "solve_instance",
    "write_instance",
]
