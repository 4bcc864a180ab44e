from .back import back_transform, canonical_no, canonical_yes, zpath_parities
from .hitting import HittingSetResult, apply_annotations, compute_hitting_set
from .pipeline import KernelResult, PreconditionError, TraceRow, check_modulator, kernelize
from .protrusion import protrusion_decompose
from .prune import prune_components
from .restrict import component_views, restrict_deletable, separator_replace
from .xpaths import XPathKind, classify_xpath, is_xpath

__all__ = [
    "HittingSetResult",
    "KernelResult",
    "PreconditionError",
    "TraceRow",
    "XPathKind",
    "apply_annotations",
    "back_transform",
    "canonical_no",
    "canonical_yes",
    "check_modulator",
    "classify_xpath",
    "component_views",
    "compute_hitting_set",
    "is_xpath",
    "kernelize",
    "protrusion_decompose",
    "prune_components",
    "restrict_deletable",
    "separator_replace",
    "zpath_parities",
]
