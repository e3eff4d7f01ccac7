"""Label sums of random walks on regular expanders."""

from ._expwalk import (
    ExpwalkError,
    Labelling,
    RegularGraph,
    complete,
    cycle,
    kstar,
    lclt_error,
    matching_sticky_p,
    parse_graph,
    random_balanced_labelling,
    random_regular,
    sigma2,
    spectrum,
    sticky_law,
    sticky_sigma2,
    tv_to_iid,
    tv_to_normal,
    tv_to_sticky,
    variance,
    weight_law,
)

__all__ = [
    "ExpwalkError",
    "Labelling",
    "RegularGraph",
    "complete",
    "cycle",
    "kstar",
    "lclt_error",
    "matching_sticky_p",
    "parse_graph",
    "random_balanced_labelling",
    "random_regular",
    "sigma2",
    "spectrum",
    "sticky_law",
    "sticky_sigma2",
    "tv_to_iid",
    "tv_to_normal",
    "tv_to_sticky",
    "variance",
    "weight_law",
]
