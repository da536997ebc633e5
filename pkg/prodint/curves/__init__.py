from prodint.curves.piecewise import (
    PiecewiseCurve,
    Reparametrization,
    constant_curve,
    curve_from_function,
    scale_curve,
    restrict,
    concatenate,
    refine,
    combine,
    check_shared_domain,
    merged_breakpoints,
    reparametrize,
)
from prodint.curves.group_curve import GroupCurve, Trajectory, rescale_group_curve
from prodint.curves.library import (
    ALGEBRA_CURVES,
    GROUP_CURVES,
    make_algebra_curve,
    make_group_curve,
    one_parameter_curve,
    exp_product_curve,
    list_curves,
)

__all__ = [
    "PiecewiseCurve",
    "Reparametrization",
    "constant_curve",
    "curve_from_function",
    "scale_curve",
    "restrict",
    "concatenate",
    "refine",
    "combine",
    "check_shared_domain",
    "merged_breakpoints",
    "reparametrize",
    "GroupCurve",
    "Trajectory",
    "rescale_group_curve",
    "ALGEBRA_CURVES",
    "GROUP_CURVES",
    "make_algebra_curve",
    "make_group_curve",
    "one_parameter_curve",
    "exp_product_curve",
    "list_curves",
]
