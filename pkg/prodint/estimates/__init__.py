from prodint.estimates.sampling import sample_algebra_ball, sample_group_ball, random_algebra_curve
from prodint.estimates.probes import (
    ProbeReport,
    SearchResult,
    is_violation,
    merge_reports,
    mu_convexity_probe,
    adjoint_domination_probe,
    integral_bound_check,
    integral_bound_probe,
    two_curve_bound_check,
    two_curve_probe,
    seminorm_search,
    CSV_COLUMNS,
)

__all__ = [
    "sample_algebra_ball",
    "sample_group_ball",
    "random_algebra_curve",
    "ProbeReport",
    "SearchResult",
    "is_violation",
    "merge_reports",
    "mu_convexity_probe",
    "adjoint_domination_probe",
    "integral_bound_check",
    "integral_bound_probe",
    "two_curve_bound_check",
    "two_curve_probe",
    "seminorm_search",
    "CSV_COLUMNS",
]
