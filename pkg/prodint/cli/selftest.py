"""Quick checks of the exactly solvable cases, run by ``prodint selftest``."""

import logging
from typing import Callable, List, NamedTuple

import numpy as np

from prodint.curves.library import one_parameter_curve
from prodint.curves.piecewise import constant_curve, curve_from_function
from prodint.engine.evolution import evolve
from prodint.engine.identities import exp_scaling_check, identity_b_residual, identity_c_residual
from prodint.estimates.probes import mu_convexity_probe, seminorm_search
from prodint.groups.registry import get_group
from prodint.space.seminorms import Seminorm
from prodint.trotter.harness import TrotterFamily, build_chi, continuity_probe, trotter_error

__all__ = ["CheckResult", "CHECKS", "run_selftest"]

logger = logging.getLogger(__name__)

TOL = 1e-12


class CheckResult(NamedTuple):
    name: str
    value: float
    passed: bool


def _abelian_riemann():
    group = get_group("abelian:4")
    X = group.algebra([0.5, -1.0, 2.0, 0.25])
    endpoint = evolve(constant_curve(X, 0.0, 2.0), 0.0, 2.0).endpoint
    return float(np.max(np.abs(endpoint.value - 2.0 * X.coordinates)))


def _identity_b_equal_curves():
    group = get_group("so3")
    phi = curve_from_function(group, lambda t: group.hat([np.sin(t), 0.3, t]).coordinates, 0.0, 1.0)
    return identity_b_residual(phi, phi)


def _identity_c_single_cell():
    group = get_group("so3")
    return identity_c_residual(constant_curve(group.hat([0.1, 0.2, 0.3])), [0.0, 1.0])


def _exp_scaling_unit():
    return exp_scaling_check(get_group("so3").hat([0.4, -0.2, 0.1]), 1.0, 1).scaled_residual


def _trotter_one_parameter():
    group = get_group("gl2")
    X = group.hat([0.3, 0.5, -0.2, 0.1]).coordinates
    fam = TrotterFamily.from_curve(one_parameter_curve(group, X, 0.0, 1.0))
    return max(trotter_error(fam, tau, n) for tau in (0.5, fam.ell) for n in (fam.m, 16, 64))


def _chi_at_zero():
    group = get_group("so3")
    X = group.hat([0.2, 0.1, -0.3]).coordinates
    fam = TrotterFamily.from_curve(one_parameter_curve(group, X, 0.0, 1.0))
    chi = build_chi(fam, 1.5, max(fam.m, 4))
    return float(np.max(np.abs(chi.evaluate_array(0.0) - 1.5 * X)))


def _mu_convexity_abelian():
    group = get_group("abelian:4")
    p = Seminorm(group.space_id)
    return float(mu_convexity_probe(p, p, group, samples=500, seed=0).violations)


def _search_abelian():
    group = get_group("abelian:4")
    p = Seminorm(group.space_id)
    result = seminorm_search(p, lambda q: mu_convexity_probe(p, q, group, samples=200, seed=1), [1.0, 2.0])
    return abs(result.scale - 1.0) if result.found else float("inf")


def _continuity_zero():
    group = get_group("so3")
    frame = continuity_probe(constant_curve(group.zero()), (0.0, 2.0), [1, 2])
    return float(frame["oscillation"].max())


CHECKS: List[Callable[[], float]] = [
    _abelian_riemann,
    _identity_b_equal_curves,
    _identity_c_single_cell,
    _exp_scaling_unit,
    _trotter_one_parameter,
    _chi_at_zero,
    _mu_convexity_abelian,
    _search_abelian,
    _continuity_zero,
]


def run_selftest() -> List[CheckResult]:
    """Run every check; a check passes when its value is at most 1e-12."""
    results = []
    for check in CHECKS:
        name = check.__name__.lstrip("_").replace("_", "-")
        value = float(check())
        results.append(CheckResult(name, value, value <= TOL))
        logger.debug("selftest %s: %.3e", name, value)
    return results
