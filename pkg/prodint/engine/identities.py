"""
Executable forms of the elementary product-integral identities.

Every residual is measured as (p∘κ)(left⁻¹·right), so a value near zero
means both sides agree up to discretisation.
"""

import logging
from typing import NamedTuple

from prodint.curves.piecewise import (
    TIME_TOL,
    PiecewiseCurve,
    check_shared_domain,
    constant_curve,
    merged_breakpoints,
    refine,
    reparametrize,
)
from prodint.engine.evolution import (
    StepperConfig,
    build_partition,
    evolve,
    evolve_on_partition,
    sample_points,
)
from prodint.errors import DomainError
from prodint.groups.registry import get_group
from prodint.space.seminorms import Seminorm

__all__ = [
    "identity_a_residual",
    "identity_b_residual",
    "identity_c_residual",
    "identity_d_residual",
    "exp_scaling_check",
    "ScalingCheck",
    "composite_integrand",
]

logger = logging.getLogger(__name__)


def _seminorm(p, group):
    return p if p is not None else Seminorm(group.space_id)


def _composite_piece(group, trajectory, f, g, kind):
    def evaluate(u):
        a = trajectory.value_before(u)
        if kind == "a":
            return f(u) + group._ad(a, g(u))
        return group._ad(group._inv(a), g(u) - f(u))

    return evaluate


def composite_integrand(phi, psi, cfg: StepperConfig = None, kind="a"):
    """
    The integrand on the right side of identity a) or b).

    ``kind="a"`` gives u ↦ φ(u) + Ad_{A(u)}(ψ(u)), ``kind="b"`` gives
    u ↦ Ad_{A(u)⁻¹}(ψ(u) − φ(u)), where A = ⨏_r^•φ is evolved over the cell
    boundaries and sample points of the stepper and held constant from the
    left in between.

    Returns
    -------
    tuple
        ``(curve, cells)``: the composite curve and the cell partition on
        which it is meant to be evolved.
    """
    cfg = cfg or StepperConfig()
    check_shared_domain(phi, psi)
    breakpoints = merged_breakpoints(phi, psi)
    cells = build_partition(breakpoints, phi.start, phi.end, cfg.steps_per_unit, cfg.breakpoint_refinement)
    fine = sorted(set(cells) | set(sample_points(cells, cfg.scheme)))
    trajectory = evolve_on_partition(phi, fine, cfg.scheme, keep_trajectory=True).trajectory
    pieces = []
    for lo, hi in zip(breakpoints, breakpoints[1:]):
        f = phi.pieces[phi.cell_piece(lo, hi)]
        g = psi.pieces[psi.cell_piece(lo, hi)]
        pieces.append(_composite_piece(phi.group, trajectory, f, g, kind))
    return PiecewiseCurve(phi.group, breakpoints, pieces), cells


def _two_sided(phi, psi, p, cfg, kind):
    cfg = cfg or StepperConfig()
    group = phi.group
    composite, cells = composite_integrand(phi, psi, cfg, kind)
    a = evolve_on_partition(phi, cells, cfg.scheme).endpoint.value
    b = evolve_on_partition(psi, cells, cfg.scheme).endpoint.value
    left = group._mul(a, b) if kind == "a" else group._mul(group._inv(a), b)
    right = evolve_on_partition(composite, cells, cfg.scheme).endpoint.value
    residual = _seminorm(p, group).evaluate_array(group._chart_forward(group._mul(group._inv(left), right)))
    logger.debug("identity %s on %s with %d cells: %.3e", kind, group.group_id, len(cells) - 1, residual)
    return residual


def identity_a_residual(phi, psi, p: Seminorm = None, cfg: StepperConfig = None) -> float:
    """
    Residual of ⨏_r^t φ · ⨏_r^t ψ = ⨏_r^t (φ + Ad_{⨏_r^•φ}(ψ)) at t = r'.

    Parameters
    ----------
    phi, psi : PiecewiseCurve
        Curves on a shared domain.
    p : Seminorm, optional
        Measuring seminorm (Frobenius by default).
    cfg : StepperConfig, optional
        Stepper used for every evolution.

    Raises
    ------
    OutOfChartDomain
        If the two sides are too far apart for the chart (steps too coarse).
    """
    return _two_sided(phi, psi, p, cfg, "a")


def identity_b_residual(phi, psi, p: Seminorm = None, cfg: StepperConfig = None) -> float:
    """Residual of [⨏_r^t φ]⁻¹·[⨏_r^t ψ] = ⨏_r^t Ad_{[⨏_r^•φ]⁻¹}(ψ − φ) at t = r'."""
    return _two_sided(phi, psi, p, cfg, "b")


def identity_c_residual(phi, partition, p: Seminorm = None, cfg: StepperConfig = None) -> float:
    """
    Residual of ⨏_r^t φ = ⨏_{t_{n−1}}^{t} φ · … · ⨏_r^{t_1} φ.

    The left side is evolved on φ refined by the partition points. With
    breakpoint refinement both sides use the same cells, so the residual is
    pure roundoff; without it the grids disagree and the residual is the
    misalignment error.

    Parameters
    ----------
    phi : PiecewiseCurve
        Integrand.
    partition : sequence of float
        r = t_0 < … < t_n = r' inside the domain of φ.
    """
    cfg = cfg or StepperConfig()
    points = [float(t) for t in partition]
    if len(points) < 2 or any(b <= a for a, b in zip(points, points[1:])):
        raise DomainError(f"partition must be strictly increasing with at least two points: {points}")
    group = phi.group
    left = evolve(refine(phi, points), points[0], points[-1], cfg).endpoint.value
    right = group._identity()
    for a, b in zip(points, points[1:]):
        right = group._mul(evolve(phi, a, b, cfg).endpoint.value, right)
    return _seminorm(p, group).evaluate_array(group._chart_forward(group._mul(group._inv(left), right)))


def identity_d_residual(phi, rho, p: Seminorm = None, cfg: StepperConfig = None) -> float:
    """
    Residual of ⨏_r^{ϱ(ℓ')} φ = [⨏_ℓ^{ℓ'} ϱ̇·φ∘ϱ]·[⨏_r^{ϱ(ℓ)} φ].

    The reparametrised side runs with steps per unit scaled by the mean slope
    of ϱ, so an affine ϱ maps cells one to one; the left side is refined at
    ϱ(ℓ).

    Parameters
    ----------
    phi : PiecewiseCurve
        Integrand on [r, r'].
    rho : Reparametrization
        C¹ map [ℓ, ℓ'] → [r, r'].
    """
    cfg = cfg or StepperConfig()
    group = phi.group
    r = phi.start
    lower, upper = rho(rho.start), rho(rho.end)
    if min(lower, upper) < r - TIME_TOL:
        raise DomainError(f"reparametrization reaches {min(lower, upper)} below the start {r}")
    left = evolve(refine(phi, [lower]), r, upper, cfg).endpoint.value

    pulled = reparametrize(phi, rho)
    slope = abs(upper - lower) / (rho.end - rho.start)
    steps = cfg.steps_per_unit * slope if slope > 0 else cfg.steps_per_unit
    cells = build_partition(pulled.breakpoints, rho.start, rho.end, steps, cfg.breakpoint_refinement)
    outer = evolve_on_partition(pulled, cells, cfg.scheme).endpoint.value
    inner = evolve(phi, r, lower, cfg).endpoint.value
    right = group._mul(outer, inner)
    return _seminorm(p, group).evaluate_array(group._chart_forward(group._mul(group._inv(left), right)))


class ScalingCheck(NamedTuple):
    scaled_residual: float
    power_residual: float


def exp_scaling_check(X, s: float, n: int, p: Seminorm = None, cfg: StepperConfig = None) -> ScalingCheck:
    """
    Check ⨏_0^{s·n} φ_X = exp(s·n·X) and ⨏_0^n φ_X = exp(X)^n.

    Parameters
    ----------
    X : AlgebraElement
        Generator.
    s : float
        Scale in (0, 1].
    n : int
        Number of unit copies.

    Raises
    ------
    DomainError
        If s is outside (0, 1] or n < 1.
    OutOfChartDomain
        If a comparison leaves the chart (large s·n·X with coarse steps).
    """
    if not 0.0 < s <= 1.0:
        raise DomainError(f"s must lie in (0, 1], got {s}")
    if n < 1:
        raise DomainError(f"n must be a positive integer, got {n}")
    cfg = cfg or StepperConfig()
    group = get_group(X.group_id)
    p = _seminorm(p, group)
    scaled = evolve(constant_curve(X, 0.0, s * n), 0.0, s * n, cfg).endpoint
    powered = evolve(constant_curve(X, 0.0, float(n)), 0.0, float(n), cfg).endpoint
    return ScalingCheck(
        group.discrepancy(group.exp(s * n * X), scaled, p),
        group.discrepancy(group.power(group.exp(X), n), powered, p),
    )
