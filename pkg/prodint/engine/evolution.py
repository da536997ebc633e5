import logging
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from prodint.curves.group_curve import TIME_TOL, Trajectory, finite_difference
from prodint.errors import ConfigurationError, ContractError, DomainError
from prodint.groups.base import AlgebraElement, GroupElement

__all__ = [
    "SCHEMES",
    "StepperConfig",
    "EvolutionResult",
    "build_partition",
    "sample_points",
    "integrand_samples",
    "evolve_on_partition",
    "evolve",
    "evolve_curve",
    "log_derivative",
    "log_derivative_array",
]

logger = logging.getLogger(__name__)

SCHEMES = ("left-euler", "midpoint")


@dataclass(frozen=True)
class StepperConfig:
    """
    Discretisation of the product integral.

    Parameters
    ----------
    scheme : str
        ``"left-euler"`` samples the integrand at the left end of each cell,
        ``"midpoint"`` at its centre.
    steps_per_unit : int
        Cells per unit of time.
    breakpoint_refinement : bool
        Make every breakpoint of the integrand a partition point.
    """

    scheme: str = "midpoint"
    steps_per_unit: int = 1024
    breakpoint_refinement: bool = True

    def __post_init__(self):
        if self.scheme not in SCHEMES:
            raise ConfigurationError(f"unknown scheme {self.scheme!r}", key="scheme")
        if isinstance(self.steps_per_unit, bool) or int(self.steps_per_unit) != self.steps_per_unit:
            raise ConfigurationError(
                f"steps_per_unit must be an integer, got {self.steps_per_unit!r}", key="steps_per_unit"
            )
        if self.steps_per_unit < 1:
            raise ConfigurationError("steps_per_unit must be >= 1", key="steps_per_unit")

    @classmethod
    def from_dict(cls, data):
        unknown = set(data) - {"scheme", "steps_per_unit", "breakpoint_refinement"}
        if unknown:
            key = sorted(unknown)[0]
            raise ConfigurationError(f"unknown stepper option {key!r}", key=key)
        return cls(**data)

    def to_dict(self):
        return {
            "scheme": self.scheme,
            "steps_per_unit": self.steps_per_unit,
            "breakpoint_refinement": self.breakpoint_refinement,
        }


@dataclass(frozen=True)
class EvolutionResult:
    """
    Outcome of one evolution ⨏_s^t φ.

    ``trajectory`` holds the partial products at every partition point when
    requested; its first value is the identity and its last the endpoint.
    """

    endpoint: GroupElement
    partition: tuple
    scheme: str
    trajectory: Optional[Trajectory] = field(default=None, repr=False)


def _cells(a, b, steps_per_unit):
    count = max(1, math.ceil((b - a) * steps_per_unit - 1e-9))
    return np.linspace(a, b, count + 1)


def build_partition(breakpoints, s, t, steps_per_unit, refinement=True):
    """
    Partition of [s, t] with about ``steps_per_unit`` cells per unit.

    With refinement every breakpoint inside (s, t) is a partition point and
    each sub-interval is cut uniformly; otherwise [s, t] is cut uniformly.
    """
    if s == t:
        return (float(s),)
    if refinement:
        inner = [b for b in breakpoints if s + TIME_TOL < b < t - TIME_TOL]
        knots = [s] + inner + [t]
    else:
        knots = [s, t]
    points = [float(s)]
    for a, b in zip(knots, knots[1:]):
        points.extend(float(u) for u in _cells(a, b, steps_per_unit)[1:])
    points[-1] = float(t)
    return tuple(points)


def sample_points(partition, scheme):
    """Times at which the integrand is sampled, one per cell."""
    if scheme == "left-euler":
        return [a for a in partition[:-1]]
    return [0.5 * (a + b) for a, b in zip(partition, partition[1:])]


def _check_interval(curve, s, t):
    if t < s:
        raise DomainError(f"backward integration from {s} to {t} is not supported")
    if not curve.contains(s, t):
        raise DomainError(f"[{s}, {t}] is not inside [{curve.start}, {curve.end}]")


def _integrand(curve, a, b, u):
    index = curve.cell_piece(a, b)
    lo, hi = curve.breakpoints[index], curve.breakpoints[index + 1]
    return np.asarray(curve.pieces[index](min(max(u, lo), hi)), dtype=float)


def integrand_samples(curve, partition, scheme="midpoint"):
    """Integrand values φ(u_k) the stepper uses on each cell of ``partition``."""
    return [
        _integrand(curve, a, b, u)
        for (a, b), u in zip(zip(partition, partition[1:]), sample_points(partition, scheme))
    ]


def evolve_on_partition(curve, partition, scheme="midpoint", keep_trajectory=False) -> EvolutionResult:
    """
    Product integral of ``curve`` over an explicit partition.

    Every cell [a, b] contributes exp((b − a)·φ(u)) multiplied on the LEFT of
    the running product, u being the left end or the centre of the cell.

    Parameters
    ----------
    curve : PiecewiseCurve
        Integrand φ.
    partition : sequence of float
        Increasing partition points; the first and last are s and t.
    scheme : str
        ``"left-euler"`` or ``"midpoint"``.
    keep_trajectory : bool
        Record the partial product at every partition point.

    Returns
    -------
    EvolutionResult
    """
    if scheme not in SCHEMES:
        raise ConfigurationError(f"unknown scheme {scheme!r}", key="scheme")
    partition = tuple(float(u) for u in partition)
    if len(partition) < 1:
        raise DomainError("empty partition")
    _check_interval(curve, partition[0], partition[-1])
    group = curve.group
    g = group._identity()
    values = [g] if keep_trajectory else None
    for (a, b), x in zip(zip(partition, partition[1:]), integrand_samples(curve, partition, scheme)):
        g = group._mul(group._exp((b - a) * x), g)
        if keep_trajectory:
            values.append(g)
    trajectory = Trajectory(group, partition, values) if keep_trajectory else None
    return EvolutionResult(GroupElement(group.group_id, g), partition, scheme, trajectory)


def evolve(curve, s, t, cfg: StepperConfig = None, keep_trajectory=False) -> EvolutionResult:
    """
    ⨏_s^t φ with later steps multiplied on the left; ⨏_s^s φ = e exactly.

    Raises
    ------
    DomainError
        If [s, t] is not inside the domain of φ or t < s.
    """
    cfg = cfg or StepperConfig()
    _check_interval(curve, s, t)
    partition = build_partition(curve.breakpoints, s, t, cfg.steps_per_unit, cfg.breakpoint_refinement)
    logger.debug("evolving %r on [%g, %g] with %d cells", curve, s, t, len(partition) - 1)
    return evolve_on_partition(curve, partition, cfg.scheme, keep_trajectory)


def evolve_curve(curve, s=None, cfg: StepperConfig = None) -> Trajectory:
    """The trajectory t ↦ ⨏_s^t φ at every partition point of [s, end of φ]."""
    s = curve.start if s is None else s
    return evolve(curve, s, curve.end, cfg, keep_trajectory=True).trajectory


def log_derivative_array(mu, t, via_chart=False) -> np.ndarray:
    """Raw E coordinates of δ(μ)(t); see :func:`log_derivative`."""
    if getattr(mu, "smoothness", "C0") != "C1":
        raise ContractError(f"δ needs a C¹ curve, got {mu!r}")
    group = mu.group
    if not via_chart:
        return np.asarray(group._right_log_derivative(mu.value(t), mu.tangent_array(t)), dtype=float).reshape(-1)

    def chart(u):
        return group._chart_forward(mu.value(u))

    x = chart(t)
    xdot = finite_difference(chart, t, mu.start, mu.end)
    return np.asarray(group._omega(x, xdot), dtype=float).reshape(-1)


def log_derivative(mu, t, via_chart=False) -> AlgebraElement:
    """
    Right logarithmic derivative δ(μ)(t) = d_{μ(t)}R_{μ(t)⁻¹}(μ̇(t)).

    Parameters
    ----------
    mu : GroupCurve
        C¹ curve.
    t : float
        Time in the domain of μ.
    via_chart : bool
        Evaluate through the chart as Ω(κ∘μ, ∂_t(κ∘μ)) with a numerical time
        derivative instead of the right translation of μ̇.

    Raises
    ------
    ContractError
        If μ is not C¹.
    OutOfChartDomain
        If ``via_chart`` and μ(t) lies outside the chart domain.
    """
    return mu.group.algebra(log_derivative_array(mu, t, via_chart))
