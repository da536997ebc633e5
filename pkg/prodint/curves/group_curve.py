import bisect

import numpy as np

from prodint.errors import ConfigurationError, ContractError, DomainError
from prodint.groups.base import Group, GroupElement
from prodint.groups.registry import get_group

__all__ = ["GroupCurve", "Trajectory", "rescale_group_curve", "SMOOTHNESS", "finite_difference"]

SMOOTHNESS = ("C0", "C1")
TIME_TOL = 1e-12


def _raw(value):
    return np.asarray(getattr(value, "value", value), dtype=float)


def finite_difference(func, t, start, end):
    """
    Central difference of ``func`` at t with step h = max(1e-6, 1e-8·|t|).

    Within one step of the domain edge the second-order one-sided formula
    is used instead, so the curve is never sampled outside [start, end].
    """
    h = max(1e-6, 1e-8 * abs(t))
    if t - h < start and t + 2.0 * h <= end:
        return (-3.0 * func(t) + 4.0 * func(t + h) - func(t + 2.0 * h)) / (2.0 * h)
    if t + h > end and t - 2.0 * h >= start:
        return (3.0 * func(t) - 4.0 * func(t - h) + func(t - 2.0 * h)) / (2.0 * h)
    return (func(t + h) - func(t - h)) / (2.0 * h)


class GroupCurve:
    """
    Group-valued curve μ: [start, end] → G.

    Parameters
    ----------
    group : Group or str
        Owning group (or registry id).
    evaluator : callable
        t ↦ raw group representation (or GroupElement).
    start, end : float
        Domain.
    derivative : callable, optional
        t ↦ μ̇(t) in the group representation. Without it C¹ curves are
        differentiated numerically.
    smoothness : str
        ``"C1"`` or ``"C0"``.
    """

    def __init__(self, group, evaluator, start=0.0, end=1.0, derivative=None, smoothness="C1"):
        self.group = group if isinstance(group, Group) else get_group(group)
        if smoothness not in SMOOTHNESS:
            raise ConfigurationError(f"unknown smoothness {smoothness!r}", key=smoothness)
        if not start < end:
            raise DomainError(f"degenerate interval [{start}, {end}]")
        self.evaluator = evaluator
        self.start = float(start)
        self.end = float(end)
        self.derivative = derivative
        self.smoothness = smoothness

    @property
    def group_id(self) -> str:
        return self.group.group_id

    def __repr__(self):
        return f"GroupCurve({self.group_id}, [{self.start:g}, {self.end:g}], {self.smoothness})"

    def _check_time(self, t):
        if not self.start - TIME_TOL <= t <= self.end + TIME_TOL:
            raise DomainError(f"t={t} outside [{self.start}, {self.end}]")
        return min(max(float(t), self.start), self.end)

    def value(self, t) -> np.ndarray:
        return _raw(self.evaluator(self._check_time(t)))

    def __call__(self, t) -> GroupElement:
        return GroupElement(self.group_id, self.value(t))

    def tangent_array(self, t) -> np.ndarray:
        """
        μ̇(t) in the group representation.

        Raises
        ------
        ContractError
            If the curve is only C⁰.
        """
        if self.smoothness != "C1":
            raise ContractError(f"{self!r} has no derivative")
        t = self._check_time(t)
        if self.derivative is not None:
            return _raw(self.derivative(t))
        return finite_difference(self.value, t, self.start, self.end)

    def check_derivative(self, points: int = 10, h: float = 1e-5) -> float:
        """
        Largest relative gap between the derivative evaluator and central differences.

        Returns 0.0 when no closed-form derivative is attached.
        """
        if self.derivative is None:
            return 0.0
        worst = 0.0
        for t in np.linspace(self.start + h, self.end - h, points):
            numeric = (self.value(t + h) - self.value(t - h)) / (2.0 * h)
            exact = self.tangent_array(t)
            gap = np.linalg.norm(numeric - exact) / max(1.0, np.linalg.norm(exact))
            worst = max(worst, float(gap))
        return worst

    def derivative_consistent(self, points: int = 10, h: float = 1e-5, rtol: float = 1e-6) -> bool:
        return self.check_derivative(points, h) <= rtol


class Trajectory:
    """
    Group curve known only at finitely many times (the partition points of an evolution).

    Parameters
    ----------
    group : Group
        Owning group.
    times : sequence of float
        Increasing sample times.
    values : sequence of numpy.ndarray
        Raw group values at ``times``.
    """

    smoothness = "C0"

    def __init__(self, group, times, values):
        self.group = group if isinstance(group, Group) else get_group(group)
        self.times = tuple(float(t) for t in times)
        self.values = tuple(values)
        if not self.times or len(self.times) != len(self.values):
            raise DomainError("a trajectory needs matching, nonempty times and values")

    @property
    def group_id(self) -> str:
        return self.group.group_id

    @property
    def start(self) -> float:
        return self.times[0]

    @property
    def end(self) -> float:
        return self.times[-1]

    def __len__(self):
        return len(self.times)

    def __repr__(self):
        return f"Trajectory({self.group_id}, points={len(self)})"

    def index(self, t) -> int:
        i = bisect.bisect_left(self.times, t - TIME_TOL)
        if i < len(self.times) and abs(self.times[i] - t) <= TIME_TOL:
            return i
        raise DomainError(f"trajectory has no value at t={t}")

    def value(self, t) -> np.ndarray:
        return self.values[self.index(t)]

    def value_before(self, t) -> np.ndarray:
        """Value at the last sample time not after t (left-constant extension)."""
        i = bisect.bisect_right(self.times, t + TIME_TOL) - 1
        if i < 0:
            raise DomainError(f"t={t} precedes the trajectory start {self.start}")
        return self.values[i]

    def __call__(self, t) -> GroupElement:
        return GroupElement(self.group_id, self.value(t))

    @property
    def endpoint(self) -> GroupElement:
        return GroupElement(self.group_id, self.values[-1])

    def elements(self):
        return [GroupElement(self.group_id, v) for v in self.values]


def rescale_group_curve(mu: GroupCurve, tau: float, m: int) -> GroupCurve:
    """
    μ_τ: [0, 1/m] ∋ t ↦ μ(τ·t), with derivative τ·μ̇(τ·t).

    Raises
    ------
    DomainError
        If τ·[0, 1/m] leaves the domain of μ or m < 1.
    """
    if m < 1:
        raise DomainError(f"m must be a positive integer, got {m}")
    tau = float(tau)
    lo, hi = sorted((0.0, tau / m))
    if lo < mu.start - TIME_TOL or hi > mu.end + TIME_TOL:
        raise DomainError(f"τ={tau} with m={m} leaves the domain [{mu.start}, {mu.end}]")
    derivative = None
    if mu.smoothness == "C1":
        derivative = lambda t: tau * mu.tangent_array(tau * t)  # noqa: E731
    return GroupCurve(mu.group, lambda t: mu.value(tau * t), 0.0, 1.0 / m, derivative, mu.smoothness)
