"""
Trotter harness: the curves χ_{τ,n} and φ_{τ,n}, the power identity and the
uniform convergence of μ(τ/n)ⁿ towards exp(τ·X).
"""

import logging
import math
from dataclasses import dataclass, field, replace
from typing import Dict, Optional

import numpy as np
import pandas as pd

from prodint.curves.group_curve import TIME_TOL, GroupCurve, rescale_group_curve
from prodint.curves.piecewise import (
    PiecewiseCurve,
    Reparametrization,
    concatenate,
    curve_from_function,
    refine,
    reparametrize,
    scale_curve,
)
from prodint.engine.evolution import StepperConfig, evolve, evolve_curve, log_derivative, log_derivative_array
from prodint.errors import ConfigurationError, DomainError, OutOfChartDomain
from prodint.groups.base import AlgebraElement, GroupElement
from prodint.space.seminorms import Seminorm
from prodint.utils import Config, parallel_map

__all__ = [
    "TrotterFamily",
    "ConvergenceTable",
    "build_chi",
    "build_phi_tau_n",
    "verify_power_identity",
    "trotter_error",
    "uniform_trotter_sweep",
    "trotter_sequence",
    "uniform_convergence_check",
    "continuity_probe",
    "TROTTER_COLUMNS",
    "POWER_COLUMNS",
]

logger = logging.getLogger(__name__)

CHART_GRID = 65
MAX_M = 4096
TROTTER_COLUMNS = ["group", "curve", "seminorm", "scheme", "n", "sup_error", "argmax_tau"]
POWER_COLUMNS = ["group", "curve", "seminorm", "scheme", "steps", "tau", "n", "residual"]


def _seminorm(p, group):
    return p if p is not None else Seminorm(group.space_id)


def _chart_grid_ok(mu, end, points=CHART_GRID):
    group = mu.group
    return all(group._distance(mu.value(t)) < group.chart_radius for t in np.linspace(0.0, end, points))


@dataclass(frozen=True)
class TrotterFamily:
    """
    A C¹ curve μ through the identity together with X = δ(μ)(0).

    Parameters
    ----------
    curve : GroupCurve
        μ on a domain starting at 0.
    X : AlgebraElement
        Generator of the limit exp(τ·X).
    ell : float
        τ ranges over [0, ell].
    m : int
        μ([0, ell/m]) lies inside the chart domain.
    """

    curve: GroupCurve
    X: AlgebraElement
    ell: float = 2.0
    m: int = 1

    @classmethod
    def from_curve(cls, mu: GroupCurve, ell: float = 2.0, m: Optional[int] = None) -> "TrotterFamily":
        """
        Derive X = δ(μ)(0) and, unless given, the smallest admissible m.

        m is the smallest integer with ell/m inside the domain of μ and
        μ(t) inside the chart domain on a 65-point grid of [0, ell/m].

        Raises
        ------
        DomainError
            If μ does not start at 0, ell is not positive or no m up to 4096 works.
        """
        if abs(mu.start) > TIME_TOL:
            raise DomainError(f"a Trotter curve must start at 0, got {mu.start}")
        if not ell > 0:
            raise DomainError(f"ell must be positive, got {ell}")
        if m is None:
            m = next(
                (k for k in range(1, MAX_M + 1) if ell / k <= mu.end + TIME_TOL and _chart_grid_ok(mu, ell / k)),
                None,
            )
            if m is None:
                raise DomainError(f"no m <= {MAX_M} keeps μ([0, ell/m]) inside the chart")
        elif m < 1 or ell / m > mu.end + TIME_TOL:
            raise DomainError(f"m={m} does not fit ell={ell} into [0, {mu.end}]")
        family = cls(mu, log_derivative(mu, 0.0), float(ell), int(m))
        logger.debug("Trotter family on %s: ell=%g, m=%d", mu.group_id, ell, m)
        return family

    @property
    def group(self):
        return self.curve.group

    def validate(self):
        """Names of violated family invariants; empty iff the family is consistent."""
        group = self.group
        found = []
        if group._distance(self.curve.value(0.0)) > 1e-12:
            found.append("identity")
        gap = log_derivative_array(self.curve, 0.0) - self.X.coordinates
        if np.linalg.norm(gap) > 1e-8:
            found.append("generator")
        if not _chart_grid_ok(self.curve, self.ell / self.m):
            found.append("chart")
        return found

    def _check(self, tau, n):
        if int(n) != n or n < self.m:
            raise DomainError(f"n must be an integer >= m={self.m}, got {n}")
        if not -TIME_TOL <= tau <= self.ell + TIME_TOL:
            raise DomainError(f"τ={tau} outside [0, {self.ell}]")
        return min(max(float(tau), 0.0), self.ell), int(n)


@dataclass
class ConvergenceTable:
    """
    Sup-over-τ Trotter errors per n.

    Attributes
    ----------
    frame : pandas.DataFrame
        Columns ``n``, ``sup_error`` and ``argmax_tau``, n strictly increasing.
    n_eps : dict
        ε ↦ smallest listed n with sup_error ≤ ε (None when no n qualifies).
    tau_points : int
        Size of the uniform τ grid on [0, ell].
    seminorm : str
        Label of the measuring seminorm.
    """

    frame: pd.DataFrame
    n_eps: Dict[float, Optional[int]] = field(default_factory=dict)
    tau_points: int = 41
    ell: float = 2.0
    seminorm: str = ""
    group_id: str = ""

    def to_frame(self, curve: str = "", scheme: str = "") -> pd.DataFrame:
        """The table in its CSV layout, n_ε repeated on every row."""
        out = self.frame.copy()
        out.insert(0, "scheme", scheme)
        out.insert(0, "seminorm", self.seminorm)
        out.insert(0, "curve", curve)
        out.insert(0, "group", self.group_id)
        for eps, n in self.n_eps.items():
            out[f"n_eps_{eps:g}"] = n
        return out


def build_chi(fam: TrotterFamily, tau: float, n: int) -> PiecewiseCurve:
    """
    χ_{τ,n} = δ(μ_τ) on [0, 1/n] for μ_τ(t) = μ(τ·t).

    Raises
    ------
    DomainError
        If τ ∉ [0, ell] or n < m.
    """
    tau, n = fam._check(tau, n)
    mu_tau = rescale_group_curve(fam.curve, tau, fam.m)
    return curve_from_function(fam.group, lambda t: log_derivative_array(mu_tau, t), 0.0, 1.0 / n)


def build_phi_tau_n(fam: TrotterFamily, tau: float, n: int) -> PiecewiseCurve:
    """n shifted copies of χ_{τ,n} in a row on [0, 1], breakpoints at p/n."""
    chi = build_chi(fam, tau, n)
    copies = [chi]
    for p in range(1, n):
        lo, hi = p / n, (p + 1) / n if p + 1 < n else 1.0
        copies.append(reparametrize(chi, Reparametrization.shift(lo, lo, hi)))
    return concatenate(*copies)


def verify_power_identity(fam: TrotterFamily, tau: float, n: int, p: Seminorm = None,
                          cfg: StepperConfig = None) -> float:
    """
    Residual of ⨏_0^1 φ_{τ,n} = μ(τ/n)ⁿ.

    The right side is the exact n-th power of μ(τ/n); the left side runs the
    stepper on φ_{τ,n}, so the residual is the stepper error accumulated over
    n identical blocks.

    Raises
    ------
    OutOfChartDomain
        If both sides are too far apart for the chart.
    """
    tau, n = fam._check(tau, n)
    group = fam.group
    phi = build_phi_tau_n(fam, tau, n)
    stepped = evolve(phi, 0.0, 1.0, cfg).endpoint
    exact = GroupElement(group.group_id, group._power(fam.curve.value(tau / n), n))
    return group.discrepancy(exact, stepped, _seminorm(p, group))


def trotter_error(fam: TrotterFamily, tau: float, n: int, p: Seminorm = None) -> float:
    """
    (p∘κ)(exp(τ·X)⁻¹·μ(τ/n)ⁿ), with the power taken by exact multiplication.

    Returns +inf when the discrepancy leaves the chart domain.
    """
    tau, n = fam._check(tau, n)
    group = fam.group
    power = group._power(fam.curve.value(tau / n), n)
    limit = group._exp(tau * fam.X.coordinates)
    try:
        return _seminorm(p, group).evaluate_array(group._chart_forward(group._mul(group._inv(limit), power)))
    except OutOfChartDomain:
        return math.inf


def _check_n_list(n_list):
    n_list = [int(n) for n in n_list]
    if not n_list:
        raise ConfigurationError("n_list is empty", key="n_list")
    if any(b <= a for a, b in zip(n_list, n_list[1:])):
        raise ConfigurationError(f"n_list must be strictly increasing: {n_list}", key="n_list")
    return n_list


def uniform_trotter_sweep(fam: TrotterFamily, tau_points: int = None, n_list=None, p: Seminorm = None,
                          eps=None) -> ConvergenceTable:
    """
    sup over a uniform τ grid of :func:`trotter_error`, for every n.

    Parameters
    ----------
    fam : TrotterFamily
        Curve and generator.
    tau_points : int
        Points of the τ grid on [0, ell] (at least 2).
    n_list : sequence of int
        Strictly increasing powers, each at least m.
    p : Seminorm, optional
        Measuring seminorm (Frobenius by default).
    eps : sequence of float
        Thresholds for the measured n_ε.

    Returns
    -------
    ConvergenceTable
    """
    defaults = Config.get_defaults()
    tau_points = defaults["tau_points"] if tau_points is None else int(tau_points)
    n_list = _check_n_list(defaults["n_list"] if n_list is None else n_list)
    eps = defaults["eps"] if eps is None else list(eps)
    if tau_points < 2:
        raise ConfigurationError(f"the τ grid needs at least 2 points, got {tau_points}", key="tau_points")
    p = _seminorm(p, fam.group)
    taus = np.linspace(0.0, fam.ell, tau_points)
    jobs = [(n, tau) for n in n_list for tau in taus]
    errors = parallel_map(lambda job: trotter_error(fam, job[1], job[0], p), jobs)

    rows = []
    for i, n in enumerate(n_list):
        block = np.asarray(errors[i * tau_points:(i + 1) * tau_points], dtype=float)
        worst = int(np.argmax(block))
        if np.isinf(block[worst]):
            logger.warning("n=%d: μ(τ/n)ⁿ left the chart around exp(τX) at τ=%g", n, taus[worst])
        logger.debug("n=%d: sup error %.3e at τ=%g", n, block[worst], taus[worst])
        rows.append({"n": n, "sup_error": float(block[worst]), "argmax_tau": float(taus[worst])})
    frame = pd.DataFrame(rows, columns=["n", "sup_error", "argmax_tau"])
    n_eps = {}
    for e in eps:
        passing = frame.loc[frame["sup_error"] <= e, "n"]
        n_eps[float(e)] = int(passing.iloc[0]) if len(passing) else None
    return ConvergenceTable(frame, n_eps, tau_points, fam.ell, p.label, fam.group.group_id)


def _power_curve(fam, n):
    group, mu = fam.group, fam.curve
    return GroupCurve(group, lambda tau: group._power(mu.value(tau / n), n), 0.0, fam.ell, smoothness="C0")


def trotter_sequence(fam: TrotterFamily, n_list) -> list:
    """The C⁰ curves ν_n: [0, ell] ∋ τ ↦ μ(τ/n)ⁿ, one per n."""
    n_list = _check_n_list(n_list)
    for n in n_list:
        fam._check(0.0, n)
    return [_power_curve(fam, n) for n in n_list]


def _sup(values):
    return max(values) if values else 0.0


def uniform_convergence_check(sequence, limit, p: Seminorm = None, grid: int = 41, ns=None) -> pd.DataFrame:
    """
    Right- and left-translated sup distances between ν_n and μ on a grid.

    right_sup(n) = sup_t (p∘κ)(μ(t)⁻¹·ν_n(t)) and
    left_sup(n) = sup_t (p∘κ)(ν_n(t)·μ(t)⁻¹); an element outside the chart
    makes the entry +inf.

    Parameters
    ----------
    sequence : sequence of GroupCurve
        ν_n on the domain of ``limit``.
    limit : GroupCurve
        μ.
    grid : int
        Number of equidistant grid points.
    ns : sequence, optional
        Row labels (1, 2, ... by default).

    Returns
    -------
    pandas.DataFrame
        Columns ``n``, ``right_sup``, ``left_sup``.
    """
    sequence = list(sequence)
    ns = list(range(1, len(sequence) + 1)) if ns is None else list(ns)
    if len(ns) != len(sequence):
        raise ConfigurationError("one label per curve is needed", key="ns")
    if grid < 1:
        raise DomainError("uniform convergence over an empty grid")
    group = limit.group
    p = _seminorm(p, group)
    times = np.linspace(limit.start, limit.end, grid)
    for nu in sequence:
        if nu.group_id != limit.group_id or abs(nu.start - limit.start) > TIME_TOL \
                or abs(nu.end - limit.end) > TIME_TOL:
            raise DomainError(f"{nu!r} does not share the domain and group of {limit!r}")

    def measure(a):
        try:
            return p.evaluate_array(group._chart_forward(a))
        except OutOfChartDomain:
            return math.inf

    def row(item):
        n, nu = item
        right, left = [], []
        for t in times:
            mu_t, nu_t = limit.value(t), nu.value(t)
            inverse = group._inv(mu_t)
            right.append(measure(group._mul(inverse, nu_t)))
            left.append(measure(group._mul(nu_t, inverse)))
        return {"n": n, "right_sup": _sup(right), "left_sup": _sup(left)}

    return pd.DataFrame(parallel_map(row, zip(ns, sequence)), columns=["n", "right_sup", "left_sup"])


def continuity_probe(phi: PiecewiseCurve, L=(0.0, 2.0), levels=None, p: Seminorm = None,
                     cfg: StepperConfig = None) -> pd.DataFrame:
    """
    Oscillation of Φ(τ, t) = ⨏_0^t τ·φ on nested grids.

    Level k uses 2^k + 1 equidistant points in τ ∈ L and in t; the
    oscillation is the largest (p∘κ)(Φ(a)⁻¹·Φ(b)) over grid neighbours a, b
    in either direction (+inf when a pair leaves the chart).

    Returns
    -------
    pandas.DataFrame
        Columns ``level``, ``points`` and ``oscillation``.
    """
    levels = Config.get("levels") if levels is None else list(levels)
    lo, hi = float(L[0]), float(L[1])
    if not lo <= hi:
        raise DomainError(f"τ interval [{lo}, {hi}] is empty")
    cfg = replace(cfg or StepperConfig(), breakpoint_refinement=True)
    group = phi.group
    p = _seminorm(p, group)

    def distance(a, b):
        try:
            return p.evaluate_array(group._chart_forward(group._mul(group._inv(a), b)))
        except OutOfChartDomain:
            return math.inf

    rows = []
    for level in levels:
        if int(level) != level or level < 0:
            raise ConfigurationError(f"refinement levels are nonnegative integers, got {level}", key="levels")
        points = 2 ** int(level) + 1
        ts = np.linspace(phi.start, phi.end, points)
        taus = np.linspace(lo, hi, points)
        fine = refine(phi, ts[1:-1])

        def values_at(tau):
            trajectory = evolve_curve(scale_curve(tau, fine), phi.start, cfg)
            return [trajectory.value(t) for t in ts]

        field_values = parallel_map(values_at, taus)
        worst = 0.0
        for i in range(points):
            for j in range(points):
                if i + 1 < points:
                    worst = max(worst, distance(field_values[i][j], field_values[i + 1][j]))
                if j + 1 < points:
                    worst = max(worst, distance(field_values[i][j], field_values[i][j + 1]))
        logger.debug("continuity level %d: oscillation %.3e", level, worst)
        rows.append({"level": int(level), "points": points, "oscillation": worst})
    return pd.DataFrame(rows, columns=["level", "points", "oscillation"])
