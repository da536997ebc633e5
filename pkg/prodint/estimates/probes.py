import logging
from dataclasses import dataclass, field
from typing import Callable, List, Optional

import numpy as np

from prodint.curves.piecewise import check_shared_domain, combine, merged_breakpoints, scale_curve
from prodint.engine.evolution import StepperConfig, build_partition, evolve_on_partition, integrand_samples
from prodint.errors import ConfigurationError, OutOfChartDomain
from prodint.estimates.sampling import random_algebra_curve, sample_algebra_ball
from prodint.utils import Config, parallel_map

__all__ = [
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
]

logger = logging.getLogger(__name__)

BATCH_SIZE = 1000
CSV_COLUMNS = ["probe", "group", "p", "q", "samples", "violations", "worst_margin", "seed"]


@dataclass
class ProbeReport:
    """
    Outcome of a probe.

    Attributes
    ----------
    probe : str
        Probe name.
    group_id : str
        Group the probe ran on.
    p, q : str
        Labels of the measured and the dominating seminorm.
    samples : int
        Number of checked inequalities.
    violations : int
        Number of samples with margin below the violation tolerance.
    worst_margin : float
        Smallest bound − value seen (−inf when a product left the chart).
    seed : int or None
        Sampling seed.
    witness : dict
        Inputs of the worst sample.
    extras : dict
        Integer side counts (chart escapes, curves, ...).
    """

    probe: str
    group_id: str
    p: str
    q: str
    samples: int = 0
    violations: int = 0
    worst_margin: float = float("inf")
    seed: Optional[int] = None
    witness: dict = field(default_factory=dict, repr=False)
    extras: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.violations == 0

    def to_row(self) -> dict:
        return {
            "probe": self.probe,
            "group": self.group_id,
            "p": self.p,
            "q": self.q,
            "samples": self.samples,
            "violations": self.violations,
            "worst_margin": self.worst_margin,
            "seed": self.seed,
        }

    def record(self, bound, value, witness=None, rtol=None, atol=None):
        """Add one sample with margin = bound − value."""
        margin = bound - value
        self.samples += 1
        if is_violation(margin, bound, rtol, atol):
            self.violations += 1
        if not self.witness or margin < self.worst_margin:
            self.worst_margin = margin
            self.witness = dict(witness or {}, bound=bound, value=value)

    def record_escape(self, bound, witness=None, distance=None):
        """A product left the chart domain: a violation with margin −inf."""
        self.samples += 1
        self.violations += 1
        self.extras["chart_escapes"] = self.extras.get("chart_escapes", 0) + 1
        if self.worst_margin > -np.inf:
            self.worst_margin = -np.inf
            self.witness = dict(witness or {}, bound=bound, distance=distance)


def is_violation(margin, bound, rtol=None, atol=None) -> bool:
    """margin < −(rtol·|bound| + atol), with the configured tolerances as defaults."""
    rtol = Config.get("violation_rtol") if rtol is None else rtol
    atol = Config.get("violation_atol") if atol is None else atol
    return margin < -(rtol * abs(bound) + atol)


def merge_reports(reports, probe=None) -> ProbeReport:
    """
    Reduce batch reports by count and minimum margin.

    Integer extras are summed; the witness comes from the worst batch.
    """
    reports = list(reports)
    if not reports:
        raise ConfigurationError("nothing to merge")
    first = reports[0]
    merged = ProbeReport(probe or first.probe, first.group_id, first.p, first.q, seed=first.seed)
    for report in reports:
        merged.samples += report.samples
        merged.violations += report.violations
        if report.worst_margin < merged.worst_margin:
            merged.worst_margin = report.worst_margin
            merged.witness = dict(report.witness)
        for key, value in report.extras.items():
            if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
                merged.extras[key] = merged.extras.get(key, 0) + int(value)
    return merged


def _batches(total, seed):
    counts = [BATCH_SIZE] * (total // BATCH_SIZE)
    if total % BATCH_SIZE:
        counts.append(total % BATCH_SIZE)
    children = np.random.SeedSequence(seed).spawn(len(counts))
    return list(zip(counts, children))


def _run(tasks):
    return parallel_map(lambda task: task(), tasks)


def _mu_convexity_batch(p, q, group, count, seed_seq, max_factors, seed):
    rng = np.random.default_rng(seed_seq)
    report = ProbeReport("mu-convexity", group.group_id, p.label, q.label, seed=seed)
    for _ in range(count):
        n = int(rng.integers(1, max_factors + 1))
        xs = sample_algebra_ball(group, rng, 1.0, n)
        budget = 1.0 - rng.random()
        total = sum(q.evaluate_array(x) for x in xs)
        if total > 0.0:
            xs = xs * (budget / total)
        bound = float(sum(q.evaluate_array(x) for x in xs))
        g = group._identity()
        for x in xs:
            g = group._mul(g, group._chart_inverse(x))
        try:
            value = p.evaluate_array(group._chart_forward(g))
        except OutOfChartDomain as err:
            report.record_escape(bound, {"factors": xs.tolist()}, err.distance)
            continue
        report.record(bound, value, {"factors": xs.tolist()})
    return report


def mu_convexity_probe(p, q, group, samples=10000, seed=0, max_factors=8) -> ProbeReport:
    """
    Probe (p∘κ)(κ⁻¹(X₁)·…·κ⁻¹(X_n)) ≤ q(X₁) + … + q(X_n).

    Each sample draws n ∈ {1, …, max_factors} directions from the unit ball
    and rescales them so that Σ q(X_i) is uniform in (0, 1]. Products that
    leave the chart are violations.

    Parameters
    ----------
    p, q : Seminorm
        Measured and dominating seminorm.
    group : Group
        Group under test.
    samples : int
        Number of tuples.
    seed : int
        Sampling seed, recorded in the report.

    Returns
    -------
    ProbeReport
    """
    tasks = [
        (lambda c=count, s=child: _mu_convexity_batch(p, q, group, c, s, max_factors, seed))
        for count, child in _batches(samples, seed)
    ]
    report = merge_reports(_run(tasks), "mu-convexity")
    logger.debug("mu-convexity %s q=%s: %d/%d violations", group.group_id, q.label, report.violations, report.samples)
    return report


def _adjoint_batch(q, m, group, elements, count, seed_seq, seed):
    rng = np.random.default_rng(seed_seq)
    report = ProbeReport("adjoint-domination", group.group_id, q.label, m.label, seed=seed)
    for index, g in elements:
        for x in sample_algebra_ball(group, rng, 1.0, count):
            report.record(m.evaluate_array(x), q.evaluate_array(group._ad(g, x)), {"element": index, "X": x.tolist()})
    return report


def adjoint_domination_probe(q, m, group, elements, samples_per_element=100, seed=0) -> ProbeReport:
    """
    Probe q(Ad_g X) ≤ m(X) for g in a finite sample and random X in the unit ball.

    Parameters
    ----------
    q, m : Seminorm
        Measured and dominating seminorm.
    group : Group
        Group under test.
    elements : sequence
        GroupElements (or raw values) standing in for the compact set.
    samples_per_element : int
        Random algebra elements per group element.
    """
    raw = [(i, np.asarray(getattr(g, "value", g), dtype=float)) for i, g in enumerate(elements)]
    chunks = [raw[i:i + 10] for i in range(0, len(raw), 10)] or [[]]
    children = np.random.SeedSequence(seed).spawn(len(chunks))
    tasks = [
        (lambda c=chunk, s=child: _adjoint_batch(q, m, group, c, samples_per_element, s, seed))
        for chunk, child in zip(chunks, children)
    ]
    return merge_reports(_run(tasks), "adjoint-domination")


def _cumulative_bound(seminorm, curve, cells, scheme):
    widths = np.diff(cells)
    values = [seminorm.evaluate_array(x) for x in integrand_samples(curve, cells, scheme)]
    return np.cumsum(widths * np.asarray(values, dtype=float))


def _rescale(total, saturate):
    if total > 0.0 and (saturate or total > 1.0):
        return 1.0 / total
    return 1.0


def integral_bound_check(p, q, phi, cfg: StepperConfig = None, saturate=True, seed=None) -> ProbeReport:
    """
    Check (p∘κ)(⨏_r^t φ) ≤ ∫_r^t q(φ(s)) ds at every partition point t.

    The integral is accumulated over the stepper's own cells and sample
    points. φ is rescaled so that the total is 1 (``saturate``) or, at least,
    at most 1; the applied factor is kept in ``extras["rescale_ppm"]``.

    Parameters
    ----------
    p, q : Seminorm
        Measured and dominating seminorm.
    phi : PiecewiseCurve
        Integrand.
    cfg : StepperConfig, optional
        Stepper.
    saturate : bool
        Rescale to ∫q = 1 exactly rather than only when it exceeds 1.
    """
    cfg = cfg or StepperConfig()
    group = phi.group
    cells = build_partition(phi.breakpoints, phi.start, phi.end, cfg.steps_per_unit, cfg.breakpoint_refinement)
    total = float(_cumulative_bound(q, phi, cells, cfg.scheme)[-1]) if len(cells) > 1 else 0.0
    factor = _rescale(total, saturate)
    curve = phi if factor == 1.0 else scale_curve(factor, phi)
    bounds = _cumulative_bound(q, curve, cells, cfg.scheme)
    trajectory = evolve_on_partition(curve, cells, cfg.scheme, keep_trajectory=True).trajectory
    report = ProbeReport("integral-bound", group.group_id, p.label, q.label, seed=seed)
    report.extras["rescale_ppm"] = int(round(factor * 1e6))
    for t, bound, g in zip(cells[1:], bounds, trajectory.values[1:]):
        try:
            value = p.evaluate_array(group._chart_forward(g))
        except OutOfChartDomain as err:
            report.record_escape(float(bound), {"t": t}, err.distance)
            continue
        report.record(float(bound), value, {"t": t})
    return report


def _curve_seeds(count, seed):
    return np.random.SeedSequence(seed).spawn(count)


def integral_bound_probe(p, q, group, curves=100, seed=0, cfg: StepperConfig = None, **curve_options) -> ProbeReport:
    """
    :func:`integral_bound_check` over ``curves`` random algebra curves.

    ``curve_options`` are forwarded to :func:`random_algebra_curve`.
    """

    def check(child):
        phi = random_algebra_curve(group, np.random.default_rng(child), **curve_options)
        return integral_bound_check(p, q, phi, cfg, seed=seed)

    reports = _run([(lambda c=child: check(c)) for child in _curve_seeds(curves, seed)])
    report = merge_reports(reports, "integral-bound")
    report.extras["curves"] = curves
    report.extras.pop("rescale_ppm", None)
    logger.debug("integral-bound %s q=%s: %d/%d violations", group.group_id, q.label, report.violations, report.samples)
    return report


def two_curve_bound_check(p, m, phi, psi, cfg: StepperConfig = None, saturate=True, ball_radius=None,
                          seed=None) -> ProbeReport:
    """
    Check (p∘κ)([⨏_r^t φ]⁻¹·[⨏_r^t ψ]) ≤ ∫_r^t m(ψ(s) − φ(s)) ds at every partition point.

    ψ is moved towards φ so that ∫m(ψ − φ) = 1 (or ≤ 1 without ``saturate``).
    Partition points where ⨏_r^t φ lies outside the ball of ``ball_radius``
    (the chart radius by default) are counted in ``extras["escapes"]``.

    Parameters
    ----------
    p, m : Seminorm
        Measured and dominating seminorm.
    phi, psi : PiecewiseCurve
        Curves on a shared domain.
    """
    cfg = cfg or StepperConfig()
    check_shared_domain(phi, psi)
    group = phi.group
    radius = group.chart_radius if ball_radius is None else ball_radius
    breakpoints = merged_breakpoints(phi, psi)
    cells = build_partition(breakpoints, phi.start, phi.end, cfg.steps_per_unit, cfg.breakpoint_refinement)
    difference = combine(psi, phi, 1.0, -1.0)
    total = float(_cumulative_bound(m, difference, cells, cfg.scheme)[-1]) if len(cells) > 1 else 0.0
    factor = _rescale(total, saturate)
    if factor != 1.0:
        psi = combine(phi, difference, 1.0, factor)
        difference = combine(psi, phi, 1.0, -1.0)
    bounds = _cumulative_bound(m, difference, cells, cfg.scheme)
    first = evolve_on_partition(phi, cells, cfg.scheme, keep_trajectory=True).trajectory.values
    second = evolve_on_partition(psi, cells, cfg.scheme, keep_trajectory=True).trajectory.values
    report = ProbeReport("two-curve", group.group_id, p.label, m.label, seed=seed)
    report.extras["escapes"] = 0
    for t, bound, a, b in zip(cells[1:], bounds, first[1:], second[1:]):
        if not group._distance(a) < radius:
            report.extras["escapes"] += 1
        try:
            value = p.evaluate_array(group._chart_forward(group._mul(group._inv(a), b)))
        except OutOfChartDomain as err:
            report.record_escape(float(bound), {"t": t}, err.distance)
            continue
        report.record(float(bound), value, {"t": t})
    return report


def two_curve_probe(p, m, group, pairs=100, seed=0, cfg: StepperConfig = None, ball_radius=None,
                    **curve_options) -> ProbeReport:
    """:func:`two_curve_bound_check` over ``pairs`` pairs of random algebra curves."""

    def check(child):
        rng = np.random.default_rng(child)
        phi = random_algebra_curve(group, rng, **curve_options)
        psi = random_algebra_curve(group, rng, **curve_options)
        return two_curve_bound_check(p, m, phi, psi, cfg, ball_radius=ball_radius, seed=seed)

    reports = _run([(lambda c=child: check(c)) for child in _curve_seeds(pairs, seed)])
    report = merge_reports(reports, "two-curve")
    report.extras["curves"] = pairs
    if report.extras.get("escapes"):
        logger.warning("two-curve %s: %d trajectory points outside the ball", group.group_id,
                       report.extras["escapes"])
    return report


@dataclass
class SearchResult:
    """
    Outcome of :func:`seminorm_search`.

    ``scale`` is the smallest passing grid value (a scale factor or a weight
    index) and ``seminorm`` the matching seminorm; both are None when nothing
    passed. ``reports`` holds one report per grid value.
    """

    scale: Optional[float]
    seminorm: Optional[object]
    reports: List[ProbeReport]
    grid: List[float] = field(default_factory=list)

    @property
    def found(self) -> bool:
        return self.scale is not None

    @property
    def selected(self) -> ProbeReport:
        """The report of the passing grid value, or of the largest one when nothing passed."""
        if self.found:
            return self.reports[self.grid.index(self.scale)]
        return self.reports[-1]


def seminorm_search(p, probe: Callable, grid, mode="scale") -> SearchResult:
    """
    Smallest dominating seminorm on a grid for which ``probe`` reports no violation.

    Parameters
    ----------
    p : Seminorm
        Base seminorm.
    probe : callable
        Seminorm ↦ ProbeReport.
    grid : sequence
        Ascending scale factors (``mode="scale"``) or weight indices
        (``mode="ladder"``).
    mode : str
        ``"scale"`` tries c·p, ``"ladder"`` tries p with weight index k.

    Returns
    -------
    SearchResult
        NotFound is ``scale is None``, never an exception.
    """
    grid = list(grid)
    if not grid:
        raise ConfigurationError("search grid is empty", key="scales")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ConfigurationError(f"search grid must be ascending: {grid}", key="scales")
    if mode == "scale":
        candidates = [p.scaled(c) for c in grid]
    elif mode == "ladder":
        candidates = [p.with_weight_index(k) for k in grid]
    else:
        raise ConfigurationError(f"unknown search mode {mode!r}", key="mode")
    reports = [probe(q) for q in candidates]
    for value, q, report in zip(grid, candidates, reports):
        if report.passed:
            logger.info("%s on %s: smallest passing %s is %s", report.probe, report.group_id, mode, value)
            return SearchResult(value, q, reports, grid)
    logger.warning("%s on %s: no passing %s in %s", reports[-1].probe, reports[-1].group_id, mode, grid)
    return SearchResult(None, None, reports, grid)
