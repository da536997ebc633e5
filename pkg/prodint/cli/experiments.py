"""
Experiment runners, one per config kind.

Every runner returns an :class:`ExperimentResult` whose tables are written
by the command line front end; the status follows the exit code
convention (0 passed, 2 violation or failed gate).
"""

import logging
import math
from dataclasses import dataclass, field, replace
from typing import Dict, List

import numpy as np
import pandas as pd

from prodint.curves.library import make_algebra_curve, make_group_curve, one_parameter_curve
from prodint.curves.piecewise import Reparametrization
from prodint.engine.identities import (
    exp_scaling_check,
    identity_a_residual,
    identity_b_residual,
    identity_c_residual,
    identity_d_residual,
)
from prodint.errors import OutOfChartDomain
from prodint.estimates.probes import (
    CSV_COLUMNS,
    adjoint_domination_probe,
    mu_convexity_probe,
    integral_bound_probe,
    seminorm_search,
    two_curve_probe,
)
from prodint.estimates.sampling import random_algebra_curve, sample_group_ball
from prodint.groups.registry import get_group
from prodint.trotter.harness import (
    POWER_COLUMNS,
    TROTTER_COLUMNS,
    TrotterFamily,
    continuity_probe,
    trotter_sequence,
    uniform_convergence_check,
    uniform_trotter_sweep,
    verify_power_identity,
)
from prodint.trotter.metrics import ConvergenceMetrics

__all__ = ["ExperimentResult", "RUNNERS", "run_experiment"]

logger = logging.getLogger(__name__)

OK = 0
FAILED = 2


@dataclass
class ExperimentResult:
    """
    Tables and verdict of one run.

    Attributes
    ----------
    tables : dict
        Output file name ↦ DataFrame, in writing order.
    status : int
        0 when every probe and gate passed, 2 otherwise.
    summary : dict
        Scalar findings echoed into the manifest.
    failures : list
        Human readable reasons for a nonzero status.
    """

    tables: Dict[str, pd.DataFrame] = field(default_factory=dict)
    status: int = OK
    summary: dict = field(default_factory=dict)
    failures: List[str] = field(default_factory=list)

    def fail(self, reason):
        logger.warning("gate failed: %s", reason)
        self.failures.append(reason)
        self.status = FAILED


def _algebra_curve(group, entry):
    return make_algebra_curve(entry["name"], group, entry["params"], entry["start"], entry["end"])


def _family(cfg, group):
    entry = cfg.curve
    mu = make_group_curve(entry["name"], group, entry["params"], entry["start"], entry["end"])
    return TrotterFamily.from_curve(mu, float(cfg.grid("ell")), cfg.grids.get("m"))


def _residual(func, *args):
    try:
        return func(*args)
    except OutOfChartDomain as err:
        logger.warning("%s left the chart (distance %.3g)", func.__name__, err.distance)
        return math.inf


def run_identities(cfg) -> ExperimentResult:
    """Residuals of identities a) to d) and both exponential checks per step count."""
    group = get_group(cfg.group)
    p = cfg.make_seminorm(group.space_id)
    phi = _algebra_curve(group, cfg.curve)
    if cfg.psi is not None:
        psi = _algebra_curve(group, cfg.psi)
    else:
        psi = random_algebra_curve(group, np.random.default_rng(cfg.seed), phi.start, phi.end)
    r, r_end = phi.start, phi.end
    partition = cfg.partition or [r, 0.5 * (r + r_end), r_end]
    rho = Reparametrization(lambda t: r + (r_end - r) * t * t, lambda t: 2.0 * (r_end - r) * t, 0.0, 1.0)
    X = phi(phi.start)
    s, copies = float(cfg.grid("scaling_s")), int(cfg.grid("scaling_n"))

    base = cfg.stepper_config
    rows = []
    for steps in cfg.grid("steps_list"):
        stepper = replace(base, steps_per_unit=int(steps))
        try:
            scaled, powered = exp_scaling_check(X, s, copies, p, stepper)
        except OutOfChartDomain:
            logger.warning("exponential checks left the chart at %d steps/unit", steps)
            scaled = powered = math.inf
        residuals = {
            "a": _residual(identity_a_residual, phi, psi, p, stepper),
            "b": _residual(identity_b_residual, phi, psi, p, stepper),
            "c": _residual(identity_c_residual, phi, partition, p, stepper),
            "d": _residual(identity_d_residual, phi, rho, p, stepper),
            "exp-scaling": scaled,
            "exp-power": powered,
        }
        for name, value in residuals.items():
            rows.append({"identity": name, "group": group.group_id, "seminorm": p.label,
                         "scheme": stepper.scheme, "steps": int(steps), "residual": float(value)})
        logger.debug("identities at %d steps/unit: %s", steps, residuals)
    frame = pd.DataFrame(rows, columns=["identity", "group", "seminorm", "scheme", "steps", "residual"])
    result = ExperimentResult({"identities.csv": frame})

    for name in ("a", "b", "d"):
        subset = frame[frame["identity"] == name]
        order = ConvergenceMetrics(subset, x="steps", y="residual").order()
        result.summary[f"order_{name}"] = order
        if "min_order" in cfg.gates and not order >= cfg.gates["min_order"]:
            result.fail(f"identity {name}) decays with order {order:.3g} < {cfg.gates['min_order']}")
    if "max_residual" in cfg.gates:
        worst = float(frame["residual"].max())
        if not worst <= cfg.gates["max_residual"]:
            result.fail(f"largest residual {worst:.3g} exceeds {cfg.gates['max_residual']}")
    return result


def run_estimates(cfg) -> ExperimentResult:
    """Seminorm searches for the four estimate probes; the selected report of each is tabulated."""
    group = get_group(cfg.group)
    p = cfg.make_seminorm(group.space_id)
    stepper = cfg.stepper_config
    seed = cfg.seed
    mode = cfg.grid("search")
    grid = cfg.grid("ladder") if mode == "ladder" else cfg.grid("scales")
    samples, curves = int(cfg.grid("samples")), int(cfg.grid("curves"))
    elements = sample_group_ball(group, np.random.default_rng(seed), float(cfg.grid("sample_radius")),
                                 int(cfg.grid("elements")))

    probes = {
        "mu-convexity": lambda q: mu_convexity_probe(p, q, group, samples, seed, int(cfg.grid("max_factors"))),
        "adjoint-domination": lambda m: adjoint_domination_probe(
            p, m, group, elements, int(cfg.grid("samples_per_element")), seed
        ),
        "integral-bound": lambda q: integral_bound_probe(p, q, group, curves, seed, stepper),
        "two-curve": lambda m: two_curve_probe(p, m, group, curves, seed, stepper),
    }
    result = ExperimentResult()
    rows = []
    for name, probe in probes.items():
        logger.info("searching %s on %s over %s", name, group.group_id, grid)
        search = seminorm_search(p, probe, grid, mode)
        rows.append(search.selected.to_row())
        result.summary[f"{name}_{mode}"] = search.scale
        if not search.found:
            result.fail(f"{name}: no passing {mode} in {list(grid)}")
    result.tables["estimates.csv"] = pd.DataFrame(rows, columns=CSV_COLUMNS)
    return result


def _slope_gates(cfg, result, metrics, label):
    if "max_slope" in cfg.gates:
        slope = metrics.slope(top_decade=True)
        if not slope <= cfg.gates["max_slope"]:
            result.fail(f"{label}: top-decade slope {slope:.3g} above {cfg.gates['max_slope']}")
    if "monotone_slack" in cfg.gates and not metrics.is_monotone(cfg.gates["monotone_slack"]):
        result.fail(f"{label}: errors grow by more than {cfg.gates['monotone_slack']:g} between rows")


def _power_identity_table(cfg, group, p, fam) -> pd.DataFrame:
    stepper = cfg.stepper_config
    rows = []
    for n in cfg.grid("power_n"):
        for tau in cfg.grid("power_tau"):
            residual = _residual(verify_power_identity, fam, float(tau), int(n), p, stepper)
            rows.append({"group": group.group_id, "curve": cfg.curve["name"], "seminorm": p.label,
                         "scheme": stepper.scheme, "steps": stepper.steps_per_unit, "tau": float(tau),
                         "n": int(n), "residual": float(residual)})
    return pd.DataFrame(rows, columns=POWER_COLUMNS)


def run_trotter(cfg) -> ExperimentResult:
    """The uniform sweep of μ(τ/n)ⁿ against exp(τX), plus the power identity residuals."""
    group = get_group(cfg.group)
    p = cfg.make_seminorm(group.space_id)
    fam = _family(cfg, group)
    table = uniform_trotter_sweep(fam, int(cfg.grid("tau_points")), cfg.grid("n_list"), p, cfg.grid("eps"))
    frame = table.to_frame(curve=cfg.curve["name"], scheme=cfg.stepper_config.scheme)
    eps_columns = [c for c in frame.columns if c.startswith("n_eps_")]
    power = _power_identity_table(cfg, group, p, fam)
    result = ExperimentResult({"trotter.csv": frame[TROTTER_COLUMNS + eps_columns], "power_identity.csv": power})
    metrics = ConvergenceMetrics(table)
    worst = float(power["residual"].max())
    result.summary.update(metrics.summary(), m=fam.m, n_eps={f"{k:g}": v for k, v in table.n_eps.items()},
                          power_identity_max=worst)
    _slope_gates(cfg, result, metrics, "trotter")
    if "max_residual" in cfg.gates and not worst <= cfg.gates["max_residual"]:
        result.fail(f"power identity residual {worst:.3g} exceeds {cfg.gates['max_residual']}")
    return result


def run_convergence(cfg) -> ExperimentResult:
    """Right- and left-translated uniform distances of the Trotter sequence."""
    group = get_group(cfg.group)
    p = cfg.make_seminorm(group.space_id)
    fam = _family(cfg, group)
    n_list = cfg.grid("n_list")
    limit = one_parameter_curve(group, fam.X.coordinates, 0.0, fam.ell)
    frame = uniform_convergence_check(trotter_sequence(fam, n_list), limit, p, int(cfg.grid("tau_points")), n_list)
    frame.insert(0, "seminorm", p.label)
    frame.insert(0, "curve", cfg.curve["name"])
    frame.insert(0, "group", group.group_id)
    result = ExperimentResult({"convergence.csv": frame})
    metrics = ConvergenceMetrics(frame, y="right_sup")
    consistent = metrics.left_right_consistent()
    result.summary.update(m=fam.m, left_right_consistent=consistent, slope_right=metrics.slope(),
                          slope_left=ConvergenceMetrics(frame, y="left_sup").slope())
    _slope_gates(cfg, result, metrics, "convergence")
    if cfg.gates.get("left_right") and not consistent:
        result.fail("a small right-translated sup came with a large left-translated one")
    return result


def run_continuity(cfg) -> ExperimentResult:
    """Oscillation of (τ, t) ↦ ⨏_0^t τ·φ on nested grids."""
    group = get_group(cfg.group)
    p = cfg.make_seminorm(group.space_id)
    phi = _algebra_curve(group, cfg.curve)
    L = cfg.grids.get("L", [0.0, float(cfg.grid("ell"))])
    frame = continuity_probe(phi, L, cfg.grid("levels"), p, cfg.stepper_config)
    frame.insert(0, "seminorm", p.label)
    frame.insert(0, "curve", cfg.curve["name"])
    frame.insert(0, "group", group.group_id)
    frame = frame[["group", "curve", "seminorm", "level", "oscillation"]]
    result = ExperimentResult({"continuity.csv": frame})
    metrics = ConvergenceMetrics(frame, x="level", y="oscillation")
    result.summary["oscillations"] = frame["oscillation"].tolist()
    if "monotone_slack" in cfg.gates and not metrics.is_monotone(cfg.gates["monotone_slack"], atol=1e-12):
        result.fail("oscillation grows under refinement")
    return result


RUNNERS = {
    "continuity": run_continuity,
    "convergence": run_convergence,
    "estimates": run_estimates,
    "identities": run_identities,
    "trotter": run_trotter,
}


def run_experiment(cfg) -> ExperimentResult:
    logger.info("running %s experiment on %s (seed %d)", cfg.kind, cfg.group, cfg.seed)
    result = RUNNERS[cfg.kind](cfg)
    logger.info("%s experiment finished with status %d", cfg.kind, result.status)
    return result
