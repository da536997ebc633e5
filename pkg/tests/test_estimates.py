import numpy as np
import pytest

from prodint.curves import constant_curve
from prodint.engine import StepperConfig
from prodint.errors import ConfigurationError, DomainError
from prodint.estimates import (
    ProbeReport,
    adjoint_domination_probe,
    is_violation,
    merge_reports,
    mu_convexity_probe,
    integral_bound_check,
    integral_bound_probe,
    random_algebra_curve,
    sample_algebra_ball,
    sample_group_ball,
    seminorm_search,
    two_curve_bound_check,
    two_curve_probe,
)
from prodint.groups import get_group
from prodint.space import Seminorm
from prodint.utils import Config

FAST = StepperConfig(steps_per_unit=128)


def test_violation_tolerance():
    assert not is_violation(-1e-15, 0.0)
    assert not is_violation(-1e-11, 1.0)
    assert is_violation(-1e-6, 1.0)
    assert is_violation(-1e-13, 0.0)
    assert not is_violation(-1e-6, 1.0, rtol=1e-5)


def test_report_records_the_worst_margin():
    report = ProbeReport("demo", "so3", "p", "q")
    report.record(1.0, 0.5, {"i": 0})
    report.record(1.0, 1.5, {"i": 1})
    report.record(1.0, 0.9, {"i": 2})
    assert report.samples == 3 and report.violations == 1
    assert report.worst_margin == pytest.approx(-0.5)
    assert report.witness["i"] == 1
    assert not report.passed
    report.record_escape(1.0, {"i": 3}, distance=2.0)
    assert report.worst_margin == -np.inf and report.extras["chart_escapes"] == 1


def test_merge_sums_counts_and_keeps_the_minimum():
    first = ProbeReport("demo", "so3", "p", "q", samples=10, violations=0, worst_margin=0.2, extras={"curves": 2})
    second = ProbeReport("demo", "so3", "p", "q", samples=5, violations=2, worst_margin=-0.1, extras={"curves": 3})
    merged = merge_reports([first, second])
    assert merged.samples == 15 and merged.violations == 2
    assert merged.worst_margin == pytest.approx(-0.1)
    assert merged.extras["curves"] == 5
    with pytest.raises(ConfigurationError):
        merge_reports([])


def test_samplers_stay_in_the_ball(so3):
    rng = np.random.default_rng(0)
    xs = sample_algebra_ball(so3, rng, 0.5, 200)
    coefficients = np.linalg.lstsq(so3._basis.T, xs.T, rcond=None)[0]
    assert np.all(np.linalg.norm(coefficients, axis=0) <= 0.5 + 1e-12)
    assert all(so3.validate(so3.element(g)) == [] for g in sample_group_ball(so3, rng, 0.5, 5))
    with pytest.raises(DomainError):
        sample_algebra_ball(so3, rng, -1.0)


def test_random_curves_are_bounded_and_reproducible(so3):
    phi = random_algebra_curve(so3, np.random.default_rng(4), pieces=3)
    again = random_algebra_curve(so3, np.random.default_rng(4), pieces=3)
    assert len(phi) == 3
    for t in np.linspace(0.0, 1.0, 11):
        assert np.array_equal(phi.evaluate_array(t), again.evaluate_array(t))
        coefficients = np.linalg.lstsq(so3._basis.T, phi.evaluate_array(t), rcond=None)[0]
        assert np.max(np.abs(coefficients)) <= 1.0 + 1e-12


def test_mu_convexity_holds_with_equal_seminorms_on_abelian_groups():
    group = get_group("abelian:4")
    p = Seminorm(group.space_id)
    report = mu_convexity_probe(p, p, group, samples=1500, seed=0)
    assert report.samples == 1500
    assert report.violations == 0


def test_mu_convexity_single_factor_is_tight(so3):
    p = Seminorm(so3.space_id)
    report = mu_convexity_probe(p, p, so3, samples=300, seed=2, max_factors=1)
    assert report.violations == 0
    assert report.worst_margin == pytest.approx(0.0, abs=1e-12)


def test_probes_are_reproducible_and_thread_independent(heis):
    p = Seminorm(heis.space_id)
    q = p.scaled(1.25)
    Config.set_threads(1)
    serial = mu_convexity_probe(p, q, heis, samples=2500, seed=9)
    Config.set_threads(4)
    threaded = mu_convexity_probe(p, q, heis, samples=2500, seed=9)
    assert serial.to_row() == threaded.to_row()
    assert serial.witness == threaded.witness


def test_search_on_so3_finds_a_passing_scale(so3):
    p = Seminorm(so3.space_id)
    result = seminorm_search(p, lambda q: mu_convexity_probe(p, q, so3, samples=1000, seed=0), [1.0, 1.25, 1.5, 2.0])
    assert result.found
    assert result.selected.violations == 0
    assert result.seminorm.scale == result.scale


def test_search_on_heisenberg_passes_by_scale_two(heis):
    p = Seminorm(heis.space_id)
    grid = [1.0, 1.25, 1.5, 2.0]
    result = seminorm_search(p, lambda q: mu_convexity_probe(p, q, heis, samples=1000, seed=0), grid)
    assert result.found and result.scale <= 2.0
    passed = [report.passed for report in result.reports]
    assert passed == sorted(passed)


def test_undersized_seminorm_is_caught(so3):
    p = Seminorm(so3.space_id)
    report = mu_convexity_probe(p, p.scaled(0.5), so3, samples=200, seed=0)
    assert report.violations > 0
    assert report.worst_margin < 0


def test_search_reports_not_found():
    def failing(q):
        return ProbeReport("demo", "so3", "p", q.label, samples=1, violations=1, worst_margin=-1.0)

    result = seminorm_search(Seminorm("mat:3"), failing, [1.0, 2.0])
    assert not result.found and result.scale is None and result.seminorm is None
    assert result.selected.q == "frobenius(2)"


@pytest.mark.parametrize("grid, mode", [([], "scale"), ([2.0, 1.0], "scale"), ([1.0], "bisect")])
def test_search_rejects_bad_grids(grid, mode):
    with pytest.raises(ConfigurationError):
        seminorm_search(Seminorm("mat:3"), lambda q: ProbeReport("demo", "so3", "p", "q"), grid, mode)


def test_ladder_search_finds_the_dominating_weight_index():
    group = get_group("abelian:16")
    p = Seminorm(group.space_id, "weighted-sup", weight_index=1)
    result = seminorm_search(
        p, lambda q: mu_convexity_probe(p, q, group, samples=500, seed=0), [0, 1, 2], mode="ladder"
    )
    assert result.scale == 1
    assert not result.reports[0].passed


def test_adjoint_domination_on_so3_is_exact(so3):
    q = Seminorm(so3.space_id)
    elements = sample_group_ball(so3, np.random.default_rng(0), 0.5, 25)
    report = adjoint_domination_probe(q, q, so3, elements, samples_per_element=20, seed=1)
    assert report.samples == 500
    assert report.violations == 0


def test_adjoint_domination_at_the_identity_has_zero_margin(heis):
    q = Seminorm(heis.space_id)
    report = adjoint_domination_probe(q, q, heis, [heis.identity()], samples_per_element=50)
    assert report.violations == 0
    assert report.worst_margin == pytest.approx(0.0, abs=1e-15)


def test_adjoint_domination_fails_below_the_adjoint_norm(heis):
    q = Seminorm(heis.space_id)
    elements = sample_group_ball(heis, np.random.default_rng(0), 0.5, 5)
    report = adjoint_domination_probe(q, q.scaled(0.5), heis, elements, samples_per_element=20)
    assert report.violations > 0


def test_integral_bound_with_zero_curve_has_zero_margin(so3):
    p = Seminorm(so3.space_id)
    report = integral_bound_check(p, p, constant_curve(so3.zero()), FAST)
    assert report.violations == 0
    assert report.worst_margin == pytest.approx(0.0, abs=1e-15)


def test_integral_bound_rescales_to_a_unit_budget(so3):
    p = Seminorm(so3.space_id)
    phi = constant_curve(so3.hat([0.0, 0.0, 2.0]))
    report = integral_bound_check(p, p, phi, FAST)
    assert report.extras["rescale_ppm"] == int(round(1e6 / (2.0 * np.sqrt(2.0))))
    assert report.violations == 0


def test_integral_bound_on_abelian_and_so3(so3):
    for group in (get_group("abelian:4"), so3):
        p = Seminorm(group.space_id)
        report = integral_bound_probe(p, p, group, curves=10, seed=3, cfg=FAST, pieces=2)
        assert report.violations == 0
        assert report.extras["curves"] == 10


def test_integral_bound_search_on_heisenberg(heis):
    p = Seminorm(heis.space_id)
    result = seminorm_search(p, lambda q: integral_bound_probe(p, q, heis, curves=10, seed=0, cfg=FAST),
                             [1.0, 1.25, 1.5, 2.0])
    assert result.found and result.scale <= 2.0


def test_integral_bound_control_run_with_undersized_seminorm(so3):
    p = Seminorm(so3.space_id)
    phi = constant_curve(so3.hat([0.0, 0.0, 3.0]))
    report = integral_bound_check(p, p.scaled(0.5), phi, FAST)
    assert report.violations >= 1


def test_two_curve_with_equal_curves_is_silent(so3):
    p = Seminorm(so3.space_id)
    phi = random_algebra_curve(so3, np.random.default_rng(0))
    report = two_curve_bound_check(p, p, phi, phi, FAST)
    assert report.violations == 0


def test_two_curve_probe_with_equal_seminorms(so3):
    for group in (get_group("abelian:3"), so3):
        p = Seminorm(group.space_id)
        report = two_curve_probe(p, p, group, pairs=8, seed=5, cfg=FAST)
        assert report.violations == 0
        assert report.samples == 8 * 128


def test_two_curve_counts_points_outside_the_ball(so3):
    p = Seminorm(so3.space_id)
    phi = constant_curve(so3.hat([0.0, 0.0, 1.5]))
    psi = constant_curve(so3.hat([0.0, 0.1, 1.5]))
    report = two_curve_bound_check(p, p, phi, psi, FAST, ball_radius=0.5)
    assert report.extras["escapes"] > 0


def test_two_curve_control_run_with_undersized_seminorm(so3):
    p = Seminorm(so3.space_id)
    phi = constant_curve(so3.zero())
    psi = constant_curve(so3.hat([0.0, 0.0, 1.0]))
    report = two_curve_bound_check(p, p.scaled(0.5), phi, psi, FAST)
    assert report.violations >= 1
    assert report.worst_margin < 0


SEARCH_GRID = [1.0, 1.25, 1.5, 2.0]


@pytest.mark.slow
@pytest.mark.parametrize("group_id", ["so3", "heis3"])
def test_integral_bound_over_a_hundred_curves(group_id):
    group = get_group(group_id)
    p = Seminorm(group.space_id)
    result = seminorm_search(
        p, lambda q: integral_bound_probe(p, q, group, curves=100, seed=0, cfg=FAST), SEARCH_GRID
    )
    assert result.found and result.scale <= 2.0
    assert result.selected.violations == 0
    assert result.selected.extras["curves"] == 100
    control = integral_bound_probe(p, p.scaled(0.5), group, curves=100, seed=0, cfg=FAST)
    assert control.violations >= 1


@pytest.mark.slow
@pytest.mark.parametrize("group_id", ["so3", "heis3"])
def test_two_curve_bound_over_a_hundred_pairs(group_id):
    group = get_group(group_id)
    p = Seminorm(group.space_id)
    result = seminorm_search(p, lambda m: two_curve_probe(p, m, group, pairs=100, seed=0, cfg=FAST), SEARCH_GRID)
    assert result.found and result.scale <= 2.0
    assert result.selected.violations == 0
    assert result.selected.samples == 100 * 128
    control = two_curve_probe(p, p.scaled(0.5), group, pairs=100, seed=0, cfg=FAST)
    assert control.violations >= 1
