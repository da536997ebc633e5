import numpy as np
import pytest
from numpy.testing import assert_allclose

from prodint.curves import (
    ALGEBRA_CURVES,
    GROUP_CURVES,
    GroupCurve,
    PiecewiseCurve,
    Reparametrization,
    Trajectory,
    combine,
    concatenate,
    constant_curve,
    curve_from_function,
    exp_product_curve,
    list_curves,
    make_algebra_curve,
    make_group_curve,
    one_parameter_curve,
    refine,
    reparametrize,
    rescale_group_curve,
    restrict,
    scale_curve,
)
from prodint.errors import ConfigurationError, ContractError, DomainError, GroupMismatchError
from prodint.groups import get_group


@pytest.fixture
def line():
    group = get_group("abelian:2")
    return curve_from_function(group, lambda t: np.array([t, 1.0]), 0.0, 2.0)


@pytest.fixture
def step():
    group = get_group("abelian:1")
    return PiecewiseCurve(group, [0.0, 0.5, 1.0], [lambda t: np.array([1.0]), lambda t: np.array([2.0])])


def test_breakpoints_must_increase_and_match_pieces():
    group = get_group("abelian:1")
    with pytest.raises(DomainError):
        PiecewiseCurve(group, [0.0, 0.5, 0.5], [lambda t: t, lambda t: t])
    with pytest.raises(ConfigurationError):
        PiecewiseCurve(group, [0.0, 1.0], [lambda t: t, lambda t: t])
    with pytest.raises(DomainError):
        PiecewiseCurve(group, [0.0], [])


def test_single_value_at_a_breakpoint_uses_the_left_piece(step):
    assert step.evaluate_array(0.5)[0] == 1.0
    assert step.evaluate_array(0.5 + 1e-9)[0] == 2.0
    assert step.evaluate_array(1.0)[0] == 2.0
    assert step.cell_piece(0.4, 0.6) == 1
    assert step.cell_piece(0.3, 0.5) == 0


def test_evaluation_outside_the_domain_raises(step):
    with pytest.raises(DomainError):
        step.evaluate_array(1.5)


def test_constant_curve_and_scaling():
    group = get_group("so3")
    X = group.hat([0.1, 0.2, 0.3])
    curve = constant_curve(X, 0.0, 3.0)
    assert_allclose(curve(2.0).coordinates, X.coordinates)
    assert_allclose(scale_curve(2.0, curve)(1.0).coordinates, 2.0 * X.coordinates)
    with pytest.raises(DomainError):
        constant_curve(X, 1.0, 1.0)


def test_restrict_keeps_values_and_breakpoints(step):
    part = restrict(step, 0.25, 0.75)
    assert part.breakpoints == (0.25, 0.5, 0.75)
    assert part.evaluate_array(0.3)[0] == 1.0
    assert part.evaluate_array(0.7)[0] == 2.0
    inner = restrict(step, 0.6, 0.9)
    assert len(inner) == 1 and inner.evaluate_array(0.6)[0] == 2.0
    with pytest.raises(DomainError):
        restrict(step, 0.5, 1.5)


def test_concatenate_joins_adjacent_domains(step):
    group = step.group
    tail = curve_from_function(group, lambda t: np.array([t]), 1.0, 2.0)
    joined = concatenate(step, tail)
    assert joined.breakpoints == (0.0, 0.5, 1.0, 2.0)
    assert joined.evaluate_array(1.5)[0] == pytest.approx(1.5)
    with pytest.raises(DomainError):
        concatenate(step, curve_from_function(group, lambda t: np.array([t]), 1.5, 2.0))
    with pytest.raises(GroupMismatchError):
        concatenate(step, curve_from_function(get_group("abelian:2"), lambda t: np.zeros(2), 1.0, 2.0))


def test_refine_adds_breakpoints_without_changing_values(step):
    fine = refine(step, [0.25, 0.5, 0.75, 3.0])
    assert fine.breakpoints == (0.0, 0.25, 0.5, 0.75, 1.0)
    for t in np.linspace(0.0, 1.0, 21):
        assert fine.evaluate_array(t)[0] == step.evaluate_array(t)[0]


def test_combine_is_pointwise_linear(line, step):
    other = curve_from_function(line.group, lambda t: np.array([1.0, t]), 0.0, 2.0, breakpoints=[1.0])
    difference = combine(other, line, 1.0, -1.0)
    assert difference.breakpoints == (0.0, 1.0, 2.0)
    assert_allclose(difference.evaluate_array(1.5), [1.0 - 1.5, 1.5 - 1.0])
    with pytest.raises(GroupMismatchError):
        combine(line, step)
    with pytest.raises(DomainError):
        combine(line, curve_from_function(line.group, lambda t: np.zeros(2), 0.0, 1.0))


def test_reparametrize_pulls_back_with_the_derivative(line):
    rho = Reparametrization.power(2.0, 0.0, 1.0)
    pulled = reparametrize(line, rho)
    for t in (0.0, 0.3, 0.9):
        assert_allclose(pulled.evaluate_array(t), 2.0 * t * np.array([t * t, 1.0]))


def test_reparametrize_finds_breakpoint_preimages(step):
    pulled = reparametrize(step, Reparametrization.affine(0.5, 0.0, 0.0, 2.0))
    assert pulled.breakpoints == pytest.approx((0.0, 1.0, 2.0))
    assert pulled.evaluate_array(1.5)[0] == pytest.approx(1.0)
    assert pulled.evaluate_array(0.5)[0] == pytest.approx(0.5)


def test_reparametrize_rejects_leaving_the_domain(step):
    with pytest.raises(DomainError):
        reparametrize(step, Reparametrization.affine(2.0, 0.0, 0.0, 1.0))


def test_shift_moves_a_curve(line):
    chi = restrict(line, 0.0, 0.5)
    moved = reparametrize(chi, Reparametrization.shift(1.0, 1.0, 1.5))
    assert moved.start == 1.0 and moved.end == 1.5
    assert_allclose(moved.evaluate_array(1.2), chi.evaluate_array(0.2))


def test_reparametrization_domain_checks():
    with pytest.raises(DomainError):
        Reparametrization.identity(1.0, 1.0)
    with pytest.raises(DomainError):
        Reparametrization.power(2.0, -1.0, 1.0)


def test_group_curve_closed_form_derivative_is_consistent():
    group = get_group("so3")
    mu = exp_product_curve(group, group.hat([0.3, -0.2, 0.4]).coordinates, group.hat([0.2, 0.3, -0.1]).coordinates)
    assert mu.derivative_consistent()
    assert mu.check_derivative() < 1e-6
    assert_allclose(mu.value(0.0), np.eye(3))


def test_group_curve_numerical_derivative_and_contract():
    group = get_group("gl2")
    X = np.array([0.1, 0.2, -0.3, 0.4])
    numeric = GroupCurve(group, lambda t: group._exp(t * X), 0.0, 1.0)
    exact = one_parameter_curve(group, X)
    assert_allclose(numeric.tangent_array(0.5), exact.tangent_array(0.5), atol=1e-8)
    assert_allclose(numeric.tangent_array(0.0), exact.tangent_array(0.0), atol=1e-8)
    rough = GroupCurve(group, lambda t: group._exp(t * X), 0.0, 1.0, smoothness="C0")
    with pytest.raises(ContractError):
        rough.tangent_array(0.5)
    with pytest.raises(DomainError):
        numeric.value(1.5)


def test_trajectory_lookups():
    group = get_group("abelian:1")
    trajectory = Trajectory(group, [0.0, 0.5, 1.0], [np.array([0.0]), np.array([1.0]), np.array([3.0])])
    assert trajectory.value(0.5)[0] == 1.0
    assert trajectory.value_before(0.75)[0] == 1.0
    assert trajectory.endpoint.value[0] == 3.0
    assert len(trajectory.elements()) == 3
    with pytest.raises(DomainError):
        trajectory.value(0.25)
    with pytest.raises(DomainError):
        trajectory.value_before(-1.0)


def test_rescale_group_curve():
    group = get_group("so3")
    X = group.hat([0.0, 0.0, 1.0]).coordinates
    mu = one_parameter_curve(group, X, 0.0, 1.0)
    mu_tau = rescale_group_curve(mu, 1.5, 2)
    assert mu_tau.end == 0.5
    assert_allclose(mu_tau.value(0.4), mu.value(0.6))
    assert_allclose(mu_tau.tangent_array(0.4), 1.5 * mu.tangent_array(0.6))
    with pytest.raises(DomainError):
        rescale_group_curve(mu, 1.5, 1)


def test_library_builds_named_curves():
    group = get_group("so3")
    phi = make_algebra_curve("sin-axis", group, {"X": [1, 0, 0], "Y": [0, 1, 0], "omega": 2.0}, 0.0, 1.0)
    assert_allclose(phi(0.0).coordinates, group.hat([0.0, 1.0, 0.0]).coordinates)
    linear = make_algebra_curve("linear", group, {"X": [1, 0, 0]})
    assert_allclose(linear(0.5).coordinates, group.hat([0.5, 0.0, 0.0]).coordinates)
    mu = make_group_curve("one-parameter", group, {"X": [0, 0, 1]}, 0.0, 2.0)
    assert mu.end == 2.0


def test_library_rejects_unknown_names_and_missing_parameters():
    with pytest.raises(ConfigurationError):
        make_algebra_curve("spiral", "so3", {"X": [1, 0, 0]})
    with pytest.raises(ConfigurationError) as info:
        make_algebra_curve("const", "so3", {})
    assert info.value.key == "X"
    with pytest.raises(ConfigurationError):
        make_group_curve("exp-product", "so3", {"X": [1, 0, 0], "Y": [0, 1, 0], "power": 0.5})


def test_curve_listing_is_sorted():
    names = list_curves()
    assert names == sorted(names)
    assert set(names) == set(ALGEBRA_CURVES) | set(GROUP_CURVES)
    assert "exp-product" in names


@pytest.fixture
def bent():
    group = get_group("abelian:2")
    return PiecewiseCurve(
        group, [0.0, 1.2, 2.0], [lambda t: np.array([t, 1.0]), lambda t: np.array([t * t, -1.0])]
    )


@pytest.mark.parametrize("a, b", [(2.0, 0.5), (-1.5, 3.0), (0.0, 4.0), (1.0, 1.0)])
def test_scale_curve_composes_multiplicatively(bent, a, b):
    nested = scale_curve(a, scale_curve(b, bent))
    direct = scale_curve(a * b, bent)
    assert nested.breakpoints == bent.breakpoints
    for t in (0.0, 0.4, 1.2, 1.7, 2.0):
        assert_allclose(nested.evaluate_array(t), direct.evaluate_array(t), atol=1e-15)
        assert_allclose(direct.evaluate_array(t), a * b * bent.evaluate_array(t), atol=1e-15)


def test_affine_reparametrize_commutes_with_restrict(bent):
    # ϱ(t) = t/2 + 1/2 maps [0, 2] onto [0.5, 1.5] and [-1, 3] onto [0, 2]
    inner = reparametrize(restrict(bent, 0.5, 1.5), Reparametrization.affine(0.5, 0.5, 0.0, 2.0))
    outer = restrict(reparametrize(bent, Reparametrization.affine(0.5, 0.5, -1.0, 3.0)), 0.0, 2.0)
    assert inner.breakpoints == pytest.approx((0.0, 1.4, 2.0))
    assert outer.breakpoints == pytest.approx(inner.breakpoints)
    for t in np.linspace(0.05, 1.95, 20):
        assert_allclose(inner.evaluate_array(t), outer.evaluate_array(t), atol=1e-12)
    assert_allclose(inner.evaluate_array(1.0), 0.5 * bent.evaluate_array(1.0), atol=1e-15)
