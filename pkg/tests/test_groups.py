import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose
from scipy.linalg import expm

from prodint.errors import ConfigurationError, GroupMismatchError, OutOfChartDomain
from prodint.groups import Group, SpecialOrthogonal3, get_group, list_groups, multiply, so3_generators
from prodint.space import Seminorm

small = st.floats(min_value=-0.5, max_value=0.5, allow_nan=False, allow_infinity=False)
so3_coefficients = st.lists(small, min_size=3, max_size=3)


def test_registry_caches_and_normalises_ids():
    assert get_group("so3") is get_group("so3")
    assert get_group("so3@exponential") is get_group("so3")
    assert get_group("so3@cayley").group_id == "so3@cayley"
    assert get_group("so3@cayley").chart == "cayley"
    assert get_group("abelian").group_id == "abelian:16"


@pytest.mark.parametrize("group_id", ["so4", "gl5", "abelian:0", "so3@stereographic", "diagop:4@cayley", "so3:3"])
def test_registry_rejects_unknown_ids(group_id):
    with pytest.raises(ConfigurationError) as info:
        get_group(group_id)
    assert info.value.key == group_id


def test_list_groups_is_sorted_and_stable():
    groups = list_groups()
    assert groups == sorted(groups)
    assert "so3" in groups and "abelian:D" in groups
    assert list_groups() == groups


def test_group_dimensions():
    assert get_group("so3").algebra_dimension == 3
    assert get_group("se3").algebra_dimension == 6
    assert get_group("heis3").algebra_dimension == 3
    assert get_group("ut3").algebra_dimension == 6
    assert get_group("gl2").algebra_dimension == 4
    assert get_group("abelian:5").dimension == 5


@settings(max_examples=40, deadline=None)
@given(so3_coefficients)
def test_so3_rodrigues_matches_expm(coefficients):
    group = get_group("so3")
    X = group.hat(coefficients)
    assert_allclose(group.exp(X).value, expm(X.vector.as_matrix()), atol=1e-13)


@settings(max_examples=40, deadline=None)
@given(so3_coefficients)
def test_so3_chart_round_trip(coefficients):
    group = get_group("so3")
    X = group.hat(coefficients)
    assert_allclose(group.chart_forward(group.exp(X)).coordinates, X.coordinates, atol=1e-12)


@pytest.mark.parametrize("group_id", ["so3@cayley", "gl2@cayley", "heis3", "ut3", "se3", "gl3"])
def test_chart_round_trip_near_identity(group_id):
    group = get_group(group_id)
    rng = np.random.default_rng(3)
    X = group.hat(0.2 * rng.uniform(-1.0, 1.0, group.algebra_dimension))
    g = group.chart_backward(X)
    assert_allclose(group.chart_forward(g).coordinates, X.coordinates, atol=1e-10)


def test_heisenberg_exp_and_log_are_exact():
    group = get_group("heis3")
    X = group.hat([0.3, -0.2, 0.1])
    g = group.exp(X)
    assert_allclose(g.value, expm(X.vector.as_matrix()), atol=1e-14)
    assert_allclose(group.chart_forward(g).coordinates, X.coordinates, atol=1e-15)


def test_chart_distance_and_escape():
    group = get_group("so3")
    quarter_turn = group.exp(group.hat([0.0, 0.0, np.pi / 2]))
    assert group.chart_distance(quarter_turn) == pytest.approx(np.sqrt(2.0))
    assert not group.in_chart(quarter_turn)
    with pytest.raises(OutOfChartDomain) as info:
        group.chart_forward(quarter_turn)
    assert info.value.radius == 1.0
    assert group.chart_forward(group.identity()).coordinates.tolist() == [0.0] * 9


def test_power_matches_scaled_exponential():
    group = get_group("so3")
    X = group.hat([0.0, 0.0, 0.4])
    assert_allclose(group.power(group.exp(X), 5).value, group.exp(5 * X).value, atol=1e-12)
    assert_allclose(group.power(group.exp(X), -2).value, group.exp(-2 * X).value, atol=1e-12)
    assert_allclose(group.power(group.exp(X), 0).value, np.eye(3))


def test_adjoint_preserves_frobenius_norm_on_so3():
    group = get_group("so3")
    rng = np.random.default_rng(1)
    p = Seminorm(group.space_id)
    for _ in range(10):
        g = group.exp(group.hat(rng.uniform(-1.0, 1.0, 3)))
        X = group.hat(rng.uniform(-1.0, 1.0, 3))
        assert p(group.adjoint(g, X)) == pytest.approx(p(X), rel=1e-12)


def test_bracket_is_antisymmetric_and_matches_generators():
    group = get_group("so3")
    lx, ly, lz = so3_generators()
    X, Y = group.algebra(lx.ravel()), group.algebra(ly.ravel())
    assert_allclose(group.bracket(X, Y).coordinates, lz.ravel(), atol=1e-15)
    assert_allclose((group.bracket(X, Y) + group.bracket(Y, X)).coordinates, 0.0)


def test_validate_reports_violations():
    so3 = get_group("so3")
    assert so3.validate(so3.exp(so3.hat([0.1, 0.2, 0.3]))) == []
    assert "orthogonality" in so3.validate(so3.element(2.0 * np.eye(3)))
    assert so3.validate(get_group("gl3").identity()) == ["group"]
    assert so3.validate_algebra(so3.algebra(np.eye(3).ravel())) == ["skew"]
    heis = get_group("heis3")
    assert heis.validate(heis.element(np.eye(3) + np.tril(np.ones((3, 3)), -1))) == ["unitriangular"]
    diag = get_group("diagop:3")
    assert diag.validate(diag.element([1.0, -1.0, 2.0])) == ["positive-diagonal"]


def test_mixed_groups_raise():
    with pytest.raises(GroupMismatchError):
        multiply(get_group("so3").identity(), get_group("gl3").identity())
    with pytest.raises(GroupMismatchError):
        get_group("so3").exp(get_group("gl3").zero())


def test_element_shape_is_checked():
    with pytest.raises(ConfigurationError):
        get_group("gl2").element(np.eye(3))
    with pytest.raises(ConfigurationError):
        get_group("so3").hat([1.0, 2.0])


def test_abelian_group_is_addition():
    group = get_group("abelian:3")
    g = group.exp(group.algebra([1.0, 2.0, 3.0]))
    h = group.exp(group.algebra([0.5, 0.5, 0.5]))
    assert_allclose(group.multiply(g, h).value, [1.5, 2.5, 3.5])
    assert_allclose(group.inverse(g).value, [-1.0, -2.0, -3.0])
    assert_allclose(group.power(g, 3).value, [3.0, 6.0, 9.0])
    assert group.in_chart(group.exp(group.algebra([1e6, 0.0, 0.0])))


def test_diagonal_operator_chart_is_elementwise_log():
    group = get_group("diagop:4")
    X = group.algebra([0.1, -0.2, 0.3, 0.0])
    assert_allclose(group.exp(X).value, np.exp([0.1, -0.2, 0.3, 0.0]))
    assert_allclose(group.chart_forward(group.exp(X)).coordinates, X.coordinates, atol=1e-15)


@pytest.mark.parametrize("group_id", ["gl2", "so3", "heis3", "ut3"])
def test_closed_form_omega_matches_numerical_chart_derivative(group_id):
    group = get_group(group_id)
    rng = np.random.default_rng(5)
    x = group.hat(0.3 * rng.uniform(-1.0, 1.0, group.algebra_dimension)).coordinates
    xdot = group.hat(rng.uniform(-1.0, 1.0, group.algebra_dimension)).coordinates
    assert_allclose(group.omega(x, xdot).coordinates, Group._omega(group, x, xdot), atol=1e-7)


def test_omega_at_zero_is_identity_map():
    group = get_group("gl2")
    xdot = np.array([0.3, -0.1, 0.2, 0.5])
    assert_allclose(group.omega(np.zeros(4), xdot).coordinates, xdot, atol=1e-12)


def test_discrepancy_of_equal_elements_is_zero():
    group = get_group("se3")
    g = group.exp(group.hat([0.1, 0.0, 0.2, 1.0, -1.0, 0.5]))
    assert group.discrepancy(g, g, Seminorm(group.space_id)) == pytest.approx(0.0, abs=1e-12)


def test_chart_suffix_is_part_of_the_constructed_id():
    assert SpecialOrthogonal3("cayley").group_id == "so3@cayley"
    assert SpecialOrthogonal3().group_id == "so3"
    cayley = get_group("gl2@cayley")
    assert cayley.group_id == "gl2@cayley"
    assert get_group("gl2").group_id == "gl2"
    assert get_group("gl2@cayley") is cayley


def _random_elements(group, rng, count, radius=0.5):
    return [group.exp(group.hat(radius * rng.uniform(-1.0, 1.0, group.algebra_dimension))) for _ in range(count)]


@pytest.mark.parametrize("group_id", ["so3", "se3", "heis3", "ut3", "gl2", "gl3", "diagop:4"])
def test_adjoint_is_a_homomorphism_and_preserves_brackets(group_id):
    group = get_group(group_id)
    rng = np.random.default_rng(11)
    for g, h in zip(_random_elements(group, rng, 5), _random_elements(group, rng, 5)):
        X, Y = (group.hat(rng.uniform(-1.0, 1.0, group.algebra_dimension)) for _ in range(2))
        assert_allclose(
            group.adjoint(multiply(g, h), X).coordinates,
            group.adjoint(g, group.adjoint(h, X)).coordinates,
            atol=1e-12,
        )
        assert_allclose(
            group.adjoint(g, group.bracket(X, Y)).coordinates,
            group.bracket(group.adjoint(g, X), group.adjoint(g, Y)).coordinates,
            atol=1e-12,
        )


@pytest.mark.parametrize("group_id", ["so3", "se3", "heis3", "ut3", "gl2", "abelian:4", "diagop:4"])
def test_exp_of_the_negative_is_the_inverse(group_id):
    group = get_group(group_id)
    rng = np.random.default_rng(5)
    for _ in range(5):
        X = group.hat(rng.uniform(-1.0, 1.0, group.algebra_dimension))
        product = multiply(group.exp(X), group.exp(-X))
        assert_allclose(product.value, group.identity().value, atol=1e-13)


def test_adjoint_of_a_quarter_turn_about_z():
    group = get_group("so3")
    lx, ly, lz = so3_generators()
    quarter = group.exp(group.algebra(0.5 * np.pi * lz.ravel()))
    assert_allclose(group.adjoint(quarter, group.algebra(lx.ravel())).coordinates, ly.ravel(), atol=1e-14)


def test_validate_rejects_reflections_and_near_singular_elements():
    so3 = get_group("so3")
    assert so3.validate(so3.element(np.diag([1.0, 1.0, -1.0]))) == ["orientation"]
    gl2 = get_group("gl2")
    degenerate = gl2.element([[1.0, 0.0], [0.0, 1e-18]])
    assert np.linalg.det(degenerate.value) == pytest.approx(1e-18)
    assert gl2.validate(degenerate) == ["near-singular"]
    assert gl2.validate(gl2.element([[2.0, 1.0], [0.0, 0.5]])) == []
