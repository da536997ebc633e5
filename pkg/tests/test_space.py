import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from prodint.curves.piecewise import constant_curve, curve_from_function
from prodint.errors import ConfigurationError, DomainError
from prodint.groups.registry import get_group
from prodint.space import (
    ModelVector,
    Seminorm,
    SeminormFamily,
    l1_seminorm,
    matrix_size,
    seminorm_eval,
    space_dimension,
    sup_seminorm,
)

finite = st.floats(min_value=-10.0, max_value=10.0, allow_nan=False, allow_infinity=False)
vectors4 = st.lists(finite, min_size=4, max_size=4)


def test_space_dimensions():
    assert space_dimension("mat:3") == 9
    assert space_dimension("seq:5") == 5
    assert matrix_size("mat:4") == 4
    assert matrix_size("seq:4") is None


@pytest.mark.parametrize("space_id", ["foo", "mat:0", "seq:", "mat:2:3", ""])
def test_unknown_space_is_rejected(space_id):
    with pytest.raises(ConfigurationError):
        space_dimension(space_id)


def test_model_vector_arithmetic():
    u = ModelVector([1.0, 2.0, 3.0], "seq:3")
    v = ModelVector([0.5, -1.0, 0.0], "seq:3")
    assert_allclose((u + v).coordinates, [1.5, 1.0, 3.0])
    assert_allclose((u - v).coordinates, [0.5, 3.0, 3.0])
    assert_allclose((2 * u).coordinates, [2.0, 4.0, 6.0])
    assert (-u).allclose(ModelVector([-1.0, -2.0, -3.0], "seq:3"))
    assert ModelVector([1, 2, 3, 4], "mat:2").as_matrix().tolist() == [[1.0, 2.0], [3.0, 4.0]]


def test_model_vector_rejects_wrong_length_and_mixed_spaces():
    with pytest.raises(ConfigurationError):
        ModelVector([1.0, 2.0], "seq:3")
    with pytest.raises(ConfigurationError):
        ModelVector([1.0] * 4, "seq:4") + ModelVector([1.0] * 4, "mat:2")


def test_model_vector_is_read_only():
    v = ModelVector.basis("seq:3", 1)
    with pytest.raises(ValueError):
        v.coordinates[0] = 5.0


def test_seminorm_kinds():
    assert Seminorm("seq:2")([3.0, 4.0]) == pytest.approx(5.0)
    assert Seminorm("mat:2", "operator")(np.diag([3.0, 1.0]).ravel()) == pytest.approx(3.0)
    assert Seminorm("seq:3", "operator")([1.0, -7.0, 2.0]) == pytest.approx(7.0)
    assert Seminorm("seq:3", "weighted-sup", weight_index=1)([1.0, 1.0, 1.0]) == pytest.approx(3.0)
    assert Seminorm("seq:3", "weighted-sup", weight_index=1, ladder="geometric")([1.0, 1.0, 1.0]) == pytest.approx(4.0)


def test_seminorm_scale_and_label():
    p = Seminorm("seq:2")
    q = p.scaled(1.5)
    assert q([3.0, 4.0]) == pytest.approx(7.5)
    assert q.label == "frobenius(1.5)"
    assert p.with_weight_index(2).weight_index == 2
    assert "k=2" in Seminorm("seq:2", "weighted-sup", weight_index=2).label


@pytest.mark.parametrize(
    "kwargs",
    [{"kind": "nuclear"}, {"ladder": "harmonic"}, {"scale": 0.0}, {"weight_index": -1}],
)
def test_seminorm_rejects_bad_parameters(kwargs):
    with pytest.raises(ConfigurationError):
        Seminorm("seq:3", **kwargs)


def test_seminorm_evaluates_algebra_elements_and_checks_space():
    group = get_group("so3")
    X = group.hat([0.0, 0.0, 1.0])
    assert seminorm_eval(Seminorm("mat:3"), X) == pytest.approx(np.sqrt(2.0))
    with pytest.raises(ConfigurationError):
        seminorm_eval(Seminorm("mat:2"), X)


@settings(max_examples=50, deadline=None)
@given(vectors4, vectors4, st.sampled_from(["frobenius", "operator", "weighted-sup"]))
def test_triangle_inequality(x, y, kind):
    for space in ("seq:4", "mat:2"):
        p = Seminorm(space, kind, weight_index=1)
        x_arr, y_arr = np.asarray(x), np.asarray(y)
        assert p(x_arr + y_arr) <= p(x_arr) + p(y_arr) + 1e-9


@settings(max_examples=50, deadline=None)
@given(vectors4, st.floats(min_value=-5.0, max_value=5.0, allow_nan=False))
def test_absolute_homogeneity(x, c):
    p = Seminorm("mat:2", "operator")
    assert p(c * np.asarray(x)) == pytest.approx(abs(c) * p(np.asarray(x)), rel=1e-9, abs=1e-12)


def test_sup_seminorm_of_constant_curve():
    group = get_group("abelian:3")
    curve = constant_curve(group.algebra([1.0, -2.0, 2.0]), 0.0, 1.0)
    assert sup_seminorm(Seminorm("seq:3"), curve) == pytest.approx(3.0)


def test_sup_seminorm_of_samples_and_empty_input():
    p = Seminorm("seq:2")
    assert sup_seminorm(p, [np.array([1.0, 0.0]), np.array([0.0, 2.0])]) == pytest.approx(2.0)
    with pytest.raises(DomainError):
        sup_seminorm(p, [])


def test_sup_seminorm_of_linear_curve_hits_the_endpoint():
    group = get_group("abelian:1")
    curve = curve_from_function(group, lambda t: np.array([t]), 0.0, 2.0)
    assert sup_seminorm(Seminorm("seq:1"), curve, grid=11) == pytest.approx(2.0)


def test_l1_seminorm():
    group = get_group("abelian:2")
    curve = constant_curve(group.algebra([3.0, 4.0]), 0.0, 2.0)
    assert l1_seminorm(Seminorm("seq:2"), curve) == pytest.approx(10.0)
    linear = curve_from_function(group, lambda t: np.array([t, 0.0]), 0.0, 1.0)
    assert l1_seminorm(Seminorm("seq:2"), linear, steps_per_piece=10) == pytest.approx(0.5)
    with pytest.raises(ConfigurationError):
        l1_seminorm(Seminorm("seq:3"), linear)


def test_weight_ladder_is_ordered():
    family = SeminormFamily.ladder("seq:16", [0, 1, 2, 3])
    samples = np.random.default_rng(0).standard_normal((50, 16))
    assert len(family) == 4
    assert family.is_ordered(samples)
    assert not SeminormFamily.dominates(family[2], family[0], samples)


def test_family_rejects_mixed_spaces():
    with pytest.raises(ConfigurationError):
        SeminormFamily([Seminorm("seq:2"), Seminorm("seq:3")])
    with pytest.raises(ConfigurationError):
        SeminormFamily([])


def test_seminorm_eval_worked_values():
    assert seminorm_eval(Seminorm("mat:2"), ModelVector.zeros("mat:2")) == 0.0
    assert seminorm_eval(Seminorm("mat:2", scale=2.0), np.eye(2).ravel()) == pytest.approx(2.0 * np.sqrt(2.0))
    geometric = Seminorm("seq:8", "weighted-sup", weight_index=3, ladder="geometric")
    assert seminorm_eval(geometric, ModelVector.basis("seq:8", 2)) == pytest.approx(64.0)


@pytest.mark.parametrize(
    "q, m",
    [
        (Seminorm("seq:4", "operator"), Seminorm("seq:4", "frobenius")),
        (Seminorm("seq:4", "weighted-sup", weight_index=1), Seminorm("seq:4", "weighted-sup", weight_index=3)),
        (Seminorm("seq:4"), Seminorm("seq:4", scale=1.25)),
    ],
)
@pytest.mark.parametrize("seed", [0, 1, 2])
def test_l1_seminorm_is_monotone_under_domination(q, m, seed):
    group = get_group("abelian:4")
    rng = np.random.default_rng(seed)
    a, b, omega = rng.uniform(-1.0, 1.0, (3, 4))

    curve = curve_from_function(group, lambda t: a * np.sin(3.0 * omega * t) + b * t, 0.0, 2.0)
    samples = curve.sample(np.linspace(0.0, 2.0, 101))
    assert SeminormFamily.dominates(q, m, samples)
    assert l1_seminorm(q, curve, steps_per_piece=200) <= l1_seminorm(m, curve, steps_per_piece=200) + 1e-12
