import numpy as np
import pytest

from prodint.curves.piecewise import curve_from_function
from prodint.groups.registry import get_group
from prodint.utils import Config

GL2_A = [0.3, 0.5, -0.2, 0.1]
GL2_B = [0.1, -0.4, 0.6, -0.2]


@pytest.fixture(autouse=True)
def reset_config(monkeypatch):
    monkeypatch.delenv(Config.ENV_THREADS, raising=False)
    yield
    Config.reset()


@pytest.fixture
def so3():
    return get_group("so3")


@pytest.fixture
def heis():
    return get_group("heis3")


@pytest.fixture
def gl2_pair():
    """Two non-commuting generators of gl(2) with Frobenius norms below 1."""
    return np.array(GL2_A), np.array(GL2_B)


@pytest.fixture
def smooth_curve():
    """Factory for t ↦ sin(ωt)·e₀ + cos(ωt)·e₁ + t·e_last in the algebra basis."""

    def make(group, omega=3.0, start=0.0, end=1.0, amplitude=1.0):
        basis = amplitude * group._basis

        def value(t):
            return np.sin(omega * t) * basis[0] + np.cos(omega * t) * basis[1] + t * basis[-1]

        return curve_from_function(group, value, start, end)

    return make


@pytest.fixture
def linear_curve():
    """Factory for t ↦ t·X + Y with coefficient vectors X, Y."""

    def make(group, X, Y, start=0.0, end=1.0):
        x, y = group.hat(X).coordinates, group.hat(Y).coordinates
        return curve_from_function(group, lambda t: t * x + y, start, end)

    return make


def observed_order(steps, errors):
    return -float(np.polyfit(np.log(steps), np.log(errors), 1)[0])


@pytest.fixture
def order_of():
    return observed_order
