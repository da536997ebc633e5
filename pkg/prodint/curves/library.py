"""
Named curve constructors addressable from experiment configs.

Parameters are given as coefficient vectors in the Lie algebra basis of the
group (see :meth:`prodint.groups.Group.hat`).
"""

import numpy as np

from prodint.curves.group_curve import GroupCurve
from prodint.curves.piecewise import curve_from_function
from prodint.errors import ConfigurationError
from prodint.groups.base import Group
from prodint.groups.registry import get_group

__all__ = [
    "ALGEBRA_CURVES",
    "GROUP_CURVES",
    "make_algebra_curve",
    "make_group_curve",
    "one_parameter_curve",
    "exp_product_curve",
    "list_curves",
]


def _vector(group, params, key, required=True):
    if key not in params:
        if required:
            raise ConfigurationError(f"curve parameter {key!r} is missing", key=key)
        return np.zeros(group.dimension)
    return group.hat(params[key]).coordinates


def _const(group, params):
    X = _vector(group, params, "X")
    return lambda t: X


def _linear(group, params):
    X, Y = _vector(group, params, "X"), _vector(group, params, "Y", required=False)
    return lambda t: t * X + Y


def _sin_axis(group, params):
    X, Y = _vector(group, params, "X"), _vector(group, params, "Y")
    omega = float(params.get("omega", 1.0))
    return lambda t: np.sin(omega * t) * X + np.cos(omega * t) * Y


ALGEBRA_CURVES = {
    "const": _const,
    "linear": _linear,
    "sin-axis": _sin_axis,
}


def _resolve(group):
    return group if isinstance(group, Group) else get_group(group)


def make_algebra_curve(name, group, params=None, start=0.0, end=1.0):
    """
    Build a named algebra curve.

    Parameters
    ----------
    name : str
        ``"const"`` (φ ≡ X), ``"linear"`` (φ(t) = tX + Y) or ``"sin-axis"``
        (φ(t) = sin(ωt)X + cos(ωt)Y).
    group : Group or str
        Target group.
    params : dict
        Coefficient vectors ``X``, ``Y`` and scalar ``omega``.
    start, end : float
        Domain.

    Returns
    -------
    PiecewiseCurve
        Single-piece curve.

    Raises
    ------
    ConfigurationError
        Unknown name or missing parameter.
    """
    group = _resolve(group)
    if name not in ALGEBRA_CURVES:
        raise ConfigurationError(f"unknown algebra curve {name!r}", key=name)
    return curve_from_function(group, ALGEBRA_CURVES[name](group, params or {}), start, end)


def one_parameter_curve(group, X, start=0.0, end=1.0) -> GroupCurve:
    """t ↦ exp(tX) for raw algebra coordinates X."""
    group = _resolve(group)
    X = np.asarray(X, dtype=float)

    def value(t):
        return group._exp(t * X)

    return GroupCurve(group, value, start, end, derivative=lambda t: group._tangent(value(t), X))


def exp_product_curve(group, X, Y, power=2.0, start=0.0, end=1.0) -> GroupCurve:
    """
    μ(t) = exp(tX)·exp(t^k Y) with closed-form derivative.

    δ(μ)(t) = X + Ad_{exp(tX)}(k t^{k−1} Y), which fixes μ̇(t) through the
    right translation.
    """
    group = _resolve(group)
    X, Y = np.asarray(X, dtype=float), np.asarray(Y, dtype=float)
    k = float(power)
    if k < 1.0:
        raise ConfigurationError(f"exp-product power must be >= 1, got {k}", key="power")

    def value(t):
        return group._mul(group._exp(t * X), group._exp(t ** k * Y))

    def derivative(t):
        velocity = X + group._ad(group._exp(t * X), k * t ** (k - 1.0) * Y)
        return group._tangent(value(t), velocity)

    return GroupCurve(group, value, start, end, derivative=derivative)


GROUP_CURVES = {
    "one-parameter": lambda group, params, start, end: one_parameter_curve(
        group, _vector(group, params, "X"), start, end
    ),
    "exp-product": lambda group, params, start, end: exp_product_curve(
        group,
        _vector(group, params, "X"),
        _vector(group, params, "Y"),
        params.get("power", 2.0),
        start,
        end,
    ),
}


def make_group_curve(name, group, params=None, start=0.0, end=1.0) -> GroupCurve:
    """
    Build a named group curve (``"one-parameter"`` or ``"exp-product"``).

    Raises
    ------
    ConfigurationError
        Unknown name or missing parameter.
    """
    group = _resolve(group)
    if name not in GROUP_CURVES:
        raise ConfigurationError(f"unknown group curve {name!r}", key=name)
    return GROUP_CURVES[name](group, params or {}, start, end)


def list_curves():
    return sorted(list(ALGEBRA_CURVES) + list(GROUP_CURVES))
