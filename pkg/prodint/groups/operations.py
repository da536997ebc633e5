"""Id-keyed front end of the group layer: every function resolves its group through the registry."""

from prodint.errors import GroupMismatchError
from prodint.groups.base import AlgebraElement, GroupElement
from prodint.groups.registry import get_group

__all__ = [
    "identity",
    "multiply",
    "inverse",
    "exp_group",
    "chart_forward",
    "chart_backward",
    "adjoint",
    "bracket",
    "validate",
]


def identity(group_id: str) -> GroupElement:
    return get_group(group_id).identity()


def multiply(g: GroupElement, h: GroupElement) -> GroupElement:
    """
    Group product g·h.

    Raises
    ------
    GroupMismatchError
        If g and h belong to different groups.
    """
    if g.group_id != h.group_id:
        raise GroupMismatchError(f"cannot multiply {g.group_id!r} by {h.group_id!r}", key=h.group_id)
    return get_group(g.group_id).multiply(g, h)


def inverse(g: GroupElement) -> GroupElement:
    return get_group(g.group_id).inverse(g)


def exp_group(X: AlgebraElement) -> GroupElement:
    """The exponential exp(X) = ⨏φ_X (closed form or scaling-and-squaring)."""
    return get_group(X.group_id).exp(X)


def chart_forward(g: GroupElement):
    """κ(g) as a ModelVector; raises OutOfChartDomain outside the chart domain."""
    return get_group(g.group_id).chart_forward(g)


def chart_backward(v, group_id: str) -> GroupElement:
    return get_group(group_id).chart_backward(v)


def adjoint(g: GroupElement, X: AlgebraElement) -> AlgebraElement:
    """Ad_g(X); g·X·g⁻¹ for matrix groups, X for abelian ones."""
    if g.group_id != X.group_id:
        raise GroupMismatchError(f"cannot apply Ad of {g.group_id!r} to {X.group_id!r}", key=X.group_id)
    return get_group(g.group_id).adjoint(g, X)


def bracket(X: AlgebraElement, Y: AlgebraElement) -> AlgebraElement:
    if X.group_id != Y.group_id:
        raise GroupMismatchError(f"cannot bracket {X.group_id!r} with {Y.group_id!r}", key=Y.group_id)
    return get_group(X.group_id).bracket(X, Y)


def validate(g: GroupElement):
    """List of violated membership invariants (empty iff g is a valid element)."""
    return get_group(g.group_id).validate(g)
