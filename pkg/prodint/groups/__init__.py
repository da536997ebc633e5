from prodint.groups.base import Group, GroupElement, AlgebraElement
from prodint.groups.matrix import (
    MatrixGroup,
    GeneralLinear,
    SpecialOrthogonal3,
    SpecialEuclidean3,
    Heisenberg3,
    UpperTriangular3,
    so3_generators,
)
from prodint.groups.sequence import AbelianGroup, DiagonalOperatorGroup
from prodint.groups.registry import get_group, list_groups
from prodint.groups.operations import (
    identity,
    multiply,
    inverse,
    exp_group,
    chart_forward,
    chart_backward,
    adjoint,
    bracket,
    validate,
)

__all__ = [
    "Group",
    "GroupElement",
    "AlgebraElement",
    "MatrixGroup",
    "GeneralLinear",
    "SpecialOrthogonal3",
    "SpecialEuclidean3",
    "Heisenberg3",
    "UpperTriangular3",
    "so3_generators",
    "AbelianGroup",
    "DiagonalOperatorGroup",
    "get_group",
    "list_groups",
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
