from prodint.space.vectors import ModelVector, space_dimension, matrix_size
from prodint.space.seminorms import (
    Seminorm,
    SeminormFamily,
    seminorm_eval,
    sup_seminorm,
    l1_seminorm,
)

__all__ = [
    "ModelVector",
    "space_dimension",
    "matrix_size",
    "Seminorm",
    "SeminormFamily",
    "seminorm_eval",
    "sup_seminorm",
    "l1_seminorm",
]
