import re
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from prodint.errors import ConfigurationError

__all__ = ["ModelVector", "space_dimension", "matrix_size"]

_SPACE_PATTERN = re.compile(r"^(mat|seq):([1-9][0-9]*)$")


@lru_cache(maxsize=None)
def _parse_space(space_id: str):
    match = _SPACE_PATTERN.match(space_id or "")
    if match is None:
        raise ConfigurationError(f"unknown model space {space_id!r}", key=space_id)
    return match.group(1), int(match.group(2))


def space_dimension(space_id: str) -> int:
    """
    Dimension of a registered model space.

    Parameters
    ----------
    space_id : str
        ``"mat:n"`` for n×n matrices flattened row-major, ``"seq:D"`` for the
        truncated sequence space of length D.

    Returns
    -------
    int
        n² or D.

    Raises
    ------
    ConfigurationError
        If the id does not name a model space.
    """
    kind, size = _parse_space(space_id)
    return size * size if kind == "mat" else size


def matrix_size(space_id: str):
    """Side length n of a ``mat:n`` space, None for sequence spaces."""
    kind, size = _parse_space(space_id)
    return size if kind == "mat" else None


@dataclass(frozen=True, eq=False)
class ModelVector:
    """
    Element of the model space E.

    Parameters
    ----------
    coordinates : array_like
        Real coordinates; the length must equal the dimension of ``space_id``.
    space_id : str
        Identifier of the model space.
    """

    coordinates: np.ndarray
    space_id: str

    def __post_init__(self):
        coords = np.array(self.coordinates, dtype=float).reshape(-1)
        dim = space_dimension(self.space_id)
        if coords.shape[0] != dim:
            raise ConfigurationError(
                f"vector of length {coords.shape[0]} does not fit space {self.space_id!r} "
                f"of dimension {dim}",
                key=self.space_id,
            )
        coords.setflags(write=False)
        object.__setattr__(self, "coordinates", coords)

    @classmethod
    def zeros(cls, space_id: str):
        return cls(np.zeros(space_dimension(space_id)), space_id)

    @classmethod
    def basis(cls, space_id: str, j: int):
        """The j-th standard basis vector e_j (0-based)."""
        coords = np.zeros(space_dimension(space_id))
        coords[j] = 1.0
        return cls(coords, space_id)

    @property
    def dimension(self) -> int:
        return self.coordinates.shape[0]

    def as_matrix(self) -> np.ndarray:
        """Reshape a ``mat:n`` vector into its n×n matrix."""
        n = matrix_size(self.space_id)
        if n is None:
            raise ConfigurationError(f"{self.space_id!r} is not a matrix space", key=self.space_id)
        return self.coordinates.reshape(n, n)

    def _check(self, other):
        if not isinstance(other, ModelVector):
            return NotImplemented
        if other.space_id != self.space_id:
            raise ConfigurationError(
                f"cannot combine vectors of {self.space_id!r} and {other.space_id!r}",
                key=other.space_id,
            )
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return ModelVector(self.coordinates + other.coordinates, self.space_id)

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return ModelVector(self.coordinates - other.coordinates, self.space_id)

    def __neg__(self):
        return ModelVector(-self.coordinates, self.space_id)

    def __mul__(self, scalar):
        if not np.isscalar(scalar):
            return NotImplemented
        return ModelVector(float(scalar) * self.coordinates, self.space_id)

    __rmul__ = __mul__

    def allclose(self, other, atol=1e-12, rtol=0.0) -> bool:
        other = self._check(other)
        return bool(np.allclose(self.coordinates, other.coordinates, atol=atol, rtol=rtol))

    def __repr__(self):
        return f"ModelVector({self.space_id}, {np.array2string(self.coordinates, precision=6)})"
