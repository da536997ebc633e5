from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np

from prodint.errors import ConfigurationError, DomainError
from prodint.space.vectors import ModelVector, matrix_size, space_dimension

__all__ = [
    "Seminorm",
    "SeminormFamily",
    "seminorm_eval",
    "sup_seminorm",
    "l1_seminorm",
    "KINDS",
    "LADDERS",
]

KINDS = ("frobenius", "operator", "weighted-sup")
LADDERS = ("polynomial", "geometric")


@dataclass(frozen=True)
class Seminorm:
    """
    Continuous seminorm on a model space.

    Parameters
    ----------
    space_id : str
        Model space the seminorm lives on.
    kind : str
        ``"frobenius"`` (Frobenius / Euclidean norm), ``"operator"`` (spectral
        norm on ``mat:n``, sup norm on ``seq:D``) or ``"weighted-sup"``
        (max_j w_j |v_j|).
    scale : float
        Positive multiplier.
    weight_index : int
        Ladder index k of a weighted-sup seminorm.
    ladder : str
        ``"polynomial"`` for w_j = (1+j)^k, ``"geometric"`` for w_j = 2^(j·k).
    """

    space_id: str
    kind: str = "frobenius"
    scale: float = 1.0
    weight_index: int = 0
    ladder: str = "polynomial"
    _weights: np.ndarray = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        space_dimension(self.space_id)
        if self.kind not in KINDS:
            raise ConfigurationError(f"unknown seminorm kind {self.kind!r}", key=self.kind)
        if self.ladder not in LADDERS:
            raise ConfigurationError(f"unknown weight ladder {self.ladder!r}", key=self.ladder)
        if not self.scale > 0:
            raise ConfigurationError(f"seminorm scale must be positive, got {self.scale!r}", key="scale")
        if self.weight_index < 0:
            raise ConfigurationError("weight index must be nonnegative", key="weight_index")
        if self.kind == "weighted-sup":
            j = np.arange(space_dimension(self.space_id), dtype=float)
            if self.ladder == "polynomial":
                weights = (1.0 + j) ** self.weight_index
            else:
                weights = 2.0 ** (j * self.weight_index)
            object.__setattr__(self, "_weights", weights)

    @property
    def label(self) -> str:
        scale = f"{self.scale:g}"
        if self.kind == "weighted-sup":
            return f"weighted-sup[{self.ladder},k={self.weight_index}]({scale})"
        return f"{self.kind}({scale})"

    def scaled(self, factor: float) -> "Seminorm":
        """The seminorm ``factor·p`` (factor > 0)."""
        return replace(self, scale=self.scale * float(factor))

    def with_weight_index(self, k: int) -> "Seminorm":
        return replace(self, weight_index=int(k))

    def evaluate_array(self, coords) -> float:
        """Evaluate on raw coordinates of the model space (no space check)."""
        coords = np.asarray(coords, dtype=float)
        if self.kind == "frobenius":
            value = np.sqrt(np.dot(coords.ravel(), coords.ravel()))
        elif self.kind == "operator":
            n = matrix_size(self.space_id)
            if n is None:
                value = np.max(np.abs(coords)) if coords.size else 0.0
            else:
                value = np.linalg.norm(coords.reshape(n, n), 2)
        else:
            value = np.max(self._weights * np.abs(coords.ravel()))
        return self.scale * float(value)

    def __call__(self, v) -> float:
        return seminorm_eval(self, v)


def _coordinates(p: Seminorm, v):
    vector = getattr(v, "vector", v)
    if isinstance(vector, ModelVector):
        if vector.space_id != p.space_id:
            raise ConfigurationError(
                f"seminorm on {p.space_id!r} cannot evaluate a vector of {vector.space_id!r}",
                key=vector.space_id,
            )
        return vector.coordinates
    coords = np.asarray(vector, dtype=float).ravel()
    if coords.shape[0] != space_dimension(p.space_id):
        raise ConfigurationError(
            f"array of length {coords.shape[0]} does not fit {p.space_id!r}", key=p.space_id
        )
    return coords


def seminorm_eval(p: Seminorm, v) -> float:
    """
    Evaluate p(v).

    Parameters
    ----------
    p : Seminorm
        The seminorm.
    v : ModelVector, AlgebraElement or array_like
        Vector on p's space (algebra elements are evaluated on their coordinates).

    Returns
    -------
    float
        Nonnegative value.

    Raises
    ------
    ConfigurationError
        If the vector lives on a different space.
    """
    return p.evaluate_array(_coordinates(p, v))


def sup_seminorm(p: Seminorm, curve, grid: int = 1001) -> float:
    """
    Grid approximation of p_∞(φ) = sup_t p(φ(t)).

    Parameters
    ----------
    p : Seminorm
        The pointwise seminorm.
    curve : PiecewiseCurve or sequence
        Either a curve (sampled on ``grid`` equidistant points of its domain)
        or an already sampled sequence of vectors.
    grid : int
        Number of sample points when ``curve`` is a curve.

    Returns
    -------
    float
        The maximum over the samples; the caller records ``grid`` with it.

    Raises
    ------
    DomainError
        If there is nothing to sample.
    """
    if hasattr(curve, "sample"):
        if grid < 1:
            raise DomainError("sup over an empty grid")
        samples = curve.sample(np.linspace(curve.start, curve.end, grid))
    else:
        samples = list(curve)
    if len(samples) == 0:
        raise DomainError("sup over an empty curve")
    return max(seminorm_eval(p, v) for v in samples)


def l1_seminorm(q: Seminorm, curve, steps_per_piece: int = 1000) -> float:
    """
    Composite-midpoint approximation of ∫ q(φ(s)) ds over the whole domain.

    Each piece is integrated separately, so breakpoint values never enter.

    Parameters
    ----------
    q : Seminorm
        The pointwise seminorm.
    curve : PiecewiseCurve
        Integrand.
    steps_per_piece : int
        Midpoint cells per piece.

    Returns
    -------
    float
        The quadrature value.
    """
    if steps_per_piece < 1:
        raise DomainError(f"steps_per_piece must be >= 1, got {steps_per_piece}")
    if curve.space_id != q.space_id:
        raise ConfigurationError(
            f"seminorm on {q.space_id!r} cannot integrate a curve on {curve.space_id!r}",
            key=curve.space_id,
        )
    total = 0.0
    for index, (a, b) in enumerate(curve.intervals()):
        h = (b - a) / steps_per_piece
        mids = a + h * (np.arange(steps_per_piece) + 0.5)
        piece = curve.pieces[index]
        total += h * sum(q.evaluate_array(piece(u)) for u in mids)
    return total


class SeminormFamily:
    """
    Finite ordered family of seminorms on one space.

    Parameters
    ----------
    seminorms : sequence of Seminorm
        Members, all on the same space.
    """

    def __init__(self, seminorms: Sequence[Seminorm]):
        seminorms = tuple(seminorms)
        if not seminorms:
            raise ConfigurationError("a seminorm family needs at least one member")
        spaces = {p.space_id for p in seminorms}
        if len(spaces) != 1:
            raise ConfigurationError(f"seminorm family mixes spaces {sorted(spaces)}")
        self.seminorms = seminorms
        self.space_id = seminorms[0].space_id

    @classmethod
    def ladder(cls, space_id: str, ks, ladder: str = "polynomial", scale: float = 1.0):
        """Weighted-sup seminorms with weight indices ``ks`` (ascending)."""
        return cls(
            [Seminorm(space_id, "weighted-sup", scale=scale, weight_index=k, ladder=ladder) for k in ks]
        )

    def __iter__(self):
        return iter(self.seminorms)

    def __len__(self):
        return len(self.seminorms)

    def __getitem__(self, index):
        return self.seminorms[index]

    @staticmethod
    def dominates(q: Seminorm, m: Seminorm, samples, rtol: float = 1e-12) -> bool:
        """True iff q(v) <= m(v) (up to ``rtol``) on every sample vector."""
        for v in samples:
            qv, mv = seminorm_eval(q, v), seminorm_eval(m, v)
            if qv > mv + rtol * max(qv, mv):
                return False
        return True

    def is_ordered(self, samples) -> bool:
        """Check that consecutive members are pointwise ordered on the samples."""
        return all(
            self.dominates(self.seminorms[i], self.seminorms[i + 1], samples)
            for i in range(len(self.seminorms) - 1)
        )
