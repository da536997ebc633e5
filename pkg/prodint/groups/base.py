from abc import ABC, abstractmethod
from dataclasses import dataclass

import numpy as np

from prodint.errors import ConfigurationError, GroupMismatchError, OutOfChartDomain
from prodint.space.vectors import ModelVector, space_dimension

__all__ = ["GroupElement", "AlgebraElement", "Group", "CHARTS"]

CHARTS = ("exponential", "cayley")


@dataclass(frozen=True, eq=False)
class GroupElement:
    """
    Element g of a group.

    Parameters
    ----------
    group_id : str
        Registry id of the owning group.
    value : numpy.ndarray
        Representation: an n×n matrix for matrix groups, a coordinate vector
        for the abelian group (E,+), the diagonal for diagonal operators.
    """

    group_id: str
    value: np.ndarray

    def __post_init__(self):
        value = np.array(self.value, dtype=float)
        value.setflags(write=False)
        object.__setattr__(self, "value", value)

    def __repr__(self):
        return f"GroupElement({self.group_id}, {np.array2string(self.value, precision=6)})"


@dataclass(frozen=True, eq=False)
class AlgebraElement:
    """
    Element X of the Lie algebra, stored through the identification 𝔤 ≅ E.

    Parameters
    ----------
    group_id : str
        Registry id of the owning group.
    vector : ModelVector
        Coordinates in the model space of the group.
    """

    group_id: str
    vector: ModelVector

    @property
    def coordinates(self) -> np.ndarray:
        return self.vector.coordinates

    def _check(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        if other.group_id != self.group_id:
            raise GroupMismatchError(
                f"cannot combine algebra elements of {self.group_id!r} and {other.group_id!r}",
                key=other.group_id,
            )
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return AlgebraElement(self.group_id, self.vector + other.vector)

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return AlgebraElement(self.group_id, self.vector - other.vector)

    def __neg__(self):
        return AlgebraElement(self.group_id, -self.vector)

    def __mul__(self, scalar):
        if not np.isscalar(scalar):
            return NotImplemented
        return AlgebraElement(self.group_id, scalar * self.vector)

    __rmul__ = __mul__

    def __repr__(self):
        return f"AlgebraElement({self.group_id}, {np.array2string(self.coordinates, precision=6)})"


class Group(ABC):
    """
    Lie group with a chart κ around the identity, κ(e) = 0, d_eκ = id.

    Public methods take and return :class:`GroupElement` / :class:`AlgebraElement`;
    the underscore methods work on raw numpy arrays and are what the
    integrators call in their inner loops.

    Parameters
    ----------
    group_id : str
        Registry id.
    space_id : str
        Model space E (``mat:n`` or ``seq:D``).
    chart_radius : float
        The chart domain is ``chart_distance(g) < chart_radius``.
    has_closed_form_exp : bool
        Whether ``exp`` is evaluated in closed form.
    is_abelian : bool
        Whether the group is commutative.
    chart : str
        ``"exponential"`` (principal logarithm) or ``"cayley"``.
    """

    def __init__(self, group_id, space_id, chart_radius, has_closed_form_exp, is_abelian, chart="exponential"):
        if chart not in CHARTS:
            raise ConfigurationError(f"unknown chart {chart!r}", key=chart)
        self.group_id = group_id
        self.space_id = space_id
        self.dimension = space_dimension(space_id)
        self.chart_radius = float(chart_radius)
        self.has_closed_form_exp = has_closed_form_exp
        self.is_abelian = is_abelian
        self.chart = chart
        self._basis = np.atleast_2d(np.asarray(self._algebra_basis(), dtype=float))

    def __repr__(self):
        return f"{type(self).__name__}({self.group_id!r})"

    # -- raw layer -----------------------------------------------------------

    @abstractmethod
    def _algebra_basis(self):
        """Rows are basis vectors of 𝔤 inside E."""

    @abstractmethod
    def _identity(self) -> np.ndarray:
        pass

    @abstractmethod
    def _mul(self, a, b) -> np.ndarray:
        pass

    @abstractmethod
    def _inv(self, a) -> np.ndarray:
        pass

    @abstractmethod
    def _exp(self, x) -> np.ndarray:
        pass

    @abstractmethod
    def _log(self, a) -> np.ndarray:
        """Chart κ without the domain check."""

    def _chart_inverse(self, x) -> np.ndarray:
        return self._exp(x)

    @abstractmethod
    def _ad(self, a, x) -> np.ndarray:
        pass

    @abstractmethod
    def _bracket(self, x, y) -> np.ndarray:
        pass

    @abstractmethod
    def _right_log_derivative(self, a, adot) -> np.ndarray:
        """d_a R_{a⁻¹}(ȧ) in E coordinates."""

    @abstractmethod
    def _tangent(self, a, x) -> np.ndarray:
        """Tangent vector at a whose right logarithmic derivative is x."""

    @abstractmethod
    def _distance(self, a) -> float:
        """Designated norm of a − e."""

    def _violations(self, a):
        a = np.asarray(a, dtype=float)
        if a.shape != self._identity().shape:
            return ["shape"]
        if not np.all(np.isfinite(a)):
            return ["non-finite"]
        return []

    def _algebra_violations(self, x):
        return []

    def _chart_forward(self, a) -> np.ndarray:
        distance = self._distance(a)
        if not distance < self.chart_radius:
            raise OutOfChartDomain(distance, self.chart_radius, self.group_id)
        if distance == 0.0:
            return np.zeros(self.dimension)
        return np.asarray(self._log(a), dtype=float).reshape(-1)

    def _power(self, a, n: int) -> np.ndarray:
        """a^n by repeated squaring of exact products."""
        result = self._identity()
        base = np.asarray(a, dtype=float)
        while n > 0:
            if n & 1:
                result = self._mul(base, result)
            n >>= 1
            if n:
                base = self._mul(base, base)
        return result

    def _omega(self, x, xdot) -> np.ndarray:
        step = 1e-6 / max(1.0, float(np.max(np.abs(xdot))) if np.size(xdot) else 1.0)
        x, xdot = np.asarray(x, dtype=float), np.asarray(xdot, dtype=float)
        forward = self._chart_inverse(x + step * xdot)
        backward = self._chart_inverse(x - step * xdot)
        return self._right_log_derivative(self._chart_inverse(x), (forward - backward) / (2.0 * step))

    # -- public layer --------------------------------------------------------

    @property
    def algebra_dimension(self) -> int:
        return self._basis.shape[0]

    def _own(self, obj, kind):
        if obj.group_id != self.group_id:
            raise GroupMismatchError(
                f"{kind} of group {obj.group_id!r} passed to {self.group_id!r}", key=obj.group_id
            )

    def element(self, value) -> GroupElement:
        value = np.asarray(value, dtype=float)
        if value.shape != self._identity().shape:
            raise ConfigurationError(
                f"{self.group_id!r} elements have shape {self._identity().shape}, got {value.shape}",
                key=self.group_id,
            )
        return GroupElement(self.group_id, value)

    def algebra(self, coordinates) -> AlgebraElement:
        return AlgebraElement(self.group_id, ModelVector(coordinates, self.space_id))

    def hat(self, coefficients) -> AlgebraElement:
        """Algebra element with the given coordinates in the group's Lie algebra basis."""
        coefficients = np.asarray(coefficients, dtype=float).reshape(-1)
        if coefficients.shape[0] != self.algebra_dimension:
            raise ConfigurationError(
                f"{self.group_id!r} algebra has dimension {self.algebra_dimension}, "
                f"got {coefficients.shape[0]} coefficients",
                key=self.group_id,
            )
        return self.algebra(coefficients @ self._basis)

    def basis(self):
        return [self.algebra(row) for row in self._basis]

    def zero(self) -> AlgebraElement:
        return self.algebra(np.zeros(self.dimension))

    def identity(self) -> GroupElement:
        return GroupElement(self.group_id, self._identity())

    def multiply(self, g: GroupElement, h: GroupElement) -> GroupElement:
        self._own(g, "element")
        self._own(h, "element")
        return GroupElement(self.group_id, self._mul(g.value, h.value))

    def inverse(self, g: GroupElement) -> GroupElement:
        self._own(g, "element")
        return GroupElement(self.group_id, self._inv(g.value))

    def power(self, g: GroupElement, n: int) -> GroupElement:
        self._own(g, "element")
        if n < 0:
            return self.power(self.inverse(g), -n)
        return GroupElement(self.group_id, self._power(g.value, int(n)))

    def exp(self, X: AlgebraElement) -> GroupElement:
        self._own(X, "algebra element")
        return GroupElement(self.group_id, self._exp(X.coordinates))

    def chart_forward(self, g: GroupElement) -> ModelVector:
        """κ(g); raises OutOfChartDomain outside the chart domain."""
        self._own(g, "element")
        return ModelVector(self._chart_forward(g.value), self.space_id)

    def chart_backward(self, v) -> GroupElement:
        """κ⁻¹(v) for a model vector (or algebra element) v."""
        vector = getattr(v, "vector", v)
        if vector.space_id != self.space_id:
            raise ConfigurationError(
                f"{self.group_id!r} charts live on {self.space_id!r}, got {vector.space_id!r}",
                key=vector.space_id,
            )
        return GroupElement(self.group_id, self._chart_inverse(vector.coordinates))

    def chart_distance(self, g: GroupElement) -> float:
        self._own(g, "element")
        return self._distance(g.value)

    def in_chart(self, g: GroupElement) -> bool:
        return self.chart_distance(g) < self.chart_radius

    def adjoint(self, g: GroupElement, X: AlgebraElement) -> AlgebraElement:
        self._own(g, "element")
        self._own(X, "algebra element")
        return self.algebra(self._ad(g.value, X.coordinates))

    def bracket(self, X: AlgebraElement, Y: AlgebraElement) -> AlgebraElement:
        self._own(X, "algebra element")
        self._own(Y, "algebra element")
        return self.algebra(self._bracket(X.coordinates, Y.coordinates))

    def omega(self, x, xdot) -> AlgebraElement:
        """Ω(x, ẋ) = d R_{κ⁻¹(x)⁻¹}(d_xκ⁻¹(ẋ)), the chart form of δ."""
        return self.algebra(self._omega(getattr(x, "coordinates", x), getattr(xdot, "coordinates", xdot)))

    def validate(self, g: GroupElement):
        """Names of violated membership invariants; empty iff g belongs to the group."""
        if g.group_id != self.group_id:
            return ["group"]
        return list(self._violations(g.value))

    def validate_algebra(self, X: AlgebraElement):
        if X.group_id != self.group_id:
            return ["group"]
        return list(self._algebra_violations(X.coordinates))

    def discrepancy(self, g: GroupElement, h: GroupElement, p) -> float:
        """(p∘κ)(g⁻¹·h), the left-translated distance used by every residual."""
        self._own(g, "element")
        self._own(h, "element")
        return p.evaluate_array(self._chart_forward(self._mul(self._inv(g.value), h.value)))
