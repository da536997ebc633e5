import numpy as np

from prodint.groups.base import Group

__all__ = ["AbelianGroup", "DiagonalOperatorGroup"]


class AbelianGroup(Group):
    """
    The additive group (E, +) of the truncated sequence space.

    exp, the chart and Ad are all trivial; the product integral is the
    Riemann integral.
    """

    def __init__(self, size):
        self.size = size
        super().__init__(
            f"abelian:{size}",
            f"seq:{size}",
            chart_radius=np.inf,
            has_closed_form_exp=True,
            is_abelian=True,
        )

    def _algebra_basis(self):
        return np.eye(self.size)

    def _identity(self):
        return np.zeros(self.size)

    def _mul(self, a, b):
        return a + b

    def _inv(self, a):
        return -np.asarray(a, dtype=float)

    def _power(self, a, n):
        return n * np.asarray(a, dtype=float)

    def _exp(self, x):
        return np.array(x, dtype=float)

    def _log(self, a):
        return np.array(a, dtype=float)

    def _ad(self, a, x):
        return np.array(x, dtype=float)

    def _bracket(self, x, y):
        return np.zeros(self.size)

    def _right_log_derivative(self, a, adot):
        return np.array(adot, dtype=float)

    def _tangent(self, a, x):
        return np.array(x, dtype=float)

    def _omega(self, x, xdot):
        return np.array(xdot, dtype=float)

    def _distance(self, a):
        return float(np.max(np.abs(a))) if self.size else 0.0


class DiagonalOperatorGroup(Group):
    """
    Diagonal operators diag(d_j), d_j > 0, on the truncated sequence space.

    Elements are stored by their diagonal. The chart is the elementwise
    logarithm on |d_j − 1| < 1, which makes weighted-sup seminorms a natural
    probe family.
    """

    def __init__(self, size):
        self.size = size
        super().__init__(
            f"diagop:{size}",
            f"seq:{size}",
            chart_radius=1.0,
            has_closed_form_exp=True,
            is_abelian=True,
        )

    def _algebra_basis(self):
        return np.eye(self.size)

    def _identity(self):
        return np.ones(self.size)

    def _mul(self, a, b):
        return a * b

    def _inv(self, a):
        return 1.0 / np.asarray(a, dtype=float)

    def _exp(self, x):
        return np.exp(x)

    def _log(self, a):
        return np.log(a)

    def _ad(self, a, x):
        return np.array(x, dtype=float)

    def _bracket(self, x, y):
        return np.zeros(self.size)

    def _right_log_derivative(self, a, adot):
        return np.asarray(adot, dtype=float) / np.asarray(a, dtype=float)

    def _tangent(self, a, x):
        return np.asarray(x, dtype=float) * np.asarray(a, dtype=float)

    def _omega(self, x, xdot):
        return np.array(xdot, dtype=float)

    def _distance(self, a):
        return float(np.max(np.abs(np.asarray(a) - 1.0)))

    def _violations(self, a):
        found = super()._violations(a)
        if found:
            return found
        if not np.all(np.asarray(a) > 0):
            found.append("positive-diagonal")
        return found
