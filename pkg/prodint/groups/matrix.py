import numpy as np
from scipy.linalg import expm, expm_frechet, logm

from prodint.groups.base import Group

__all__ = [
    "MatrixGroup",
    "GeneralLinear",
    "SpecialOrthogonal3",
    "SpecialEuclidean3",
    "Heisenberg3",
    "UpperTriangular3",
    "so3_generators",
]

MEMBERSHIP_TOL = 1e-10
CONDITION_LIMIT = 1e12


def so3_generators():
    """L_x, L_y, L_z with exp(θ L_z) the rotation by θ about the z axis."""
    lx = np.array([[0.0, 0.0, 0.0], [0.0, 0.0, -1.0], [0.0, 1.0, 0.0]])
    ly = np.array([[0.0, 0.0, 1.0], [0.0, 0.0, 0.0], [-1.0, 0.0, 0.0]])
    lz = np.array([[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 0.0]])
    return lx, ly, lz


def _unit(n, i, j):
    e = np.zeros((n, n))
    e[i, j] = 1.0
    return e


class MatrixGroup(Group):
    """
    Closed subgroup of GL(n) acting on E = gl(n) flattened row-major.

    The chart domain is ‖g − I‖_op < 1, where the principal logarithm series
    converges.
    """

    def __init__(self, group_id, n, chart="exponential", has_closed_form_exp=False, is_abelian=False):
        self.n = n
        self._eye = np.eye(n)
        super().__init__(
            group_id if chart == "exponential" else f"{group_id}@{chart}",
            f"mat:{n}",
            chart_radius=1.0,
            has_closed_form_exp=has_closed_form_exp,
            is_abelian=is_abelian,
            chart=chart,
        )

    def _algebra_basis(self):
        return [_unit(self.n, i, j).ravel() for i in range(self.n) for j in range(self.n)]

    def _m(self, x):
        return np.asarray(x, dtype=float).reshape(self.n, self.n)

    def _identity(self):
        return self._eye.copy()

    def _mul(self, a, b):
        return a @ b

    def _inv(self, a):
        return np.linalg.inv(a)

    def _exp(self, x):
        return expm(self._m(x))

    def _log(self, a):
        if self.chart == "cayley":
            return (2.0 * (a - self._eye) @ np.linalg.inv(a + self._eye)).ravel()
        return np.real(logm(a)).ravel()

    def _chart_inverse(self, x):
        if self.chart == "cayley":
            half = 0.5 * self._m(x)
            return np.linalg.solve(self._eye - half, self._eye + half)
        return self._exp(x)

    def _ad(self, a, x):
        return (a @ self._m(x) @ np.linalg.inv(a)).ravel()

    def _bracket(self, x, y):
        xm, ym = self._m(x), self._m(y)
        return (xm @ ym - ym @ xm).ravel()

    def _right_log_derivative(self, a, adot):
        return (self._m(adot) @ self._inv(a)).ravel()

    def _tangent(self, a, x):
        return self._m(x) @ a

    def _distance(self, a):
        return float(np.linalg.norm(a - self._eye, 2))

    def _omega(self, x, xdot):
        if self.chart == "exponential":
            value, frechet = expm_frechet(self._m(x), self._m(xdot))
            return (frechet @ np.linalg.inv(value)).ravel()
        return super()._omega(x, xdot)

    def _violations(self, a):
        found = super()._violations(a)
        if found:
            return found
        if np.linalg.cond(a) > CONDITION_LIMIT:
            found.append("near-singular")
        return found


class GeneralLinear(MatrixGroup):
    """GL(n) for n <= 4."""

    def __init__(self, n, chart="exponential"):
        super().__init__(f"gl{n}", n, chart=chart, is_abelian=(n == 1))


class SpecialOrthogonal3(MatrixGroup):
    """SO(3) with Rodrigues' closed forms for exp and the exponential chart."""

    def __init__(self, chart="exponential"):
        super().__init__("so3", 3, chart=chart, has_closed_form_exp=True)

    def _algebra_basis(self):
        return [g.ravel() for g in so3_generators()]

    def _inv(self, a):
        return a.T.copy()

    def _exp(self, x):
        k = self._m(x)
        if not np.allclose(k, -k.T, atol=1e-14, rtol=0.0):
            return expm(k)
        theta = np.sqrt(k[2, 1] ** 2 + k[0, 2] ** 2 + k[1, 0] ** 2)
        a = np.sinc(theta / np.pi)
        b = 0.5 * np.sinc(theta / (2.0 * np.pi)) ** 2
        return self._eye + a * k + b * (k @ k)

    def _log(self, a):
        if self.chart == "cayley":
            return super()._log(a)
        skew = 0.5 * (a - a.T)
        sin_theta = np.sqrt(skew[2, 1] ** 2 + skew[0, 2] ** 2 + skew[1, 0] ** 2)
        cos_theta = 0.5 * (np.trace(a) - 1.0)
        theta = np.arctan2(sin_theta, cos_theta)
        return (skew / np.sinc(theta / np.pi)).ravel()

    def _violations(self, a):
        found = Group._violations(self, a)
        if found:
            return found
        if np.linalg.norm(a.T @ a - self._eye) > MEMBERSHIP_TOL:
            found.append("orthogonality")
        if not np.linalg.det(a) > 0:
            found.append("orientation")
        return found

    def _algebra_violations(self, x):
        k = self._m(x)
        return [] if np.allclose(k, -k.T, atol=MEMBERSHIP_TOL, rtol=0.0) else ["skew"]


class SpecialEuclidean3(MatrixGroup):
    """SE(3) in 4×4 homogeneous form; algebra basis is rotations then translations."""

    def __init__(self, chart="exponential"):
        super().__init__("se3", 4, chart=chart)

    def _algebra_basis(self):
        rows = []
        for gen in so3_generators():
            m = np.zeros((4, 4))
            m[:3, :3] = gen
            rows.append(m.ravel())
        for i in range(3):
            rows.append(_unit(4, i, 3).ravel())
        return rows

    def _inv(self, a):
        rot_t = a[:3, :3].T
        out = np.eye(4)
        out[:3, :3] = rot_t
        out[:3, 3] = -rot_t @ a[:3, 3]
        return out

    def _violations(self, a):
        found = Group._violations(self, a)
        if found:
            return found
        rot = a[:3, :3]
        if np.linalg.norm(rot.T @ rot - np.eye(3)) > MEMBERSHIP_TOL:
            found.append("orthogonality")
        if not np.linalg.det(rot) > 0:
            found.append("orientation")
        if not np.allclose(a[3], [0.0, 0.0, 0.0, 1.0], atol=MEMBERSHIP_TOL, rtol=0.0):
            found.append("homogeneous-row")
        return found

    def _algebra_violations(self, x):
        m = self._m(x)
        found = []
        if not np.allclose(m[:3, :3], -m[:3, :3].T, atol=MEMBERSHIP_TOL, rtol=0.0):
            found.append("skew")
        if not np.allclose(m[3], 0.0, atol=MEMBERSHIP_TOL):
            found.append("homogeneous-row")
        return found


class Heisenberg3(MatrixGroup):
    """Upper unitriangular 3×3 matrices; exp and log are exact truncated series."""

    def __init__(self, chart="exponential"):
        super().__init__("heis3", 3, chart=chart, has_closed_form_exp=True)

    def _algebra_basis(self):
        return [_unit(3, 0, 1).ravel(), _unit(3, 1, 2).ravel(), _unit(3, 0, 2).ravel()]

    @staticmethod
    def _strictly_upper(m, tol=0.0):
        return np.all(np.abs(np.tril(m)) <= tol)

    def _exp(self, x):
        k = self._m(x)
        if not self._strictly_upper(k):
            return expm(k)
        return self._eye + k + 0.5 * (k @ k)

    def _log(self, a):
        if self.chart == "cayley":
            return super()._log(a)
        nil = a - self._eye
        if not self._strictly_upper(nil, 1e-15):
            return super()._log(a)
        return (nil - 0.5 * (nil @ nil)).ravel()

    def _inv(self, a):
        nil = a - self._eye
        if not self._strictly_upper(nil, 1e-15):
            return np.linalg.inv(a)
        return self._eye - nil + nil @ nil

    def _violations(self, a):
        found = Group._violations(self, a)
        if found:
            return found
        if not self._strictly_upper(a - self._eye, MEMBERSHIP_TOL):
            found.append("unitriangular")
        return found

    def _algebra_violations(self, x):
        return [] if self._strictly_upper(self._m(x), MEMBERSHIP_TOL) else ["strictly-upper"]


class UpperTriangular3(MatrixGroup):
    """Upper triangular 3×3 matrices with positive diagonal."""

    def __init__(self, chart="exponential"):
        super().__init__("ut3", 3, chart=chart)

    def _algebra_basis(self):
        return [_unit(3, i, j).ravel() for i in range(3) for j in range(i, 3)]

    def _violations(self, a):
        found = Group._violations(self, a)
        if found:
            return found
        if not np.all(np.abs(np.tril(a, -1)) <= MEMBERSHIP_TOL):
            found.append("upper-triangular")
        if not np.all(np.diag(a) > 0):
            found.append("positive-diagonal")
        return found

    def _algebra_violations(self, x):
        return [] if np.all(np.abs(np.tril(self._m(x), -1)) <= MEMBERSHIP_TOL) else ["upper-triangular"]
