import bisect
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.optimize import brentq

from prodint.errors import ConfigurationError, DomainError, GroupMismatchError
from prodint.groups.base import AlgebraElement, Group
from prodint.groups.registry import get_group

__all__ = [
    "PiecewiseCurve",
    "Reparametrization",
    "constant_curve",
    "curve_from_function",
    "scale_curve",
    "restrict",
    "concatenate",
    "refine",
    "combine",
    "check_shared_domain",
    "merged_breakpoints",
    "reparametrize",
]

TIME_TOL = 1e-12


def _resolve(group):
    return group if isinstance(group, Group) else get_group(group)


class PiecewiseCurve:
    """
    Piecewise continuous algebra-valued curve, an element of DP⁰([r, r'], 𝔤).

    Parameters
    ----------
    group : Group or str
        Owning group (or its registry id).
    breakpoints : sequence of float
        r = t_0 < ... < t_n = r'.
    pieces : sequence of callable
        ``pieces[p](t)`` returns the E coordinates of the p-th piece for
        t in the closed interval [t_p, t_{p+1}]. Values may jump at
        breakpoints; single-valued evaluation there uses the left piece.
    """

    def __init__(self, group, breakpoints, pieces):
        self.group = _resolve(group)
        self.breakpoints = tuple(float(t) for t in breakpoints)
        self.pieces = tuple(pieces)
        if len(self.breakpoints) < 2:
            raise DomainError("a curve needs at least one piece")
        if len(self.pieces) != len(self.breakpoints) - 1:
            raise ConfigurationError(
                f"{len(self.breakpoints)} breakpoints need {len(self.breakpoints) - 1} pieces, "
                f"got {len(self.pieces)}"
            )
        if any(b <= a for a, b in zip(self.breakpoints, self.breakpoints[1:])):
            raise DomainError(f"breakpoints must be strictly increasing: {self.breakpoints}")

    @property
    def group_id(self) -> str:
        return self.group.group_id

    @property
    def space_id(self) -> str:
        return self.group.space_id

    @property
    def start(self) -> float:
        return self.breakpoints[0]

    @property
    def end(self) -> float:
        return self.breakpoints[-1]

    def __len__(self):
        return len(self.pieces)

    def __repr__(self):
        return f"PiecewiseCurve({self.group_id}, [{self.start:g}, {self.end:g}], pieces={len(self)})"

    def intervals(self):
        return list(zip(self.breakpoints, self.breakpoints[1:]))

    def contains(self, s: float, t: float) -> bool:
        return self.start - TIME_TOL <= s and t <= self.end + TIME_TOL

    def piece_index(self, t: float) -> int:
        """Index of the piece used for a single value at t (left piece at interior breakpoints)."""
        if not self.start - TIME_TOL <= t <= self.end + TIME_TOL:
            raise DomainError(f"t={t} outside [{self.start}, {self.end}]")
        index = bisect.bisect_left(self.breakpoints, t) - 1
        return min(max(index, 0), len(self.pieces) - 1)

    def cell_piece(self, a: float, b: float) -> int:
        """Index of the piece that contains the midpoint of the cell [a, b]."""
        mid = 0.5 * (a + b)
        index = bisect.bisect_right(self.breakpoints, mid) - 1
        return min(max(index, 0), len(self.pieces) - 1)

    def evaluate_array(self, t: float) -> np.ndarray:
        index = self.piece_index(t)
        lo, hi = self.breakpoints[index], self.breakpoints[index + 1]
        return np.asarray(self.pieces[index](min(max(t, lo), hi)), dtype=float)

    def __call__(self, t: float) -> AlgebraElement:
        return self.group.algebra(self.evaluate_array(t))

    def sample(self, times):
        return [self(t) for t in times]


@dataclass(frozen=True)
class Reparametrization:
    """
    C¹ map ϱ: [start, end] → ℝ with its derivative.

    Parameters
    ----------
    func : callable
        t ↦ ϱ(t).
    derivative : callable
        t ↦ ϱ̇(t).
    start, end : float
        Domain [ℓ, ℓ'].
    """

    func: Callable[[float], float]
    derivative: Callable[[float], float]
    start: float
    end: float

    def __post_init__(self):
        if not self.start < self.end:
            raise DomainError(f"degenerate reparametrization domain [{self.start}, {self.end}]")

    def __call__(self, t):
        return self.func(t)

    @classmethod
    def affine(cls, slope: float, offset: float, start: float, end: float):
        """ϱ(t) = slope·t + offset."""
        return cls(lambda t: slope * t + offset, lambda t: slope, start, end)

    @classmethod
    def shift(cls, offset: float, start: float, end: float):
        """ϱ(t) = t − offset, the translation moving [start, end] back by ``offset``."""
        return cls(lambda t: t - offset, lambda t: 1.0, start, end)

    @classmethod
    def identity(cls, start: float, end: float):
        return cls(lambda t: t, lambda t: 1.0, start, end)

    @classmethod
    def power(cls, k: float, start: float, end: float):
        """ϱ(t) = t^k on a nonnegative domain."""
        if start < 0:
            raise DomainError("power reparametrization needs a nonnegative domain")
        return cls(lambda t: t ** k, lambda t: k * t ** (k - 1), start, end)

    def values(self, times):
        return np.array([self.func(t) for t in times], dtype=float)


def curve_from_function(group, func, start: float, end: float, breakpoints=()) -> PiecewiseCurve:
    """
    Wrap a function t ↦ E coordinates into a curve.

    Extra ``breakpoints`` split the domain without changing values.
    """
    if not start < end:
        raise DomainError(f"degenerate interval [{start}, {end}]")
    inner = sorted(float(b) for b in breakpoints if start + TIME_TOL < b < end - TIME_TOL)
    points = [start] + inner + [end]
    return PiecewiseCurve(group, points, [func] * (len(points) - 1))


def constant_curve(X: AlgebraElement, start: float = 0.0, end: float = 1.0) -> PiecewiseCurve:
    """
    The constant curve φ_X: [start, end] ∋ t ↦ X.

    Raises
    ------
    DomainError
        If ``start >= end``.
    """
    coords = np.array(X.coordinates)
    coords.setflags(write=False)
    return curve_from_function(X.group_id, lambda t: coords, start, end)


def _scaled_piece(piece, factor):
    return lambda t: factor * np.asarray(piece(t), dtype=float)


def scale_curve(factor: float, curve: PiecewiseCurve) -> PiecewiseCurve:
    """Pointwise τ·φ with unchanged breakpoints."""
    factor = float(factor)
    return PiecewiseCurve(curve.group, curve.breakpoints, [_scaled_piece(p, factor) for p in curve.pieces])


def restrict(curve: PiecewiseCurve, start: float, end: float) -> PiecewiseCurve:
    """
    φ|_[start, end].

    Raises
    ------
    DomainError
        If the interval is degenerate or leaves the domain of φ.
    """
    if not start < end:
        raise DomainError(f"degenerate interval [{start}, {end}]")
    if not curve.contains(start, end):
        raise DomainError(f"[{start}, {end}] is not inside [{curve.start}, {curve.end}]")
    start, end = max(start, curve.start), min(end, curve.end)
    points, pieces = [start], []
    for index, (a, b) in enumerate(curve.intervals()):
        if b <= start + TIME_TOL or a >= end - TIME_TOL:
            continue
        right = min(b, end)
        if right - points[-1] > TIME_TOL or not pieces:
            points.append(right)
            pieces.append(curve.pieces[index])
    points[-1] = end
    return PiecewiseCurve(curve.group, points, pieces)


def concatenate(*curves: PiecewiseCurve) -> PiecewiseCurve:
    """
    Join curves on adjacent domains into one curve.

    Raises
    ------
    GroupMismatchError
        If the curves belong to different groups.
    DomainError
        If consecutive domains do not touch.
    """
    if not curves:
        raise DomainError("nothing to concatenate")
    first = curves[0]
    points, pieces = list(first.breakpoints), list(first.pieces)
    for curve in curves[1:]:
        if curve.group_id != first.group_id:
            raise GroupMismatchError(
                f"cannot concatenate curves of {first.group_id!r} and {curve.group_id!r}", key=curve.group_id
            )
        if abs(curve.start - points[-1]) > TIME_TOL:
            raise DomainError(f"curve starting at {curve.start} does not continue at {points[-1]}")
        points.extend(curve.breakpoints[1:])
        pieces.extend(curve.pieces)
    return PiecewiseCurve(first.group, points, pieces)


def _merged(*point_lists):
    merged = []
    for t in sorted(float(t) for points in point_lists for t in points):
        if not merged or t - merged[-1] > TIME_TOL:
            merged.append(t)
    return merged


def refine(curve: PiecewiseCurve, points) -> PiecewiseCurve:
    """Insert extra breakpoints (inside the domain) without changing any value."""
    inner = [t for t in points if curve.start + TIME_TOL < t < curve.end - TIME_TOL]
    merged = _merged(curve.breakpoints, inner)
    merged[0], merged[-1] = curve.start, curve.end
    pieces = [curve.pieces[curve.cell_piece(a, b)] for a, b in zip(merged, merged[1:])]
    return PiecewiseCurve(curve.group, merged, pieces)


def _combined_piece(f, g, a, b):
    return lambda t: a * np.asarray(f(t), dtype=float) + b * np.asarray(g(t), dtype=float)


def check_shared_domain(phi: PiecewiseCurve, psi: PiecewiseCurve):
    """
    Require two curves of one group on one domain.

    Raises
    ------
    GroupMismatchError
        If the curves belong to different groups.
    DomainError
        If the domains differ.
    """
    if phi.group_id != psi.group_id:
        raise GroupMismatchError(f"curves of {phi.group_id!r} and {psi.group_id!r} do not mix", key=psi.group_id)
    if abs(phi.start - psi.start) > TIME_TOL or abs(phi.end - psi.end) > TIME_TOL:
        raise DomainError("both curves must share their domain")


def merged_breakpoints(phi: PiecewiseCurve, psi: PiecewiseCurve):
    """Sorted union of both breakpoint lists (points closer than 1e-12 collapse)."""
    merged = _merged(phi.breakpoints, psi.breakpoints)
    merged[0], merged[-1] = phi.start, phi.end
    return merged


def combine(phi: PiecewiseCurve, psi: PiecewiseCurve, a: float = 1.0, b: float = 1.0) -> PiecewiseCurve:
    """
    Pointwise a·φ + b·ψ on the merged breakpoints; ``combine(psi, phi, 1, -1)`` is ψ − φ.

    Raises
    ------
    DomainError
        If the domains differ.
    """
    check_shared_domain(phi, psi)
    merged = merged_breakpoints(phi, psi)
    pieces = []
    for lo, hi in zip(merged, merged[1:]):
        pieces.append(
            _combined_piece(phi.pieces[phi.cell_piece(lo, hi)], psi.pieces[psi.cell_piece(lo, hi)], a, b)
        )
    return PiecewiseCurve(phi.group, merged, pieces)


def _pulled_back_piece(piece, rho, lo, hi):
    def evaluate(t):
        s = min(max(rho.func(t), lo), hi)
        return rho.derivative(t) * np.asarray(piece(s), dtype=float)

    return evaluate


def reparametrize(curve: PiecewiseCurve, rho: Reparametrization, grid: int = 256) -> PiecewiseCurve:
    """
    The curve t ↦ ϱ̇(t)·φ(ϱ(t)) on the domain of ϱ.

    Breakpoints are the preimages of φ's breakpoints, found by root bracketing
    when ϱ is strictly monotone; otherwise the domain is cut into ``grid``
    equal cells.

    Raises
    ------
    DomainError
        If ϱ leaves the domain of φ.
    """
    times = np.linspace(rho.start, rho.end, grid + 1)
    values = rho.values(times)
    if values.min() < curve.start - TIME_TOL or values.max() > curve.end + TIME_TOL:
        raise DomainError(
            f"reparametrization ranges over [{values.min()}, {values.max()}], "
            f"outside [{curve.start}, {curve.end}]"
        )
    steps = np.diff(values)
    if np.all(steps > 0) or np.all(steps < 0):
        lo, hi = min(values[0], values[-1]), max(values[0], values[-1])
        cuts = []
        for b in curve.breakpoints[1:-1]:
            if lo + TIME_TOL < b < hi - TIME_TOL:
                cuts.append(brentq(lambda t: rho.func(t) - b, rho.start, rho.end, xtol=1e-15))
        points = _merged([rho.start, rho.end], cuts)
    else:
        points = list(times)
    points[0], points[-1] = rho.start, rho.end
    pieces = []
    for a, b in zip(points, points[1:]):
        index = curve.piece_index(min(max(rho.func(0.5 * (a + b)), curve.start), curve.end))
        lo, hi = curve.breakpoints[index], curve.breakpoints[index + 1]
        pieces.append(_pulled_back_piece(curve.pieces[index], rho, lo, hi))
    return PiecewiseCurve(curve.group, points, pieces)
