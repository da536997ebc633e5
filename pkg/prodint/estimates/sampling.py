import numpy as np

from prodint.curves.piecewise import PiecewiseCurve
from prodint.errors import DomainError

__all__ = ["sample_algebra_ball", "sample_group_ball", "random_algebra_curve"]


def _ball(rng, count, dimension, radius):
    directions = rng.standard_normal((count, dimension))
    norms = np.linalg.norm(directions, axis=1, keepdims=True)
    norms[norms == 0.0] = 1.0
    radii = radius * rng.random((count, 1)) ** (1.0 / dimension)
    return radii * directions / norms


def sample_algebra_ball(group, rng, radius=0.5, count=1):
    """
    Uniform samples from the ball of ``radius`` in Lie algebra basis coordinates.

    Returns
    -------
    numpy.ndarray
        ``count`` rows of E coordinates.
    """
    if radius < 0:
        raise DomainError(f"sampling radius must be nonnegative, got {radius}")
    return _ball(rng, count, group.algebra_dimension, radius) @ group._basis


def sample_group_ball(group, rng, radius=0.5, count=1):
    """exp of :func:`sample_algebra_ball` samples: a finite stand-in for a compact set around e."""
    return [group._exp(x) for x in sample_algebra_ball(group, rng, radius, count)]


def _feature_piece(coefficients, basis, degree, harmonics, lo, hi):
    def evaluate(t):
        s = (t - lo) / (hi - lo)
        features = [s ** d for d in range(degree + 1)]
        for k in range(1, harmonics + 1):
            features.append(np.sin(2.0 * np.pi * k * s))
            features.append(np.cos(2.0 * np.pi * k * s))
        return (np.asarray(features) @ coefficients) @ basis

    return evaluate


def random_algebra_curve(group, rng, start=0.0, end=1.0, degree=2, harmonics=1, pieces=1, amplitude=1.0):
    """
    Random bounded polynomial plus trigonometric algebra curve.

    Each basis coordinate is Σ a_d s^d + Σ (b_k sin 2πks + c_k cos 2πks) in the
    local variable s ∈ [0, 1] of its piece, with coefficients uniform in
    [−1, 1] scaled so that the coordinate stays within ``amplitude``.
    With ``pieces > 1`` the domain is cut into equal pieces with independent
    coefficients, so the curve jumps at the breakpoints.

    Parameters
    ----------
    group : Group
        Target group.
    rng : numpy.random.Generator
        Source of randomness.
    """
    if pieces < 1:
        raise DomainError(f"pieces must be >= 1, got {pieces}")
    features = degree + 1 + 2 * harmonics
    breakpoints = np.linspace(start, end, pieces + 1)
    parts = []
    for lo, hi in zip(breakpoints, breakpoints[1:]):
        coefficients = amplitude * rng.uniform(-1.0, 1.0, (features, group.algebra_dimension)) / features
        parts.append(_feature_piece(coefficients, group._basis, degree, harmonics, lo, hi))
    return PiecewiseCurve(group, breakpoints, parts)
