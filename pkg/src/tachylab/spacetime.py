"""Minkowski four-vector arithmetic in the preferred-frame coordinates.

Metric signature is (+,-,-,-), so a tachyonic 4-momentum on the mass shell
satisfies minkowski_square(k) = -m**2.  Units use c = 1 throughout.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "FourVector",
    "Boost",
    "minkowski_square",
    "boost_apply",
    "boost_inverse",
    "interval_class",
]


@dataclass(frozen=True)
class FourVector:
    """Spacetime or 4-momentum point (t, x, y, z) in the preferred frame."""

    t: float
    x: float
    y: float
    z: float

    def __post_init__(self):
        comps = (self.t, self.x, self.y, self.z)
        if not all(np.isfinite(comps)):
            raise ValueError(f"FourVector components must be finite, got {comps}")

    @property
    def spatial(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])

    def __add__(self, other: "FourVector") -> "FourVector":
        return FourVector(self.t + other.t, self.x + other.x,
                          self.y + other.y, self.z + other.z)

    def __sub__(self, other: "FourVector") -> "FourVector":
        return FourVector(self.t - other.t, self.x - other.x,
                          self.y - other.y, self.z - other.z)

    def __neg__(self) -> "FourVector":
        return FourVector(-self.t, -self.x, -self.y, -self.z)

    def scale(self, s: float) -> "FourVector":
        return FourVector(s * self.t, s * self.x, s * self.y, s * self.z)


@dataclass(frozen=True)
class Boost:
    """Proper orthochronous boost of speed beta along a unit 3-axis."""

    beta: float
    axis: tuple[float, float, float] = (0.0, 0.0, 1.0)

    def __post_init__(self):
        if not abs(self.beta) < 1.0:
            raise ValueError(f"boost speed must satisfy |beta| < 1, got {self.beta}")
        n = np.asarray(self.axis, dtype=float)
        if abs(np.linalg.norm(n) - 1.0) > 1e-12:
            raise ValueError(f"boost axis must be a unit vector, got {self.axis}")

    @property
    def gamma(self) -> float:
        return 1.0 / np.sqrt(1.0 - self.beta ** 2)


def minkowski_square(v: FourVector) -> float:
    """t**2 - |x|**2; negative for spacelike vectors."""
    return v.t ** 2 - v.x ** 2 - v.y ** 2 - v.z ** 2


def boost_apply(b: Boost, v: FourVector) -> FourVector:
    """Apply the boost to v.  Preserves minkowski_square to 1e-12 relative."""
    n = np.asarray(b.axis, dtype=float)
    r = v.spatial
    r_par = np.dot(r, n)
    r_perp = r - r_par * n
    g = b.gamma
    t_new = g * (v.t - b.beta * r_par)
    par_new = g * (r_par - b.beta * v.t)
    xyz = r_perp + par_new * n
    return FourVector(t_new, xyz[0], xyz[1], xyz[2])


def boost_inverse(b: Boost) -> Boost:
    """The boost undoing b (same axis, opposite speed)."""
    return Boost(-b.beta, b.axis)


def interval_class(v: FourVector, tol: float = 0.0) -> str:
    """Classify v as 'timelike', 'spacelike' or 'null' by sign of its square.

    |minkowski_square| <= tol maps to 'null'.
    """
    if tol < 0:
        raise ValueError("tol must be >= 0")
    s = minkowski_square(v)
    if abs(s) <= tol:
        return "null"
    return "timelike" if s > 0 else "spacelike"
