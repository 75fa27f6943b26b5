"""Oscillatory modes of the tachyonic Klein-Gordon equation.

Only wavevectors with |k| > m enter the model: |k| = m modes have zero
frequency and are measure-zero, |k| < m modes grow/decay exponentially and
are excluded for stability.  The mode continuum is regularized on a periodic
box of side L with lattice k = 2*pi*n/L, so every d^3k integral becomes a
finite sum weighted by the cell volume (2*pi/L)**3.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    EmptyModeSet,
    EvanescentModeExcluded,
    GridMismatch,
    ZeroModeExcluded,
)
from .spacetime import FourVector

__all__ = [
    "TachyonMass",
    "Mode",
    "ModeSet",
    "GridField",
    "dispersion",
    "group_velocity",
    "mode_function",
    "build_box_modes",
    "delta_m_box",
    "kg_inner_product",
    "sample_mode",
    "spatial_grid",
]

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class TachyonMass:
    """Tachyonic mass parameter m > 0 (dispersion omega = sqrt(k^2 - m^2))."""

    m: float

    def __post_init__(self):
        if not (np.isfinite(self.m) and self.m > 0):
            raise ValueError(f"tachyon mass must be finite and > 0, got {self.m}")


def dispersion(kvec, mass: TachyonMass) -> float:
    """Frequency omega = sqrt(|k|^2 - m^2) for an oscillatory mode |k| > m.

    Raises ZeroModeExcluded at |k| = m and EvanescentModeExcluded for
    |k| < m; both parts of the spectrum are deliberately cut from the model.
    """
    k = np.linalg.norm(np.asarray(kvec, dtype=float))
    m = mass.m
    if k == m:
        raise ZeroModeExcluded(f"|k| = m = {m}: zero-frequency mode is excluded")
    if k < m:
        raise EvanescentModeExcluded(
            f"|k| = {k} < m = {m}: growing/decaying modes are omitted")
    return float(np.sqrt(k * k - m * m))


def group_velocity(kvec, mass: TachyonMass) -> np.ndarray:
    """Group velocity k/omega; Euclidean speed is strictly superluminal."""
    omega = dispersion(kvec, mass)
    return np.asarray(kvec, dtype=float) / omega


@dataclass(frozen=True)
class Mode:
    """Single oscillatory mode: wavevector with |k| > m and its frequency."""

    kvec: tuple[float, float, float]
    omega: float

    @classmethod
    def from_kvec(cls, kvec, mass: TachyonMass) -> "Mode":
        kv = tuple(float(c) for c in kvec)
        return cls(kv, dispersion(kv, mass))


def mode_function(mode: Mode, x: FourVector, mass: TachyonMass = None) -> complex:
    """Positive-frequency mode u_k(x) = M_k exp(-i(omega*t - k.x)).

    Normalization M_k = ((2*pi)^3 * 2*omega)**(-1/2) makes the continuum
    Klein-Gordon inner products delta-orthonormal.  The negative-frequency
    partner is the complex conjugate.
    """
    k = np.asarray(mode.kvec)
    norm = (TWO_PI ** 3 * 2.0 * mode.omega) ** -0.5
    phase = -(mode.omega * x.t - float(np.dot(k, x.spatial)))
    return norm * np.exp(1j * phase)


@dataclass(frozen=True)
class ModeSet:
    """Finite box-regularized mode collection, closed under k -> -k.

    measure is the momentum-space cell volume (2*pi/L)**3 standing in for
    d^3k in every mode sum.
    """

    box_length: float
    n_max: int
    mass: TachyonMass
    k_array: np.ndarray = field(repr=False)  # shape (N, 3)

    @property
    def measure(self) -> float:
        return (TWO_PI / self.box_length) ** 3

    @property
    def omega(self) -> np.ndarray:
        k2 = np.sum(self.k_array ** 2, axis=1)
        return np.sqrt(k2 - self.mass.m ** 2)

    def __len__(self) -> int:
        return self.k_array.shape[0]

    def modes(self) -> list[Mode]:
        om = self.omega
        return [Mode(tuple(k), float(w)) for k, w in zip(self.k_array, om)]

    def to_dict(self) -> dict:
        return {
            "box_length": self.box_length,
            "n_max": self.n_max,
            "m": self.mass.m,
            "measure": self.measure,
            "modes": [
                {"k": [float(c) for c in k], "omega": float(w)}
                for k, w in zip(self.k_array, self.omega)
            ],
        }

    def to_json(self, indent: int = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_dict(cls, d: dict) -> "ModeSet":
        mass = TachyonMass(float(d["m"]))
        karr = np.array([mode["k"] for mode in d["modes"]], dtype=float)
        return cls(float(d["box_length"]), int(d["n_max"]), mass, karr)

    @classmethod
    def from_json(cls, s: str) -> "ModeSet":
        return cls.from_dict(json.loads(s))


def build_box_modes(box_length: float, n_max: int, mass: TachyonMass) -> ModeSet:
    """All lattice wavevectors k = (2*pi/L)*n, |n|_inf <= n_max, |k| > m.

    Lattice points with |k| = m exactly are dropped along with the |k| < m
    block.  Raises EmptyModeSet if nothing survives the cut.
    """
    if box_length <= 0:
        raise ValueError("box_length must be > 0")
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    dk = TWO_PI / box_length
    rng = np.arange(-n_max, n_max + 1)
    nx, ny, nz = np.meshgrid(rng, rng, rng, indexing="ij")
    n = np.stack([nx.ravel(), ny.ravel(), nz.ravel()], axis=1)
    k = dk * n.astype(float)
    knorm = np.linalg.norm(k, axis=1)
    keep = knorm > mass.m
    k = k[keep]
    if k.shape[0] == 0:
        raise EmptyModeSet(
            f"lattice ball (L={box_length}, n_max={n_max}) lies inside |k| <= {mass.m}")
    return ModeSet(box_length, n_max, mass, k)


def delta_m_box(xvec, ms: ModeSet) -> float:
    """Box-regularized modified delta: (measure/(2*pi)^3) * sum_k cos(k.x).

    Imaginary parts cancel exactly by the k -> -k closure of the lattice,
    so the sum is real by construction.
    """
    x = np.asarray(xvec, dtype=float)
    return float(ms.measure / TWO_PI ** 3 * np.sum(np.cos(ms.k_array @ x)))


def spatial_grid(box_length: float, n: int) -> np.ndarray:
    """Uniform periodic grid points along one axis (n points, spacing L/n)."""
    return np.arange(n) * (box_length / n)


@dataclass(frozen=True)
class GridField:
    """Complex field and its time derivative sampled on a periodic cube.

    values and dt_values have shape (n, n, n), sampling the points
    (i, j, k) * L/n at a fixed hypersurface time.
    """

    box_length: float
    values: np.ndarray = field(repr=False)
    dt_values: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.values.shape != self.dt_values.shape:
            raise GridMismatch("values and dt_values shapes differ")
        s = self.values.shape
        if len(s) != 3 or len(set(s)) != 1:
            raise GridMismatch(f"expected a cubic grid, got shape {s}")


def sample_mode(mode: Mode, t: float, box_length: float, n: int) -> GridField:
    """Sample u_k and its time derivative on the periodic cube at time t."""
    axis = spatial_grid(box_length, n)
    kx, ky, kz = mode.kvec
    phase_x = np.exp(1j * kx * axis)[:, None, None]
    phase_y = np.exp(1j * ky * axis)[None, :, None]
    phase_z = np.exp(1j * kz * axis)[None, None, :]
    norm = (TWO_PI ** 3 * 2.0 * mode.omega) ** -0.5
    u = norm * np.exp(-1j * mode.omega * t) * phase_x * phase_y * phase_z
    return GridField(box_length, u, -1j * mode.omega * u)


def kg_inner_product(f: GridField, g: GridField) -> complex:
    """Klein-Gordon inner product i * integral(f* dt_g - dt_f* g) d^3x.

    Trapezoidal on the periodic grid, which is exact for band-limited box
    fields.  With the box normalization, (u_k, u_l) = delta_kl / measure.
    """
    if f.values.shape != g.values.shape or f.box_length != g.box_length:
        raise GridMismatch("fields sampled on different grids")
    n = f.values.shape[0]
    h3 = (f.box_length / n) ** 3
    integrand = np.conj(f.values) * g.dt_values - np.conj(f.dt_values) * g.values
    return complex(1j * h3 * np.sum(integrand))
