"""Two-point functions of the tachyonic field.

Two evaluators are provided for every distribution:

* box mode sums (exact finite-dimensional identities, lattice artifacts
  break rotation/boost symmetry), and
* continuum radial quadrature (angular integral done analytically, the
  conditionally convergent tail realized by exponential damping e^{-eps*k}
  with polynomial extrapolation eps -> 0).

The radial reduction used here is

    Dp(t, r) = 1/(4 pi^2 r) * int_m^inf dk k sin(k r) exp(-i w t) / w,

with w = sqrt(k^2 - m^2); substituting u = w turns the integrable endpoint
singularity into a smooth integrand over u in [0, inf).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import LightConeSingular, NonConvergent
from .modes import ModeSet, TachyonMass, TWO_PI
from .spacetime import Boost, FourVector, boost_apply, boost_inverse

__all__ = [
    "QuadratureSpec",
    "PropagatorValue",
    "RadialSource",
    "wightman_box",
    "wightman_radial",
    "wightman",
    "commutator",
    "symmetric_part",
    "massless_wightman",
    "scaling_limit_curve",
    "pct_residual",
    "boosted_wightman",
]

_GAUSS_NODES, _GAUSS_WEIGHTS = np.polynomial.legendre.leggauss(12)
_DAMPING_EXPONENT_CUTOFF = 40.0  # integrand below e^-40 is discarded


@dataclass(frozen=True)
class QuadratureSpec:
    """Controls for the radial oscillatory integrals.

    eps_damping is a strictly decreasing ladder of damping scales; the
    undamped value is recovered by polynomial extrapolation in eps.
    k_max is a hard tail truncation on |k| (the damping cutoff usually
    binds first).
    """

    eps_damping: tuple = (0.4, 0.2, 0.1, 0.05, 0.025)
    k_max: float = 4000.0
    n_points: int = 400
    extrapolation_order: int = 4

    def __post_init__(self):
        eps = np.asarray(self.eps_damping, dtype=float)
        if eps.size < 2 or np.any(eps <= 0) or np.any(np.diff(eps) >= 0):
            raise ValueError("eps_damping must be a strictly decreasing positive ladder")
        if self.n_points < 100:
            raise ValueError("n_points must be >= 100")
        if self.extrapolation_order < 1:
            raise ValueError("extrapolation_order must be >= 1")

    def scaled(self, lam: float) -> "QuadratureSpec":
        """Spec adapted to arguments shrunk by lam (eps*lam, k_max/lam)."""
        return QuadratureSpec(
            tuple(e * lam for e in self.eps_damping),
            self.k_max / lam, self.n_points, self.extrapolation_order)


@dataclass(frozen=True)
class PropagatorValue:
    """Quadrature result with an extrapolation error estimate."""

    value: complex
    est_error: float


@dataclass(frozen=True)
class RadialSource:
    """Continuum evaluator configuration for the two-argument entry points."""

    mass: TachyonMass
    quad: QuadratureSpec = QuadratureSpec()
    exclusion_band: float = None

    def band(self) -> float:
        if self.exclusion_band is not None:
            return self.exclusion_band
        return 0.05 / self.mass.m


def wightman_box(x: FourVector, y: FourVector, ms: ModeSet) -> complex:
    """Box-sum two-point value sum_k measure * u_k(x) u_k*(y).

    Depends on x, y only through the difference (translation invariance of
    the mode sum).
    """
    d = x - y
    om = ms.omega
    phase = -(om * d.t - ms.k_array @ d.spatial)
    weights = ms.measure / (TWO_PI ** 3 * 2.0 * om)
    return complex(np.sum(weights * np.exp(1j * phase)))


def _damped_radial(t: float, r: float, mass: TachyonMass,
                   eps: float, k_max: float, n_points: int) -> complex:
    """Single damped integral over u = omega for one value of eps."""
    m = mass.m
    u_hard = np.sqrt(max(k_max ** 2 - m * m, 0.0))
    u_damp = _DAMPING_EXPONENT_CUTOFF / eps
    u_top = max(min(u_hard, u_damp), 10.0 * m)
    freq = r + abs(t) + 1e-12
    n_panels = int(max(np.ceil(u_top * freq * 4.0 / np.pi),
                       np.ceil(n_points / _GAUSS_NODES.size), 16))
    edges = np.linspace(0.0, u_top, n_panels + 1)
    mid = 0.5 * (edges[1:] + edges[:-1])[:, None]
    half = 0.5 * (edges[1:] - edges[:-1])[:, None]
    u = mid + half * _GAUSS_NODES[None, :]
    w = half * _GAUSS_WEIGHTS[None, :]
    k = np.sqrt(u * u + m * m)
    damp = np.exp(-eps * k)
    if r > 0.0:
        integrand = np.sin(k * r) * np.exp(-1j * u * t) * damp
        prefactor = 1.0 / (4.0 * np.pi ** 2 * r)
    else:
        integrand = k * np.exp(-1j * u * t) * damp
        prefactor = 1.0 / (4.0 * np.pi ** 2)
    return complex(prefactor * np.sum(w * integrand))


def _neville_to_zero(xs: np.ndarray, ys: np.ndarray) -> complex:
    """Polynomial through (xs, ys) evaluated at 0."""
    p = np.array(ys, dtype=complex)
    n = len(xs)
    for level in range(1, n):
        for i in range(n - level):
            p[i] = (xs[i + level] * p[i] - xs[i] * p[i + 1]) / (xs[i + level] - xs[i])
    return complex(p[0])


def wightman_radial(t: float, r: float, mass: TachyonMass,
                    q: QuadratureSpec = QuadratureSpec(),
                    exclusion_band: float = None,
                    max_rel_residual: float = 1.0) -> PropagatorValue:
    """Continuum Wightman value at preferred-frame separation (t, r >= 0).

    Evaluates the damped radial integral for each eps in the ladder and
    extrapolates eps -> 0; est_error is the magnitude of the last
    extrapolation correction.  Points within the light-cone exclusion band
    ||t| - r| < band are refused (the Hadamard singularity lives there).
    """
    if r < 0:
        raise ValueError("r must be >= 0")
    band = exclusion_band if exclusion_band is not None else 0.05 / mass.m
    if abs(abs(t) - r) < band:
        raise LightConeSingular(
            f"(t={t}, r={r}) within {band} of the light cone; pointwise value refused")
    if q.k_max <= 10.0 * mass.m:
        raise ValueError("QuadratureSpec.k_max must exceed 10*m")
    eps = np.asarray(q.eps_damping, dtype=float)
    vals = np.array([_damped_radial(t, r, mass, e, q.k_max, q.n_points) for e in eps],
                    dtype=complex)
    n_use = min(q.extrapolation_order + 1, len(eps))
    xs, ys = eps[-n_use:], vals[-n_use:]
    full = _neville_to_zero(xs, ys)
    shorter = _neville_to_zero(xs[1:], ys[1:]) if n_use > 2 else ys[-1]
    err = abs(full - shorter)
    if err > max_rel_residual * max(abs(full), 1e-300):
        raise NonConvergent(
            f"extrapolation residual {err:.3g} exceeds tolerance at (t={t}, r={r})")
    return PropagatorValue(full, err)


def _difference(x: FourVector, y: FourVector):
    d = x - y
    return d.t, float(np.linalg.norm(d.spatial))


def wightman(x: FourVector, y: FourVector, source) -> PropagatorValue:
    """Two-point value from either evaluator (ModeSet or RadialSource)."""
    if isinstance(source, ModeSet):
        return PropagatorValue(wightman_box(x, y, source), 0.0)
    t, r = _difference(x, y)
    return wightman_radial(t, r, source.mass, source.quad, source.band())


def commutator(x: FourVector, y: FourVector, source) -> complex:
    """Commutator distribution D(x, y) = 2 Im Dp(x - y).

    The operator commutator is <[phi(x), phi(y)]> = i D(x, y); D itself is
    real, and exactly zero at equal times for the box evaluator.
    """
    if isinstance(source, ModeSet):
        d = x - y
        om = source.omega
        cosine = np.cos(source.k_array @ d.spatial)
        s = np.sum(cosine * np.sin(om * d.t) / om)
        return complex(-source.measure / TWO_PI ** 3 * s)
    pv = wightman(x, y, source)
    return complex(2.0 * pv.value.imag)


def symmetric_part(x: FourVector, y: FourVector, source) -> complex:
    """Anticommutator expectation D1(x, y) = 2 Re Dp(x - y); real and
    symmetric, and (unlike the commutator) Lorentz invariant."""
    pv = wightman(x, y, source)
    return complex(2.0 * pv.value.real)


def massless_wightman(x: FourVector, exclusion_band: float = 1e-9) -> complex:
    """Closed-form massless two-point value off the light cone.

    (1/4 pi^2) / (r^2 - (t - i0)^2) in the eps -> 0+ prescription; real off
    the cone, positive for spacelike x and negative for timelike x.
    """
    t = x.t
    r = float(np.linalg.norm(x.spatial))
    if abs(abs(t) - r) < exclusion_band * (abs(t) + r + 1.0):
        raise LightConeSingular(f"(t={t}, r={r}) is on the light cone")
    return complex(1.0 / (4.0 * np.pi ** 2 * (r * r - t * t)))


def scaling_limit_curve(x: FourVector, lambdas, mass: TachyonMass,
                        q: QuadratureSpec = QuadratureSpec()):
    """Relative error of lam^2 * Dp(lam x) against the massless value.

    Returns a list of (lam, relative_error, est_error) tuples; the errors
    decrease as lam -> 0 (the short-distance scaling limit).  The
    quadrature spec is rescaled with each lam so the damping ladder tracks
    the shrinking separation.
    """
    reference = massless_wightman(x)
    out = []
    for lam in lambdas:
        scaled = q.scaled(lam)
        t, r = lam * x.t, lam * float(np.linalg.norm(x.spatial))
        pv = wightman_radial(t, r, mass, scaled,
                             exclusion_band=lam * 0.04 / mass.m)
        val = lam * lam * pv.value
        rel = abs(val - reference) / abs(reference)
        out.append((lam, float(rel), lam * lam * pv.est_error / abs(reference)))
    return out


def pct_residual(x: FourVector, source) -> float:
    """|Dp(x)* - Dp(-x)|; vanishes identically (the Fourier transform of
    the two-point distribution is real)."""
    origin = FourVector(0.0, 0.0, 0.0, 0.0)
    plus = wightman(x, origin, source).value
    minus = wightman(-x, origin, source).value
    return float(abs(np.conj(plus) - minus))


def boosted_wightman(x: FourVector, y: FourVector, b: Boost, source) -> PropagatorValue:
    """Two-point value seen in a boosted frame: the preferred-frame function
    pulled back through the inverse boost."""
    inv = boost_inverse(b)
    return wightman(boost_apply(inv, x), boost_apply(inv, y), source)
