"""Chronology protection bookkeeping for superluminal signal chains.

The preferred frame admits only half of the tachyonic mass shell: a
4-momentum k is populated iff k^0 + beta * k_z > 0, the same half-shell in
every frame related by a z-boost of speed beta (the selecting linear form
is proportional to k^0 under those boosts).  A signal leg propagates at the
group velocity k/omega for a positive duration, so the closed-loop
"antitelephone" construction has no allowed realization: chains of allowed
legs never return to the timelike past of their origin.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import OnCutPlane, SpectrumForbiddenLeg
from .modes import TachyonMass, dispersion, group_velocity
from .spacetime import Boost, FourVector, boost_apply, minkowski_square

__all__ = [
    "SpectrumCut",
    "SignalLeg",
    "RelayChain",
    "ChainVerdict",
    "spectrum_allowed",
    "halving_consistency",
    "leg_displacement",
    "leg_time_in_frame",
    "antitelephone_check",
    "random_chain",
    "chain_from_dict",
    "chain_to_dict",
    "verdict_to_dict",
]

_SHELL_TOL = 1e-9
_PLANE_TOL = 1e-12


@dataclass(frozen=True)
class SpectrumCut:
    """Half-shell selection k^0 + beta * k_z > 0 at tachyon mass m.

    beta in (-1, 1) is the z-boost of the observer frame relative to the
    preferred frame; beta = 0 keeps the usual positive-frequency half.
    """

    mass: TachyonMass
    beta: float = 0.0

    def __post_init__(self):
        if not abs(self.beta) < 1.0:
            raise ValueError(f"cut speed must lie in (-1, 1), got {self.beta}")

    def form(self, k: FourVector) -> float:
        """The selecting linear form k^0 + beta * k_z."""
        return k.t + self.beta * k.z


def spectrum_allowed(k: FourVector, cut: SpectrumCut,
                     shell_tol: float = _SHELL_TOL) -> bool:
    """True iff k lies on the tachyonic shell (within shell_tol * m^2 of
    k.k = -m^2) on the selected side of the cut plane."""
    m2 = cut.mass.m ** 2
    if abs(minkowski_square(k) + m2) > shell_tol * m2:
        return False
    return cut.form(k) > 0.0


def halving_consistency(k: FourVector, cut: SpectrumCut,
                        shell_tol: float = _SHELL_TOL,
                        plane_tol: float = _PLANE_TOL) -> bool:
    """Exactly one of +-k is selected for every on-shell k off the cut plane.

    Raises OnCutPlane when the selecting form vanishes (to plane_tol times
    the momentum scale); such k sit on the measure-zero boundary where the
    halving is undefined.
    """
    m2 = cut.mass.m ** 2
    if abs(minkowski_square(k) + m2) > shell_tol * m2:
        raise ValueError("halving_consistency expects an on-shell momentum")
    scale = abs(k.t) + abs(k.z) + cut.mass.m
    if abs(cut.form(k)) <= plane_tol * scale:
        raise OnCutPlane(f"momentum {k} lies on the cut plane k0 + beta*kz = 0")
    return spectrum_allowed(k, cut, shell_tol) != spectrum_allowed(-k, cut, shell_tol)


@dataclass(frozen=True)
class SignalLeg:
    """One relay hop: spatial wavevector (|k| > m) and emission duration."""

    kvec: tuple
    duration: float


@dataclass(frozen=True)
class RelayChain:
    """Origin event plus an ordered sequence of signal legs."""

    origin: FourVector
    legs: tuple


@dataclass(frozen=True)
class ChainVerdict:
    """Outcome of an antitelephone check on one chain."""

    final_event: FourVector
    total_time: float
    interval: str  # interval_class of final_event - origin
    in_timelike_past: bool

    @property
    def no_violation(self) -> bool:
        return not self.in_timelike_past


def leg_displacement(leg: SignalLeg, mass: TachyonMass) -> FourVector:
    """Spacetime displacement duration * (1, k/omega); always spacelike
    since the group speed |k|/omega exceeds 1."""
    if leg.duration <= 0.0:
        raise SpectrumForbiddenLeg(
            f"leg duration must be > 0, got {leg.duration}")
    v = group_velocity(leg.kvec, mass)
    d = leg.duration
    return FourVector(d, d * v[0], d * v[1], d * v[2])


def leg_time_in_frame(leg: SignalLeg, b: Boost, mass: TachyonMass) -> float:
    """Coordinate duration of the leg seen from the boosted frame (may be
    negative: moving observers can see an allowed leg run backwards)."""
    return boost_apply(b, leg_displacement(leg, mass)).t


def antitelephone_check(chain: RelayChain, cut: SpectrumCut,
                        null_tol: float = 1e-9) -> ChainVerdict:
    """Walk the chain and test whether it lands in the timelike past of its
    origin (it never does for legs drawn from the allowed half-spectrum).

    Every leg's 4-momentum (omega(k), k) must be selected by the cut and
    carry positive duration; offending legs raise SpectrumForbiddenLeg.
    """
    event = chain.origin
    for leg in chain.legs:
        om = dispersion(leg.kvec, cut.mass)
        kx, ky, kz = (float(c) for c in leg.kvec)
        k4 = FourVector(om, kx, ky, kz)
        if not spectrum_allowed(k4, cut):
            raise SpectrumForbiddenLeg(
                f"leg momentum {k4} is outside the allowed half-spectrum")
        event = event + leg_displacement(leg, cut.mass)
    diff = event - chain.origin
    sq = minkowski_square(diff)
    scale = diff.t ** 2 + float(np.dot(diff.spatial, diff.spatial))
    if abs(sq) <= null_tol * max(scale, 1.0):
        interval = "null"
    else:
        interval = "timelike" if sq > 0 else "spacelike"
    in_past = interval == "timelike" and diff.t < 0.0
    return ChainVerdict(event, diff.t, interval, in_past)


def random_chain(rng: np.random.Generator, cut: SpectrumCut,
                 n_legs_max: int = 6, k_scale: float = 10.0,
                 duration_scale: float = 5.0) -> RelayChain:
    """Seeded random chain of allowed legs.

    Wavevectors are drawn isotropically with |k| in (m, k_scale * m] and
    flipped onto the allowed side of the cut when needed; durations are
    uniform in (0, duration_scale].
    """
    m = cut.mass.m
    n_legs = int(rng.integers(1, n_legs_max + 1))
    origin = FourVector(*(rng.uniform(-1.0, 1.0, size=4)))
    legs = []
    for _ in range(n_legs):
        while True:
            direction = rng.normal(size=3)
            norm = np.linalg.norm(direction)
            if norm > 1e-12:
                direction /= norm
                break
        mag = m * (1.0 + rng.uniform(1e-6, k_scale - 1.0))
        kvec = mag * direction
        om = dispersion(kvec, cut.mass)
        if cut.form(FourVector(om, *kvec)) <= 0.0:
            # omega > 0 and beta < 1 make -k allowed whenever k is not
            kvec = -kvec
        duration = float(rng.uniform(1e-6, duration_scale))
        legs.append(SignalLeg(tuple(float(c) for c in kvec), duration))
    return RelayChain(origin, tuple(legs))


def chain_to_dict(chain: RelayChain) -> dict:
    return {
        "origin": [chain.origin.t, chain.origin.x, chain.origin.y, chain.origin.z],
        "legs": [{"kvec": list(leg.kvec), "duration": leg.duration}
                 for leg in chain.legs],
    }


def chain_from_dict(d: dict) -> RelayChain:
    origin = FourVector(*(float(c) for c in d["origin"]))
    legs = tuple(SignalLeg(tuple(float(c) for c in leg["kvec"]),
                           float(leg["duration"]))
                 for leg in d["legs"])
    return RelayChain(origin, legs)


def verdict_to_dict(v: ChainVerdict) -> dict:
    e = v.final_event
    return {
        "final_event": [float(c) for c in (e.t, e.x, e.y, e.z)],
        "total_time": float(v.total_time),
        "interval": v.interval,
        "in_timelike_past": bool(v.in_timelike_past),
        "no_violation": bool(v.no_violation),
    }


def load_chains(text: str) -> list:
    """Parse a JSON document holding one chain or a list of chains."""
    data = json.loads(text)
    if isinstance(data, dict):
        data = [data]
    return [chain_from_dict(d) for d in data]
