"""Exception hierarchy for tachylab.

The |k| <= m spectrum cut is a deliberate physical choice of the model, so
excluded wavevectors raise distinct, named errors rather than being silently
dropped by scalar entry points.
"""


class TachylabError(Exception):
    """Base class for all tachylab errors."""


class ZeroModeExcluded(TachylabError):
    """|k| = m: frequency-zero mode, excluded from all sums (measure zero)."""


class EvanescentModeExcluded(TachylabError):
    """|k| < m: exponentially growing/decaying mode, deliberately omitted."""


class EmptyModeSet(TachylabError):
    """Box lattice contains no wavevectors with |k| > m."""


class GridMismatch(TachylabError):
    """Sampled fields do not share a common spatial grid."""


class LightConeSingular(TachylabError):
    """Pointwise evaluation requested inside the light-cone exclusion band."""


class NonConvergent(TachylabError):
    """Damping extrapolation residual exceeds the requested tolerance."""


class DimensionOverflow(TachylabError):
    """Requested Fock-space basis exceeds the configured dimension cap."""


class InvalidMode(TachylabError):
    """Mode index outside the Fock space's mode list."""


class SpeciesUnavailable(TachylabError):
    """b-type ladder operator requested on an uncharged Fock space."""


class NotCharged(TachylabError):
    """Charge operator requested on an uncharged Fock space."""


class OnCutPlane(TachylabError):
    """On-shell 4-momentum lies on the spectrum cut plane k0 + beta*kz = 0."""


class SpectrumForbiddenLeg(TachylabError):
    """Relay chain contains a leg that no allowed one-particle state supports."""


class InsufficientResolution(TachylabError):
    """Probe grid cannot resolve the requested window width."""
