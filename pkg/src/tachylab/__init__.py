"""Numerical laboratory for a stable scalar tachyonic field: box and
continuum two-point functions, truncated Fock spaces, singularity-direction
probes, and chronology-protection kinematics."""

__version__ = "0.1.0"

from .errors import TachylabError
from .spacetime import Boost, FourVector, boost_apply, boost_inverse, \
    interval_class, minkowski_square
from .modes import (
    GridField,
    Mode,
    ModeSet,
    TachyonMass,
    build_box_modes,
    delta_m_box,
    dispersion,
    group_velocity,
    kg_inner_product,
    mode_function,
    sample_mode,
)
from .propagators import (
    PropagatorValue,
    QuadratureSpec,
    RadialSource,
    boosted_wightman,
    commutator,
    massless_wightman,
    pct_residual,
    scaling_limit_curve,
    symmetric_part,
    wightman,
    wightman_box,
    wightman_radial,
)
from .wavefront import DecayReport, wavefront_decay_probe, windowed_transform
from .fock import (
    FockSpace,
    build_fock_space,
    charge_op,
    conjugate_momentum,
    field_operator,
    grid_assembled_hamiltonian,
    hamiltonian_op,
    ladder,
    momentum_op,
    number_op,
)
from .causality import (
    RelayChain,
    SignalLeg,
    SpectrumCut,
    antitelephone_check,
    halving_consistency,
    leg_displacement,
    leg_time_in_frame,
    spectrum_allowed,
)
