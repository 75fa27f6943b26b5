"""Truncated Fock-space realization of the ladder algebra and the
renormalized operators.

Conventions: ladder operators are dimensionless and Kronecker-normalized,
[a_k, a+_l] = delta_kl on the interior of the truncated space.  The field
operator carries sqrt(measure) per mode (the discrete stand-in for the
continuum a(k) = a_k / sqrt(d^3k cell)), which makes

    <0| phi(x) phi(y) |0> = sum_k measure * u_k(x) u_k*(y)

match the box Wightman sum exactly, and makes the normal-ordered grid
assembly of H = 1/2 int (pi^2 + (grad phi)^2 - m^2 phi^2) reproduce the
closed-form diagonal H = sum_k omega_k n_k at any box size.

Operators are scipy sparse matrices (dense ndarray below dimension 512);
the occupation basis is enumerated deterministically with the vacuum at
index 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp
from scipy.special import comb

from .errors import (
    DimensionOverflow,
    InvalidMode,
    NotCharged,
    SpeciesUnavailable,
)
from .modes import Mode, ModeSet, TWO_PI, spatial_grid
from .spacetime import FourVector

__all__ = [
    "FockSpace",
    "build_fock_space",
    "ladder",
    "number_op",
    "field_operator",
    "conjugate_momentum",
    "hamiltonian_op",
    "momentum_op",
    "charge_op",
    "smeared_field",
    "smeared_momentum",
    "grid_assembled_hamiltonian",
    "interior_projector",
    "to_dense",
]

_DENSE_LIMIT = 512
_DEFAULT_DIM_CAP = 200_000


@dataclass(frozen=True)
class FockSpace:
    """Occupation-number space over a finite mode subset.

    basis lists occupation tuples (length n_modes, or 2*n_modes in the
    charged case: a-occupations then b-occupations) with total occupation
    <= n_max_total; index[occ] inverts the enumeration.
    """

    modes: tuple  # tuple[Mode, ...]
    measure: float
    mass_m: float
    n_max_total: int
    charged: bool
    basis: tuple = field(repr=False)
    index: dict = field(repr=False)

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def n_modes(self) -> int:
        return len(self.modes)

    def total_occupation(self, basis_idx: int) -> int:
        return sum(self.basis[basis_idx])


def _compositions(n_slots: int, total: int):
    """All occupation tuples of length n_slots summing to total, in
    lexicographic order."""
    if n_slots == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(n_slots - 1, total - first):
            yield (first,) + rest


def _enumerate_basis(n_slots: int, n_max_total: int):
    out = []
    for total in range(n_max_total + 1):
        out.extend(_compositions(n_slots, total))
    return out


def build_fock_space(ms: ModeSet, n_max_total: int, charged: bool = False,
                     mode_indices=None, dim_cap: int = _DEFAULT_DIM_CAP) -> FockSpace:
    """Fock space over a subset of a ModeSet's modes.

    mode_indices selects modes by position in the ModeSet (default: all).
    The vacuum is basis index 0.  Raises DimensionOverflow if the basis
    would exceed dim_cap.
    """
    if n_max_total < 1:
        raise ValueError("n_max_total must be >= 1")
    all_modes = ms.modes()
    if mode_indices is None:
        chosen = all_modes
    else:
        chosen = [all_modes[i] for i in mode_indices]
    if not chosen:
        raise ValueError("mode subset must be nonempty")
    n_slots = (2 if charged else 1) * len(chosen)
    # stars-and-bars count of occupations with total <= n_max_total,
    # checked before enumerating anything
    dim = int(comb(n_slots + n_max_total, n_slots, exact=True))
    if dim > dim_cap:
        raise DimensionOverflow(f"basis size {dim} exceeds cap {dim_cap}")
    basis = _enumerate_basis(n_slots, n_max_total)
    index = {occ: i for i, occ in enumerate(basis)}
    return FockSpace(tuple(chosen), ms.measure, ms.mass.m, n_max_total,
                     charged, tuple(basis), index)


def _materialize(rows, cols, vals, dim, as_complex=True):
    dtype = complex if as_complex else float
    mat = sp.csr_matrix((np.asarray(vals, dtype=dtype), (rows, cols)),
                        shape=(dim, dim))
    if dim < _DENSE_LIMIT:
        return mat.toarray()
    return mat


def _slot(fs: FockSpace, mode_index: int, species: str) -> int:
    if not 0 <= mode_index < fs.n_modes:
        raise InvalidMode(f"mode index {mode_index} out of range")
    if species == "a":
        return mode_index
    if species == "b":
        if not fs.charged:
            raise SpeciesUnavailable("b-type operators require a charged Fock space")
        return fs.n_modes + mode_index
    raise ValueError(f"unknown species {species!r}")


def ladder(fs: FockSpace, mode_index: int, kind: str, species: str = "a"):
    """Annihilation or creation matrix for one mode (standard sqrt(n)
    elements; creation is the conjugate transpose of annihilation)."""
    slot = _slot(fs, mode_index, species)
    rows, cols, vals = [], [], []
    for j, occ in enumerate(fs.basis):
        n = occ[slot]
        if n == 0:
            continue
        lowered = list(occ)
        lowered[slot] = n - 1
        i = fs.index[tuple(lowered)]
        rows.append(i)
        cols.append(j)
        vals.append(np.sqrt(n))
    if kind == "annihilate":
        return _materialize(rows, cols, vals, fs.dimension)
    if kind == "create":
        return _materialize(cols, rows, vals, fs.dimension)
    raise ValueError(f"unknown ladder kind {kind!r}")


def number_op(fs: FockSpace, mode_index: int, species: str = "a"):
    """Diagonal occupation-number matrix for one mode."""
    slot = _slot(fs, mode_index, species)
    diag = np.array([occ[slot] for occ in fs.basis], dtype=complex)
    return _materialize(range(fs.dimension), range(fs.dimension), diag,
                        fs.dimension)


def interior_projector(fs: FockSpace):
    """Projector onto total occupation <= n_max_total - 1, where the CCR
    hold exactly (the truncation boundary shell is exempt)."""
    diag = np.array([1.0 if sum(occ) <= fs.n_max_total - 1 else 0.0
                     for occ in fs.basis], dtype=complex)
    return _materialize(range(fs.dimension), range(fs.dimension), diag,
                        fs.dimension)


def _mode_amplitudes(fs: FockSpace, x: FourVector) -> np.ndarray:
    """alpha_k(x) = sqrt(measure) * u_k(x) for every mode."""
    out = np.empty(fs.n_modes, dtype=complex)
    for i, mode in enumerate(fs.modes):
        norm = (TWO_PI ** 3 * 2.0 * mode.omega) ** -0.5
        phase = -(mode.omega * x.t - float(np.dot(mode.kvec, x.spatial)))
        out[i] = np.sqrt(fs.measure) * norm * np.exp(1j * phase)
    return out


def _assemble(fs: FockSpace, coeff_annihilate: np.ndarray,
              coeff_create: np.ndarray):
    """sum_k (c_k * lowering_k + d_k * raising_k) over the field content.

    Uncharged: lowering = a_k.  Charged: lowering = a_k, raising = b+_k
    (the charged-field ansatz phi = a u + b+ u*)."""
    total = None
    raise_species = "b" if fs.charged else "a"
    for i in range(fs.n_modes):
        term = (coeff_annihilate[i] * ladder(fs, i, "annihilate", "a")
                + coeff_create[i] * ladder(fs, i, "create", raise_species))
        total = term if total is None else total + term
    return total


def field_operator(fs: FockSpace, x: FourVector):
    """phi(x) = sum_k sqrt(measure) (a_k u_k(x) + a+_k u_k*(x)); the
    charged variant uses b+_k in the creation slot.  Hermitian when
    uncharged."""
    alpha = _mode_amplitudes(fs, x)
    return _assemble(fs, alpha, np.conj(alpha))


def conjugate_momentum(fs: FockSpace, x: FourVector):
    """pi(x) = d_t phi(x) = sum_k sqrt(measure) (-i omega)(a_k u_k - ...),
    via the analytic time derivative of the mode functions."""
    alpha = _mode_amplitudes(fs, x)
    om = np.array([m.omega for m in fs.modes])
    return _assemble(fs, -1j * om * alpha, 1j * om * np.conj(alpha))


def smeared_field(fs: FockSpace, f_hat: np.ndarray, t: float):
    """phi(f, t) = int f(x) phi(t, x) d^3x for a real test function f with
    Fourier values f_hat[i] = int f(x) exp(i k_i . x) d^3x at the modes."""
    norm = np.array([(TWO_PI ** 3 * 2.0 * m.omega) ** -0.5 for m in fs.modes])
    om = np.array([m.omega for m in fs.modes])
    c_ann = np.sqrt(fs.measure) * norm * np.exp(-1j * om * t) * f_hat
    c_cre = np.sqrt(fs.measure) * norm * np.exp(1j * om * t) * np.conj(f_hat)
    return _assemble(fs, c_ann, c_cre)


def smeared_momentum(fs: FockSpace, f_hat: np.ndarray, t: float):
    """pi(f, t) = int f(x) d_t phi(t, x) d^3x."""
    norm = np.array([(TWO_PI ** 3 * 2.0 * m.omega) ** -0.5 for m in fs.modes])
    om = np.array([m.omega for m in fs.modes])
    c_ann = -1j * om * np.sqrt(fs.measure) * norm * np.exp(-1j * om * t) * f_hat
    c_cre = 1j * om * np.sqrt(fs.measure) * norm * np.exp(1j * om * t) * np.conj(f_hat)
    return _assemble(fs, c_ann, c_cre)


def _diagonal_from_weights(fs: FockSpace, weight_a, weight_b=None):
    vals = []
    for occ in fs.basis:
        v = 0.0
        for i in range(fs.n_modes):
            v += occ[i] * weight_a[i]
        if fs.charged:
            wb = weight_a if weight_b is None else weight_b
            for i in range(fs.n_modes):
                v += occ[fs.n_modes + i] * wb[i]
        vals.append(v)
    return _materialize(range(fs.dimension), range(fs.dimension), vals,
                        fs.dimension)


def hamiltonian_op(fs: FockSpace):
    """Normal-ordered Hamiltonian, diagonal with eigenvalue sum_k n_k
    omega_k (both species in the charged case); vacuum eigenvalue 0,
    positive semidefinite."""
    om = [m.omega for m in fs.modes]
    return _diagonal_from_weights(fs, om)


def momentum_op(fs: FockSpace):
    """Field momentum: three diagonal matrices with eigenvalues
    sum_k n_k k_i; commutes with the Hamiltonian exactly."""
    return tuple(
        _diagonal_from_weights(fs, [m.kvec[axis] for m in fs.modes])
        for axis in range(3))


def charge_op(fs: FockSpace, q: float = 1.0):
    """Q = q (N_b - N_a): b+ creates charge +q, a+ creates charge -q."""
    if not fs.charged:
        raise NotCharged("charge operator requires a charged Fock space")
    minus_q = [-q] * fs.n_modes
    plus_q = [q] * fs.n_modes
    return _diagonal_from_weights(fs, minus_q, plus_q)


def grid_assembled_hamiltonian(fs: FockSpace, box_length: float, grid_n: int):
    """H = 1/2 int (:pi^2: + :(grad phi)^2: - m^2 :phi^2:) d^3x assembled
    from mode functions sampled on the periodic grid.

    The mode Gram matrices are computed by literal grid summation, so the
    agreement with hamiltonian_op checks the quantization end to end (the
    grid must resolve every mode: grid_n above twice the lattice extent).
    Uncharged spaces only.
    """
    if fs.charged:
        raise NotCharged("grid assembly implemented for the Hermitian field")
    n_modes = fs.n_modes
    axis = spatial_grid(box_length, grid_n)
    h3 = (box_length / grid_n) ** 3

    # sampled alpha_k(x) at t = 0, flattened over the grid
    samples = np.empty((n_modes, grid_n ** 3), dtype=complex)
    for i, mode in enumerate(fs.modes):
        kx, ky, kz = mode.kvec
        ex = np.exp(1j * kx * axis)[:, None, None]
        ey = np.exp(1j * ky * axis)[None, :, None]
        ez = np.exp(1j * kz * axis)[None, None, :]
        norm = (TWO_PI ** 3 * 2.0 * mode.omega) ** -0.5
        samples[i] = (np.sqrt(fs.measure) * norm * (ex * ey * ez)).ravel()

    om = np.array([m.omega for m in fs.modes])
    kmat = np.array([m.kvec for m in fs.modes])  # (n_modes, 3)

    # Gram matrices over the grid: G1[k,l] = int a_k a_l, G2[k,l] = int a_k a_l*
    g1 = h3 * (samples @ samples.T)
    g2 = h3 * (samples @ np.conj(samples.T))

    def blocks(c_k):
        """a a, a+ a+, and a+ a coefficient blocks of int :A(x)^2: d^3x for
        A = sum_k (c_k alpha_k a_k + conj. a+_k); normal ordering merges the
        two cross orderings into a single a+ a block."""
        aa = np.outer(c_k, c_k) * g1
        cr = np.outer(np.conj(c_k), np.conj(c_k)) * np.conj(g1)
        nd = 2.0 * np.outer(np.conj(c_k), c_k) * np.conj(g2)
        return aa, cr, nd

    terms = []
    terms.append(blocks(-1j * om))            # pi^2 (c_k multiplies alpha_k)
    for axis_i in range(3):
        terms.append(blocks(1j * kmat[:, axis_i]))  # (grad phi)_i^2
    m2 = fs.mass_m ** 2
    terms.append(tuple(-m2 * b for b in blocks(np.ones(n_modes))))  # -m^2 phi^2

    aa = sum(t[0] for t in terms)
    cr = sum(t[1] for t in terms)
    nd = sum(t[2] for t in terms)

    dim = fs.dimension
    total = np.zeros((dim, dim), dtype=complex) if dim < _DENSE_LIMIT \
        else sp.csr_matrix((dim, dim), dtype=complex)
    ann = [ladder(fs, i, "annihilate") for i in range(n_modes)]
    cre = [ladder(fs, i, "create") for i in range(n_modes)]
    for i in range(n_modes):
        for j in range(n_modes):
            if abs(aa[i, j]) > 1e-14:
                total = total + 0.5 * aa[i, j] * (ann[i] @ ann[j])
            if abs(cr[i, j]) > 1e-14:
                total = total + 0.5 * cr[i, j] * (cre[i] @ cre[j])
            if abs(nd[i, j]) > 1e-14:
                total = total + 0.5 * nd[i, j] * (cre[i] @ ann[j])
    return total


def to_dense(op) -> np.ndarray:
    return op.toarray() if sp.issparse(op) else np.asarray(op)
