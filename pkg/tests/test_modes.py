import numpy as np
import pytest

from tachylab.errors import (
    EmptyModeSet,
    EvanescentModeExcluded,
    GridMismatch,
    ZeroModeExcluded,
)
from tachylab.modes import (
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
from tachylab.spacetime import FourVector

TWO_PI = 2.0 * np.pi


def test_mass_validation():
    with pytest.raises(ValueError):
        TachyonMass(0.0)
    with pytest.raises(ValueError):
        TachyonMass(-1.0)


def test_dispersion_values():
    m = TachyonMass(1.0)
    assert dispersion((np.sqrt(2), 0, 0), m) == pytest.approx(1.0)
    assert dispersion((0, 0, 2.0), m) == pytest.approx(np.sqrt(3.0))


def test_dispersion_excluded_regions():
    m = TachyonMass(1.0)
    with pytest.raises(ZeroModeExcluded):
        dispersion((1.0, 0.0, 0.0), m)
    with pytest.raises(EvanescentModeExcluded):
        dispersion((0.5, 0.0, 0.0), m)


def test_group_velocity_superluminal():
    m = TachyonMass(1.0)
    v = group_velocity((np.sqrt(2), 0, 0), m)
    assert np.allclose(v, [np.sqrt(2), 0, 0])
    v10 = group_velocity((10.0, 0, 0), m)
    assert np.linalg.norm(v10) == pytest.approx(10.0 / np.sqrt(99.0))
    # speed approaches 1 from above as |k| grows
    v_big = group_velocity((1e4, 0, 0), m)
    assert 1.0 < np.linalg.norm(v_big) < 1.0 + 1e-7


def test_mode_function_normalization():
    m = TachyonMass(1.0)
    mode = Mode.from_kvec((np.sqrt(2), 0, 0), m)
    at_origin = mode_function(mode, FourVector(0, 0, 0, 0))
    assert at_origin == pytest.approx((TWO_PI ** 3 * 2.0) ** -0.5)
    x = FourVector(0.7, 0.1, -0.4, 2.0)
    assert abs(mode_function(mode, x)) == pytest.approx(abs(at_origin))
    # conjugate is the negative-frequency partner
    assert np.conj(mode_function(mode, x)) == pytest.approx(
        abs(at_origin) * np.exp(1j * (mode.omega * x.t - np.sqrt(2) * x.x)))


def test_box_mode_counts():
    # n_max=1 block has 27 lattice points; m=0.5 only drops n=0
    ms = build_box_modes(TWO_PI, 1, TachyonMass(0.5))
    assert len(ms) == 26
    # m=1.2 additionally removes the six |k|=1 axis modes
    ms2 = build_box_modes(TWO_PI, 1, TachyonMass(1.2))
    assert len(ms2) == 20
    norms = np.linalg.norm(ms2.k_array, axis=1)
    assert set(np.round(norms ** 2).astype(int)) == {2, 3}
    # m=1.5 also drops the twelve face modes (sqrt(2) < 1.5): corners only
    assert len(build_box_modes(TWO_PI, 1, TachyonMass(1.5))) == 8


def test_box_modes_closed_under_negation():
    ms = build_box_modes(5.0, 2, TachyonMass(1.0))
    keys = {tuple(np.round(k, 12)) for k in ms.k_array}
    assert keys == {tuple(np.round(-k, 12)) for k in ms.k_array}


def test_empty_mode_set():
    with pytest.raises(EmptyModeSet):
        build_box_modes(TWO_PI, 1, TachyonMass(10.0))


def test_measure():
    ms = build_box_modes(4.0, 2, TachyonMass(1.0))
    assert ms.measure == pytest.approx((TWO_PI / 4.0) ** 3)


def test_modeset_json_roundtrip():
    ms = build_box_modes(TWO_PI, 1, TachyonMass(0.5))
    back = ModeSet.from_json(ms.to_json())
    assert back.box_length == ms.box_length
    assert np.allclose(back.k_array, ms.k_array)
    assert back.mass.m == ms.mass.m


def test_delta_m_box_at_origin():
    ms = build_box_modes(TWO_PI, 1, TachyonMass(0.5))
    assert delta_m_box((0, 0, 0), ms) == pytest.approx(
        len(ms) * ms.measure / TWO_PI ** 3)


def test_delta_m_smeared_small():
    """With |k| < m removed, pairing delta_m against wide Gaussians nearly
    vanishes (low frequencies dominate wide smearing)."""
    mass = TachyonMass(1.0)
    L = 8.0 * np.pi
    ms = build_box_modes(L, 6, mass)
    sigma = 4.0  # sigma * m >> 1
    k2 = np.sum(ms.k_array ** 2, axis=1)
    fhat = (TWO_PI * sigma ** 2) ** 1.5 * np.exp(-0.5 * sigma ** 2 * k2)
    paired = ms.measure / TWO_PI ** 3 * np.sum(fhat * fhat)
    # compare against the same pairing without the spectral hole
    whole = (np.pi * sigma ** 2) ** 1.5  # int |fhat|^2 d^3k / (2 pi)^3
    assert abs(paired) < 1e-4 * whole


def test_kg_orthonormality():
    mass = TachyonMass(1.0)
    ms = build_box_modes(TWO_PI, 1, TachyonMass(1.5))
    modes = ms.modes()
    n = 8
    t = 0.7
    fields = [sample_mode(md, t, ms.box_length, n) for md in modes[:6]]
    for i, f in enumerate(fields):
        for j, g in enumerate(fields):
            ip = kg_inner_product(f, g)
            expected = (1.0 / ms.measure) if i == j else 0.0
            assert ip == pytest.approx(expected, abs=1e-10)


def test_kg_negative_frequency_sign():
    ms = build_box_modes(TWO_PI, 1, TachyonMass(1.5))
    md = ms.modes()[0]
    f = sample_mode(md, 0.0, ms.box_length, 8)
    conj = GridField(f.box_length, np.conj(f.values), np.conj(f.dt_values))
    ip = kg_inner_product(conj, conj)
    assert ip == pytest.approx(-1.0 / ms.measure, abs=1e-10)
    # mixed positive/negative frequency pairs vanish
    assert kg_inner_product(f, conj) == pytest.approx(0.0, abs=1e-12)


def test_kg_time_independence():
    ms = build_box_modes(TWO_PI, 1, TachyonMass(1.5))
    md = ms.modes()[3]
    vals = [kg_inner_product(sample_mode(md, t, ms.box_length, 8),
                             sample_mode(md, t, ms.box_length, 8))
            for t in (0.0, 0.9, 3.7)]
    assert np.ptp(np.real(vals)) < 1e-10


def test_grid_mismatch():
    ms = build_box_modes(TWO_PI, 1, TachyonMass(1.5))
    f = sample_mode(ms.modes()[0], 0.0, ms.box_length, 8)
    g = sample_mode(ms.modes()[0], 0.0, ms.box_length, 10)
    with pytest.raises(GridMismatch):
        kg_inner_product(f, g)
    with pytest.raises(GridMismatch):
        GridField(1.0, np.zeros((4, 4, 4)), np.zeros((4, 4, 5)))
