"""Acceptance gate: ten end-to-end criteria with pinned tolerances.

Each test emits a PASS/FAIL line (bypassing capture, so the lines appear
in plain pytest output) and then asserts, so a red criterion is visible
both ways.
"""

import time

import numpy as np
import pytest

from tachylab import checks
from tachylab.modes import TachyonMass, build_box_modes
from tachylab.propagators import wightman_box
from tachylab.spacetime import FourVector


@pytest.fixture
def emit(capsys):
    def _emit(criterion, passed, detail):
        with capsys.disabled():
            status = "PASS" if passed else "FAIL"
            print(f"[{status}] acceptance {criterion}: {detail}")
    return _emit


def test_criterion_01_equal_time_commutators(emit):
    """Smeared [phi,phi] = 0 and [phi, d_t phi] = i delta_m on the box
    (L = 4 * 2 pi / m, n_max = 6, 20 random Gaussian pairs)."""
    t0 = time.time()
    rep = checks.check_etcr(seed=0, n_pairs=20)
    r = rep["residuals"]
    detail = (f"|[phi,phi]| = {r['phi_phi']:.3e} (tol 1e-10), "
              f"|[phi,pi] - i delta_m| = {r['phi_pi']:.3e} (tol 1e-8), "
              f"{time.time() - t0:.1f} s")
    emit("1 etcr", rep["passed"], detail)
    assert r["phi_phi"] <= 1e-10
    assert r["phi_pi"] <= 1e-8
    assert time.time() - t0 < 30.0


def test_criterion_02_ladder_algebra(emit):
    """CCR exact on the interior of a 4-mode, n_max_total = 3 space; the
    violation is confined to the truncation boundary shell."""
    t0 = time.time()
    rep = checks.check_ladder()
    r = rep["residuals"]
    detail = (f"interior residual {r['interior']:.3e} (tol 1e-12), "
              f"boundary shell {r['boundary_shell']:.2f}")
    emit("2 ladder", rep["passed"], detail)
    assert r["interior"] <= 1e-12
    assert r["boundary_shell"] > 0.1  # documented truncation failure
    assert time.time() - t0 < 5.0


def test_criterion_03_operator_spectra(emit):
    """H spectrum equals the occupation enumeration (measure included),
    vacuum energy 0, positivity, [H,P] = [H,Q] = 0, and the grid-assembled
    normal-ordered H matches the closed form to 1e-10."""
    t0 = time.time()
    rep = checks.check_spectra()
    r = rep["residuals"]
    detail = (f"spectrum diff {r['spectrum']:.1e}, vacuum {r['vacuum']:.1e}, "
              f"[H,P] {r['H_P']:.1e}, [H,Q] {r['H_Q']:.1e}, "
              f"grid assembly {r['grid_assembly']:.3e} (tol 1e-10)")
    emit("3 spectra", rep["passed"], detail)
    assert r["spectrum"] == 0.0
    assert r["vacuum"] == 0.0
    assert r["min_eigenvalue"] >= 0.0
    assert r["H_P"] == 0.0 and r["H_Q"] == 0.0
    assert r["grid_assembly"] <= 1e-10
    assert time.time() - t0 < 30.0


def test_criterion_04_two_path_consistency(emit):
    """<0|phi(x)phi(y)|0> through the Fock space vs the direct box mode
    sum, 100 random point pairs, 1e-12 relative."""
    t0 = time.time()
    rep = checks.check_two_path(seed=2)
    rel = rep["residuals"]["relative"]
    emit("4 two-path", rep["passed"], f"worst relative {rel:.3e} (tol 1e-12)")
    assert rel <= 1e-12
    assert time.time() - t0 < 10.0


def test_criterion_05_pct(emit):
    """Dp(x)* = Dp(-x) on the box evaluator, 100 random points."""
    t0 = time.time()
    rep = checks.check_pct(seed=3)
    rel = rep["residuals"]["relative"]
    emit("5 pct", rep["passed"], f"worst relative {rel:.3e} (tol 1e-12)")
    assert rel <= 1e-12
    assert time.time() - t0 < 10.0


def test_criterion_06_scaling_limit(emit):
    """lam^2 Dp(lam x) vs the massless closed form at spacelike m|x| = 1:
    strictly decreasing over lam = 0.5 ... 0.0625 and <= 2% at the end."""
    t0 = time.time()
    rep = checks.check_scaling()
    errs = rep["residuals"]["relative_errors"]
    ests = rep["residuals"]["est_errors"]
    detail = ("errors " + ", ".join(f"{e:.4f}" for e in errs)
              + f" (final tol 0.02 + {ests[-1]:.1e})")
    emit("6 scaling", rep["passed"], detail)
    assert all(a > b for a, b in zip(errs, errs[1:]))
    assert errs[-1] <= 0.02 + ests[-1]
    assert time.time() - t0 < 60.0


def test_criterion_07_lorentz(emit):
    """D1 boost-invariant along a fixed-interval hyperbola to 1e-3 +
    est_error (5 points, boosts to beta = 0.8); the commutator breaks the
    symmetry by more than 10x that tolerance."""
    t0 = time.time()
    rep = checks.check_lorentz()
    r = rep["residuals"]
    detail = (f"invariance margin {r['invariance_margin']:+.2e}, "
              f"commutator breaking {r['commutator_breaking']:.3f} "
              f"(floor 0.01)")
    emit("7 lorentz", rep["passed"], detail)
    assert r["invariance_margin"] <= 0.0
    assert r["commutator_breaking"] > 10.0 * 1e-3
    assert time.time() - t0 < 120.0


def test_criterion_08_hadamard_probe(emit):
    """Windowed directional decay at three base points: slow only along
    future-pointing null covectors parallel to the cone generator."""
    t0 = time.time()
    rep = checks.check_hadamard()
    cases = rep["residuals"]["cases"]
    bad = [c for c in cases if c["class"] != c["expected"]]
    detail = (f"{len(cases) - len(bad)}/{len(cases)} directions classified, "
              f"slopes {min(c['slope'] for c in cases):+.1f} "
              f"to {max(c['slope'] for c in cases):+.1f}")
    emit("8 hadamard", rep["passed"], detail)
    assert not bad
    assert time.time() - t0 < 120.0


def test_criterion_09_chronology_protection(emit):
    """10^4 random relay chains per beta in {0, 0.5, 0.9}: total
    preferred-frame time positive, never in the timelike past, every leg
    spacelike; halving holds on 10^4 on-shell samples per beta."""
    t0 = time.time()
    rep = checks.check_causality(seed=5)
    r = rep["residuals"]
    detail = (f"min dt {r['min_total_dt']:.2e}, violations "
              f"{r['violations']}, halving failures {r['halving_failures']}")
    emit("9 chronology", rep["passed"], detail)
    assert r["violations"] == 0
    assert r["min_total_dt"] > 0.0
    assert r["all_legs_spacelike"]
    assert r["halving_failures"] == 0
    assert time.time() - t0 < 30.0


def test_criterion_10_kg_residual(emit):
    """Finite-difference (box - m^2) on the box two-point function shows
    observed convergence order >= 1.8 over step halvings at 10 points."""
    t0 = time.time()
    rep = checks.check_kg_residual(seed=1)
    order = rep["residuals"]["min_order"]
    emit("10 kg-residual", rep["passed"],
         f"min observed order {order:.3f} (needs >= 1.8)")
    assert order >= 1.8
    assert time.time() - t0 < 30.0
