"""Command-line frontend: propagator scans, invariant suites, spectrum-cut
samples, Fock-space reports, and relay-chain verdicts.

Numeric scans go to CSV, structured reports to JSON; every run writes a
manifest JSON recording the resolved parameters, the seed, and the package
version, so reruns are byte-identical.

Configuration may come from a JSON file (--config) whose keys mirror the
flag names exactly (e.g. "box-length"); explicit flags win over the file.

Exit codes: 0 success, 1 a check or verdict failed, 2 usage/configuration
error, 3 numerical or domain error raised by a module.
"""

from __future__ import annotations

import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import click
import numpy as np

from . import __version__
from . import causality as caus
from .checks import SUITES, run_suite
from .errors import TachylabError
from . import fock as fkmod
from .modes import TachyonMass, build_box_modes
from .propagators import (
    QuadratureSpec,
    commutator,
    massless_wightman,
    wightman_box,
    wightman_radial,
)
from .spacetime import FourVector

EXIT_CHECK_FAILED = 1
EXIT_NUMERICAL = 3


def _json_text(obj) -> str:
    def coerce(o):
        if isinstance(o, np.generic):
            return o.item()
        raise TypeError(f"not JSON serializable: {o!r}")
    return json.dumps(obj, indent=2, default=coerce) + "\n"


def _load_config(path):
    if path is None:
        return {}
    with open(path) as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise click.UsageError("config file must hold a JSON object")
    return data


def _resolve(ctx, key, flag_value, default):
    """Flag beats config file beats default; config keys mirror flag names."""
    if flag_value is not None:
        return flag_value
    return ctx.obj.get(key, default)


def _write_manifest(out_dir: Path, name: str, params: dict):
    manifest = {"version": __version__, "command": name, "parameters": params}
    (out_dir / f"{name}_manifest.json").write_text(
        json.dumps(manifest, indent=2, sort_keys=True) + "\n")


def _out_dir(ctx, out_flag) -> Path:
    out = Path(_resolve(ctx, "out", out_flag, "."))
    out.mkdir(parents=True, exist_ok=True)
    return out


@click.group()
@click.option("--config", type=click.Path(exists=True, dir_okay=False),
              default=None, help="JSON config file; keys mirror flag names.")
@click.version_option(version=__version__)
@click.pass_context
def main(ctx, config):
    """Numerical laboratory for a stable tachyonic scalar field."""
    ctx.obj = _load_config(config)


def _radial_point(args):
    t, r, kind, mass_m, band = args
    mass = TachyonMass(mass_m)
    if kind == "wightman":
        pv = wightman_radial(t, r, mass, QuadratureSpec(), exclusion_band=band)
        return pv.value, pv.est_error
    pv = wightman_radial(t, r, mass, QuadratureSpec(), exclusion_band=band)
    if kind == "commutator":
        return complex(2.0 * pv.value.imag), 2.0 * pv.est_error
    return complex(2.0 * pv.value.real), 2.0 * pv.est_error  # symmetric


@main.command()
@click.option("--kind", type=click.Choice(
    ["wightman", "commutator", "symmetric", "massless"]), default="wightman")
@click.option("--evaluator", type=click.Choice(["box", "radial"]), default=None)
@click.option("--mass", type=float, default=None)
@click.option("--box-length", type=float, default=None)
@click.option("--n-max", type=int, default=None)
@click.option("--t-min", type=float, default=0.0)
@click.option("--t-max", type=float, default=0.0)
@click.option("--t-steps", type=int, default=1)
@click.option("--r-min", type=float, default=0.5)
@click.option("--r-max", type=float, default=3.0)
@click.option("--r-steps", type=int, default=6)
@click.option("--exclusion-band", type=float, default=None,
              help="Light-cone refusal band for the radial evaluator.")
@click.option("--workers", type=int, default=None)
@click.option("--out", type=click.Path(file_okay=False), default=None)
@click.pass_context
def propagator(ctx, kind, evaluator, mass, box_length, n_max, t_min, t_max,
               t_steps, r_min, r_max, r_steps, exclusion_band, workers, out):
    """Scan a two-point distribution over a (t, r) grid; write CSV rows
    t, r, re, im, est_error plus a run manifest."""
    evaluator = _resolve(ctx, "evaluator", evaluator, "radial")
    mass_m = _resolve(ctx, "mass", mass, 1.0)
    box_length = _resolve(ctx, "box-length", box_length, 10.0)
    n_max = _resolve(ctx, "n-max", n_max, 8)
    workers = int(_resolve(ctx, "workers", workers, 1))
    out_dir = _out_dir(ctx, out)

    ts = np.linspace(t_min, t_max, t_steps)
    rs = np.linspace(r_min, r_max, r_steps)
    grid = [(float(t), float(r)) for t in ts for r in rs]
    band = exclusion_band if exclusion_band is not None else 0.05 / mass_m

    rows = []
    if kind == "massless":
        for t, r in grid:
            v = massless_wightman(FourVector(t, 0.0, 0.0, r))
            rows.append((t, r, v.real, v.imag, 0.0))
    elif evaluator == "box":
        ms = build_box_modes(box_length, n_max, TachyonMass(mass_m))
        origin = FourVector(0.0, 0.0, 0.0, 0.0)
        for t, r in grid:
            x = FourVector(t, 0.0, 0.0, r)
            if kind == "wightman":
                v = wightman_box(x, origin, ms)
            elif kind == "commutator":
                v = commutator(x, origin, ms)
            else:
                v = complex(2.0 * wightman_box(x, origin, ms).real)
            rows.append((t, r, v.real, v.imag, 0.0))
    else:
        work = [(t, r, kind, mass_m, band) for t, r in grid]
        if workers > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                results = list(pool.map(_radial_point, work))
        else:
            results = [_radial_point(w) for w in work]
        rows = [(t, r, v.real, v.imag, err)
                for (t, r), (v, err) in zip(grid, results)]

    csv_path = out_dir / f"propagator_{kind}.csv"
    with open(csv_path, "w") as fh:
        fh.write("t,r,re,im,est_error\n")
        for row in rows:
            fh.write(",".join(f"{v:.17g}" for v in row) + "\n")
    _write_manifest(out_dir, f"propagator_{kind}", {
        "kind": kind, "evaluator": evaluator, "mass": mass_m,
        "box-length": box_length, "n-max": n_max,
        "t-grid": [t_min, t_max, t_steps], "r-grid": [r_min, r_max, r_steps],
        "exclusion-band": band, "workers": workers})
    click.echo(f"wrote {csv_path}")


@main.command()
@click.option("--suite", type=click.Choice(sorted(SUITES)), default=None)
@click.option("--out", type=click.Path(file_okay=False), default=None)
@click.pass_context
def check(ctx, suite, out):
    """Run one invariant suite; exit 0 iff every check passes."""
    suite = _resolve(ctx, "suite", suite, "all")
    out_dir = _out_dir(ctx, out)
    report = run_suite(suite)
    path = out_dir / f"check_{suite}.json"
    path.write_text(_json_text(report))
    for c in report["checks"]:
        status = "PASS" if c["passed"] else "FAIL"
        click.echo(f"{status} {c['name']} ({c['seconds']} s)")
    if not report["passed"]:
        first = next(c for c in report["checks"] if not c["passed"])
        click.echo(f"first failure: {first['name']} residuals={first['residuals']}",
                   err=True)
        sys.exit(EXIT_CHECK_FAILED)
    click.echo(f"wrote {path}")


@main.command()
@click.option("--beta", type=float, default=0.5)
@click.option("--mass", type=float, default=None)
@click.option("--samples", type=int, default=1000)
@click.option("--seed", type=int, default=None)
@click.option("--out", type=click.Path(file_okay=False), default=None)
@click.pass_context
def spectrum(ctx, beta, mass, samples, seed, out):
    """Sample the tachyonic shell and report which half the cut selects."""
    mass_m = _resolve(ctx, "mass", mass, 1.0)
    seed = int(_resolve(ctx, "seed", seed, 0))
    out_dir = _out_dir(ctx, out)
    cut = caus.SpectrumCut(TachyonMass(mass_m), beta)
    rng = np.random.default_rng(seed)
    entries = []
    halving_ok = True
    for _ in range(samples):
        direction = rng.normal(size=3)
        direction /= np.linalg.norm(direction)
        mag = mass_m * (1.0 + rng.uniform(1e-4, 9.0))
        kv = mag * direction
        om = float(np.sqrt(mag * mag - mass_m * mass_m))
        sign = 1.0 if rng.random() < 0.5 else -1.0
        k4 = FourVector(sign * om, *(sign * kv))
        allowed = caus.spectrum_allowed(k4, cut)
        try:
            halving_ok &= caus.halving_consistency(k4, cut)
        except caus.OnCutPlane:
            pass
        entries.append({"k4": [k4.t, k4.x, k4.y, k4.z], "allowed": allowed})
    report = {"beta": beta, "mass": mass_m, "seed": seed,
              "halving_consistent": bool(halving_ok),
              "n_allowed": sum(e["allowed"] for e in entries),
              "samples": entries}
    path = out_dir / "spectrum.json"
    path.write_text(_json_text(report))
    _write_manifest(out_dir, "spectrum", {
        "beta": beta, "mass": mass_m, "samples": samples, "seed": seed})
    click.echo(f"wrote {path}")


@main.command("fock-report")
@click.option("--mass", type=float, default=None)
@click.option("--box-length", type=float, default=None)
@click.option("--n-max", type=int, default=None)
@click.option("--n-max-total", type=int, default=2)
@click.option("--n-modes", type=int, default=4,
              help="Number of modes kept from the ModeSet.")
@click.option("--out", type=click.Path(file_okay=False), default=None)
@click.pass_context
def fock_report(ctx, mass, box_length, n_max, n_max_total, n_modes, out):
    """Build a truncated Fock space and report spectra and CCR residuals."""
    mass_m = _resolve(ctx, "mass", mass, 0.5)
    box_length = _resolve(ctx, "box-length", box_length, float(2.0 * np.pi))
    n_max = _resolve(ctx, "n-max", n_max, 1)
    out_dir = _out_dir(ctx, out)
    ms = build_box_modes(box_length, n_max, TachyonMass(mass_m))
    step = max(1, len(ms) // n_modes)
    fs = fkmod.build_fock_space(ms, n_max_total,
                                mode_indices=list(range(0, len(ms), step))[:n_modes])
    H = fkmod.to_dense(fkmod.hamiltonian_op(fs))
    P = fkmod.interior_projector(fs)
    eye = np.eye(fs.dimension)
    worst_int, worst_bnd = 0.0, 0.0
    for i in range(fs.n_modes):
        ai = fkmod.ladder(fs, i, "annihilate")
        ci = fkmod.ladder(fs, i, "create")
        ccr = ai @ ci - ci @ ai - eye
        worst_int = max(worst_int, float(np.max(np.abs(ccr @ P))))
        worst_bnd = max(worst_bnd, float(np.max(np.abs(ccr @ (eye - P)))))
    grid_err = float(np.max(np.abs(
        fkmod.to_dense(fkmod.grid_assembled_hamiltonian(
            fs, box_length, 4 * (2 * n_max + 1))) - H)))
    report = {
        "dimension": fs.dimension,
        "n_modes": fs.n_modes,
        "measure": ms.measure,
        "mode_omegas": [m.omega for m in fs.modes],
        "energy_spectrum": sorted(float(e) for e in np.real(np.diag(H))),
        "ccr_residual_interior": worst_int,
        "ccr_residual_boundary_shell": worst_bnd,
        "grid_assembly_residual": grid_err,
    }
    path = out_dir / "fock_report.json"
    path.write_text(_json_text(report))
    _write_manifest(out_dir, "fock_report", {
        "mass": mass_m, "box-length": box_length, "n-max": n_max,
        "n-max-total": n_max_total, "n-modes": n_modes})
    click.echo(f"wrote {path}")


@main.command()
@click.option("--chains", type=click.Path(exists=True, dir_okay=False),
              default=None, help="JSON file of relay chains to check.")
@click.option("--samples", type=int, default=1000,
              help="Random chains to draw when no file is given.")
@click.option("--beta", type=float, default=0.0)
@click.option("--mass", type=float, default=None)
@click.option("--seed", type=int, default=None)
@click.option("--out", type=click.Path(file_okay=False), default=None)
@click.pass_context
def causality(ctx, chains, samples, beta, mass, seed, out):
    """Check relay chains for chronology violations; exit 1 on any."""
    mass_m = _resolve(ctx, "mass", mass, 1.0)
    seed = int(_resolve(ctx, "seed", seed, 0))
    out_dir = _out_dir(ctx, out)
    cut = caus.SpectrumCut(TachyonMass(mass_m), beta)
    if chains is not None:
        chain_list = caus.load_chains(Path(chains).read_text())
    else:
        rng = np.random.default_rng(seed)
        chain_list = [caus.random_chain(rng, cut) for _ in range(samples)]
    verdicts = [caus.verdict_to_dict(caus.antitelephone_check(c, cut))
                for c in chain_list]
    any_violation = any(not v["no_violation"] for v in verdicts)
    report = {"beta": beta, "mass": mass_m, "n_chains": len(chain_list),
              "any_violation": any_violation, "verdicts": verdicts}
    path = out_dir / "causality.json"
    path.write_text(_json_text(report))
    _write_manifest(out_dir, "causality", {
        "beta": beta, "mass": mass_m, "seed": seed,
        "chains-file": chains, "samples": samples})
    click.echo(f"wrote {path}")
    if any_violation:
        sys.exit(EXIT_CHECK_FAILED)


def entry():  # pragma: no cover - thin wrapper
    try:
        main(standalone_mode=True)
    except TachylabError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_NUMERICAL)


if __name__ == "__main__":
    entry()
