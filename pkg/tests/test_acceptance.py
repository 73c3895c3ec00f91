"""Acceptance suite: one test per criterion, at the stated tolerances.

Each test prints one `ACCEPTANCE n: PASS|FAIL` line (run with -s to see them
on success).  Criteria 4b and 4c assert requirements that the measured
physics does not support at desk scale (see notes in the failure messages);
they are implemented faithfully and left red rather than weakened.
"""

import numpy as np
import pytest

from qnls import (
    FlowParams,
    FourierField,
    GridSpec,
    MeasureSpec,
    e2,
    e2_directional,
    evolve,
    f2,
    project,
    r2_lipschitz_probe,
    sample_mu,
)
from qnls.config import default_config
from qnls.experiments import run

from conftest import random_field


def report(n, label, ok, detail=""):
    print(f"ACCEPTANCE {n}: {'PASS' if ok else 'FAIL'} - {label} {detail}".rstrip())
    return ok


def _verdicts(manifest):
    return {v.name: v for v in manifest.verdicts}


@pytest.fixture(scope="module")
def outroot(tmp_path_factory):
    return tmp_path_factory.mktemp("acceptance")


@pytest.fixture(scope="module")
def smoothing_manifest(outroot):
    cfg = default_config("smoothing_sweep", output_dir=str(outroot / "smoothing"))
    return run(cfg)


@pytest.fixture(scope="module")
def truncation_manifest(outroot):
    cfg = default_config(
        "truncation_convergence", output_dir=str(outroot / "truncation")
    )
    return run(cfg)


def test_criterion_1_algebraic_identities(outroot):
    """eleele < 1e-9 scaled on 1e3 fields up to 64 modes; j0 < 1e-9; continuity < 1e-8."""
    cfg = default_config("continuity", output_dir=str(outroot / "continuity"))
    assert cfg.params["n_fields"] == 1000 and cfg.params["max_modes"] == 64
    m = run(cfg)
    v = _verdicts(m)
    ok = m.passed
    report(
        1,
        "algebraic identity suite",
        ok,
        f"(worst eleele {v['eleele_identity'].stats['worst']:.2e}, "
        f"worst j0 {v['j0_vanishes'].stats['worst']:.2e})",
    )
    assert ok, m.verdicts


def test_criterion_2_conservation(outroot):
    """Drifts < 1e-8 over [0,1] (rk4, dt=1e-3, M_g=32, FULL); order >= 3.7."""
    c1 = run(default_config("conservation", output_dir=str(outroot / "conservation")))
    c2 = run(default_config("plane_wave_order", output_dir=str(outroot / "pworder")))
    drift = _verdicts(c1)["conserved_quantities_drift"].stats
    orders = _verdicts(c2)["rk4_order"].stats["orders"]
    ok = c1.passed and c2.passed
    report(
        2,
        "conservation suite",
        ok,
        f"(max drift {max(v for k, v in drift.items() if k.startswith('drift')):.2e}, "
        f"min order {min(orders):.2f})",
    )
    assert ok, (c1.verdicts, c2.verdicts)


def test_criterion_3_energy_correctness():
    """f2 vs 4th-order FD of E_2 at rel 1e-5; directional vs eps-FD at 1e-6, 100 pairs."""
    # (a) f2 against the trajectory derivative, both signs, full and truncated
    worst_traj = 0.0
    g = GridSpec(modes=16)
    for sigma in (1, -1):
        for cutoff in (None, 8):
            u0 = sample_mu(MeasureSpec(s=2.0, M=16, base_seed=11), 3, g)
            dt = 2e-4
            p = FlowParams(sigma=sigma, cutoff=cutoff, dt=dt)
            traj = evolve(u0, p, 6 * dt, store_states=True)
            proj = [project(s, cutoff) if cutoff else s for s in traj.states]
            energies = [e2(s, sigma).e2 for s in proj]
            for k in (2, 3):
                fd = (
                    -energies[k + 2] + 8 * energies[k + 1]
                    - 8 * energies[k - 1] + energies[k - 2]
                ) / (12 * dt)
                an = f2(traj.states[k], p)
                worst_traj = max(worst_traj, abs(an - fd) / max(abs(an), abs(fd)))
    # (b) directional derivative against Richardson-extrapolated differences
    g12 = GridSpec(modes=12)
    worst_dir = 0.0
    for trial in range(100):
        u = random_field(g12, seed=1000 + trial, amp=0.6)
        v = random_field(g12, seed=5000 + trial, amp=0.6)
        an = e2_directional(u, v, 1)

        def central(h):
            up = FourierField(g12, u.coeffs + h * v.coeffs)
            um = FourierField(g12, u.coeffs - h * v.coeffs)
            return (e2(up, 1).e2 - e2(um, 1).e2) / (2 * h)

        d1, d2 = central(1e-5), central(5e-6)
        fd = (4 * d2 - d1) / 3
        worst_dir = max(worst_dir, abs(an - fd) / max(1.0, abs(an)))
    ok = worst_traj <= 1e-5 and worst_dir <= 1e-6
    report(
        3,
        "energy correctness",
        ok,
        f"(worst trajectory rel {worst_traj:.2e}, worst directional rel {worst_dir:.2e})",
    )
    assert ok


def test_criterion_4a_smoothing_uniformity(smoothing_manifest):
    """max |F_2|/bound varies by < factor 2 across M in {16,32,64,128}, 64 samples."""
    v = _verdicts(smoothing_manifest)["f2_ratio_cutoff_uniform"]
    report(4, "smoothing uniformity (4a)", v.passed, f"(max/min {v.stats['max_over_min']:.3f})")
    assert v.passed, v.stats


def test_criterion_4b_uncorrected_slope(smoothing_manifest):
    """Stated: uncorrected ratio grows with log2-slope >= 1.

    Not attainable on mu_2 ensembles: the mode-flux sum behind
    d/dt ||P_M u||_{H^2}^2 is mean-zero with CLT cancellation (the quintic's
    diagonal action is a pure phase rotation), so it grows like M^(1/2), not
    M.  Measured slopes across seeds: -0.4 to +0.6.  Kept faithful and red.
    """
    v = _verdicts(smoothing_manifest)["uncorrected_ratio_slope"]
    report(4, "uncorrected-ratio slope >= 1 (4b)", v.passed, f"(slope {v.stats['slope']:.2f})")
    assert v.passed, (
        "uncorrected ratio slope measured "
        f"{v.stats['slope']:.2f} < 1; CLT cancellation caps growth near M^0.5 "
        "at desk scale (the quintic's diagonal action is a pure phase rotation)"
    )


def test_criterion_4c_perturbation_breaks(smoothing_manifest):
    """Stated: a 10% perturbation of any R_2 coefficient breaks 4a.

    Not attainable: the int N^5 term's flow derivative is itself bounded by
    the smoothing bound (first derivatives only), so perturbing it can never
    break uniformity; the other defects grow too slowly (~M^0.5) to exceed
    factor 2 by M = 128.  A sign flip (200% perturbation) does break the
    sweep and is covered in test_energy.  Kept faithful and red.
    """
    v = _verdicts(smoothing_manifest)["perturbation_breaks_uniformity"]
    report(4, "10% perturbation breaks uniformity (4c)", v.passed, f"({v.stats['breaks']})")
    assert v.passed, (
        f"perturbed sweeps stayed uniform: {v.stats['breaks']} "
        "(10% defects grow ~M^0.5, too slowly to exceed factor 2 by M = 128)"
    )


def test_criterion_5_lipschitz_and_truncation(truncation_manifest):
    """Probe bounded and grid-stable over 1e3 pairs; curve monotone, final < 1e-3."""
    g = GridSpec(modes=32)
    g2 = GridSpec(modes=64)
    probes = np.empty(1000)
    worst_stability = 0.0
    rng = np.random.default_rng(31)

    def normalized(seed, target):
        from qnls import sobolev_norm_sq

        w = random_field(g, seed=seed, decay=0.1)
        scale = target / sobolev_norm_sq(w, 1.0) ** 0.5
        return FourierField(g, w.coeffs * scale)

    for k in range(1000):
        # pairs with ||.||_{H^1} up to 5
        u = normalized(10_000 + k, float(rng.uniform(0.2, 5.0)))
        v = normalized(20_000 + k, float(rng.uniform(0.2, 5.0)))
        probes[k] = r2_lipschitz_probe(u, v, 1)
        if k % 100 == 0:  # grid refinement: embed into twice the modes
            pu = np.zeros(2 * 64 + 1, dtype=complex)
            pu[32:97] = u.coeffs
            pv = np.zeros(2 * 64 + 1, dtype=complex)
            pv[32:97] = v.coeffs
            refined = r2_lipschitz_probe(FourierField(g2, pu), FourierField(g2, pv), 1)
            worst_stability = max(
                worst_stability, abs(refined - probes[k]) / max(probes[k], 1e-300)
            )
    bounded = bool(np.isfinite(probes).all())
    stable = worst_stability < 1e-8
    trunc = _verdicts(truncation_manifest)["r2_truncation_decreasing"]
    ok = bounded and stable and trunc.passed
    report(
        5,
        "Lipschitz probe and truncation curve",
        ok,
        f"(max probe {probes.max():.3e}, refinement drift {worst_stability:.1e})",
    )
    assert ok, (bounded, worst_stability, trunc.stats)


def test_criterion_6_linear_invariance(outroot):
    """KS below the 5% critical value for all observables and times, 1e3 samples."""
    cfg = default_config("linear_invariance", output_dir=str(outroot / "invariance"))
    assert cfg.run.ensemble_size == 1000
    m = run(cfg)
    ok = m.passed
    report(6, "linear-flow invariance", ok, f"(critical {_verdicts(m)['linear_flow_invariance'].stats['critical']:.4f})")
    assert ok, m.verdicts


def test_criterion_7_flow_convergence(truncation_manifest):
    """||Phi_FULL(1)u0 - Phi_M(1)u0||_{H^{7/4}} strictly decreasing, M in {8,...,64}."""
    v = _verdicts(truncation_manifest)["flow_convergence_decreasing"]
    report(7, "Galerkin flow convergence", v.passed, f"(errors {[f'{e:.2e}' for e in v.stats['errors']]})")
    assert v.passed, v.stats


def test_criterion_8_focusing_locality(outroot):
    """Positive local time, non-increasing in R; large data trip the guard."""
    cfg = default_config("focusing_local", output_dir=str(outroot / "focusing"))
    m = run(cfg)
    v = _verdicts(m)
    ok = m.passed
    report(
        8,
        "focusing locality",
        ok,
        f"(T {v['local_time_positive_nonincreasing'].stats['T']})",
    )
    assert ok, m.verdicts


def test_criterion_9_transport_tails(outroot):
    """Tail ratios finite at the 90th percentile for t in {0.25, 0.5}, n = 256."""
    cfg = default_config("transport_mc", output_dir=str(outroot / "transport"))
    assert cfg.run.ensemble_size == 256
    m = run(cfg)
    v = _verdicts(m)
    ok = m.passed
    report(9, "transport Monte Carlo", ok, f"({v['tail_ratios_finite'].stats})")
    assert ok, m.verdicts
