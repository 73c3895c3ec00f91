"""Experiment implementations: reproducible studies with manifests.

Each experiment consumes a validated ExperimentConfig, writes plot-ready CSV
(and JSON-lines) data files plus a manifest.json carrying the config echo,
per-file checksums and pass/fail verdicts with the measured statistics.
Replaying a config reproduces the data files bit-for-bit; timestamps live
only in the manifest.
"""

from __future__ import annotations

import hashlib
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__
from .config import ExperimentConfig, serialize_config
from .densities import (
    continuity_residuals,
    continuity_scale,
    eleele_residual,
    eleele_scale,
    j0_diag,
)
from .energy import (
    R2_TERMS,
    e2,
    e2_directional,
    full_breakdown,
    h2_directional,
    smoothing_bound,
)
from .flow import FULL, FlowParams, evolve, hamiltonian, linear_flow, mass, momentum, rhs, step
from .measure import (
    EnsembleRecord,
    MeasureSpec,
    derive_seed,
    ks_critical_value,
    ks_statistic,
    observables,
    sample_mu,
    tail_ratio,
    write_ensemble,
    OBSERVABLE_NAMES,
)
from .spectral import FourierField, GridSpec, field_from_modes, project, sobolev_norm_sq

TRAJECTORY_COLUMNS = (
    "time",
    "mass",
    "momentum",
    "hamiltonian",
    "h1_sq",
    "h2_sq",
    "e2",
    "f2",
    "bound",
)


@dataclass
class Verdict:
    name: str
    passed: bool
    stats: dict = field(default_factory=dict)


@dataclass
class RunManifest:
    experiment: str
    version: str
    started: str
    finished: str
    config_text: str
    files: dict[str, str]
    verdicts: list[Verdict]
    passed: bool
    error: str | None = None

    def to_json(self) -> str:
        d = asdict(self)
        return json.dumps(d, indent=2)

    @staticmethod
    def from_json(text: str) -> "RunManifest":
        d = json.loads(text)
        d["verdicts"] = [Verdict(**v) for v in d["verdicts"]]
        return RunManifest(**d)


def _sha256(path: Path) -> str:
    h = hashlib.sha256()
    h.update(path.read_bytes())
    return h.hexdigest()


def _fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, str):
        return x
    return repr(float(x))


def _write_csv(path: Path, header, rows) -> None:
    with open(path, "w") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(x) for x in row) + "\n")


def smooth_random_field(
    grid: GridSpec,
    seed: int,
    amplitude: float,
    width: float,
    bias: float = 0.0,
    bias_mode: int = 0,
) -> FourierField:
    """Random data with a Gaussian spectral envelope e^{-(n/width)^2}.

    A deterministic bias on one mode keeps the momentum away from zero so
    relative-drift verdicts are meaningful.
    """
    rng = np.random.default_rng(seed)
    n = grid.n
    c = amplitude * (rng.standard_normal(n.size) + 1j * rng.standard_normal(n.size))
    c = c * np.exp(-((n / width) ** 2))
    if bias:
        c[grid.modes + bias_mode] += bias
    return FourierField(grid, c)


def energy_observer(p: FlowParams, m0: int = 10):
    """Observer filling the trajectory CSV columns (and a breakdown store)."""

    breakdowns: list[dict] = []

    def obs(t: float, u: FourierField) -> dict:
        b = full_breakdown(u, p, m0)
        breakdowns.append({"time": t, "r2_terms": b.r2_terms})
        return {
            "mass": mass(u),
            "momentum": momentum(u),
            "hamiltonian": hamiltonian(u, p.sigma),
            "h1_sq": sobolev_norm_sq(u, 1.0),
            "h2_sq": b.h2_sq,
            "e2": b.e2,
            "f2": b.f2,
            "bound": b.bound,
        }

    obs.breakdowns = breakdowns
    return obs


def _write_trajectory(path: Path, traj) -> None:
    rows = []
    for t, rec in zip(traj.times, traj.records):
        rows.append([t] + [rec[k] for k in TRAJECTORY_COLUMNS[1:]])
    _write_csv(path, TRAJECTORY_COLUMNS, rows)


def _write_breakdowns(path: Path, breakdowns) -> None:
    with open(path, "w") as fh:
        for b in breakdowns:
            fh.write(json.dumps(b) + "\n")


# ----------------------------------------------------------------- experiments


def run_conservation(cfg: ExperimentConfig, out: Path):
    pm = cfg.params
    u0 = smooth_random_field(
        cfg.grid, pm["seed"], pm["amplitude"], pm["width"], pm["bias"], pm["bias_mode"]
    )
    obs = energy_observer(cfg.flow)
    traj = evolve(u0, cfg.flow, cfg.run.t_end, observers=(obs,), stride=cfg.run.observer_stride)
    _write_trajectory(out / "trajectory.csv", traj)
    _write_breakdowns(out / "breakdowns.jsonl", obs.breakdowns)

    first, last = traj.records[0], traj.records[-1]
    drifts = {
        k: abs(last[k] - first[k]) / abs(first[k])
        for k in ("mass", "momentum", "hamiltonian")
    }
    tol = pm["drift_tol"]
    verdicts = [
        Verdict(
            "conserved_quantities_drift",
            all(v < tol for v in drifts.values()),
            {"tolerance": tol, **{f"drift_{k}": v for k, v in drifts.items()}},
        )
    ]
    return {"trajectory.csv": out / "trajectory.csv", "breakdowns.jsonl": out / "breakdowns.jsonl"}, verdicts


def run_plane_wave_order(cfg: ExperimentConfig, out: Path):
    pm = cfg.params
    n, amp = pm["mode"], pm["amplitude"]
    u0 = field_from_modes(cfg.grid, {n: amp})
    t_end = cfg.run.t_end
    freq = n * n + cfg.flow.sigma * abs(amp) ** 4
    errors = []
    for dt in pm["dt_list"]:
        p = FlowParams(sigma=cfg.flow.sigma, cutoff=cfg.flow.cutoff, dt=dt)
        u = u0
        for _ in range(int(round(t_end / dt))):
            u = step(u, p)
        exact = amp * np.exp(-1j * freq * t_end)
        errors.append(abs(u.coeffs[cfg.grid.modes + n] - exact))
    orders = [
        float(np.log(errors[i] / errors[i + 1]) / np.log(pm["dt_list"][i] / pm["dt_list"][i + 1]))
        for i in range(len(errors) - 1)
    ]
    rows = [
        [pm["dt_list"][i], errors[i], orders[i - 1] if i > 0 else float("nan")]
        for i in range(len(errors))
    ]
    _write_csv(out / "orders.csv", ("dt", "error", "order"), rows)
    verdicts = [
        Verdict(
            "rk4_order",
            all(pm["min_order"] <= o <= pm["max_order"] for o in orders),
            {"orders": orders, "min_order": pm["min_order"], "max_order": pm["max_order"]},
        )
    ]
    return {"orders.csv": out / "orders.csv"}, verdicts


def run_continuity(cfg: ExperimentConfig, out: Path):
    pm = cfg.params
    rng = np.random.default_rng(pm["seed"])
    rows = []
    worst = {"eleele": 0.0, "j0": 0.0, "mass_p": 0.0, "mom_p": 0.0, "mass_m": 0.0, "mom_m": 0.0}
    for i in range(pm["n_fields"]):
        modes = int(rng.integers(4, pm["max_modes"] + 1))
        grid = GridSpec(modes=modes)
        n = grid.n
        c = (rng.standard_normal(n.size) + 1j * rng.standard_normal(n.size)) / (
            1.0 + (n / 8.0) ** 2
        )
        u = FourierField(grid, c)
        e_scale = eleele_scale(u)
        c_scale = continuity_scale(u)
        ele = eleele_residual(u) / e_scale
        j0 = abs(j0_diag(u, FlowParams(sigma=1))) / (1.0 + c_scale)
        rp = continuity_residuals(u, FlowParams(sigma=1))
        rm = continuity_residuals(u, FlowParams(sigma=-1))
        vals = {
            "eleele": ele,
            "j0": j0,
            "mass_p": rp[0] / c_scale,
            "mom_p": rp[1] / c_scale,
            "mass_m": rm[0] / c_scale,
            "mom_m": rm[1] / c_scale,
        }
        for k, v in vals.items():
            worst[k] = max(worst[k], v)
        rows.append([i, modes] + [vals[k] for k in ("eleele", "j0", "mass_p", "mom_p", "mass_m", "mom_m")])
    _write_csv(
        out / "residuals.csv",
        ("field", "modes", "eleele", "j0", "mass_defoc", "momentum_defoc", "mass_foc", "momentum_foc"),
        rows,
    )
    verdicts = [
        Verdict("eleele_identity", worst["eleele"] < pm["eleele_tol"], {"worst": worst["eleele"], "tol": pm["eleele_tol"]}),
        Verdict("j0_vanishes", worst["j0"] < pm["j0_tol"], {"worst": worst["j0"], "tol": pm["j0_tol"]}),
        Verdict(
            "continuity_laws",
            max(worst["mass_p"], worst["mom_p"], worst["mass_m"], worst["mom_m"]) < pm["continuity_tol"],
            {k: worst[k] for k in ("mass_p", "mom_p", "mass_m", "mom_m")},
        ),
    ]
    return {"residuals.csv": out / "residuals.csv"}, verdicts


def _invariance_worker(payload):
    (s, M, base_seed, index, modes, times) = payload
    spec = MeasureSpec(s=s, M=M, base_seed=base_seed)
    grid = GridSpec(modes=modes)
    u = sample_mu(spec, index, grid)
    rows = {0.0: observables(u)}
    for t in times:
        rows[t] = observables(linear_flow(u, t))
    return index, rows


def run_linear_invariance(cfg: ExperimentConfig, out: Path):
    pm = cfg.params
    times = list(pm["times"])
    n_samp = cfg.run.ensemble_size
    payloads = [
        (cfg.measure.s, cfg.measure.M, cfg.measure.base_seed, i, cfg.grid.modes, times)
        for i in range(n_samp)
    ]
    results = _map_workers(_invariance_worker, payloads, cfg.run.workers)
    crit = ks_critical_value(n_samp, n_samp, pm["alpha"])
    rows = []
    all_pass = True
    for name in OBSERVABLE_NAMES:
        before = [res[1][0.0][name] for res in results]
        for t in times:
            after = [res[1][t][name] for res in results]
            stat = ks_statistic(before, after)
            ok = stat < crit
            all_pass = all_pass and ok
            rows.append([name, t, stat, crit, ok])
    _write_csv(out / "ks.csv", ("observable", "time", "ks", "critical", "pass"), rows)
    verdicts = [
        Verdict(
            "linear_flow_invariance",
            all_pass,
            {"critical": crit, "samples": n_samp, "times": times},
        )
    ]
    return {"ks.csv": out / "ks.csv"}, verdicts


def run_smoothing_sweep(cfg: ExperimentConfig, out: Path):
    pm = cfg.params
    m0 = pm["m0"]
    sweep = list(cfg.run.m_sweep)
    grid = cfg.grid
    term_names = [name for name, _, _ in R2_TERMS]
    scale_sets = {"shipped": None}
    for name in term_names:
        scale_sets[name] = {name: 1.0 + pm["perturbation"]}

    max_ratio = {k: {M: 0.0 for M in sweep} for k in scale_sets}
    max_unc = {M: 0.0 for M in sweep}
    for idx in range(cfg.run.ensemble_size):
        u = sample_mu(cfg.measure, idx, grid)
        for M in sweep:
            p = FlowParams(sigma=cfg.flow.sigma, cutoff=M)
            w = project(u, M)
            v = project(rhs(u, p), M)
            b = smoothing_bound(w, m0)
            max_unc[M] = max(max_unc[M], abs(h2_directional(w, v)) / b)
            for key, overrides in scale_sets.items():
                r = abs(e2_directional(w, v, p.sigma, overrides)) / b
                max_ratio[key][M] = max(max_ratio[key][M], r)

    ratios = [max_ratio["shipped"][M] for M in sweep]
    unc = [max_unc[M] for M in sweep]
    _write_csv(
        out / "sweep.csv",
        ("M", "max_ratio", "max_uncorrected_ratio"),
        [[M, r, u_] for M, r, u_ in zip(sweep, ratios, unc)],
    )
    variation = max(ratios) / min(ratios)
    slope = float(np.polyfit(np.log2(sweep), np.log2(unc), 1)[0])

    perturb_rows = []
    perturb_breaks = {}
    for name in term_names:
        vals = [max_ratio[name][M] for M in sweep]
        v_ratio = max(vals) / min(vals)
        perturb_breaks[name] = v_ratio >= pm["uniformity_factor"]
        perturb_rows.append([name, 1.0 + pm["perturbation"], v_ratio, perturb_breaks[name]])
    _write_csv(
        out / "perturb.csv", ("term", "factor", "max_over_min", "breaks_uniformity"), perturb_rows
    )

    verdicts = [
        Verdict(
            "f2_ratio_cutoff_uniform",
            variation < pm["uniformity_factor"],
            {"max_over_min": variation, "factor": pm["uniformity_factor"], "ratios": ratios},
        ),
        Verdict(
            "uncorrected_ratio_slope",
            slope >= pm["slope_min"],
            {"slope": slope, "slope_min": pm["slope_min"], "uncorrected": unc},
        ),
        Verdict(
            "perturbation_breaks_uniformity",
            all(perturb_breaks.values()),
            {"breaks": perturb_breaks},
        ),
    ]
    return {"sweep.csv": out / "sweep.csv", "perturb.csv": out / "perturb.csv"}, verdicts


def run_growth(cfg: ExperimentConfig, out: Path):
    pm = cfg.params
    u0 = smooth_random_field(cfg.grid, pm["seed"], pm["amplitude"], pm["width"])
    obs = energy_observer(cfg.flow)
    traj = evolve(u0, cfg.flow, cfg.run.t_end, observers=(obs,), stride=cfg.run.observer_stride)
    _write_trajectory(out / "growth.csv", traj)

    times = np.asarray(traj.times)
    e2s = np.array([r["e2"] for r in traj.records])
    h2s = np.array([r["h2_sq"] for r in traj.records])
    # fitted exponent of ||u||_{H^2} ~ t^alpha on the upper half of the run
    upper = times > times[-1] / 2
    alpha = float(
        np.polyfit(np.log(times[upper]), 0.5 * np.log(h2s[upper]), 1)[0]
    )
    # linear bound: C fitted on the first decile, checked on the rest
    head = (times > 0) & (times <= pm["fit_fraction"] * times[-1])
    tail = times > pm["fit_fraction"] * times[-1]
    drift = np.abs(e2s - e2s[0])
    c_fit = max(float(np.max(drift[head] / times[head])), 1e-12)
    ok = bool(np.all(drift[tail] <= pm["slack"] * c_fit * times[tail]))
    verdicts = [
        Verdict(
            "e2_linear_bound",
            ok,
            {"C_fit": c_fit, "slack": pm["slack"], "h2_exponent": alpha},
        )
    ]
    return {"growth.csv": out / "growth.csv"}, verdicts


def _transport_worker(payload):
    (s, M, base_seed, index, modes, sigma, cutoff, dt, times) = payload
    spec = MeasureSpec(s=s, M=M, base_seed=base_seed)
    grid = GridSpec(modes=modes)
    u = sample_mu(spec, index, grid)
    before = observables(u, sigma)
    p = FlowParams(sigma=sigma, cutoff=cutoff, dt=dt)
    snapshots = {}
    t_prev = 0.0
    for t in times:
        traj = evolve(u, p, t - t_prev)
        u = traj.final
        if traj.blowup_time is not None:
            snapshots[t] = None
            break
        snapshots[t] = observables(u, sigma)
        t_prev = t
    return index, before, snapshots


def run_transport_mc(cfg: ExperimentConfig, out: Path):
    pm = cfg.params
    times = sorted(pm["times"])
    n_samp = cfg.run.ensemble_size
    payloads = [
        (
            cfg.measure.s,
            cfg.measure.M,
            cfg.measure.base_seed,
            i,
            cfg.grid.modes,
            cfg.flow.sigma,
            cfg.flow.cutoff,
            cfg.flow.dt,
            times,
        )
        for i in range(n_samp)
    ]
    results = _map_workers(_transport_worker, payloads, cfg.run.workers)

    records = [
        EnsembleRecord(i, derive_seed(cfg.measure.base_seed, i), before)
        for i, before, _ in results
    ]
    write_ensemble(records, out / "ensemble.jsonl")
    files = {"ensemble.jsonl": out / "ensemble.jsonl"}
    for k, t in enumerate(times):
        recs = [
            EnsembleRecord(i, derive_seed(cfg.measure.base_seed, i), snaps[t] or {})
            for i, _, snaps in results
        ]
        name = f"transported_{k}.jsonl"
        write_ensemble(recs, out / name)
        files[name] = out / name

    watch = ("u0_sq", "h1_sq")
    rows = []
    ratios: dict[str, dict[float, float]] = {k: {} for k in watch}
    for name in watch:
        before = np.array([b[name] for _, b, _ in results])
        thr = float(np.quantile(before, pm["quantile"]))
        for t in times:
            after = np.array([snaps[t][name] if snaps[t] else np.inf for _, _, snaps in results])
            r = tail_ratio(before, after, thr)
            ratios[name][t] = r
            rows.append(
                [name, t, thr, float(np.mean(before > thr)), float(np.mean(after > thr)), r]
            )
    _write_csv(
        out / "tails.csv",
        ("observable", "time", "threshold", "frac_before", "frac_after", "ratio"),
        rows,
    )

    finite = all(np.isfinite(r) for per in ratios.values() for r in per.values())
    linear_ok = True
    t1, t2 = times[0], times[-1]
    for name in watch:
        log1 = np.log(max(ratios[name][t1], 1e-300))
        log2_ = np.log(max(ratios[name][t2], 1e-300))
        if log2_ > (t2 / t1) * max(log1, 0.0) + pm["log_slack"]:
            linear_ok = False
    verdicts = [
        Verdict("tail_ratios_finite", bool(finite), {k: ratios[k] for k in watch}),
        Verdict(
            "log_ratio_at_most_linear",
            bool(finite and linear_ok),
            {"log_slack": pm["log_slack"]},
        ),
    ]
    return files, verdicts


def run_truncation_convergence(cfg: ExperimentConfig, out: Path):
    pm = cfg.params
    files = {}
    verdicts = []

    m_list = list(pm["m_list"])
    rows = []
    mono_all, final_all = True, True
    from .energy import r2_truncation_curve

    for idx in range(pm["n_samples"]):
        u = sample_mu(cfg.measure, idx, cfg.grid)
        curve = r2_truncation_curve(u, m_list, cfg.flow.sigma)
        for M, d in zip(m_list, curve):
            rows.append([idx, M, d])
        mono_all = mono_all and bool(np.all(np.diff(curve) <= 0.0))
        final_all = final_all and bool(curve[-1] < pm["final_fraction"] * curve[0])
    _write_csv(out / "r2_curve.csv", ("sample", "M", "delta_r2"), rows)
    files["r2_curve.csv"] = out / "r2_curve.csv"
    verdicts.append(
        Verdict(
            "r2_truncation_decreasing",
            mono_all and final_all,
            {"monotone": mono_all, "final_small": final_all, "samples": pm["n_samples"]},
        )
    )

    if pm["with_flow"]:
        grid = GridSpec(modes=pm["flow_modes"])
        n = grid.n
        rng = np.random.default_rng(pm["flow_seed"])
        c = pm["flow_amplitude"] * (
            rng.standard_normal(n.size) + 1j * rng.standard_normal(n.size)
        ) * np.exp(-np.abs(n) / pm["flow_decay"])
        u0 = FourierField(grid, c)
        t_end = cfg.run.t_end
        p_full = FlowParams(sigma=cfg.flow.sigma, cutoff=FULL, dt=pm["flow_dt"])
        ref = evolve(u0, p_full, t_end).final
        errs = []
        for M in pm["flow_m_list"]:
            pM = FlowParams(sigma=cfg.flow.sigma, cutoff=int(M), dt=pm["flow_dt"])
            uM = evolve(u0, pM, t_end).final
            diff = FourierField(grid, uM.coeffs - ref.coeffs)
            errs.append(sobolev_norm_sq(diff, 1.75) ** 0.5)
        _write_csv(
            out / "flow_convergence.csv",
            ("M", "h74_error"),
            [[M, e] for M, e in zip(pm["flow_m_list"], errs)],
        )
        files["flow_convergence.csv"] = out / "flow_convergence.csv"
        strict = all(errs[i] > errs[i + 1] for i in range(len(errs) - 1))
        verdicts.append(
            Verdict("flow_convergence_decreasing", strict, {"errors": errs, "t_end": t_end})
        )
    return files, verdicts


def run_focusing_local(cfg: ExperimentConfig, out: Path):
    pm = cfg.params
    rows = []
    achieved = []
    for amp in pm["amplitudes"]:
        u0 = field_from_modes(cfg.grid, {1: amp, -1: amp})
        R = sobolev_norm_sq(u0, 1.75) ** 0.5
        traj = evolve(u0, cfg.flow, cfg.run.t_end)
        T = traj.blowup_time if traj.blowup_time is not None else cfg.run.t_end
        tripped = traj.blowup_time is not None
        rows.append([amp, R, T, tripped])
        achieved.append((R, T, tripped))

    # large-amplitude control: the guard must trip, reported as expected
    amp = pm["trip_amplitude"]
    u0 = field_from_modes(cfg.grid, {1: amp, -1: amp})
    R = sobolev_norm_sq(u0, 1.75) ** 0.5
    traj = evolve(u0, cfg.flow, cfg.run.t_end)
    control_tripped = traj.blowup_time is not None
    rows.append([amp, R, traj.blowup_time if control_tripped else cfg.run.t_end, control_tripped])
    _write_csv(out / "focusing.csv", ("amplitude", "R_h74", "T_achieved", "tripped"), rows)

    times = [T for _, T, _ in achieved]
    positive = all(T > 0 for T in times)
    non_increasing = all(times[i] >= times[i + 1] for i in range(len(times) - 1))
    verdicts = [
        Verdict(
            "local_time_positive_nonincreasing",
            positive and non_increasing,
            {"R": [r for r, _, _ in achieved], "T": times},
        ),
        Verdict(
            "large_amplitude_trips_guard",
            bool(control_tripped),
            {"trip_amplitude": amp, "R": R},
        ),
    ]
    return {"focusing.csv": out / "focusing.csv"}, verdicts


_RUNNERS = {
    "conservation": run_conservation,
    "plane_wave_order": run_plane_wave_order,
    "continuity": run_continuity,
    "linear_invariance": run_linear_invariance,
    "smoothing_sweep": run_smoothing_sweep,
    "growth": run_growth,
    "transport_mc": run_transport_mc,
    "truncation_convergence": run_truncation_convergence,
    "focusing_local": run_focusing_local,
}


def _map_workers(fn, payloads, workers: int):
    """Order-preserving map, optionally across processes.

    Results arrive in payload order regardless of scheduling, so aggregation
    is deterministic.
    """
    if workers <= 1 or len(payloads) <= 1:
        return [fn(p) for p in payloads]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, payloads, chunksize=max(1, len(payloads) // (4 * workers))))


def run(cfg: ExperimentConfig) -> RunManifest:
    """Run one experiment: write data files and manifest.json under output_dir."""
    out = Path(cfg.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    started = datetime.now(timezone.utc).isoformat()
    config_text = serialize_config(cfg)
    (out / "config.ini").write_text(config_text)
    files: dict[str, Path] = {"config.ini": out / "config.ini"}
    verdicts: list[Verdict] = []
    error = None
    try:
        produced, verdicts = _RUNNERS[cfg.experiment](cfg, out)
        files.update(produced)
    except Exception as exc:  # manifest is written even on failure
        error = f"{type(exc).__name__}: {exc}"
    manifest = RunManifest(
        experiment=cfg.experiment,
        version=__version__,
        started=started,
        finished=datetime.now(timezone.utc).isoformat(),
        config_text=config_text,
        files={name: _sha256(path) for name, path in sorted(files.items())},
        verdicts=verdicts,
        passed=error is None and all(v.passed for v in verdicts),
        error=error,
    )
    (out / "manifest.json").write_text(manifest.to_json())
    return manifest


def emit_plots(run_dir) -> Path:
    """Write a gnuplot stub next to the run's CSV files (no rendering dependency)."""
    run_dir = Path(run_dir)
    manifest_path = run_dir / "manifest.json"
    if not manifest_path.exists():
        raise FileNotFoundError(f"no manifest.json in {run_dir}")
    manifest = RunManifest.from_json(manifest_path.read_text())
    missing = [
        name
        for name in manifest.files
        if not (run_dir / name).exists()
    ]
    if missing:
        raise FileNotFoundError(f"missing data files: {missing}")
    csvs = [name for name in manifest.files if name.endswith(".csv")]
    lines = [
        "# gnuplot stub; data columns are documented in the CSV headers",
        "set datafile separator ','",
        "set key autotitle columnhead",
    ]
    for name in csvs:
        lines.append(f"# plot '{name}' using 1:2 with lines")
    path = run_dir / "plots.gp"
    path.write_text("\n".join(lines) + "\n")
    return path
