"""Experiment configuration: one human-editable file = one experiment.

Grammar (INI-style, parsed strictly):

    [experiment]
    name = conservation          ; one of EXPERIMENTS
    output_dir = runs/conservation

    [grid]                        ; GridSpec fields
    [flow]                        ; FlowParams fields (cutoff = full or an int)
    [measure]                     ; MeasureSpec fields (used where relevant)
    [run]                         ; horizon, ensemble size, sweep, workers
    [params]                      ; experiment-specific knobs, typed per schema

Every key is typed and defaulted by the schema below; unknown sections or
keys are rejected (config drift guard).  Values: integers, floats (repr
round-trip), booleans (true/false), strings, and comma-separated lists.
serialize() emits a canonical form, so parse(serialize(c)) == c and replayed
configs diff cleanly.
"""

from __future__ import annotations

import configparser
import io
import math
from dataclasses import dataclass, field

from .flow import FlowParams
from .measure import MeasureSpec
from .spectral import GridSpec

EXPERIMENTS = (
    "conservation",
    "plane_wave_order",
    "continuity",
    "linear_invariance",
    "smoothing_sweep",
    "growth",
    "transport_mc",
    "truncation_convergence",
    "focusing_local",
)


class ConfigError(ValueError):
    """Invalid experiment configuration (field-level diagnostics)."""


@dataclass(frozen=True)
class RunSettings:
    t_end: float = 1.0
    ensemble_size: int = 64
    m_sweep: tuple[int, ...] = (16, 32, 64, 128)
    workers: int = 1
    observer_stride: int = 10


@dataclass(frozen=True)
class ExperimentConfig:
    experiment: str
    output_dir: str
    grid: GridSpec
    flow: FlowParams
    measure: MeasureSpec
    run: RunSettings
    params: dict = field(default_factory=dict)


# (type tag, default); type tags: int, float, bool, str, int_list, float_list
_GRID_SCHEMA = {
    "modes": ("int", 32),
    "phys_size": ("int", 0),
    "pad_rule": ("str", "exact_quintic"),
    "pad_factor": ("float", 0.0),
}
_FLOW_SCHEMA = {
    "sigma": ("int", 1),
    "cutoff": ("cutoff", None),
    "integrator": ("str", "rk4"),
    "dt": ("float", 1e-3),
    "blowup_threshold": ("float", 1e3),
}
_MEASURE_SCHEMA = {
    "s": ("float", 2.0),
    "M": ("int", 32),
    "base_seed": ("int", 20260810),
}
_RUN_SCHEMA = {
    "t_end": ("float", 1.0),
    "ensemble_size": ("int", 64),
    "m_sweep": ("int_list", (16, 32, 64, 128)),
    "workers": ("int", 1),
    "observer_stride": ("int", 10),
}

PARAMS_SCHEMA: dict[str, dict] = {
    "conservation": {
        "seed": ("int", 42),
        "amplitude": ("float", 0.2),
        "width": ("float", 4.0),
        "bias": ("float", 0.25),
        "bias_mode": ("int", 2),
        "drift_tol": ("float", 1e-8),
    },
    "plane_wave_order": {
        "mode": ("int", 2),
        "amplitude": ("float", 1.0),
        "dt_list": ("float_list", (4e-3, 2e-3, 1e-3, 5e-4)),
        "min_order": ("float", 3.7),
        "max_order": ("float", 4.3),
    },
    "continuity": {
        "n_fields": ("int", 1000),
        "max_modes": ("int", 64),
        "seed": ("int", 7),
        "eleele_tol": ("float", 1e-9),
        "continuity_tol": ("float", 1e-8),
        "j0_tol": ("float", 1e-9),
    },
    "linear_invariance": {
        "times": ("float_list", (0.1, 1.0, math.pi, 1.0 + math.sqrt(2.0))),
        "alpha": ("float", 0.05),
    },
    "smoothing_sweep": {
        "m0": ("int", 10),
        "uniformity_factor": ("float", 2.0),
        "slope_min": ("float", 1.0),
        "perturbation": ("float", 0.1),
    },
    "growth": {
        "seed": ("int", 42),
        "amplitude": ("float", 0.2),
        "width": ("float", 4.0),
        "fit_fraction": ("float", 0.1),
        "slack": ("float", 2.0),
    },
    "transport_mc": {
        "times": ("float_list", (0.25, 0.5)),
        "quantile": ("float", 0.9),
        "log_slack": ("float", 0.6931471805599453),
    },
    "truncation_convergence": {
        "n_samples": ("int", 4),
        "m_list": ("int_list", (16, 32, 64, 128, 256)),
        "final_fraction": ("float", 1e-3),
        "with_flow": ("bool", True),
        "flow_modes": ("int", 128),
        "flow_m_list": ("int_list", (8, 16, 32, 64)),
        "flow_dt": ("float", 1e-4),
        "flow_amplitude": ("float", 0.4),
        "flow_decay": ("float", 8.0),
        "flow_seed": ("int", 5),
    },
    "focusing_local": {
        "amplitudes": ("float_list", (1.0, 1.6, 2.0)),
        "trip_amplitude": ("float", 3.0),
    },
}

_SECTIONS = {
    "grid": _GRID_SCHEMA,
    "flow": _FLOW_SCHEMA,
    "measure": _MEASURE_SCHEMA,
    "run": _RUN_SCHEMA,
}


def _parse_value(tag: str, raw: str, where: str):
    raw = raw.strip()
    try:
        if tag == "int":
            return int(raw)
        if tag == "float":
            return float(raw)
        if tag == "bool":
            if raw.lower() in ("true", "yes", "1"):
                return True
            if raw.lower() in ("false", "no", "0"):
                return False
            raise ValueError(f"not a boolean: {raw!r}")
        if tag == "str":
            return raw
        if tag == "cutoff":
            return None if raw.lower() == "full" else int(raw)
        if tag == "int_list":
            return tuple(int(x) for x in raw.split(",") if x.strip())
        if tag == "float_list":
            return tuple(float(x) for x in raw.split(",") if x.strip())
    except ValueError as exc:
        raise ConfigError(f"{where}: {exc}") from None
    raise ConfigError(f"{where}: unknown type tag {tag}")


def _format_value(tag: str, value) -> str:
    if tag == "bool":
        return "true" if value else "false"
    if tag == "cutoff":
        return "full" if value is None else str(value)
    if tag in ("int_list", "float_list"):
        return ", ".join(repr(v) if tag == "float_list" else str(v) for v in value)
    if tag == "float":
        return repr(float(value))
    return str(value)


def _read_section(cp, name, schema) -> dict:
    out = {key: default for key, (tag, default) in schema.items()}
    if not cp.has_section(name):
        return out
    for key in cp.options(name):
        if key not in schema:
            raise ConfigError(f"[{name}] unknown key {key!r}")
        tag = schema[key][0]
        out[key] = _parse_value(tag, cp.get(name, key), f"[{name}] {key}")
    return out


def parse_config(text: str) -> ExperimentConfig:
    cp = configparser.ConfigParser(interpolation=None)
    cp.optionxform = str  # keep keys case-sensitive (M vs m)
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(str(exc)) from None

    if not cp.has_section("experiment") or not cp.has_option("experiment", "name"):
        raise ConfigError("[experiment] section with a name key is required")
    for key in cp.options("experiment"):
        if key not in ("name", "output_dir"):
            raise ConfigError(f"[experiment] unknown key {key!r}")
    name = cp.get("experiment", "name").strip()
    if name not in EXPERIMENTS:
        raise ConfigError(f"unknown experiment {name!r}; choose from {EXPERIMENTS}")
    output_dir = cp.get("experiment", "output_dir", fallback=f"runs/{name}").strip()

    known = {"experiment", "params", *_SECTIONS}
    for section in cp.sections():
        if section not in known:
            raise ConfigError(f"unknown section [{section}]")

    grid_kw = _read_section(cp, "grid", _GRID_SCHEMA)
    flow_kw = _read_section(cp, "flow", _FLOW_SCHEMA)
    measure_kw = _read_section(cp, "measure", _MEASURE_SCHEMA)
    run_kw = _read_section(cp, "run", _RUN_SCHEMA)
    params = _read_section(cp, "params", PARAMS_SCHEMA[name])

    try:
        grid = GridSpec(**grid_kw)
        flow = FlowParams(**flow_kw)
        flow.check_grid(grid)
        measure = MeasureSpec(**measure_kw)
        run = RunSettings(**run_kw)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    if run.t_end <= 0:
        raise ConfigError("[run] t_end must be positive")
    if run.ensemble_size < 1:
        raise ConfigError("[run] ensemble_size must be >= 1")
    if run.workers < 1:
        raise ConfigError("[run] workers must be >= 1")
    return ExperimentConfig(
        experiment=name,
        output_dir=output_dir,
        grid=grid,
        flow=flow,
        measure=measure,
        run=run,
        params=params,
    )


def serialize_config(cfg: ExperimentConfig) -> str:
    buf = io.StringIO()
    buf.write("[experiment]\n")
    buf.write(f"name = {cfg.experiment}\n")
    buf.write(f"output_dir = {cfg.output_dir}\n")
    values = {
        "grid": {k: getattr(cfg.grid, k) for k in _GRID_SCHEMA},
        "flow": {k: getattr(cfg.flow, k) for k in _FLOW_SCHEMA},
        "measure": {k: getattr(cfg.measure, k) for k in _MEASURE_SCHEMA},
        "run": {k: getattr(cfg.run, k) for k in _RUN_SCHEMA},
    }
    for section, schema in _SECTIONS.items():
        buf.write(f"\n[{section}]\n")
        for key, (tag, _) in schema.items():
            buf.write(f"{key} = {_format_value(tag, values[section][key])}\n")
    buf.write("\n[params]\n")
    schema = PARAMS_SCHEMA[cfg.experiment]
    for key, (tag, _) in schema.items():
        buf.write(f"{key} = {_format_value(tag, cfg.params[key])}\n")
    return buf.getvalue()


# per-experiment section defaults; anything not listed falls back to the
# generic schema defaults above
EXPERIMENT_DEFAULTS: dict[str, str] = {
    "conservation": "",
    "plane_wave_order": "[grid]\nmodes = 8\n\n[run]\nt_end = 0.5\n",
    "continuity": "[grid]\nmodes = 64\n",
    "linear_invariance": "[run]\nensemble_size = 1000\n",
    "smoothing_sweep": "[grid]\nmodes = 128\n\n[measure]\nM = 128\n",
    "growth": "[run]\nt_end = 200.0\nobserver_stride = 100\n",
    "transport_mc": "[flow]\ncutoff = 32\n\n[run]\nensemble_size = 256\nt_end = 0.5\n",
    "truncation_convergence": "[grid]\nmodes = 256\n\n[measure]\nM = 256\n",
    "focusing_local": "[flow]\nsigma = -1\ndt = 0.0005\n\n[run]\nt_end = 0.5\n",
}


def default_config(experiment: str, **overrides) -> ExperimentConfig:
    """Default configuration for an experiment, with keyword overrides.

    Recognized overrides: output_dir, base_seed, workers, dt, t_end.
    """
    if experiment not in EXPERIMENTS:
        raise ConfigError(f"unknown experiment {experiment!r}")
    text = f"[experiment]\nname = {experiment}\n" + EXPERIMENT_DEFAULTS[experiment]
    cfg = parse_config(text)
    return apply_overrides(cfg, **overrides)


def apply_overrides(
    cfg: ExperimentConfig,
    output_dir: str | None = None,
    base_seed: int | None = None,
    workers: int | None = None,
    dt: float | None = None,
    t_end: float | None = None,
) -> ExperimentConfig:
    from dataclasses import replace

    if output_dir is not None:
        cfg = replace(cfg, output_dir=output_dir)
    if base_seed is not None:
        cfg = replace(cfg, measure=replace(cfg.measure, base_seed=base_seed))
    if workers is not None:
        cfg = replace(cfg, run=replace(cfg.run, workers=workers))
    if dt is not None:
        cfg = replace(cfg, flow=replace(cfg.flow, dt=dt))
    if t_end is not None:
        cfg = replace(cfg, run=replace(cfg.run, t_end=t_end))
    return cfg
