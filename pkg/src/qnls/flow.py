"""Time integration of the linear, full and Galerkin-truncated quintic flows.

The equation is (i d/dt + d^2/dx^2) u = sigma * P_M(|P_M u|^4 P_M u) with
sigma = +1 (defocusing) or -1 (focusing) and P_M the Dirichlet projector;
cutoff = None drops both projectors (P_inf = Id on the grid band).  In
coefficient form:

    du_n/dt = -i n^2 u_n - i sigma * (P_M |P_M u|^4 P_M u)_n.

The reference integrator is classical RK4 on this coefficient ODE system
with the exactly dealiased quintic; Strang splitting (exact half linear
phases around the pointwise nonlinear rotation u <- u e^{-i sigma |u|^4 dt})
is provided for speed on untruncated runs only.

RK4 is neutrally stable on the imaginary axis up to |n^2 dt| ~ 2.8; pick dt
accordingly for the largest grid mode.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .spectral import (
    TWO_PI,
    FourierField,
    GridSpec,
    analyze,
    project,
    quintic,
    sobolev_norm_sq,
    synthesize,
)

FULL = None  # cutoff value meaning "no Galerkin projector"


class BlowUpError(RuntimeError):
    """H^1 guard exceeded (or the state left the representable range)."""

    def __init__(self, message: str, h1: float = float("inf")):
        super().__init__(message)
        self.h1 = h1


@dataclass(frozen=True)
class FlowParams:
    """Nonlinearity sign, Galerkin cutoff, integrator and step size.

    cutoff None means the full (untruncated-on-grid) flow.
    blowup_threshold caps ||u||_{H^1}; focusing runs are only local in time.
    """

    sigma: int = 1
    cutoff: int | None = FULL
    integrator: str = "rk4"
    dt: float = 1e-3
    blowup_threshold: float = 1e3

    def __post_init__(self):
        if self.sigma not in (1, -1):
            raise ValueError(f"sigma must be +1 or -1, got {self.sigma}")
        if self.integrator not in ("rk4", "strang"):
            raise ValueError(f"unknown integrator {self.integrator!r}")
        if self.dt <= 0:
            raise ValueError("dt must be positive")
        if self.blowup_threshold <= 0:
            raise ValueError("blowup_threshold must be positive")
        if self.cutoff is not None and self.cutoff < 0:
            raise ValueError("cutoff must be >= 0 or None")

    def check_grid(self, grid: GridSpec) -> None:
        if self.cutoff is not None and self.cutoff > grid.modes:
            raise ValueError(
                f"cutoff {self.cutoff} exceeds grid modes {grid.modes}"
            )


@dataclass
class Trajectory:
    """Observer records along one evolve() call; all states share one grid."""

    times: np.ndarray
    records: list[dict]
    states: list[FourierField] = field(default_factory=list)
    final: FourierField | None = None
    blowup_time: float | None = None


def linear_flow(u0: FourierField, t: float) -> FourierField:
    """Exact flow of (i d/dt + d^2/dx^2) u = 0: u_n -> e^{-i t n^2} u_n."""
    n = u0.grid.n
    return FourierField(u0.grid, u0.coeffs * np.exp(-1j * t * n * n))


def _rhs_coeffs(c: np.ndarray, grid: GridSpec, p: FlowParams) -> np.ndarray:
    n = grid.n
    if p.cutoff is None or p.cutoff >= grid.modes:
        w = c
        mask = None
    else:
        mask = np.abs(n) <= p.cutoff
        w = np.where(mask, c, 0.0)
    size = grid.quintic_pad()
    if size < 6 * grid.modes + 1:
        raise ValueError(
            f"pad rule gives transform size {size} < 6*modes+1; quintic would alias"
        )
    vals = synthesize(w, grid.modes, size)
    with np.errstate(over="ignore", invalid="ignore"):
        q = analyze(np.abs(vals) ** 4 * vals, grid.modes)
    if mask is not None:
        q = np.where(mask, q, 0.0)
    return -1j * n * n * c - 1j * p.sigma * q


def rhs(u: FourierField, p: FlowParams) -> FourierField:
    """du/dt = i u_xx - i sigma P_M(|P_M u|^4 P_M u) as a field."""
    p.check_grid(u.grid)
    return FourierField(u.grid, _rhs_coeffs(u.coeffs, u.grid, p))


def _rk4_coeffs(c: np.ndarray, grid: GridSpec, p: FlowParams, dt: float) -> np.ndarray:
    k1 = _rhs_coeffs(c, grid, p)
    k2 = _rhs_coeffs(c + 0.5 * dt * k1, grid, p)
    k3 = _rhs_coeffs(c + 0.5 * dt * k2, grid, p)
    k4 = _rhs_coeffs(c + dt * k3, grid, p)
    return c + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def _strang_coeffs(c: np.ndarray, grid: GridSpec, p: FlowParams, dt: float) -> np.ndarray:
    n = grid.n
    half = np.exp(-1j * (dt / 2.0) * n * n)
    c = c * half
    size = grid.quintic_pad()
    vals = synthesize(c, grid.modes, size)
    with np.errstate(over="ignore", invalid="ignore"):
        vals = vals * np.exp(-1j * p.sigma * np.abs(vals) ** 4 * dt)
    c = analyze(vals, grid.modes)
    return c * half


def step(u: FourierField, p: FlowParams, dt: float | None = None) -> FourierField:
    """One integrator step of size dt (default p.dt).

    Raises BlowUpError when ||u||_{H^1} reaches the guard before the step or
    the state is no longer finite after it; Strang splitting is rejected for
    finite cutoffs (the projected nonlinearity is not a pointwise phase).
    """
    p.check_grid(u.grid)
    h1 = sobolev_norm_sq(u, 1.0) ** 0.5
    if not np.isfinite(h1) or h1 >= p.blowup_threshold:
        raise BlowUpError(f"H^1 guard tripped: ||u||_H1 = {h1:.6g}", h1)
    dt = p.dt if dt is None else dt
    if p.integrator == "rk4":
        c = _rk4_coeffs(u.coeffs, u.grid, p, dt)
    else:
        if p.cutoff is not None:
            raise ValueError("strang splitting is valid only for cutoff = FULL")
        c = _strang_coeffs(u.coeffs, u.grid, p, dt)
    if not np.all(np.isfinite(c.view(np.float64))):
        raise BlowUpError("state left the representable range during a step", float("inf"))
    return FourierField(u.grid, c)


def evolve(
    u0: FourierField,
    p: FlowParams,
    t_end: float,
    observers: tuple = (),
    stride: int = 1,
    store_states: bool = False,
) -> Trajectory:
    """Repeated step() with a final partial step landing exactly on t_end.

    Observers are callables f(t, u) -> dict of floats, invoked every `stride`
    steps (and at t = 0 and t_end); their outputs are merged per record.
    A guard trip stops the run and is recorded as Trajectory.blowup_time.
    """
    if t_end <= 0:
        raise ValueError("t_end must be positive")
    if stride < 1:
        raise ValueError("stride must be >= 1")
    n_steps = int(np.floor(t_end / p.dt + 1e-12))
    remainder = t_end - n_steps * p.dt
    times: list[float] = []
    records: list[dict] = []
    states: list[FourierField] = []

    def record(t: float, u: FourierField) -> None:
        times.append(t)
        out: dict = {}
        for obs in observers:
            out.update(obs(t, u))
        records.append(out)
        if store_states:
            states.append(u)

    u = u0
    t = 0.0
    record(t, u)
    blowup_time = None
    try:
        for k in range(n_steps):
            u = step(u, p)
            t = (k + 1) * p.dt
            if (k + 1) % stride == 0 and not (k + 1 == n_steps and remainder <= 1e-12):
                record(t, u)
        if remainder > 1e-12:
            u = step(u, p, dt=remainder)
            t = t_end
        record(t, u)
    except BlowUpError:
        blowup_time = t
        if not times or times[-1] != t:
            record(t, u)
    return Trajectory(
        times=np.asarray(times),
        records=records,
        states=states,
        final=u,
        blowup_time=blowup_time,
    )


def mass(u: FourierField) -> float:
    """int |u|^2 dx."""
    return sobolev_norm_sq(u, 0.0)


def momentum(u: FourierField) -> float:
    """2 Im int conj(u) u_x dx = 4*pi * sum n |u_n|^2 (= int J dx)."""
    n = u.grid.n
    return float(2.0 * TWO_PI * np.sum(n * np.abs(u.coeffs) ** 2))


def l6_pow6(u: FourierField) -> float:
    """int |u|^6 dx, alias-free (degree-6 integrand)."""
    size = u.grid.pad_for_degree(6)
    vals = u.values(size)
    return float(TWO_PI / size * np.sum(np.abs(vals) ** 6))


def hamiltonian(u: FourierField, sigma: int = 1) -> float:
    """(1/2) int |u_x|^2 + (sigma/6) int |u|^6."""
    n = u.grid.n
    kinetic = 0.5 * TWO_PI * np.sum(n * n * np.abs(u.coeffs) ** 2)
    return float(kinetic + sigma / 6.0 * l6_pow6(u))
