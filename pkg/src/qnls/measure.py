"""Gaussian measures mu_s on the torus, deterministic ensembles and statistics.

A sample of mu_s is the random Fourier series with coefficients

    u_n = (h_n + i l_n) / (1 + n^2)^{s/2},   |n| <= M,

where h_n, l_n are independent unit normals (so E|g_n|^2 = 2).  Samples lie
in H^{s - 1/2 - delta} statistically; this is tested through moments, never
per sample.

Determinism and parallel safety come from a counter-based stream split: each
ensemble member index gets its own Philox generator keyed by

    seed(index) = splitmix64(base_seed XOR splitmix64(index)),

and normals are drawn through the inverse normal CDF applied to 53-bit
uniforms offset by half an ulp (never exactly 0 or 1).  Records are
reproducible bit-for-bit given (spec, index); bit-compatibility across
implementations is not promised, statistical compatibility is.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np
from scipy.special import ndtri

from .energy import e2
from .flow import l6_pow6, mass
from .spectral import FourierField, GridSpec, sobolev_norm_sq

_MASK64 = (1 << 64) - 1


def splitmix64(z: int) -> int:
    """One SplitMix64 output step (Steele, Lea, Flood 2014)."""
    z = (z + 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


def derive_seed(base_seed: int, index: int) -> int:
    """Documented stream split: splitmix64(base_seed XOR splitmix64(index))."""
    return splitmix64((base_seed & _MASK64) ^ splitmix64(index & _MASK64))


@dataclass(frozen=True)
class MeasureSpec:
    """Regularity index s, sample cutoff M and the ensemble's base seed."""

    s: float = 2.0
    M: int = 32
    base_seed: int = 0

    def __post_init__(self):
        if self.M < 0:
            raise ValueError("M must be >= 0")


@dataclass(frozen=True)
class EnsembleRecord:
    """Per-trajectory observables with the derived seed that produced them."""

    index: int
    seed: int
    observables: dict[str, float] = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(
            {"index": self.index, "seed": self.seed, "observables": self.observables}
        )

    @staticmethod
    def from_json(line: str) -> "EnsembleRecord":
        d = json.loads(line)
        return EnsembleRecord(d["index"], d["seed"], d["observables"])


def _standard_normals(rng: np.random.Generator, shape) -> np.ndarray:
    """Inverse-CDF normals from 53-bit uniforms offset by half an ulp."""
    u = (rng.integers(0, 1 << 53, size=shape).astype(np.float64) + 0.5) / float(1 << 53)
    return ndtri(u)


def sample_mu(
    spec: MeasureSpec, index: int, grid: GridSpec | None = None
) -> FourierField:
    """Draw the index-th ensemble member of mu_s, deterministic per (spec, index).

    Normals are drawn as an (2M+1, 2) block in mode order n = -M..M,
    columns (h_n, l_n).
    """
    if grid is None:
        grid = GridSpec(modes=max(spec.M, 1))
    if grid.modes < spec.M:
        raise ValueError(f"grid modes {grid.modes} < sample cutoff {spec.M}")
    rng = np.random.Generator(np.random.Philox(key=derive_seed(spec.base_seed, index)))
    hl = _standard_normals(rng, (2 * spec.M + 1, 2))
    g = hl[:, 0] + 1j * hl[:, 1]
    n = np.arange(-spec.M, spec.M + 1)
    c = np.zeros(2 * grid.modes + 1, dtype=np.complex128)
    c[n + grid.modes] = g / (1.0 + n * n) ** (spec.s / 2.0)
    return FourierField(grid, c)


def observables(u: FourierField, sigma: int = 1) -> dict[str, float]:
    """Scalar observables for invariance/transport experiments.

    Non-conserved functionals (|u_0|^2, H^1, L^6, E_2) carry the signal;
    mass is the conserved control.  hs_half_eps is ||u||_{H^{7/4}}^2, the
    pinned reporting norm.
    """
    return {
        "mass": mass(u),
        "h1_sq": sobolev_norm_sq(u, 1.0),
        "hs_half_eps": sobolev_norm_sq(u, 1.75),
        "u0_sq": float(abs(u.coeffs[u.grid.modes]) ** 2),
        "l6_pow6": l6_pow6(u),
        "e2": e2(u, sigma).e2,
    }


OBSERVABLE_NAMES = ("mass", "h1_sq", "hs_half_eps", "u0_sq", "l6_pow6", "e2")


def ks_statistic(a, b) -> float:
    """Two-sample Kolmogorov-Smirnov sup-distance of empirical CDFs."""
    a = np.sort(np.asarray(a, dtype=float))
    b = np.sort(np.asarray(b, dtype=float))
    if a.size == 0 or b.size == 0:
        raise ValueError("ks_statistic needs nonempty samples")
    both = np.concatenate([a, b])
    cdf_a = np.searchsorted(a, both, side="right") / a.size
    cdf_b = np.searchsorted(b, both, side="right") / b.size
    return float(np.max(np.abs(cdf_a - cdf_b)))


def ks_critical_value(n: int, m: int, alpha: float = 0.05) -> float:
    """Asymptotic two-sample KS critical value c(alpha) sqrt((n+m)/(n m))."""
    c = np.sqrt(-0.5 * np.log(alpha / 2.0))
    return float(c * np.sqrt((n + m) / (n * m)))


def tail_ratio(before, after, threshold: float) -> float:
    """(fraction of after > threshold) / (fraction of before > threshold).

    Conventions: 0/0 -> 1.0; x/0 with x > 0 -> +inf (reported distinctly).
    """
    before = np.asarray(before, dtype=float)
    after = np.asarray(after, dtype=float)
    if before.size != after.size:
        raise ValueError("tail_ratio: arrays differ in length")
    if before.size < 100:
        raise ValueError("tail_ratio needs at least 100 samples")
    fb = float(np.mean(before > threshold))
    fa = float(np.mean(after > threshold))
    if fb == 0.0:
        return 1.0 if fa == 0.0 else float("inf")
    return fa / fb


def write_ensemble(records: list[EnsembleRecord], path) -> None:
    """Ensemble file: JSON-lines, one record per line."""
    with open(path, "w") as fh:
        for rec in records:
            fh.write(rec.to_json() + "\n")


def read_ensemble(path) -> list[EnsembleRecord]:
    with open(path) as fh:
        return [EnsembleRecord.from_json(line) for line in fh if line.strip()]
