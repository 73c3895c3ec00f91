"""Fourier representation of complex fields on the torus [0, 2*pi).

A field is stored by its Fourier coefficients u_n for |n| <= modes, in the
order n = -modes, ..., modes, so that u(x) = sum_n u_n e^{inx}.  All integral
quantities carry the physical 2*pi measure: the L2 pairing is
(a, b) = int a conj(b) dx = 2*pi * sum a_n conj(b_n), and the H^s norm squared
is 2*pi * sum (1+n^2)^s |u_n|^2.

Nonlinear quantities are evaluated pointwise on zero-padded grids so that
every product of band-limited fields is alias-free: a degree-d product of
fields band-limited to M occupies modes up to d*M, so exact integrals (and
exact coefficient extraction up to mode M) need a transform size of at least
d*M + 1 (respectively (d+1)*M + 1).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np
from scipy.fft import next_fast_len

TWO_PI = 2.0 * np.pi

PAD_EXACT_QUINTIC = "exact_quintic"
PAD_FACTOR = "factor"


@dataclass(frozen=True)
class GridSpec:
    """Mode cutoff, physical quadrature size and dealiasing policy.

    modes:     coefficients are kept for |n| <= modes.
    phys_size: number of physical quadrature points x_j = 2*pi*j/phys_size;
               must be >= 2*modes + 1 so the field is representable.
    pad_rule:  "exact_quintic" pads quintic products to >= 6*modes + 1
               (alias-free extraction of |u|^4 u up to mode `modes`);
               "factor" pads to ceil(pad_factor * modes) + 1.
    """

    modes: int
    phys_size: int = 0
    pad_rule: str = PAD_EXACT_QUINTIC
    pad_factor: float = 0.0

    def __post_init__(self):
        if self.modes < 1:
            raise ValueError(f"modes must be >= 1, got {self.modes}")
        if self.phys_size == 0:
            object.__setattr__(self, "phys_size", next_fast_len(2 * self.modes + 1))
        if self.phys_size < 2 * self.modes + 1:
            raise ValueError(
                f"phys_size {self.phys_size} < 2*modes+1 = {2 * self.modes + 1}"
            )
        if self.pad_rule not in (PAD_EXACT_QUINTIC, PAD_FACTOR):
            raise ValueError(f"unknown pad_rule {self.pad_rule!r}")
        if self.pad_rule == PAD_FACTOR and self.pad_factor <= 0:
            raise ValueError("factor pad rule needs pad_factor > 0")

    @property
    def n(self) -> np.ndarray:
        """Mode indices -modes..modes in storage order."""
        return np.arange(-self.modes, self.modes + 1)

    @property
    def x(self) -> np.ndarray:
        """Physical quadrature points."""
        return TWO_PI * np.arange(self.phys_size) / self.phys_size

    def quintic_pad(self) -> int:
        """Transform size used for the quintic product under this pad rule."""
        if self.pad_rule == PAD_EXACT_QUINTIC:
            return next_fast_len(6 * self.modes + 1)
        return next_fast_len(int(np.ceil(self.pad_factor * self.modes)) + 1)

    def pad_for_degree(self, degree: int) -> int:
        """Smallest FFT-friendly size integrating degree-`degree` products exactly."""
        return next_fast_len(degree * self.modes + 1)


@dataclass(frozen=True)
class FourierField:
    """A complex field u = sum_{|n|<=modes} coeffs[n] e^{inx} on a GridSpec.

    Fields are immutable values: the coefficient array is copied on
    construction and marked read-only, so instances are safe to share
    between workers.
    """

    grid: GridSpec
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=np.complex128)
        if c.shape != (2 * self.grid.modes + 1,):
            raise ValueError(
                f"coeffs shape {c.shape} does not match grid with "
                f"{2 * self.grid.modes + 1} modes"
            )
        if not np.all(np.isfinite(c.view(np.float64))):
            raise ValueError("coeffs contain non-finite values")
        c = c.copy()
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)

    def values(self, size: int | None = None) -> np.ndarray:
        """Field values at `size` equispaced points (default: the physical grid)."""
        return synthesize(self.coeffs, self.grid.modes, size or self.grid.phys_size)


def zero_field(grid: GridSpec) -> FourierField:
    return FourierField(grid, np.zeros(2 * grid.modes + 1, dtype=np.complex128))


def field_from_modes(grid: GridSpec, amplitudes: dict[int, complex]) -> FourierField:
    """Build a field from a {mode: amplitude} map."""
    c = np.zeros(2 * grid.modes + 1, dtype=np.complex128)
    for n, a in amplitudes.items():
        if abs(n) > grid.modes:
            raise ValueError(f"mode {n} outside grid with modes={grid.modes}")
        c[n + grid.modes] = a
    return FourierField(grid, c)


def synthesize(coeffs: np.ndarray, modes: int, size: int) -> np.ndarray:
    """Values of sum_{|n|<=modes} coeffs e^{inx} at `size` equispaced points.

    Coefficients are folded modulo `size`, which evaluates the trigonometric
    polynomial exactly even when size < 2*modes + 1.
    """
    a = np.zeros(size, dtype=np.complex128)
    n = np.arange(-modes, modes + 1)
    np.add.at(a, n % size, coeffs)
    return np.fft.ifft(a) * size


def analyze(values: np.ndarray, modes: int) -> np.ndarray:
    """Fourier coefficients for |n| <= modes from equispaced samples.

    Exact when the sampled function is band-limited to |n| < len(values) - modes.
    """
    size = len(values)
    a = np.fft.fft(values) / size
    n = np.arange(-modes, modes + 1)
    return a[n % size]


def project(u: FourierField, cutoff: int) -> FourierField:
    """Dirichlet projector: zero all coefficients with |n| > cutoff.

    Acts as the identity when cutoff >= grid modes.
    """
    if cutoff < 0:
        raise ValueError(f"cutoff must be >= 0, got {cutoff}")
    if cutoff >= u.grid.modes:
        return u
    c = u.coeffs.copy()
    c[np.abs(u.grid.n) > cutoff] = 0.0
    return FourierField(u.grid, c)


def derivative(u: FourierField, order: int = 1) -> FourierField:
    """Spectral derivative: coefficient-wise multiplication by (in)^order."""
    if order < 0:
        raise ValueError("derivative order must be >= 0")
    if order == 0:
        return u
    return FourierField(u.grid, u.coeffs * (1j * u.grid.n) ** order)


def sobolev_norm_sq(u: FourierField, s: float) -> float:
    """2*pi * sum (1+n^2)^s |u_n|^2; s = 0 reproduces int |u|^2 dx."""
    n = u.grid.n
    return float(TWO_PI * np.sum((1.0 + n * n) ** s * np.abs(u.coeffs) ** 2))


def lp_norm(u: FourierField, p: float) -> float:
    """L^p norm over the physical grid; p = inf gives max_j |u(x_j)|."""
    vals = np.abs(u.values())
    if np.isinf(p):
        return float(np.max(vals)) if vals.size else 0.0
    w = TWO_PI / u.grid.phys_size
    return float((w * np.sum(vals**p)) ** (1.0 / p))


def inner(a: FourierField, b: FourierField) -> complex:
    """L2 pairing int a conj(b) dx = 2*pi * sum a_n conj(b_n)."""
    if a.grid != b.grid:
        raise ValueError("inner: fields live on different grids")
    return complex(TWO_PI * np.sum(a.coeffs * np.conj(b.coeffs)))


def quintic(u: FourierField) -> FourierField:
    """Coefficients of |u|^4 u for |n| <= modes, computed alias-free.

    Raises if the grid's pad rule cannot guarantee alias-free modes up to
    `modes` (a 5-fold product of band-M fields occupies modes up to 5M, so
    the padded size must be at least 6M + 1).
    """
    g = u.grid
    size = g.quintic_pad()
    if size < 6 * g.modes + 1:
        raise ValueError(
            f"pad rule gives transform size {size} < 6*modes+1 = "
            f"{6 * g.modes + 1}; quintic would alias"
        )
    w = synthesize(u.coeffs, g.modes, size)
    with np.errstate(over="ignore", invalid="ignore"):
        q = np.abs(w) ** 4 * w
    return FourierField(g, analyze(q, g.modes))


def quintic_convolution(u: FourierField) -> FourierField:
    """Direct quintuple-convolution oracle for |u|^4 u = u u u conj(u) conj(u).

    O(modes^5); used to validate the padded-FFT route on small fields.
    """
    g = u.grid
    M = g.modes
    c = u.coeffs
    cc = np.conj(c)
    acc = np.zeros(2 * M + 1, dtype=np.complex128)
    idx = range(-M, M + 1)
    for n1 in idx:
        for n2 in idx:
            s12 = c[n1 + M] * c[n2 + M]
            if s12 == 0:
                continue
            for n3 in idx:
                s123 = s12 * c[n3 + M]
                if s123 == 0:
                    continue
                for n4 in idx:
                    s = s123 * cc[n4 + M]
                    if s == 0:
                        continue
                    for n5 in idx:
                        n = n1 + n2 + n3 - n4 - n5
                        if abs(n) <= M:
                            acc[n + M] += s * cc[n5 + M]
    return FourierField(g, acc)


def save_field(u: FourierField, path) -> None:
    """Field snapshot: JSON with M_g, N_g and [re, im] pairs, n = -M_g..M_g."""
    payload = {
        "M_g": u.grid.modes,
        "N_g": u.grid.phys_size,
        "coeffs": [[float(z.real), float(z.imag)] for z in u.coeffs],
    }
    with open(path, "w") as fh:
        json.dump(payload, fh)


def load_field(path) -> FourierField:
    with open(path) as fh:
        payload = json.load(fh)
    grid = GridSpec(modes=payload["M_g"], phys_size=payload["N_g"])
    c = np.array([complex(re, im) for re, im in payload["coeffs"]])
    return FourierField(grid, c)
