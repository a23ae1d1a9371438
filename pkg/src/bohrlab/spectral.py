"""Fourier transform, convolution and reflection for tables on a finite group.

Two routes are provided for the transform: a fast path that runs numpy's FFT
factor by factor, and a definitional path that evaluates the plain O(N^2)
pairing sums.  The fast path is what the extraction pipeline uses; the
definitional path is the oracle the verifier trusts.  Conventions:

    fhat(t) = (1/N) * sum_z f(z) * conj(chi_t(z))        (analysis)
    f(z)    = sum_t fhat(t) * chi_t(z)                   (synthesis)
    (f conv g)(z) = (1/N) * sum_t f(z - t) g(t)

so the transform of a [0,1]-valued table is bounded by its mean, and the
convolution of indicator tables counts representations divided by N^2.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ShapeError
from .groups import TWO_PI, GroupSpec, coords_table, phase_table

# Cells per intermediate block in the definitional paths; keeps the (rows, N, d)
# products well under a couple hundred MB.
_BLOCK_CELLS = 1 << 21


@dataclass(frozen=True, eq=False)
class DensityFn:
    """A real table over the group, indexed by element in canonical order."""

    group: GroupSpec
    values: np.ndarray

    def __post_init__(self) -> None:
        vals = np.array(self.values, dtype=np.float64)
        if vals.shape != (self.group.order,):
            raise ShapeError(
                f"expected {self.group.order} values for group {self.group}, got shape {vals.shape}"
            )
        if not np.all(np.isfinite(vals)):
            raise DomainError("density table must be finite")
        vals.flags.writeable = False
        object.__setattr__(self, "values", vals)

    @property
    def mean(self) -> float:
        """The normalized-measure integral (1/N) * sum_z f(z)."""
        return float(self.values.mean())

    def as_nd(self) -> np.ndarray:
        return self.values.reshape(self.group.factors)

    def scaled(self, factor: float) -> "DensityFn":
        return DensityFn(self.group, self.values * factor)


@dataclass(frozen=True, eq=False)
class Spectrum:
    """A complex table over the dual group, indexed by character in canonical order."""

    group: GroupSpec
    coeffs: np.ndarray

    def __post_init__(self) -> None:
        coeffs = np.array(self.coeffs, dtype=np.complex128)
        if coeffs.shape != (self.group.order,):
            raise ShapeError(
                f"expected {self.group.order} coefficients for group {self.group}, "
                f"got shape {coeffs.shape}"
            )
        coeffs.flags.writeable = False
        object.__setattr__(self, "coeffs", coeffs)

    def as_nd(self) -> np.ndarray:
        return self.coeffs.reshape(self.group.factors)


def constant_density(g: GroupSpec, value: float = 1.0) -> DensityFn:
    return DensityFn(g, np.full(g.order, value, dtype=np.float64))


def _require_same_group(a, b) -> GroupSpec:
    if a.group != b.group:
        raise ShapeError(f"operands live on different groups: {a.group} vs {b.group}")
    return a.group


# --- transforms --------------------------------------------------------------

def dft(f: DensityFn) -> Spectrum:
    """Fourier transform via the per-factor FFT."""
    g = f.group
    coeffs = np.fft.fftn(f.as_nd()).ravel() / g.order
    return Spectrum(g, coeffs)


def idft(spectrum: Spectrum) -> np.ndarray:
    """Pointwise synthesis sum_t F(t) chi_t(z); returns a complex table."""
    g = spectrum.group
    return np.fft.ifftn(spectrum.as_nd()).ravel() * g.order


def _block_rows(g: GroupSpec) -> int:
    return max(1, _BLOCK_CELLS // max(1, g.order * g.ndim))


def dft_definitional(f: DensityFn) -> Spectrum:
    """The analysis sum evaluated directly, blocked to bound memory."""
    g = f.group
    coords = coords_table(g)
    out = np.empty(g.order, dtype=np.complex128)
    step = _block_rows(g)
    for start in range(0, g.order, step):
        freq_block = coords[start : start + step]
        phases = phase_table(g, freq_block, coords)
        kernel = np.exp(-1j * TWO_PI * phases)
        out[start : start + step] = kernel @ f.values / g.order
    return Spectrum(g, out)


def idft_definitional(spectrum: Spectrum) -> np.ndarray:
    g = spectrum.group
    coords = coords_table(g)
    out = np.empty(g.order, dtype=np.complex128)
    step = _block_rows(g)
    for start in range(0, g.order, step):
        elem_block = coords[start : start + step]
        phases = phase_table(g, elem_block, coords)
        out[start : start + step] = np.exp(1j * TWO_PI * phases) @ spectrum.coeffs
    return out


def synthesize(g: GroupSpec, freqs: np.ndarray, coeffs: np.ndarray) -> np.ndarray:
    """Evaluate sum_j coeffs[j] * chi_{freqs[j]}(z) at every z, definitionally.

    ``freqs`` is a (k, d) integer array of frequency tuples.
    """
    freqs = np.asarray(freqs, dtype=np.int64).reshape(-1, g.ndim)
    coeffs = np.asarray(coeffs, dtype=np.complex128)
    if freqs.shape[0] != coeffs.shape[0]:
        raise ShapeError("one coefficient per frequency row is required")
    coords = coords_table(g)
    out = np.zeros(g.order, dtype=np.complex128)
    if freqs.shape[0] == 0:
        return out
    step = _block_rows(g)
    for start in range(0, g.order, step):
        elem_block = coords[start : start + step]
        phases = phase_table(g, elem_block, freqs)
        out[start : start + step] = np.exp(1j * TWO_PI * phases) @ coeffs
    return out


# --- convolution and reflection ----------------------------------------------

def convolve(f: DensityFn, g: DensityFn) -> DensityFn:
    """Haar-normalized circular convolution, computed through the FFT."""
    grp = _require_same_group(f, g)
    prod = np.fft.fftn(f.as_nd()) * np.fft.fftn(g.as_nd())
    vals = np.fft.ifftn(prod).real.ravel() / grp.order
    return DensityFn(grp, vals)


def convolve_definitional(f: DensityFn, g: DensityFn) -> DensityFn:
    """The convolution sum evaluated by shifting, one translate per summand."""
    grp = _require_same_group(f, g)
    f_nd = f.as_nd()
    axes = tuple(range(grp.ndim))
    out = np.zeros(grp.factors, dtype=np.float64)
    for rank, weight in enumerate(g.values):
        if weight == 0.0:
            continue
        shift = np.unravel_index(rank, grp.factors)
        out += weight * np.roll(f_nd, shift, axis=axes)
    return DensityFn(grp, out.ravel() / grp.order)


def reflect(f: DensityFn) -> DensityFn:
    """The reflected table z -> f(-z)."""
    g = f.group
    idx = [(-np.arange(n)) % n for n in g.factors]
    vals = f.as_nd()[np.ix_(*idx)].ravel()
    return DensityFn(g, vals)


def triple_convolve(f: DensityFn, g: DensityFn) -> DensityFn:
    """The smoothed sumset profile f conv g conv g(-.)."""
    _require_same_group(f, g)
    return convolve(convolve(f, g), reflect(g))


def triple_convolve_definitional(f: DensityFn, g: DensityFn) -> DensityFn:
    _require_same_group(f, g)
    return convolve_definitional(convolve_definitional(f, g), reflect(g))


def plancherel_pairing(f: DensityFn, g: DensityFn) -> complex:
    """The spatial inner product (1/N) sum_z f(z) * conj(g(z))."""
    grp = _require_same_group(f, g)
    return complex(np.vdot(g.values, f.values) / grp.order)
