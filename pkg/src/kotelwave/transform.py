"""Continuous-time Fourier pairs on uniform grids.

Convention::

    Psi(w) = integral psi(t) exp(-j w t) dt
    psi(t) = (1/2pi) integral Psi(w) exp(j w t) dw

Both integrals are discretised with the periodic trapezoidal rule.  The
frequency grid is the exact dual of the time grid (``dw = 2pi/(n dt)``) and
is placed symmetrically about zero, which for even ``n`` puts the samples
at half-integer multiples of ``dw``.  No bin then lands on ``w = 0`` or on
the integer multiples of ``dw`` where gate spectra jump, and the
pair :func:`analyze` / :func:`synthesize` is an exact inverse.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from .core import ComplexSpectrum, GridMismatch, RealSeries, UniformFreqGrid, UniformTimeGrid

SpectrumLike = Union[ComplexSpectrum, Callable[[np.ndarray], np.ndarray]]

CONVENTION = "psi(t) = (1/2pi) int Psi(w) exp(jwt) dw; symmetric half-bin dual grid; periodic trapezoid"
IMAG_RESIDUE_TOL = 1e-9


class NonHermitianSpectrum(ValueError):
    pass


def dual_freq_grid(grid: UniformTimeGrid) -> UniformFreqGrid:
    dw = 2 * math.pi / (grid.n * grid.dt)
    return UniformFreqGrid(-(grid.n - 1) / 2 * dw, dw, grid.n)


@dataclass(frozen=True)
class TransformPlan:
    time_grid: UniformTimeGrid
    normalization: str = "angular"

    def __post_init__(self):
        if self.normalization != "angular":
            raise ValueError(f"unsupported normalization {self.normalization!r}")

    @classmethod
    def default(cls) -> "TransformPlan":
        """``dt = 1/16`` s, ``n = 1024`` samples, ``t`` in ``[-32, 32)``."""
        return cls(UniformTimeGrid.centered(1 / 16, 1024))

    @classmethod
    def centered(cls, dt: float = 1 / 16, n: int = 1024) -> "TransformPlan":
        return cls(UniformTimeGrid.centered(dt, n))

    @property
    def freq_grid(self) -> UniformFreqGrid:
        return dual_freq_grid(self.time_grid)

    @property
    def t(self) -> np.ndarray:
        return self.time_grid.t

    @property
    def w(self) -> np.ndarray:
        return self.freq_grid.w


def _forward(x: np.ndarray, tg: UniformTimeGrid, fg: UniformFreqGrid) -> np.ndarray:
    k = np.arange(tg.n)
    pre = np.exp(-1j * fg.w0 * k * tg.dt)
    post = np.exp(-1j * fg.w * tg.t_start)
    return tg.dt * post * np.fft.fft(x * pre)


def _inverse(X: np.ndarray, tg: UniformTimeGrid, fg: UniformFreqGrid) -> np.ndarray:
    k = np.arange(tg.n)
    pre = np.exp(1j * fg.w * tg.t_start)
    post = np.exp(1j * fg.w0 * k * tg.dt)
    return post * np.fft.ifft(X * pre) / tg.dt


def _real_part(x: np.ndarray, bound: float) -> np.ndarray:
    # bound: sum |X| dw / 2pi, an upper bound on |x| that keeps the test
    # meaningful when the output itself is numerically zero
    peak = float(np.max(np.abs(x))) if x.size else 0.0
    if peak == 0.0:
        return np.zeros(x.shape)
    residue = float(np.max(np.abs(x.imag)))
    if residue > IMAG_RESIDUE_TOL * max(peak, 1e-3 * bound):
        raise NonHermitianSpectrum(
            f"non-Hermitian spectrum: imaginary residue {residue:.3g} vs peak {peak:.3g}"
        )
    return x.real.copy()


def _bound(X: np.ndarray, fg: UniformFreqGrid) -> float:
    return float(np.sum(np.abs(X)) * fg.dw / (2 * math.pi))


def sample_spectrum(spectrum: Callable[[np.ndarray], np.ndarray], plan: TransformPlan) -> ComplexSpectrum:
    fg = plan.freq_grid
    return ComplexSpectrum(fg, np.asarray(spectrum(fg.w), dtype=complex))


def synthesize(spectrum: SpectrumLike, plan: TransformPlan, oversample: int = 1) -> RealSeries:
    """Inverse transform onto ``plan.time_grid``.

    ``spectrum`` is either a sampled :class:`ComplexSpectrum` on the plan's
    dual grid or a callable evaluated there.  For a callable, ``oversample``
    refines the frequency quadrature by that factor, pushing the time-domain
    alias images ``oversample`` windows away; the default of 1 keeps
    synthesize/analyze an exact inverse pair.
    """
    tg = plan.time_grid
    if isinstance(spectrum, ComplexSpectrum):
        if spectrum.grid != plan.freq_grid:
            raise GridMismatch("spectrum grid is not the plan's dual grid")
        if oversample != 1:
            raise ValueError("oversampling needs a spectrum evaluator, not samples")
        X = spectrum.samples
        x = _inverse(X, tg, plan.freq_grid)
        return RealSeries(tg, _real_part(x, _bound(X, plan.freq_grid)))

    if oversample < 1:
        raise ValueError("oversample must be >= 1")
    fine_tg = UniformTimeGrid(tg.t_start, tg.dt, tg.n * oversample)
    fine_fg = dual_freq_grid(fine_tg)
    X = np.asarray(spectrum(fine_fg.w), dtype=complex)
    x = _inverse(X, fine_tg, fine_fg)[: tg.n]
    return RealSeries(tg, _real_part(x, _bound(X, fine_fg)))


def hermitian_inverse(spectrum: ComplexSpectrum, plan: TransformPlan) -> RealSeries:
    """Inverse transform of a spectrum known to be Hermitian, e.g. a
    symmetric gate applied to :func:`analyze` output; no residue check."""
    if spectrum.grid != plan.freq_grid:
        raise GridMismatch("spectrum grid is not the plan's dual grid")
    x = _inverse(spectrum.samples, plan.time_grid, plan.freq_grid)
    return RealSeries(plan.time_grid, x.real)


def complex_inverse(spectrum: ComplexSpectrum, plan: TransformPlan) -> np.ndarray:
    """Inverse transform without taking the real part (analytic signals)."""
    if spectrum.grid != plan.freq_grid:
        raise GridMismatch("spectrum grid is not the plan's dual grid")
    return _inverse(spectrum.samples, plan.time_grid, plan.freq_grid)


def analyze(series: RealSeries, plan: TransformPlan) -> ComplexSpectrum:
    if series.grid != plan.time_grid:
        raise GridMismatch("series grid does not match the plan")
    fg = plan.freq_grid
    return ComplexSpectrum(fg, _forward(series.samples, plan.time_grid, fg))


def inner_product(a: RealSeries, b: RealSeries) -> float:
    """Trapezoidal ``integral a(t) b(t) dt`` over one period of the grid."""
    if a.grid != b.grid:
        raise GridMismatch("inner product of series on different grids")
    return float(np.dot(a.samples, b.samples) * a.grid.dt)


def spectral_inner_product(A: ComplexSpectrum, B: ComplexSpectrum) -> float:
    """``(1/2pi) * sum Re{A conj(B)} dw``; equals :func:`inner_product` by Parseval."""
    if A.grid != B.grid:
        raise GridMismatch("inner product of spectra on different grids")
    return float(np.sum((A.samples * np.conj(B.samples)).real) * A.grid.dw / (2 * math.pi))


def l2_norm(x: RealSeries) -> float:
    return math.sqrt(max(inner_product(x, x), 0.0))
