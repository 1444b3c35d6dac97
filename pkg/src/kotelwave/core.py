"""Value types shared by every analysis module.

Signals live on uniform grids.  Time grids are plain ``t_start + k*dt``
lattices; frequency grids are the Fourier duals produced by
:mod:`kotelwave.transform`, which sit half a bin off zero so that the grid
is exactly symmetric (``w_m = (m + 1/2) dw``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np


class NoSpectralContent(ValueError):
    """Raised when an operation needs energy and the input has none."""


class GridMismatch(ValueError):
    """Raised when two signals that must share a grid do not."""


class NyquistError(ValueError):
    """Raised when a band or carrier exceeds the working Nyquist limit."""


def _frozen(values, dtype) -> np.ndarray:
    arr = np.array(values, dtype=dtype)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class UniformTimeGrid:
    t_start: float
    dt: float
    n: int

    def __post_init__(self):
        if not self.dt > 0:
            raise ValueError(f"dt must be positive, got {self.dt}")
        if self.n < 2:
            raise ValueError(f"need at least 2 samples, got {self.n}")

    @classmethod
    def centered(cls, dt: float = 1 / 16, n: int = 1024) -> "UniformTimeGrid":
        """Grid of ``n`` samples at spacing ``dt`` covering ``[-n*dt/2, n*dt/2)``."""
        return cls(-n * dt / 2, dt, n)

    @property
    def t(self) -> np.ndarray:
        return self.t_start + self.dt * np.arange(self.n)

    @property
    def duration(self) -> float:
        return self.n * self.dt

    @property
    def nyquist_w(self) -> float:
        return math.pi / self.dt


@dataclass(frozen=True)
class UniformFreqGrid:
    """Ascending angular-frequency grid ``w0 + m*dw`` for ``m = 0..n-1``."""

    w0: float
    dw: float
    n: int

    def __post_init__(self):
        if not self.dw > 0:
            raise ValueError(f"dw must be positive, got {self.dw}")

    @property
    def w(self) -> np.ndarray:
        return self.w0 + self.dw * np.arange(self.n)

    def index_of(self, w: float) -> float:
        """Fractional index of frequency ``w`` on the grid."""
        return (w - self.w0) / self.dw


@dataclass(frozen=True, eq=False)
class RealSeries:
    grid: UniformTimeGrid
    samples: np.ndarray

    def __post_init__(self):
        arr = _frozen(self.samples, float)
        if arr.shape != (self.grid.n,):
            raise ValueError(f"expected {self.grid.n} samples, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("samples must be finite")
        object.__setattr__(self, "samples", arr)

    @property
    def t(self) -> np.ndarray:
        return self.grid.t

    def __len__(self) -> int:
        return self.grid.n


@dataclass(frozen=True, eq=False)
class ComplexSpectrum:
    grid: UniformFreqGrid
    samples: np.ndarray

    def __post_init__(self):
        arr = _frozen(self.samples, complex)
        if arr.shape != (self.grid.n,):
            raise ValueError(f"expected {self.grid.n} samples, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("samples must be finite")
        object.__setattr__(self, "samples", arr)

    @property
    def w(self) -> np.ndarray:
        return self.grid.w

    def energy(self) -> float:
        """``(1/2pi) * sum |X(w)|^2 dw``, i.e. the time-domain energy."""
        return float(np.sum(np.abs(self.samples) ** 2) * self.grid.dw / (2 * math.pi))


@dataclass(frozen=True)
class BandSupport:
    """Spectral confinement interval ``[w_m, w_M]`` in rad/s."""

    w_m: float
    w_M: float

    def __post_init__(self):
        if not (0 <= self.w_m < self.w_M):
            raise ValueError(f"need 0 <= w_m < w_M, got [{self.w_m}, {self.w_M}]")

    @property
    def bandwidth_w(self) -> float:
        return self.w_M - self.w_m

    @property
    def bandwidth_hz(self) -> float:
        return (self.w_M - self.w_m) / (2 * math.pi)

    @property
    def w_mid(self) -> float:
        return (self.w_m + self.w_M) / 2

    @property
    def cutoff_w(self) -> float:
        """Baseband cutoff: B/2 Hz, i.e. ``pi * B`` rad/s."""
        return math.pi * self.bandwidth_hz

    def scaled(self, c: float) -> "BandSupport":
        return BandSupport(c * self.w_m, c * self.w_M)

    def contains(self, w, tol: float = 0.0):
        a = np.abs(w)
        return (a >= self.w_m - tol) & (a <= self.w_M + tol)


@dataclass(frozen=True)
class BasebandPair:
    s_c: RealSeries
    s_s: RealSeries
    carrier_w: float
    cutoff_w: float
    warnings: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if self.s_c.grid != self.s_s.grid:
            raise GridMismatch("in-phase and quadrature components must share a grid")

    @property
    def grid(self) -> UniformTimeGrid:
        return self.s_c.grid


@dataclass(frozen=True)
class EnvelopePhase:
    envelope: RealSeries
    phase: RealSeries


def band_from_spectrum(spectrum: ComplexSpectrum, energy_fraction: float = 0.999) -> BandSupport:
    """Smallest positive-frequency band holding ``energy_fraction`` of the energy.

    Bins are treated as cells of width ``dw`` centred on the grid points; the
    returned edges are cell edges, so for a compactly supported spectrum
    sampled on a grid whose cell edges fall on the support edges the result
    is exact, and otherwise within one ``dw``.

    Among the narrowest candidates the one enclosing the most energy wins
    (so a symmetric peak gives a centred band); exact ties go to the lower
    ``w_m``.
    """
    if not 0 < energy_fraction <= 1:
        raise ValueError(f"energy_fraction must lie in (0, 1], got {energy_fraction}")
    w = spectrum.w
    pos = w > 0
    wp = w[pos]
    e = np.abs(spectrum.samples[pos]) ** 2
    total = float(e.sum())
    if not total > 0:
        raise NoSpectralContent("no spectral content")

    target = (energy_fraction - 1e-13) * total
    csum = np.concatenate(([0.0], np.cumsum(e)))
    best = None
    j = 0
    n = len(e)
    # two-pointer: for each left edge i, the smallest right edge j with enough energy
    for i in range(n):
        if e[i] == 0 and best is not None:
            continue
        j = max(j, i)
        while j < n and csum[j + 1] - csum[i] < target:
            j += 1
        if j == n:
            break
        width = j - i
        inside = csum[j + 1] - csum[i]
        if best is None or width < best[1] - best[0]:
            best, best_e = (i, j), inside
        elif width == best[1] - best[0] and inside > best_e * (1 + 1e-14):
            best, best_e = (i, j), inside
    i, j = best
    dw = spectrum.grid.dw
    lo = max(wp[i] - dw / 2, 0.0)
    return BandSupport(lo, wp[j] + dw / 2)
