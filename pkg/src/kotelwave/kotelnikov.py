"""Envelope/phase baseband representation of bandpass wavelets.

A wavelet confined to ``[w_m, w_M]`` is written ``e(t) cos(w_c t + theta(t))``
with ``e`` and ``theta`` limited to ``|w| <= pi*B`` (``B`` in Hz).  The
components are recovered by synchronous I/Q detection: mix with
``cos(w_c t)`` and ``sin(w_c t)``, ideal low-pass at ``pi*B``, then a
post-detection gain of 2 so that

    S_c = e cos(theta),    S_s = -e sin(theta),
    psi = S_c cos(w_c t) + S_s sin(w_c t).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core import (
    BandSupport,
    BasebandPair,
    ComplexSpectrum,
    EnvelopePhase,
    GridMismatch,
    NoSpectralContent,
    NyquistError,
    RealSeries,
    band_from_spectrum,
)
from .transform import TransformPlan, analyze, complex_inverse, hermitian_inverse

DETECTION_GAIN = 2.0
ENVELOPE_EPS = 1e-9
"""Relative envelope floor below which the phase is reported as 0."""
OUT_OF_BAND_TOL = 1e-3
_EDGE_SLACK = 1e-9


def _plan(series: RealSeries) -> TransformPlan:
    return TransformPlan(series.grid)


def _gate(w: np.ndarray, cutoff: float, dw: float) -> np.ndarray:
    # the cutoff bin itself is kept
    return (np.abs(w) <= cutoff + _EDGE_SLACK * dw).astype(float)


def out_of_band_fraction(spectrum: ComplexSpectrum, band: BandSupport) -> float:
    """Fraction of spectral energy outside ``[w_m, w_M]`` (both signs of ``w``)."""
    e = np.abs(spectrum.samples) ** 2
    total = e.sum()
    if total == 0:
        return 0.0
    inside = band.contains(spectrum.w, tol=_EDGE_SLACK * spectrum.grid.dw)
    return float(e[~inside].sum() / total)


def lowpass(series: RealSeries, cutoff_w: float) -> RealSeries:
    """Ideal low-pass by gating the dual-grid spectrum at ``|w| <= cutoff_w``."""
    plan = _plan(series)
    X = analyze(series, plan)
    Y = ComplexSpectrum(X.grid, X.samples * _gate(X.w, cutoff_w, X.grid.dw))
    return hermitian_inverse(Y, plan)


def demodulate(psi: RealSeries, band: BandSupport, carrier_w: float | None = None) -> BasebandPair:
    """Synchronous I/Q detection of ``psi`` at ``carrier_w`` (default: band midpoint)."""
    if carrier_w is None:
        carrier_w = band.w_mid
    nyq = psi.grid.nyquist_w
    if not 0 < carrier_w < nyq:
        raise NyquistError(f"carrier {carrier_w:.6g} rad/s outside (0, {nyq:.6g})")
    if band.w_M >= nyq:
        raise NyquistError(f"band edge {band.w_M:.6g} rad/s at or above Nyquist {nyq:.6g}")

    warnings = []
    oob = out_of_band_fraction(analyze(psi, _plan(psi)), band)
    if oob > OUT_OF_BAND_TOL * (1 + 1e-6):
        warnings.append(f"out-of-band energy fraction {oob:.3g} exceeds {OUT_OF_BAND_TOL:g}")

    cutoff = band.cutoff_w
    z = complex_baseband(psi, carrier_w, cutoff)
    return BasebandPair(
        RealSeries(psi.grid, z.real),
        RealSeries(psi.grid, -z.imag),
        float(carrier_w),
        float(cutoff),
        tuple(warnings),
    )


def mix(psi: RealSeries, carrier_w: float) -> tuple[RealSeries, RealSeries]:
    """Upper and lower detector branches, ``psi cos(w_c t)`` and ``psi sin(w_c t)``."""
    t = psi.t
    return (
        RealSeries(psi.grid, psi.samples * np.cos(carrier_w * t)),
        RealSeries(psi.grid, psi.samples * np.sin(carrier_w * t)),
    )


def complex_baseband(psi: RealSeries, carrier_w: float, cutoff_w: float) -> np.ndarray:
    """``S_c - j S_s = 2 LPF{psi exp(-j w_c t)}`` on the grid.

    The low-pass is applied before the frequency shift (the two commute in
    continuous time): the bins with ``|w - w_c| <= cutoff`` are kept and the
    result is shifted down by exactly ``w_c``.  This treats ``psi`` as its
    band-limited interpolant, so carriers that are not a multiple of ``dw``
    are handled without leakage.
    """
    plan = _plan(psi)
    X = analyze(psi, plan)
    keep = _gate(X.w - carrier_w, cutoff_w, X.grid.dw)
    passband = complex_inverse(ComplexSpectrum(X.grid, X.samples * keep), plan)
    return DETECTION_GAIN * passband * np.exp(-1j * carrier_w * psi.t)


def _shifted(spectrum, w: np.ndarray, shift: float) -> np.ndarray:
    """Evaluate ``Psi(w + shift)`` from samples or an evaluator."""
    if callable(spectrum):
        return np.asarray(spectrum(w + shift), dtype=complex)
    grid = spectrum.grid
    pos = grid.index_of(w + shift)
    steps = round(shift / grid.dw)
    inside = (pos > -0.5) & (pos < grid.n - 0.5)
    if abs(shift / grid.dw - steps) < 1e-9:
        idx = np.clip(np.rint(pos).astype(int), 0, grid.n - 1)
        return np.where(inside, spectrum.samples[idx], 0.0)
    # off-grid shift: linear interpolation between bins
    x = grid.w
    re = np.interp(w + shift, x, spectrum.samples.real, left=0.0, right=0.0)
    im = np.interp(w + shift, x, spectrum.samples.imag, left=0.0, right=0.0)
    return re + 1j * im


def baseband_spectra(
    spectrum: ComplexSpectrum | Callable,
    carrier_w: float,
    cutoff_w: float | None = None,
    grid=None,
) -> tuple[ComplexSpectrum, ComplexSpectrum]:
    """Frequency-domain I/Q components

        S_c(w) = Psi(w + w_c) + Psi(w - w_c)
        S_s(w) = j (Psi(w + w_c) - Psi(w - w_c))

    (the ``1/2`` of ideal mixing times the detection gain), kept on
    ``|w| <= cutoff_w``.  Without a cutoff the band is estimated from the
    spectrum at full energy.  An evaluator needs ``grid``.
    """
    if not carrier_w > 0:
        raise ValueError("carrier must be positive")
    if callable(spectrum):
        if grid is None:
            raise ValueError("a spectrum evaluator needs a frequency grid")
        sampled = ComplexSpectrum(grid, spectrum(grid.w))
    else:
        sampled = spectrum
        grid = spectrum.grid
    w = grid.w
    if cutoff_w is None:
        if not np.any(sampled.samples):
            cutoff_w = 0.0
        else:
            cutoff_w = band_from_spectrum(sampled, 1.0).cutoff_w
    up = _shifted(spectrum, w, carrier_w)
    down = _shifted(spectrum, w, -carrier_w)
    g = _gate(w, cutoff_w, grid.dw) * DETECTION_GAIN / 2
    return (
        ComplexSpectrum(grid, g * (up + down)),
        ComplexSpectrum(grid, g * 1j * (up - down)),
    )


def envelope_spectrum(s_c: ComplexSpectrum, s_s: ComplexSpectrum) -> ComplexSpectrum:
    """``Phi(w) = sqrt(|S_c(w)|^2 + |S_s(w)|^2)`` (real, non-negative)."""
    if s_c.grid != s_s.grid:
        raise GridMismatch("baseband spectra on different grids")
    return ComplexSpectrum(s_c.grid, np.hypot(np.abs(s_c.samples), np.abs(s_s.samples)))


def envelope_phase(pair: BasebandPair) -> EnvelopePhase:
    sc = pair.s_c.samples
    ss = pair.s_s.samples
    env = np.hypot(sc, ss)
    phase = np.arctan2(-ss, sc)
    phase = np.where(phase <= -math.pi, math.pi, phase)
    floor = ENVELOPE_EPS * env.max() if env.size else 0.0
    phase = np.where(env < floor, 0.0, phase)
    if not np.any(env):
        phase = np.zeros_like(env)
    return EnvelopePhase(RealSeries(pair.grid, env), RealSeries(pair.grid, phase))


def pair_from_envelope_phase(ep: EnvelopePhase, carrier_w: float, cutoff_w: float) -> BasebandPair:
    e = ep.envelope.samples
    th = ep.phase.samples
    grid = ep.envelope.grid
    return BasebandPair(
        RealSeries(grid, e * np.cos(th)), RealSeries(grid, -e * np.sin(th)), carrier_w, cutoff_w
    )


def reconstruct(pair: BasebandPair) -> RealSeries:
    """``S_c(t) cos(w_c t) + S_s(t) sin(w_c t)``."""
    t = pair.grid.t
    wc = pair.carrier_w
    return RealSeries(pair.grid, pair.s_c.samples * np.cos(wc * t) + pair.s_s.samples * np.sin(wc * t))


@dataclass(frozen=True)
class BandlimitReport:
    cutoff_w: float
    s_c_fraction: float
    s_s_fraction: float
    tolerance: float

    @property
    def satisfied(self) -> bool:
        return self.s_c_fraction < self.tolerance and self.s_s_fraction < self.tolerance


_NEGLIGIBLE = 1e-20


def _energy_split(series: RealSeries, cutoff: float) -> tuple[float, float]:
    X = analyze(series, _plan(series))
    e = np.abs(X.samples) ** 2
    return float(e.sum()), float(e[_gate(X.w, cutoff, X.grid.dw) == 0].sum())


def verify_bandlimit(pair: BasebandPair, tolerance: float = 1e-9) -> BandlimitReport:
    """Energy fractions of ``S_c`` and ``S_s`` above the cutoff ``pi*B``.

    A component carrying less than ``1e-20`` of the pair's energy (for
    instance the rounding-level ``S_s`` of an even wavelet) reports 0.
    """
    split = [_energy_split(s, pair.cutoff_w) for s in (pair.s_c, pair.s_s)]
    grand = sum(tot for tot, _ in split)
    fracs = [0.0 if tot <= _NEGLIGIBLE * grand else above / tot for tot, above in split]
    return BandlimitReport(pair.cutoff_w, fracs[0], fracs[1], tolerance)


def peak_carrier(spectrum: ComplexSpectrum) -> float:
    """Positive frequency of the spectral magnitude peak."""
    w = spectrum.w
    pos = w > 0
    mag = np.abs(spectrum.samples[pos])
    if not np.any(mag):
        raise NoSpectralContent("no spectral content")
    return float(w[pos][np.argmax(mag)])


def relative_l2_error(x: RealSeries, ref: RealSeries) -> float:
    if x.grid != ref.grid:
        raise GridMismatch("series on different grids")
    denom = np.linalg.norm(ref.samples)
    if denom == 0:
        return float(np.linalg.norm(x.samples))
    return float(np.linalg.norm(x.samples - ref.samples) / denom)
