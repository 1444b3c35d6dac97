"""Dyadic constant-Q banks: overlap geometry, orthogonality tests, band tables.

Channel ``j`` is the mother wavelet at scale ``a = 2**-j``, i.e. the support
``[2^j w_m, 2^j w_M]``; bands grow upward with ``j``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .core import BandSupport, ComplexSpectrum, NyquistError, band_from_spectrum
from .transform import TransformPlan, spectral_inner_product
from .wavelets import WaveletFamily

PROP1_RTOL = 1e-12


@dataclass(frozen=True)
class BankChannel:
    j: int
    support: BandSupport

    @property
    def q_factor(self) -> float:
        return self.support.w_mid / self.support.bandwidth_w


@dataclass(frozen=True)
class OverlapReport:
    pairs: tuple[tuple[int, int], ...]
    intervals: tuple[tuple[float, float], ...]

    def __bool__(self) -> bool:
        return bool(self.pairs)


def prop1_orthogonality(band: BandSupport) -> bool:
    """``w_M <= 3 w_m`` (boundary included)."""
    return band.w_M <= 3 * band.w_m * (1 + PROP1_RTOL)


def overlap_interval(band: BandSupport) -> tuple[float, float] | None:
    """``(w_m, (w_M - w_m)/2)`` when the 3x test fails.

    This is the interval formula as it is usually stated; it is *not* the
    geometric intersection of neighbouring channels, see
    :func:`adjacent_channel_overlap`.
    """
    if prop1_orthogonality(band):
        return None
    return (band.w_m, (band.w_M - band.w_m) / 2)


def adjacent_channel_overlap(band: BandSupport) -> tuple[float, float] | None:
    """Intersection of ``[w_m, w_M]`` with ``[2w_m, 2w_M]``; None when it has no length."""
    if band.w_M <= 2 * band.w_m:
        return None
    return (2 * band.w_m, band.w_M)


def _check_nyquist(top: float, level: int, nyquist_w: float | None):
    if nyquist_w is not None and top >= nyquist_w:
        raise NyquistError(
            f"level {level}: upper edge {top:.6g} rad/s reaches Nyquist {nyquist_w:.6g} rad/s"
        )


def build_bank(band: BandSupport, levels: int, nyquist_w: float | None = None) -> list[BankChannel]:
    if levels < 1:
        raise ValueError("levels must be >= 1")
    out = []
    for j in range(levels):
        ch = BankChannel(j, band.scaled(2.0**j))
        _check_nyquist(ch.support.w_M, j, nyquist_w)
        out.append(ch)
    return out


def fdm_bank(band: BandSupport, levels: int, nyquist_w: float | None = None) -> list[BandSupport]:
    """Disjoint bands: channel ``j`` clipped at its upper neighbour's lower edge.

    Level ``j`` occupies ``[2^j max(w_m, w_M/2), 2^j w_M]``.  When
    ``w_M < 2 w_m`` the channels never touch and the result keeps the gaps.
    """
    lo = max(band.w_m, band.w_M / 2)
    return [
        BandSupport(2.0**j * lo, 2.0**j * band.w_M)
        for j, _ in enumerate(build_bank(band, levels, nyquist_w))
    ]


def overlap_report(channels: Sequence[BankChannel]) -> OverlapReport:
    pairs, intervals = [], []
    for a in range(len(channels)):
        for b in range(a + 1, len(channels)):
            sa, sb = channels[a].support, channels[b].support
            lo, hi = max(sa.w_m, sb.w_m), min(sa.w_M, sb.w_M)
            if hi > lo:
                pairs.append((channels[a].j, channels[b].j))
                intervals.append((lo, hi))
    return OverlapReport(tuple(pairs), tuple(intervals))


# -- Gram matrices -----------------------------------------------------------


@dataclass(frozen=True, eq=False)
class GramMatrix:
    index: tuple[tuple[int, int], ...]
    """``(scale j, shift k)`` for each row/column."""
    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=float)
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    def off_diagonal(self) -> np.ndarray:
        return self.matrix - np.diag(np.diag(self.matrix))

    @property
    def max_off_diagonal(self) -> float:
        return float(np.max(np.abs(self.off_diagonal()))) if len(self.index) > 1 else 0.0

    @property
    def max_cross_scale(self) -> float:
        js = np.array([j for j, _ in self.index])
        mask = js[:, None] != js[None, :]
        return float(np.max(np.abs(self.matrix[mask]))) if mask.any() else 0.0

    @property
    def max_diagonal_error(self) -> float:
        return float(np.max(np.abs(np.diag(self.matrix) - 1)))


def family_band(family: WaveletFamily, plan: TransformPlan, energy_fraction: float = 0.999) -> BandSupport:
    band = family.nominal_band()
    if band is None:
        fg = plan.freq_grid
        band = band_from_spectrum(ComplexSpectrum(fg, family.spectrum(fg.w)), energy_fraction)
    return band


def daughter_spectrum(family: WaveletFamily, j: int, k: int, w: np.ndarray) -> np.ndarray:
    """Spectrum of ``2^(j/2) psi(2^j t - k)``: ``sqrt(a) Psi(a w) exp(-j w k a)``, ``a = 2^-j``."""
    a = 2.0**-j
    return math.sqrt(a) * family.spectrum(a * w) * np.exp(-1j * w * k * a)


def gram_matrix(
    family: WaveletFamily,
    scales: Iterable[int] = (0, 1),
    shifts: Iterable[int] = range(-2, 3),
    plan: TransformPlan | None = None,
) -> GramMatrix:
    """Inner products of scaled/shifted copies, computed by Parseval."""
    plan = plan or TransformPlan.default()
    scales = sorted(set(int(j) for j in scales))
    shifts = sorted(set(int(k) for k in shifts))
    band = family_band(family, plan)
    nyq = plan.time_grid.nyquist_w
    for j in scales:
        _check_nyquist(2.0**j * band.w_M, j, nyq)
    fg = plan.freq_grid
    w = fg.w
    index = tuple((j, k) for j in scales for k in shifts)
    spectra = [ComplexSpectrum(fg, daughter_spectrum(family, j, k, w)) for j, k in index]
    n = len(index)
    G = np.empty((n, n))
    for a in range(n):
        for b in range(a, n):
            G[a, b] = G[b, a] = spectral_inner_product(spectra[a], spectra[b])
    return GramMatrix(index, G)


# -- exact band tables -----------------------------------------------------------


@dataclass(frozen=True)
class PiLinear:
    """``(const + slope * alpha) * pi`` with rational coefficients."""

    const: Fraction
    slope: Fraction = Fraction(0)

    def __add__(self, other: "PiLinear") -> "PiLinear":
        return PiLinear(self.const + other.const, self.slope + other.slope)

    def __sub__(self, other: "PiLinear") -> "PiLinear":
        return PiLinear(self.const - other.const, self.slope - other.slope)

    def __mul__(self, c) -> "PiLinear":
        c = Fraction(c)
        return PiLinear(self.const * c, self.slope * c)

    __rmul__ = __mul__

    def value(self, alpha: float | None = None) -> float:
        if self.slope and alpha is None:
            raise ValueError("expression depends on alpha")
        return math.pi * (float(self.const) + float(self.slope) * (alpha or 0.0))

    def ge(self, other: "PiLinear") -> bool:
        """Comparison valid for every alpha in ``[0, 1/3]`` (linear, so check the ends)."""
        d = self - other
        ends = (d.const, d.const + d.slope / 3)
        if all(x >= 0 for x in ends):
            return True
        if all(x <= 0 for x in ends):
            return False
        raise ValueError("ordering depends on alpha")

    def format(self, style: str = "prefix") -> str:
        """``2π(1+α)`` (prefix) or ``(1+α) 2π`` (suffix)."""
        if self.slope == 0:
            return pi_str(self.const)
        if self.const == 0:
            return f"{_alpha_term(self.slope)}π"
        k = self.slope / self.const
        sign = "+" if k > 0 else "-"
        term = f"(1{sign}{_alpha_term(abs(k))})"
        return f"{pi_str(self.const)}{term}" if style == "prefix" else f"{term} {pi_str(self.const)}"


def _alpha_term(k: Fraction) -> str:
    num = "" if abs(k.numerator) == 1 else str(abs(k.numerator))
    sign = "-" if k < 0 else ""
    den = "" if k.denominator == 1 else f"/{k.denominator}"
    return f"{sign}{num}α{den}"


def pi_str(c: Fraction) -> str:
    """Rational multiple of π: ``π``, ``2π``, ``4π/3``, ``-π/2``, ``0``."""
    c = Fraction(c)
    if c == 0:
        return "0"
    num = "" if abs(c.numerator) == 1 else str(abs(c.numerator))
    sign = "-" if c < 0 else ""
    den = "" if c.denominator == 1 else f"/{c.denominator}"
    return f"{sign}{num}π{den}"


def interval_str(lo: PiLinear, hi: PiLinear) -> str:
    return f"[{lo.format()},{hi.format()}]"


F = Fraction
EXACT_BANDS = {
    "shannon": (PiLinear(F(1)), PiLinear(F(2))),
    "meyer": (PiLinear(F(2, 3)), PiLinear(F(8, 3))),
    "meyer_equivalent": (PiLinear(F(4, 3)), PiLinear(F(8, 3))),
    # overlapping bank of the (original) de Oliveira wavelet
    "deoliveira": (PiLinear(F(1), F(-1)), PiLinear(F(2), F(2))),
    "deoliveira_equivalent": (PiLinear(F(1), F(1)), PiLinear(F(2), F(2))),
}
# bandwidth column in the published de Oliveira table: (1+2α)·2^j·π
_PRINTED_DEOLIVEIRA_WIDTH = PiLinear(F(1), F(2))


@dataclass(frozen=True)
class BandRow:
    level: int
    ref: PiLinear
    lo: PiLinear
    hi: PiLinear
    band: PiLinear
    fdm_lo: PiLinear
    fdm_hi: PiLinear
    fdm_band: PiLinear
    printed_band: PiLinear | None = None

    @property
    def endpoint_band(self) -> PiLinear:
        return self.hi - self.lo

    @property
    def band_mismatch(self) -> bool:
        return self.printed_band is not None and self.printed_band != self.endpoint_band

    def strings(self) -> dict[str, str]:
        out = {
            "ref": self.ref.format(),
            "range": interval_str(self.lo, self.hi),
            "band": self.band.format("suffix"),
            "fdm_range": interval_str(self.fdm_lo, self.fdm_hi),
            "fdm_band": self.fdm_band.format("suffix"),
        }
        if self.printed_band is not None:
            out["endpoint_band"] = self.endpoint_band.format("suffix")
        return out

    def numbers(self, alpha: float | None = None) -> dict[str, float]:
        return {
            "ref": self.ref.value(alpha),
            "lo": self.lo.value(alpha),
            "hi": self.hi.value(alpha),
            "band": self.band.value(alpha),
            "endpoint_band": self.endpoint_band.value(alpha),
            "fdm_lo": self.fdm_lo.value(alpha),
            "fdm_hi": self.fdm_hi.value(alpha),
            "fdm_band": self.fdm_band.value(alpha),
        }


@dataclass(frozen=True)
class BandTable:
    family: str
    alpha: float | None
    rows: tuple[BandRow, ...] = field(default=())


def band_table(family: str, levels: int = 4, alpha: float | None = None) -> BandTable:
    """Exact per-level bands (overlapping and FDM) as multiples of π.

    ``alpha=None`` keeps the de Oliveira roll-off symbolic.  The reference
    frequency is the sin/cos junction ``2 w_m`` for Meyer and the band
    midpoint otherwise.  For de Oliveira the published bandwidth
    ``(1+2α) 2^j π`` is kept alongside the endpoint difference.
    """
    key = family.lower()
    if key not in EXACT_BANDS:
        raise ValueError(f"no exact band table for family {family!r}")
    lo0, hi0 = EXACT_BANDS[key]
    rows = []
    for j in range(levels):
        s = 2**j
        lo, hi = lo0 * s, hi0 * s
        ref = lo * 2 if key == "meyer" else (lo + hi) * F(1, 2)
        half_hi = hi * F(1, 2)
        fdm_lo = lo if lo.ge(half_hi) else half_hi
        printed = _PRINTED_DEOLIVEIRA_WIDTH * s if key == "deoliveira" else None
        rows.append(
            BandRow(
                j, ref, lo, hi, printed if printed is not None else hi - lo,
                fdm_lo, hi, hi - fdm_lo, printed,
            )
        )
    return BandTable(key, alpha, tuple(rows))
