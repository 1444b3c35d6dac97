"""Wavelet families: closed-form spectra, the real Morlet, Daubechies cascade.

The module-level spectrum functions return the formulas exactly as they
are usually quoted.  Shannon is quoted in the angular convention used by
:mod:`kotelwave.transform`; Meyer and the two "equivalent" bank spectra
carry ``1/sqrt(2pi)`` amplitudes, i.e. they are quoted in the unitary
convention.  :class:`WaveletFamily` lifts every family into the library
convention (a factor ``sqrt(2pi)`` for the unitary-quoted ones) so that
Shannon and Meyer both come out with unit energy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .core import BandSupport, RealSeries, UniformTimeGrid

SQRT_2PI = math.sqrt(2 * math.pi)
MORLET_W0 = math.pi * math.sqrt(2 / math.log(2))
"""Real Morlet carrier, ``pi*sqrt(2/ln 2)`` rad/s (``f0 = 1/sqrt(2 ln 2)`` Hz)."""

ALPHA_MAX = 1 / 3


class TapValidationError(ValueError):
    """Lowpass taps fail the orthonormal quadrature-mirror conditions."""


def gate(x):
    """Standard gate: 1 for ``|x| < 1/2``, else 0."""
    return np.where(np.abs(x) < 0.5, 1.0, 0.0)


def nu_ramp(x):
    """Clamp ``x`` to ``[0, 1]``."""
    return np.clip(x, 0.0, 1.0)


def cas(x):
    """Hartley's cas function, ``cos(x) + sin(x)``."""
    return np.cos(x) + np.sin(x)


def shannon_spectrum(w):
    w = np.asarray(w, dtype=float)
    out = gate((w - 1.5 * math.pi) / math.pi) + gate((w + 1.5 * math.pi) / math.pi)
    return out.astype(complex)


def _meyer_sin_branch(a):
    return np.sin(math.pi / 2 * nu_ramp(3 * a / (2 * math.pi) - 1))


def _meyer_cos_branch(a):
    return np.cos(math.pi / 2 * nu_ramp(3 * a / (4 * math.pi) - 1))


def meyer_spectrum(w):
    """Meyer wavelet spectrum with the delay ``exp(-jw/2)`` as an overall factor.

    Supported on ``2pi/3 <= |w| <= 8pi/3``; the sin and cos branches meet at
    ``|w| = 4pi/3`` where both equal one.
    """
    w = np.asarray(w, dtype=float)
    a = np.abs(w)
    mag = np.where(
        (a >= 2 * math.pi / 3) & (a <= 4 * math.pi / 3),
        _meyer_sin_branch(a),
        np.where((a > 4 * math.pi / 3) & (a <= 8 * math.pi / 3), _meyer_cos_branch(a), 0.0),
    )
    return mag / SQRT_2PI * np.exp(-0.5j * w)


def meyer_equivalent_spectrum(w):
    """Meyer bank spectrum with adjacent-scale overlaps merged into one band.

    The cos branch of one scale and the sin branch of the next share the
    argument ``nu(3|w|/(4pi) - 1)`` on ``[4pi/3, 8pi/3]``; their sum is a cas.
    """
    w = np.asarray(w, dtype=float)
    a = np.abs(w)
    inside = (a >= 4 * math.pi / 3) & (a <= 8 * math.pi / 3)
    mag = np.where(inside, cas(math.pi / 2 * nu_ramp(3 * a / (4 * math.pi) - 1)), 0.0)
    return mag / SQRT_2PI * np.exp(-0.5j * w)


def check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not 0 <= alpha <= ALPHA_MAX:
        raise ValueError(f"roll-off alpha must lie in [0, 1/3], got {alpha}")
    return alpha


def deoliveira_equivalent_spectrum(w, alpha: float):
    """Equivalent de Oliveira bank spectrum, real and even in ``w``.

    Flat at ``2/sqrt(2pi)`` on ``[pi(1+a), 2pi(1-a)]``, then
    ``cos((|w| - 2pi(1-a)) / (8a))`` down to zero at ``2pi(1+a)``.
    """
    alpha = check_alpha(alpha)
    w = np.asarray(w, dtype=float)
    a = np.abs(w)
    lo = math.pi * (1 + alpha)
    knee = 2 * math.pi * (1 - alpha)
    hi = 2 * math.pi * (1 + alpha)
    amp = 2 / SQRT_2PI
    if alpha == 0:
        mag = np.where((a >= lo) & (a <= hi), amp, 0.0)
    else:
        roll = amp * np.cos((a - knee) / (8 * alpha))
        mag = np.where(
            (a >= lo) & (a <= knee), amp, np.where((a > knee) & (a <= hi), roll, 0.0)
        )
    return mag.astype(complex)


def morlet_time(t):
    """Real Morlet, ``exp(-t^2) cos(pi sqrt(2/ln2) t)``."""
    t = np.asarray(t, dtype=float)
    return np.exp(-t * t) * np.cos(MORLET_W0 * t)


def morlet_spectrum(w):
    """Fourier transform of :func:`morlet_time` (angular convention)."""
    w = np.asarray(w, dtype=float)
    g = math.sqrt(math.pi) / 2
    return (g * (np.exp(-((w - MORLET_W0) ** 2) / 4) + np.exp(-((w + MORLET_W0) ** 2) / 4))).astype(complex)


# -- Daubechies ------------------------------------------------------------


def validate_taps(h, tol: float = 1e-10) -> np.ndarray:
    h = np.asarray(h, dtype=float)
    if h.ndim != 1 or len(h) < 4 or len(h) % 2:
        raise TapValidationError(f"need an even number (>= 4) of taps, got {h.size}")
    if abs(h.sum() - math.sqrt(2)) > tol:
        raise TapValidationError(f"taps sum to {h.sum():.15g}, expected sqrt(2)")
    for shift in range(0, len(h), 2):
        target = 1.0 if shift == 0 else 0.0
        acc = float(np.dot(h[shift:], h[: len(h) - shift]))
        if abs(acc - target) > tol:
            raise TapValidationError(
                f"even-shift orthonormality fails at shift {shift}: {acc:.3g}"
            )
    return h


def highpass_from_lowpass(h) -> np.ndarray:
    """Alternating flip ``g_k = (-1)^k h_{N-1-k}``."""
    h = np.asarray(h, dtype=float)
    return h[::-1] * (-1.0) ** np.arange(len(h))


def daubechies_taps(vanishing_moments: int) -> np.ndarray:
    """Minimum-phase Daubechies lowpass taps by spectral factorisation.

    ``vanishing_moments=4`` gives the 8-tap set usually called db4.
    """
    p = int(vanishing_moments)
    if p < 2:
        raise ValueError("need at least 2 vanishing moments")
    # P(y) = sum C(p-1+k, k) y^k with y = (1 - cos w)/2; roots in z via
    # y = (2 - z - 1/z)/4, keep those inside the unit circle.
    q = np.array([math.comb(p - 1 + k, k) for k in range(p)], dtype=float)
    y_roots = np.roots(q[::-1])
    z_roots = []
    for y in y_roots:
        # z^2 - (2 - 4y) z + 1 = 0
        pair = np.roots([1.0, -(2 - 4 * y), 1.0])
        z_roots.append(pair[np.argmin(np.abs(pair))])
    poly = np.poly(z_roots)
    for _ in range(p):
        poly = np.convolve(poly, [1.0, 1.0])
    h = np.real(poly)
    h = h * math.sqrt(2) / h.sum()
    return validate_taps(h[::-1] if abs(h[-1]) > abs(h[0]) else h, tol=1e-9)


def load_taps(path) -> np.ndarray:
    """Read taps from a text file, one decimal number per line.

    Blank lines and ``#`` comments are ignored.  The taps are validated.
    """
    values = []
    for line in Path(path).read_text().splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            values.append(float(line))
    return validate_taps(values)


def daubechies_cascade(lowpass_taps, levels: int = 10) -> tuple[RealSeries, RealSeries]:
    """Scaling function and wavelet by iterated two-scale refinement.

    Starts from the box on ``[0, 1)`` and applies
    ``phi <- sqrt(2) sum h_k phi(2t - k)`` ``levels`` times; the last
    refinement is done with the highpass taps to obtain ``psi``.  Samples
    are cell values on the dyadic grid of step ``2**-levels`` starting at 0.
    """
    h = validate_taps(lowpass_taps)
    if levels < 6:
        raise ValueError("cascade needs levels >= 6")
    g = highpass_from_lowpass(h)
    N = len(h)

    def refine(cells, taps, i):
        # cells hold a function constant on steps of 2**-i over [0, N-1)
        up = np.zeros((N - 1) * 2**i + 1)
        up[:: 2**i] = taps
        return math.sqrt(2) * np.convolve(cells, up)

    cells = np.zeros(N - 1)
    cells[0] = 1.0
    for i in range(levels - 1):
        cells = refine(cells, h, i)
    phi = refine(cells, h, levels - 1)
    psi = refine(cells, g, levels - 1)
    grid = UniformTimeGrid(0.0, 2.0**-levels, len(phi))
    return RealSeries(grid, phi), RealSeries(grid, psi)


def daubechies_spectrum(w, lowpass_taps, depth: int = 40):
    """Wavelet spectrum ``m1(w/2) prod_i m0(w/2^(i+1))`` truncated at ``depth``."""
    h = np.asarray(lowpass_taps, dtype=float)
    g = highpass_from_lowpass(h)
    w = np.asarray(w, dtype=float)
    k = np.arange(len(h))

    def m(taps, xi):
        return np.exp(-1j * np.multiply.outer(xi, k)) @ taps / math.sqrt(2)

    phi_half = np.ones(w.shape, dtype=complex)
    for i in range(2, depth + 2):
        phi_half = phi_half * m(h, w / 2**i)
    return m(g, w / 2) * phi_half


def resample(series: RealSeries, t) -> np.ndarray:
    """Linear interpolation of ``series`` at times ``t``; zero outside its span."""
    return np.interp(t, series.t, series.samples, left=0.0, right=0.0)


FAMILY_NAMES = (
    "shannon",
    "meyer",
    "morlet",
    "daubechies",
    "meyer_equivalent",
    "deoliveira_equivalent",
)
_ALIASES = {
    "meyer_equiv": "meyer_equivalent",
    "deoliveira_equiv": "deoliveira_equivalent",
    "deoliveira": "deoliveira_equivalent",
    "db": "daubechies",
}


@dataclass(frozen=True)
class WaveletFamily:
    """A wavelet with everything the analysis modules need to know about it.

    ``alpha`` is the de Oliveira roll-off; ``taps`` the Daubechies lowpass
    filter (db4 when omitted).
    """

    name: str
    alpha: float | None = None
    taps: tuple[float, ...] | None = None
    cascade_levels: int = 10

    def __post_init__(self):
        if self.name not in FAMILY_NAMES:
            raise ValueError(f"unknown wavelet family {self.name!r}")
        if self.name == "deoliveira_equivalent":
            if self.alpha is None:
                raise ValueError("deoliveira_equivalent needs a roll-off alpha")
            object.__setattr__(self, "alpha", check_alpha(self.alpha))
        if self.name == "daubechies":
            taps = daubechies_taps(4) if self.taps is None else validate_taps(self.taps)
            object.__setattr__(self, "taps", tuple(float(x) for x in taps))

    @classmethod
    def from_name(cls, name: str, alpha: float | None = None, taps=None) -> "WaveletFamily":
        key = name.lower()
        if key.startswith("db") and key[2:].isdigit():
            return cls("daubechies", taps=tuple(daubechies_taps(int(key[2:]))))
        key = _ALIASES.get(key, key)
        if key == "deoliveira_equivalent" and alpha is None:
            alpha = 0.0
        return cls(key, alpha=alpha if key == "deoliveira_equivalent" else None, taps=taps)

    @property
    def label(self) -> str:
        if self.name == "deoliveira_equivalent":
            return f"deoliveira_equivalent(alpha={self.alpha:g})"
        if self.name == "daubechies":
            return f"daubechies({len(self.taps)} taps)"
        return self.name

    @property
    def band_limited(self) -> bool:
        return self.name not in ("morlet", "daubechies")

    def spectrum(self, w):
        """Spectrum in the library (angular) convention."""
        if self.name == "shannon":
            return shannon_spectrum(w)
        if self.name == "meyer":
            return SQRT_2PI * meyer_spectrum(w)
        if self.name == "meyer_equivalent":
            return SQRT_2PI * meyer_equivalent_spectrum(w)
        if self.name == "deoliveira_equivalent":
            return SQRT_2PI * deoliveira_equivalent_spectrum(w, self.alpha)
        if self.name == "morlet":
            return morlet_spectrum(w)
        return daubechies_spectrum(w, self.taps)

    def nominal_band(self) -> BandSupport | None:
        """Exact spectral support for the compactly supported families."""
        pi = math.pi
        if self.name == "shannon":
            return BandSupport(pi, 2 * pi)
        if self.name == "meyer":
            return BandSupport(2 * pi / 3, 8 * pi / 3)
        if self.name == "meyer_equivalent":
            return BandSupport(4 * pi / 3, 8 * pi / 3)
        if self.name == "deoliveira_equivalent":
            return BandSupport(pi * (1 + self.alpha), 2 * pi * (1 + self.alpha))
        return None

    def series(self, plan, oversample: int = 1) -> RealSeries:
        """Sample the wavelet on ``plan.time_grid``.

        Band-limited families are synthesised from their spectra; the Morlet
        is sampled directly and Daubechies comes from the cascade.
        """
        from .transform import synthesize

        if self.name == "morlet":
            return RealSeries(plan.time_grid, morlet_time(plan.t))
        if self.name == "daubechies":
            _, psi = daubechies_cascade(self.taps, self.cascade_levels)
            return RealSeries(plan.time_grid, resample(psi, plan.t))
        return synthesize(self.spectrum, plan, oversample=oversample)
