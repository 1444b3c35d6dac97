"""Wavelet spectra and waveforms on the default grid.

Samples each family, reports its energy, its spectral band and a few
waveform landmarks.  Run from anywhere: ``python3 demos/01_spectra.py``.
"""

import math

import numpy as np

from kotelwave import TransformPlan, WaveletFamily, analyze, band_from_spectrum, l2_norm
from kotelwave.wavelets import meyer_spectrum, shannon_spectrum

plan = TransformPlan.default()
print(f"grid: dt = {plan.time_grid.dt} s, n = {plan.time_grid.n}, dw = {plan.freq_grid.dw:.5f} rad/s")

# The quoted formulas, untouched.  Meyer carries a 1/sqrt(2pi) amplitude.
for w in (math.pi, 4 * math.pi / 3, 2 * math.pi):
    print(f"|Meyer({w / math.pi:.4g} pi)| = {abs(meyer_spectrum(w)):.5f}   Shannon = {shannon_spectrum(w).real:g}")

print()
print(f"{'family':32s} {'energy':>8s} {'band (rad/s)':>22s} {'psi(0)':>9s}")
for name, alpha in [("shannon", None), ("meyer", None), ("meyer_equiv", None),
                    ("deoliveira_equiv", 0.3), ("morlet", None), ("db4", None)]:
    fam = WaveletFamily.from_name(name, alpha=alpha)
    psi = fam.series(plan)
    band = fam.nominal_band() or band_from_spectrum(analyze(psi, plan), 0.999)
    k0 = np.argmin(np.abs(plan.t))
    print(f"{fam.label:32s} {l2_norm(psi) ** 2:8.5f} [{band.w_m:8.4f}, {band.w_M:8.4f}] {psi.samples[k0]:9.5f}")

# The Shannon wavelet is sinc(t/2) cos(3 pi t/2): zero crossings of the
# envelope at t = +-2, +-4, ...
sha = WaveletFamily("shannon").series(plan, oversample=64)
t = plan.t
for t0 in (2.0, 4.0, 6.0):
    print(f"psi_shannon({t0:g}) = {sha.samples[np.argmin(np.abs(t - t0))]: .2e}")
