"""I/Q demodulation of the band-limited wavelets.

Each wavelet is mixed down at its band midpoint, low-passed at pi*B and
rebuilt as S_c cos(w_c t) + S_s sin(w_c t).  The Shannon case
reproduces S_c = sinc(t/2) and a vanishing quadrature component.
"""

import math

import numpy as np

from kotelwave import (
    TransformPlan,
    WaveletFamily,
    demodulate,
    envelope_phase,
    reconstruct,
    relative_l2_error,
    verify_bandlimit,
)

plan = TransformPlan.default()

# "above cutoff" is measured with a DFT of S_c and S_s.  When w_c is not a
# multiple of dw (Meyer, de Oliveira here) the components are not periodic
# on the window and some energy leaks across the cutoff in that
# measurement; the reconstruction is exact regardless.
for name, alpha in [("shannon", None), ("meyer", None), ("meyer_equiv", None), ("deoliveira_equiv", 0.1)]:
    fam = WaveletFamily.from_name(name, alpha=alpha)
    psi = fam.series(plan)
    band = fam.nominal_band()
    pair = demodulate(psi, band)
    bl = verify_bandlimit(pair)
    err = relative_l2_error(reconstruct(pair), psi)
    print(f"{fam.label:32s} w_c = {pair.carrier_w:7.4f}  cutoff = {pair.cutoff_w:6.4f}  "
          f"above cutoff {max(bl.s_c_fraction, bl.s_s_fraction):.1e}  round trip {err:.1e}")

# Shannon on a long window, so the 1/t tails barely alias
long_plan = TransformPlan.centered(1 / 16, 32768)
psi = WaveletFamily("shannon").series(long_plan)
pair = demodulate(psi, WaveletFamily("shannon").nominal_band())
ep = envelope_phase(pair)
t = long_plan.t
print()
print("Shannon on a 2048 s window")
print(f"  max |S_c - sinc(t/2)|        = {np.max(np.abs(pair.s_c.samples - np.sinc(t / 2))):.2e}")
print(f"  max |S_s|                    = {np.max(np.abs(pair.s_s.samples)):.2e}")
print(f"  max |e - |sinc(t/2)||        = {np.max(np.abs(ep.envelope.samples - np.abs(np.sinc(t / 2)))):.2e}")
sel = np.abs(t) < 1.9
print(f"  phase on |t| < 1.9           = {np.max(np.abs(ep.phase.samples[sel])):.2e} (lobes alternate 0 and pi)")

# Meyer demodulated at 2 pi instead of the midpoint: the band limit holds
# by construction, but the bins above 3 pi are outside |w - 2pi| <= pi
fam = WaveletFamily("meyer")
psi = fam.series(plan)
pair = demodulate(psi, fam.nominal_band(), carrier_w=2 * math.pi)
print()
print(f"Meyer at w_c = 2 pi: round trip {relative_l2_error(reconstruct(pair), psi):.3f} "
      "(the baseband would need |w| up to 4 pi/3)")
