"""Equivalent wavelets: adjacent-scale overlaps merged into single bands.

For Meyer, the cos branch at one scale and the sin branch at the next add
up to a cas on [4pi/3, 8pi/3].  For de Oliveira the merged band is flat on
[pi(1+a), 2pi(1-a)] with a cosine roll-off to 2pi(1+a).
"""

import math

import numpy as np

from kotelwave import TransformPlan, WaveletFamily, demodulate, reconstruct, relative_l2_error
from kotelwave.wavelets import deoliveira_equivalent_spectrum, meyer_equivalent_spectrum, meyer_spectrum

PI = math.pi
w = np.linspace(4 * PI / 3, 8 * PI / 3, 7)
merged = np.abs(meyer_spectrum(w)) + np.abs(meyer_spectrum(w / 2))
print("Meyer overlap, |Psi(w)| + |Psi(w/2)| against the cas form:")
for wi, a, b in zip(w, merged, np.abs(meyer_equivalent_spectrum(w))):
    print(f"  w = {wi / PI:.3f} pi   sum {a:.6f}   cas {b:.6f}")

print()
for alpha in (0.0, 0.1, 0.3):
    lo, hi = PI * (1 + alpha), 2 * PI * (1 + alpha)
    grid = np.linspace(0, 10, 100001)
    X = deoliveira_equivalent_spectrum(grid, alpha).real
    nz = grid[X > 0]
    print(f"alpha = {alpha}: support [{nz.min():.3f}, {nz.max():.3f}] vs [{lo:.3f}, {hi:.3f}]")

plan = TransformPlan.default()
print()
for alpha in (0.0, 0.1, 0.3):
    fam = WaveletFamily("deoliveira_equivalent", alpha=alpha)
    psi = fam.series(plan)
    err = relative_l2_error(reconstruct(demodulate(psi, fam.nominal_band())), psi)
    k = np.argmax(np.abs(psi.samples))
    print(f"alpha = {alpha}: peak |psi| = {abs(psi.samples[k]):.4f} at t = {plan.t[k]:.4f}, round trip {err:.1e}")
