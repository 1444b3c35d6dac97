"""Dyadic constant-Q banks: orthogonality verdicts, overlaps, exact tables."""

import math

from kotelwave import (
    BandSupport,
    WaveletFamily,
    adjacent_channel_overlap,
    band_table,
    build_bank,
    fdm_bank,
    gram_matrix,
    overlap_interval,
    prop1_orthogonality,
)

PI = math.pi
for label, band in [("Shannon", BandSupport(PI, 2 * PI)), ("Meyer", BandSupport(2 * PI / 3, 8 * PI / 3)),
                    ("[1, 3]", BandSupport(1, 3)), ("[1, 2.5]", BandSupport(1, 2.5))]:
    print(f"{label:9s} w_M <= 3 w_m: {prop1_orthogonality(band)!s:5s}  "
          f"formula interval {overlap_interval(band)}  neighbour overlap {adjacent_channel_overlap(band)}")
print("[1, 2.5] passes the 3x test yet channels j and j+1 still share [2, 2.5]")

print()
print("Meyer bank, four levels")
for row in band_table("meyer", 4).rows:
    s = row.strings()
    print(f"  {s['ref']:>6s}  {s['range']:>14s}  {s['band']:>4s}  {s['fdm_range']:>14s}  {s['fdm_band']:>6s}")
q = {round(ch.q_factor, 12) for ch in build_bank(BandSupport(2 * PI / 3, 8 * PI / 3), 4)}
print(f"  constant Q: {q}")

print()
print("de Oliveira bank, symbolic roll-off")
for row in band_table("deoliveira", 3).rows:
    s = row.strings()
    print(f"  {s['range']:>20s}  printed {s['band']:>10s}  from endpoints {s['endpoint_band']:>10s}  "
          f"FDM {s['fdm_range']:>20s}  {s['fdm_band']}")

print()
print("FDM clipping, numeric (alpha = 0.2)")
for b in fdm_bank(BandSupport(PI * 0.8, 2 * PI * 1.2), 3):
    print(f"  [{b.w_m:8.4f}, {b.w_M:8.4f}]")

print()
for name in ("shannon", "meyer", "db4", "meyer_equiv"):
    g = gram_matrix(WaveletFamily.from_name(name))
    print(f"Gram {name:12s} max off-diagonal {g.max_off_diagonal:.1e}  cross-scale {g.max_cross_scale:.1e}  "
          f"diagonal error {g.max_diagonal_error:.1e}")
