import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from kotelwave.core import BandSupport, NyquistError
from kotelwave.filterbank import (
    PiLinear,
    adjacent_channel_overlap,
    band_table,
    build_bank,
    fdm_bank,
    gram_matrix,
    overlap_interval,
    overlap_report,
    pi_str,
    prop1_orthogonality,
)
from kotelwave.transform import TransformPlan
from kotelwave.wavelets import WaveletFamily

PI = math.pi
MEYER = BandSupport(2 * PI / 3, 8 * PI / 3)


def test_prop1_verdicts():
    assert prop1_orthogonality(BandSupport(PI, 2 * PI))
    assert not prop1_orthogonality(MEYER)
    assert prop1_orthogonality(BandSupport(1, 3))
    assert not prop1_orthogonality(BandSupport(1, 3.0001))


@settings(max_examples=200, deadline=None)
@given(st.floats(0.01, 100), st.floats(1.01, 6), st.floats(0.01, 100))
def test_prop1_scale_invariance(w_m, ratio, c):
    b = BandSupport(w_m, w_m * ratio)
    assert prop1_orthogonality(b) == prop1_orthogonality(b.scaled(c))


def test_overlap_helpers_are_distinct():
    # the 3x test holds yet dyadic neighbours still overlap
    b = BandSupport(1, 2.5)
    assert prop1_orthogonality(b) and overlap_interval(b) is None
    assert adjacent_channel_overlap(b) == (2, 2.5)
    lo, hi = overlap_interval(MEYER)
    assert (lo, hi) == pytest.approx((2 * PI / 3, PI))
    assert adjacent_channel_overlap(MEYER) == pytest.approx((4 * PI / 3, 8 * PI / 3))
    assert adjacent_channel_overlap(BandSupport(PI, 2 * PI)) is None


def test_bank_geometry():
    bank = build_bank(MEYER, 4)
    assert [ch.j for ch in bank] == [0, 1, 2, 3]
    assert bank[3].support.w_M == pytest.approx(64 * PI / 3)
    q = {round(ch.q_factor, 12) for ch in bank}
    assert len(q) == 1
    rep = overlap_report(bank)
    assert rep.pairs == ((0, 1), (1, 2), (2, 3))
    assert not overlap_report(build_bank(BandSupport(PI, 2 * PI), 4))
    with pytest.raises(NyquistError):
        build_bank(MEYER, 4, nyquist_w=16 * PI)
    with pytest.raises(ValueError):
        build_bank(MEYER, 0)


@settings(max_examples=100, deadline=None)
@given(st.floats(0.1, 10), st.floats(2.0, 6.0), st.integers(1, 6))
def test_fdm_tiles_without_gaps_or_overlap(w_m, ratio, levels):
    bands = fdm_bank(BandSupport(w_m, w_m * ratio), levels)
    for a, b in zip(bands, bands[1:]):
        assert b.w_m == pytest.approx(a.w_M, rel=1e-12)
    assert bands[0].w_M == pytest.approx(w_m * ratio)


def test_fdm_keeps_gaps_for_narrow_bands():
    bands = fdm_bank(BandSupport(1, 1.5), 3)
    assert bands[1].w_m == 2 and bands[0].w_M == 1.5


def test_pi_strings():
    F = Fraction
    assert pi_str(F(1)) == "π" and pi_str(F(4, 3)) == "4π/3" and pi_str(F(-1, 2)) == "-π/2"
    assert PiLinear(F(2), F(2)).format() == "2π(1+α)"
    assert PiLinear(F(1), F(-1)).format() == "π(1-α)"
    assert PiLinear(F(1), F(2)).format("suffix") == "(1+2α) π"
    assert PiLinear(F(4), F(4)).value(0.25) == pytest.approx(5 * PI)
    with pytest.raises(ValueError):
        PiLinear(F(1), F(1)).value()
    with pytest.raises(ValueError):
        PiLinear(F(0), F(1)).ge(PiLinear(F(1, 6)))


MEYER_TABLE = [
    ("4π/3", "[2π/3,8π/3]", "2π", "[4π/3,8π/3]", "4π/3"),
    ("8π/3", "[4π/3,16π/3]", "4π", "[8π/3,16π/3]", "8π/3"),
    ("16π/3", "[8π/3,32π/3]", "8π", "[16π/3,32π/3]", "16π/3"),
    ("32π/3", "[16π/3,64π/3]", "16π", "[32π/3,64π/3]", "32π/3"),
]


def test_meyer_table():
    rows = band_table("meyer", 4).rows
    got = [tuple(r.strings()[k] for k in ("ref", "range", "band", "fdm_range", "fdm_band")) for r in rows]
    assert got == MEYER_TABLE


def test_deoliveira_table():
    rows = band_table("deoliveira", 3).rows
    got = [(r.strings()["range"], r.strings()["band"]) for r in rows]
    assert got == [
        ("[π(1-α),2π(1+α)]", "(1+2α) π"),
        ("[2π(1-α),4π(1+α)]", "(1+2α) 2π"),
        ("[4π(1-α),8π(1+α)]", "(1+2α) 4π"),
    ]
    fdm = [(r.strings()["fdm_range"], r.strings()["fdm_band"]) for r in rows]
    assert fdm == [
        ("[π(1+α),2π(1+α)]", "(1+α) π"),
        ("[2π(1+α),4π(1+α)]", "(1+α) 2π"),
        ("[4π(1+α),8π(1+α)]", "(1+α) 4π"),
    ]
    # the endpoint difference disagrees with the printed width and is kept too
    assert rows[0].band_mismatch
    assert rows[0].strings()["endpoint_band"] == "(1+3α) π"
    n = rows[1].numbers(0.3)
    assert n["lo"] == pytest.approx(2 * PI * 0.7) and n["endpoint_band"] == pytest.approx(2 * PI * 1.9)


def test_equivalent_tables_are_their_own_fdm():
    for name in ("shannon", "meyer_equivalent", "deoliveira_equivalent"):
        for r in band_table(name, 3).rows:
            assert r.strings()["range"] == r.strings()["fdm_range"]
    with pytest.raises(ValueError):
        band_table("morlet")


def test_gram_orthonormal_families():
    for name, cross in (("shannon", 1e-9), ("meyer", 1e-6)):
        g = gram_matrix(WaveletFamily(name))
        assert len(g.index) == 10
        assert g.max_cross_scale < cross
        assert g.max_off_diagonal < 1e-9
        assert g.max_diagonal_error < 1e-5


def test_gram_shows_non_orthogonality():
    g = gram_matrix(WaveletFamily("meyer_equivalent"), scales=(0,), shifts=(0, 1))
    assert g.max_off_diagonal > 1e-2


def test_gram_nyquist():
    with pytest.raises(NyquistError):
        gram_matrix(WaveletFamily("meyer"), scales=(0, 3), plan=TransformPlan.centered(1 / 8, 512))
