import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from kotelwave.core import ComplexSpectrum, GridMismatch, RealSeries, UniformTimeGrid
from kotelwave.transform import (
    NonHermitianSpectrum,
    TransformPlan,
    analyze,
    complex_inverse,
    dual_freq_grid,
    inner_product,
    l2_norm,
    sample_spectrum,
    spectral_inner_product,
    synthesize,
)
from kotelwave.wavelets import shannon_spectrum


def test_dual_grid_is_symmetric_half_bin(plan):
    w = plan.w
    dw = plan.freq_grid.dw
    assert dw == pytest.approx(2 * math.pi / 64)
    assert np.allclose(w, -w[::-1])
    assert np.allclose(w[plan.time_grid.n // 2], dw / 2)


def test_gaussian_pair(plan):
    # exp(-t^2/2) <-> sqrt(2pi) exp(-w^2/2)
    x = RealSeries(plan.time_grid, np.exp(-plan.t**2 / 2))
    X = analyze(x, plan)
    assert np.max(np.abs(X.samples - math.sqrt(2 * math.pi) * np.exp(-plan.w**2 / 2))) < 1e-12
    back = synthesize(lambda w: math.sqrt(2 * math.pi) * np.exp(-w**2 / 2), plan)
    assert np.max(np.abs(back.samples - x.samples)) < 1e-12


def test_shifted_gaussian_phase(plan):
    x = RealSeries(plan.time_grid, np.exp(-((plan.t - 3) ** 2) / 2))
    X = analyze(x, plan)
    ref = math.sqrt(2 * math.pi) * np.exp(-plan.w**2 / 2) * np.exp(-3j * plan.w)
    assert np.max(np.abs(X.samples - ref)) < 1e-12


def test_shannon_periodized_closed_form(plan):
    # without oversampling the output is the anti-periodic alias of
    # psi(t) = sinc(t/2) cos(3 pi t/2), summed in closed form
    t = plan.t
    T = plan.time_grid.duration
    psi = synthesize(shannon_spectrum, plan).samples
    with np.errstate(divide="ignore", invalid="ignore"):
        ref = (2 / np.pi) * np.sin(np.pi * t / 2) * np.cos(1.5 * np.pi * t) * (np.pi / T) / np.sin(np.pi * t / T)
    ref[t == 0] = 1.0
    assert np.max(np.abs(psi - ref)) < 1e-12


def test_oversampled_shannon_matches_continuous(plan):
    psi = synthesize(shannon_spectrum, plan, oversample=64)
    t = plan.t
    sel = np.abs(t) <= 8
    ref = np.sinc(t / 2) * np.cos(1.5 * np.pi * t)
    assert np.max(np.abs(psi.samples[sel] - ref[sel])) < 1e-6


def test_synthesize_rejects_bad_inputs(plan):
    other = TransformPlan.centered(1 / 8, 512)
    X = sample_spectrum(shannon_spectrum, other)
    with pytest.raises(GridMismatch):
        synthesize(X, plan)
    with pytest.raises(ValueError):
        synthesize(sample_spectrum(shannon_spectrum, plan), plan, oversample=2)
    with pytest.raises(ValueError):
        synthesize(shannon_spectrum, plan, oversample=0)


def test_non_hermitian_spectrum_is_refused(plan):
    with pytest.raises(NonHermitianSpectrum):
        synthesize(lambda w: (w > 0).astype(complex), plan)


def test_complex_inverse_of_one_sided_spectrum(plan):
    fg = plan.freq_grid
    X = ComplexSpectrum(fg, ((plan.w > 3) & (plan.w < 4)).astype(complex))
    z = complex_inverse(X, plan)
    assert np.max(np.abs(z.imag)) > 1e-3


def test_analyze_grid_check(plan):
    x = RealSeries(UniformTimeGrid(0, 0.1, 16), np.zeros(16))
    with pytest.raises(GridMismatch):
        analyze(x, plan)


def _random_bandlimited(rng, plan):
    fg = plan.freq_grid
    w = plan.w
    lo = rng.uniform(0.5, 10)
    hi = lo + rng.uniform(0.5, 20)
    amp = rng.normal(size=fg.n) + 1j * rng.normal(size=fg.n)
    amp = np.where((np.abs(w) >= lo) & (np.abs(w) <= hi), amp, 0)
    # Hermitian symmetry on the symmetric grid
    amp = 0.5 * (amp + np.conj(amp[::-1]))
    return synthesize(ComplexSpectrum(fg, amp), plan)


def test_parseval_on_random_signals(plan):
    rng = np.random.default_rng(20240607)
    worst = 0.0
    for _ in range(100):
        x = _random_bandlimited(rng, plan)
        y = _random_bandlimited(rng, plan)
        X, Y = analyze(x, plan), analyze(y, plan)
        worst = max(worst, abs(X.energy() - inner_product(x, x)) / inner_product(x, x))
        assert spectral_inner_product(X, Y) == pytest.approx(inner_product(x, y), rel=1e-9, abs=1e-12)
    assert worst < 1e-9


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from([64, 256, 1000, 1024]), st.floats(0.01, 1.0))
def test_round_trip_identity(seed, n, dt):
    plan = TransformPlan.centered(dt, n)
    x = RealSeries(plan.time_grid, np.random.default_rng(seed).normal(size=n))
    back = synthesize(analyze(x, plan), plan)
    assert np.max(np.abs(back.samples - x.samples)) < 1e-12 * max(1.0, np.max(np.abs(x.samples)))


def test_l2_norm(plan):
    x = RealSeries(plan.time_grid, np.exp(-plan.t**2 / 2))
    assert l2_norm(x) == pytest.approx(math.pi**0.25, rel=1e-12)
