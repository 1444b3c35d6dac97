"""Baseband (envelope/phase) analysis of bandpass wavelets and dyadic banks."""

from types import ModuleType as _ModuleType

from .core import (
    BandSupport,
    BasebandPair,
    ComplexSpectrum,
    EnvelopePhase,
    GridMismatch,
    NoSpectralContent,
    NyquistError,
    RealSeries,
    UniformFreqGrid,
    UniformTimeGrid,
    band_from_spectrum,
)
from .filterbank import (
    BandTable,
    GramMatrix,
    adjacent_channel_overlap,
    band_table,
    build_bank,
    fdm_bank,
    gram_matrix,
    overlap_interval,
    overlap_report,
    prop1_orthogonality,
)
from .kotelnikov import (
    baseband_spectra,
    demodulate,
    envelope_phase,
    envelope_spectrum,
    peak_carrier,
    reconstruct,
    relative_l2_error,
    verify_bandlimit,
)
from .transform import (
    TransformPlan,
    analyze,
    inner_product,
    l2_norm,
    spectral_inner_product,
    synthesize,
)
from .wavelets import WaveletFamily

__version__ = "0.1.0"

__all__ = sorted(
    name for name, obj in globals().items()
    if not name.startswith("_") and not isinstance(obj, _ModuleType)
)
