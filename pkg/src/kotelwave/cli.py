"""Command-line front end: every analysis as a reproducible, file-emitting command.

Subcommands ``synth``, ``demod``, ``bank``, ``check``, ``equiv`` and ``gram``.
CSV output carries a ``#`` provenance block (command line, grid,
convention) before the header row; numbers are written with 12 significant
digits.  Structured reports are flat ``key = value`` text.

Exit codes: 0 ok, 2 usage or unreadable input, 3 analysis failure,
4 numeric-range (Nyquist) violation.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__
from .core import BandSupport, NoSpectralContent, NyquistError, RealSeries, UniformTimeGrid, band_from_spectrum
from .filterbank import (
    EXACT_BANDS,
    adjacent_channel_overlap,
    band_table,
    family_band,
    gram_matrix,
    overlap_interval,
    pi_str,
    prop1_orthogonality,
)
from .kotelnikov import (
    demodulate,
    envelope_phase,
    out_of_band_fraction,
    peak_carrier,
    reconstruct,
    relative_l2_error,
    verify_bandlimit,
)
from .transform import CONVENTION, NonHermitianSpectrum, TransformPlan, analyze
from .wavelets import (
    WaveletFamily,
    check_alpha,
    deoliveira_equivalent_spectrum,
    meyer_equivalent_spectrum,
    meyer_spectrum,
)

EXIT_OK, EXIT_USAGE, EXIT_ANALYSIS, EXIT_RANGE = 0, 2, 3, 4
DEFAULT_FS = 16.0
DEFAULT_N = 1024


class UsageError(Exception):
    pass


# -- formatting ------------------------------------------------------------


def fmt(x) -> str:
    """12 significant digits; ``-0`` is written as ``0``."""
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if x is None:
        return "none"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return f"{float(x) + 0.0:.12g}"
    if isinstance(x, (list, tuple, np.ndarray)):
        return "[" + ", ".join(fmt(v) for v in x) + "]"
    return str(x)


def as_pi(x: float, max_den: int = 96) -> str | None:
    """``x`` as a rational multiple of π when it is one to rounding."""
    c = Fraction(x / math.pi).limit_denominator(max_den)
    if abs(float(c) * math.pi - x) <= 1e-12 * max(1.0, abs(x)):
        return pi_str(c)
    return None


def _interval_pi(iv) -> str | None:
    if iv is None:
        return None
    lo, hi = as_pi(iv[0]), as_pi(iv[1])
    return f"[{lo},{hi}]" if lo is not None and hi is not None else None


class Output:
    """Collects provenance and writes CSV or structured text."""

    def __init__(self, command: str, argv: list[str], grid: UniformTimeGrid | None):
        self.header = [
            f"kotelwave {__version__} {command}",
            "command: " + " ".join(argv),
        ]
        if grid is not None:
            self.header.append(f"grid: t_start={fmt(grid.t_start)} dt={fmt(grid.dt)} n={grid.n}")
        self.header.append("convention: " + CONVENTION)

    def note(self, line: str):
        self.header.append(line)

    def csv(self, columns: list[str], rows) -> str:
        buf = io.StringIO()
        for line in self.header:
            buf.write(f"# {line}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        for row in rows:
            w.writerow([fmt(v) for v in row])
        return buf.getvalue()

    def structured(self, items: list[tuple[str, object]]) -> str:
        lines = [f"# {line}" for line in self.header]
        lines += [f"{k} = {fmt(v)}" for k, v in items]
        return "\n".join(lines) + "\n"


def _emit(text: str, out: str | None, stream=None):
    if out is None or out == "-":
        (stream or sys.stdout).write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


# -- option handling ---------------------------------------------------------


def _family(args) -> WaveletFamily:
    try:
        return WaveletFamily.from_name(args.family, alpha=args.alpha)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _plan(args) -> TransformPlan:
    fs = DEFAULT_FS if args.fs is None else args.fs
    if not fs > 0 or args.n < 2:
        raise UsageError("--fs must be positive and --n at least 2")
    return TransformPlan.centered(1 / fs, args.n)


def _parse_band(text: str) -> BandSupport:
    try:
        lo, hi = (float(v) for v in text.split(":"))
        return BandSupport(lo, hi)
    except ValueError:
        raise UsageError(f"--band expects lo:hi in rad/s with 0 <= lo < hi, got {text!r}") from None


def _parse_ints(text: str) -> list[int]:
    """``"0,1"`` or ``"-2:2"`` (inclusive range)."""
    try:
        if ":" in text:
            a, b = (int(v) for v in text.split(":"))
            return list(range(a, b + 1))
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"expected integers like 0,1 or -2:2, got {text!r}") from None


def read_series_csv(path: str) -> RealSeries:
    """Two-column ``t, psi`` CSV (``#`` comments and one header row allowed)."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    rows = [r for r in csv.reader(line for line in text.splitlines() if line.strip() and not line.startswith("#"))]
    if not rows:
        raise UsageError(f"{path}: no data rows")
    ti, xi = 0, 1
    try:
        float(rows[0][0])
    except ValueError:
        names = [c.strip().lower() for c in rows[0]]
        ti = names.index("t") if "t" in names else 0
        xi = names.index("psi") if "psi" in names else 1
        rows = rows[1:]
    try:
        t = np.array([float(r[ti]) for r in rows])
        x = np.array([float(r[xi]) for r in rows])
    except (ValueError, IndexError):
        raise UsageError(f"{path}: expected numeric t and psi columns") from None
    if len(t) < 2:
        raise UsageError(f"{path}: need at least 2 samples")
    d = np.diff(t)
    dt = float(np.mean(d))
    if not dt > 0 or np.max(np.abs(d - dt)) > 1e-6 * dt:
        raise UsageError(f"{path}: time column is not uniformly increasing")
    try:
        return RealSeries(UniformTimeGrid(float(t[0]), dt, len(t)), x)
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}") from None


# -- commands ------------------------------------------------------------------


def cmd_synth(args, argv) -> int:
    fam = _family(args)
    plan = _plan(args)
    psi = fam.series(plan, oversample=args.oversample)
    out = Output("synth", argv, plan.time_grid)
    out.note(f"family: {fam.label}")
    _emit(out.csv(["t", "psi"], zip(psi.t, psi.samples)), args.out)
    return EXIT_OK


def cmd_demod(args, argv) -> int:
    if (args.input is None) == (args.family is None):
        raise UsageError("demod needs exactly one of --input or --family")
    if args.input is not None:
        psi = read_series_csv(args.input)
        source = args.input
        nominal = None
    else:
        fam = _family(args)
        psi = fam.series(_plan(args))
        source = fam.label
        nominal = fam.nominal_band()
    if not np.any(psi.samples):
        raise NoSpectralContent("no spectral content")

    X = analyze(psi, TransformPlan(psi.grid))
    if args.band is not None:
        band, band_source = _parse_band(args.band), "explicit"
    elif nominal is not None:
        band, band_source = nominal, "nominal support"
    else:
        band = band_from_spectrum(X, args.energy_fraction)
        band_source = f"effective support at energy fraction {fmt(args.energy_fraction)}"

    mode = args.carrier.lower()
    if mode in ("auto", "midpoint"):
        carrier = band.w_mid
    elif mode == "peak":
        carrier = peak_carrier(X)
    else:
        try:
            carrier = float(mode)
        except ValueError:
            raise UsageError(f"--carrier must be auto, midpoint, peak or a number, got {args.carrier!r}") from None
        mode = "explicit"

    pair = demodulate(psi, band, carrier)
    ep = envelope_phase(pair)
    bl = verify_bandlimit(pair)
    err = relative_l2_error(reconstruct(pair), psi)

    out = Output("demod", argv, psi.grid)
    out.note(f"source: {source}")
    rows = zip(psi.t, pair.s_c.samples, pair.s_s.samples, ep.envelope.samples, ep.phase.samples)
    _emit(out.csv(["t", "s_c", "s_s", "envelope", "phase"], rows), args.out)

    report = [
        ("source", source),
        ("carrier_mode", mode),
        ("carrier_w", carrier),
        ("band_source", band_source),
        ("band_w", [band.w_m, band.w_M]),
        ("bandwidth_hz", band.bandwidth_hz),
        ("cutoff_w", pair.cutoff_w),
        ("input_out_of_band_fraction", out_of_band_fraction(X, band)),
        ("s_c_above_cutoff_fraction", bl.s_c_fraction),
        ("s_s_above_cutoff_fraction", bl.s_s_fraction),
        ("reconstruction_rel_l2", err),
        ("warnings", list(pair.warnings)),
    ]
    text = Output("demod report", argv, psi.grid).structured(report)
    if args.report is not None:
        _emit(text, args.report)
    elif args.out not in (None, "-"):
        _emit(text, str(Path(args.out).with_suffix(".report.txt")))
    else:
        sys.stderr.write(text)
    return EXIT_OK


def _table_key(name: str) -> str:
    key = name.lower()
    key = {"meyer_equiv": "meyer_equivalent", "deoliveira_equiv": "deoliveira_equivalent"}.get(key, key)
    if key not in EXACT_BANDS:
        raise UsageError(f"no band table for family {name!r}; choose from {', '.join(EXACT_BANDS)}")
    return key


def cmd_bank(args, argv) -> int:
    key = _table_key(args.family)
    alpha = None if args.alpha is None else check_alpha(args.alpha)
    if args.levels < 1:
        raise UsageError("--levels must be >= 1")
    table = band_table(key, args.levels, alpha)
    symbolic = alpha is None and any(r.hi.slope for r in table.rows)

    if args.fs is not None:
        nyq = math.pi * args.fs
        top = table.rows[-1].hi.value(alpha if not symbolic else 1 / 3)
        if top >= nyq:
            raise NyquistError(f"level {args.levels - 1}: upper edge {top:.6g} rad/s reaches Nyquist {nyq:.6g} rad/s")

    out = Output("bank", argv, None)
    out.note(f"family: {key}" + ("" if alpha is None else f" alpha={fmt(alpha)}"))
    cols = list(table.rows[0].strings())
    numeric = [] if symbolic else ["lo_w", "hi_w", "fdm_lo_w", "fdm_hi_w"]
    if args.format == "csv":
        rows = []
        for r in table.rows:
            row = [r.level] + list(r.strings().values())
            if numeric:
                n = r.numbers(alpha)
                row += [n["lo"], n["hi"], n["fdm_lo"], n["fdm_hi"]]
            rows.append(row)
        _emit(out.csv(["level"] + cols + numeric, rows), args.out)
    else:
        items = []
        for r in table.rows:
            for k, v in r.strings().items():
                items.append((f"level{r.level}.{k}", v))
            if numeric:
                n = r.numbers(alpha)
                items.append((f"level{r.level}.range_w", [n["lo"], n["hi"]]))
                items.append((f"level{r.level}.fdm_range_w", [n["fdm_lo"], n["fdm_hi"]]))
        _emit(out.structured(items), args.out)
    return EXIT_OK


def cmd_check(args, argv) -> int:
    fam = _family(args)
    plan = _plan(args)
    if args.band is not None:
        band = _parse_band(args.band)
    else:
        band = family_band(fam, plan, args.energy_fraction)
    oi = overlap_interval(band)
    adj = adjacent_channel_overlap(band)
    g = gram_matrix(fam, _parse_ints(args.scales), _parse_ints(args.shifts), plan)
    items = [
        ("family", fam.label),
        ("band_w", [band.w_m, band.w_M]),
        ("band_pi", _interval_pi((band.w_m, band.w_M))),
        ("prop1_orthogonal", prop1_orthogonality(band)),
        ("adjacent_disjoint", adj is None),
        ("overlap_interval_formula", None if oi is None else list(oi)),
        ("overlap_interval_formula_pi", _interval_pi(oi)),
        ("adjacent_channel_overlap", None if adj is None else list(adj)),
        ("adjacent_channel_overlap_pi", _interval_pi(adj)),
        ("gram_scales", sorted({j for j, _ in g.index})),
        ("gram_shifts", sorted({k for _, k in g.index})),
        ("gram_max_off_diagonal", g.max_off_diagonal),
        ("gram_max_cross_scale", g.max_cross_scale),
        ("gram_max_diagonal_error", g.max_diagonal_error),
    ]
    out = Output("check", argv, plan.time_grid)
    if args.format == "csv":
        _emit(out.csv(["key", "value"], items), args.out)
    else:
        _emit(out.structured(items), args.out)
    return EXIT_OK


def cmd_equiv(args, argv) -> int:
    key = args.family.lower()
    plan = _plan(args)
    w = plan.w
    if key in ("meyer_equiv", "meyer_equivalent"):
        X, label = meyer_equivalent_spectrum(w), "meyer_equivalent"
    elif key == "meyer":
        X, label = meyer_spectrum(w), "meyer"
    elif key in ("deoliveira", "deoliveira_equiv", "deoliveira_equivalent"):
        alpha = 0.0 if args.alpha is None else args.alpha
        try:
            X = deoliveira_equivalent_spectrum(w, alpha)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        label = f"deoliveira_equivalent alpha={fmt(alpha)}"
    else:
        raise UsageError(f"equiv supports meyer, meyer_equiv and deoliveira_equiv, got {args.family!r}")
    if args.positive:
        keep = w > 0
        w, X = w[keep], X[keep]
    out = Output("equiv", argv, plan.time_grid)
    out.note(f"spectrum: {label}, unitary amplitudes (1/sqrt(2pi))")
    _emit(out.csv(["w", "re", "im", "abs"], zip(w, X.real, X.imag, np.abs(X))), args.out)
    return EXIT_OK


def cmd_gram(args, argv) -> int:
    fam = _family(args)
    plan = _plan(args)
    g = gram_matrix(fam, _parse_ints(args.scales), _parse_ints(args.shifts), plan)
    out = Output("gram", argv, plan.time_grid)
    out.note(f"family: {fam.label}")
    labels = [f"g_{j}_{k}" for j, k in g.index]
    if args.format == "csv":
        rows = [[j, k] + list(g.matrix[i]) for i, (j, k) in enumerate(g.index)]
        _emit(out.csv(["j", "k"] + labels, rows), args.out)
    else:
        items = [("index", [f"{j}:{k}" for j, k in g.index])]
        items += [(f"row.{j}.{k}", list(g.matrix[i])) for i, (j, k) in enumerate(g.index)]
        items += [
            ("max_off_diagonal", g.max_off_diagonal),
            ("max_cross_scale", g.max_cross_scale),
            ("max_diagonal_error", g.max_diagonal_error),
        ]
        _emit(out.structured(items), args.out)
    return EXIT_OK


# -- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kotelwave", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"kotelwave {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, family_required=True, grid=True, fmt_default=None):
        sp.add_argument("--family", required=family_required, help="wavelet family name")
        sp.add_argument("--alpha", type=float, help="de Oliveira roll-off in [0, 1/3]")
        if grid:
            sp.add_argument("--fs", type=float, help=f"sampling rate in samples/s (default {DEFAULT_FS:g})")
            sp.add_argument("--n", type=int, default=DEFAULT_N, help="number of samples")
        sp.add_argument("--out", help="output file (default: stdout)")
        if fmt_default is not None:
            sp.add_argument("--format", choices=("csv", "structured"), default=fmt_default)

    sp = sub.add_parser("synth", help="sample a wavelet, CSV of (t, psi)")
    common(sp)
    sp.add_argument("--oversample", type=int, default=1, help="frequency quadrature refinement")
    sp.set_defaults(func=cmd_synth)

    sp = sub.add_parser("demod", help="I/Q demodulation, CSV of (t, s_c, s_s, envelope, phase)")
    common(sp, family_required=False)
    sp.add_argument("--input", help="CSV with t and psi columns")
    sp.add_argument("--carrier", default="auto", help="auto | midpoint | peak | value in rad/s")
    sp.add_argument("--band", help="band lo:hi in rad/s (default: nominal or estimated)")
    sp.add_argument("--energy-fraction", type=float, default=0.999)
    sp.add_argument("--report", help="sidecar report path (default: next to --out, else stderr)")
    sp.set_defaults(func=cmd_demod)

    sp = sub.add_parser("bank", help="exact dyadic band table")
    common(sp, grid=False, fmt_default="csv")
    sp.add_argument("--levels", type=int, default=4)
    sp.add_argument("--fs", type=float, help="check the top band against this sampling rate")
    sp.set_defaults(func=cmd_bank)

    sp = sub.add_parser("check", help="orthogonality verdict, overlaps and Gram summary")
    common(sp, fmt_default="structured")
    sp.add_argument("--band", help="override the band lo:hi in rad/s")
    sp.add_argument("--energy-fraction", type=float, default=0.999)
    sp.add_argument("--scales", default="0,1")
    sp.add_argument("--shifts", default="-2:2")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("equiv", help="equivalent bank spectrum samples, CSV of (w, re, im, abs)")
    common(sp)
    sp.add_argument("--positive", action="store_true", help="positive frequencies only")
    sp.set_defaults(func=cmd_equiv)

    sp = sub.add_parser("gram", help="Gram matrix of scaled and shifted copies")
    common(sp, fmt_default="csv")
    sp.add_argument("--scales", default="0,1")
    sp.add_argument("--shifts", default="-2:2")
    sp.set_defaults(func=cmd_gram)
    return p


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, argv)
    except UsageError as exc:
        print(f"kotelwave: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NoSpectralContent, NonHermitianSpectrum) as exc:
        print(f"kotelwave: analysis failed: {exc}", file=sys.stderr)
        return EXIT_ANALYSIS
    except NyquistError as exc:
        print(f"kotelwave: range error: {exc}", file=sys.stderr)
        return EXIT_RANGE
    except ValueError as exc:
        print(f"kotelwave: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
