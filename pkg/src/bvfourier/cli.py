"""Command-line front end.

Subcommands: ``transform`` (transform CSV), ``hilbert`` (a chosen
conjugate as CSV), ``radial`` (r,leray,ibp,oracle columns) and
``verify`` (a named check suite with a plain-text report plus a CSV
twin).  Exit codes: 0 success, 1 verification failures (report still
written), 2 bad flags, 3 bad input data.
"""

from __future__ import annotations

import argparse
import csv
import io
import os
import sys
from pathlib import Path

import numpy as np

from .fourier import fourier_transform
from .grids import (
    DecayClass,
    Family,
    FamilySpec,
    SampledFunction,
    family_value,
    make_uniform_grid,
    read_samples_csv,
    sample,
)
from .hilbert import hilbert_multiplier, hilbert_pv, modified_hilbert, periodic_conjugate
from .radial import (
    RadialProfile,
    fractional_integral,
    radial_ft_ibp,
    radial_ft_leray,
    radial_ft_oracle,
    read_radial_csv,
)
from .reports import format_report_line
from .suites import PROFILES, SUITE_NAMES, run_suite

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_DATA = 3

_FAMILY_PARAM_FLAGS = ("width", "sigma", "scale", "taper", "period")


def _atomic_write(path: Path, text: str) -> None:
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text)
    os.replace(tmp, path)


def _fmt(v: float) -> str:
    return f"{v:.12g}"


def _add_grid_args(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--a", type=float, default=-50.0, help="grid left endpoint")
    sub.add_argument("--b", type=float, default=50.0, help="grid right endpoint")
    sub.add_argument("--n", type=int, default=2**14 + 1, help="sample count")


def _add_input_args(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--family", choices=[f.value for f in Family], help="built-in test family")
    sub.add_argument("--csv", help="CSV input (x,value) instead of a family")
    sub.add_argument(
        "--decay",
        choices=[d.value for d in DecayClass],
        default=DecayClass.VANISHING_AT_INFINITY.value,
        help="decay class flag for CSV input",
    )
    sub.add_argument("--width", type=float, help="support width (box, triangle, raised_cosine, smoothed_box)")
    sub.add_argument("--sigma", type=float, help="gaussian scale")
    sub.add_argument("--scale", type=float, help="scale parameter a (poisson kernels)")
    sub.add_argument("--taper", type=float, help="smoothed_box taper length")
    sub.add_argument("--period", type=float, help="period (triangle_wave_periodic)")


def _family_params(args: argparse.Namespace) -> dict[str, float]:
    mapping = {"width": "width", "sigma": "sigma", "scale": "a", "taper": "taper", "period": "period"}
    out = {}
    for flag, param in mapping.items():
        value = getattr(args, flag, None)
        if value is not None:
            out[param] = value
    return out


def _load_input(args: argparse.Namespace) -> SampledFunction:
    if (args.family is None) == (args.csv is None):
        raise ValueError("exactly one of --family / --csv is required")
    if args.csv is not None:
        return read_samples_csv(args.csv, DecayClass(args.decay))
    spec = FamilySpec(Family(args.family), _family_params(args))
    if spec.family is Family.TRIANGLE_WAVE_PERIODIC:
        period = spec.params["period"]
        grid = make_uniform_grid(-period / 2.0, period / 2.0, args.n)
    else:
        grid = make_uniform_grid(args.a, args.b, args.n)
    return sample(spec, grid)


def _cmd_transform(args: argparse.Namespace) -> int:
    f = _load_input(args)
    result = fourier_transform(f, cutoff=args.cutoff, m=args.m)
    buf = io.StringIO()
    buf.write("t,re,im\n")
    for t, v in zip(result.freq_grid.points, result.values):
        buf.write(f"{_fmt(t)},{_fmt(v.real)},{_fmt(v.imag)}\n")
    _atomic_write(Path(args.out), buf.getvalue())
    return EXIT_OK


_HILBERT_METHODS = {
    "pv": hilbert_pv,
    "multiplier": hilbert_multiplier,
    "modified": modified_hilbert,
    "periodic": periodic_conjugate,
}


def _cmd_hilbert(args: argparse.Namespace) -> int:
    f = _load_input(args)
    out = _HILBERT_METHODS[args.method](f)
    buf = io.StringIO()
    buf.write("x,value\n")
    for x, v in zip(out.x, out.values):
        buf.write(f"{_fmt(x)},{_fmt(float(v))}\n")
    _atomic_write(Path(args.out), buf.getvalue())
    return EXIT_OK


def _cmd_radial(args: argparse.Namespace) -> int:
    radii = np.array([float(tok) for tok in args.radii.split(",") if tok.strip()])
    if args.csv is not None:
        profile = read_radial_csv(args.csv, args.dim)
    elif args.family is not None:
        spec = FamilySpec(Family(args.family), _family_params(args))
        grid = make_uniform_grid(0.0, args.b, args.n)
        vals = family_value(spec, grid.points)
        decay = DecayClass.COMPACT_SUPPORT if vals[0] == 0.0 and vals[-1] == 0.0 else DecayClass.VANISHING_AT_INFINITY
        profile = RadialProfile(SampledFunction(grid, vals, decay), args.dim)
    else:
        raise ValueError("radial needs --csv or --family")
    frac = fractional_integral(profile) if profile.dim >= 2 else None
    leray = radial_ft_leray(profile, radii, frac=frac)
    ibp = radial_ft_ibp(profile, radii, frac=frac)
    oracle = radial_ft_oracle(profile, radii)
    buf = io.StringIO()
    buf.write("r,leray,ibp,oracle\n")
    for r, a, b, c in zip(radii, leray, ibp, oracle):
        buf.write(f"{_fmt(r)},{_fmt(a)},{_fmt(b)},{_fmt(c)}\n")
    _atomic_write(Path(args.out), buf.getvalue())
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace) -> int:
    reports = run_suite(args.suite, args.profile)
    text = "".join(format_report_line(r) + "\n" for r in reports)
    out_path = Path(args.out)
    _atomic_write(out_path, text)
    csv_buf = io.StringIO()
    writer = csv.writer(csv_buf, lineterminator="\n")
    writer.writerow(["name", "status", "measured", "bound", "grid_n", "notes"])
    for r in reports:
        writer.writerow([r.name, r.status, f"{r.measured:.6g}", f"{r.bound:.6g}", r.grid_n, r.notes])
    _atomic_write(out_path.with_suffix(".csv"), csv_buf.getvalue())
    sys.stdout.write(text)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_CHECK_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bvf",
        description="Conjugation operators, Fourier integrability diagnostics and radial transforms",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p_tr = subs.add_parser("transform", help="sampled Fourier transform as t,re,im CSV")
    _add_input_args(p_tr)
    _add_grid_args(p_tr)
    p_tr.add_argument("--cutoff", type=float, default=None, help="max |t| (default: Nyquist pi/h)")
    p_tr.add_argument("--m", type=int, default=None, help="frequency sample count")
    p_tr.add_argument("--out", default="transform.csv")
    p_tr.set_defaults(func=_cmd_transform)

    p_hi = subs.add_parser("hilbert", help="a chosen conjugation operator as x,value CSV")
    _add_input_args(p_hi)
    _add_grid_args(p_hi)
    p_hi.add_argument("--method", choices=sorted(_HILBERT_METHODS), default="pv")
    p_hi.add_argument("--out", default="hilbert.csv")
    p_hi.set_defaults(func=_cmd_hilbert)

    p_ra = subs.add_parser("radial", help="radial transforms as r,leray,ibp,oracle CSV")
    p_ra.add_argument("--family", choices=[f.value for f in Family])
    p_ra.add_argument("--csv", help="radial profile CSV (s,f0)")
    for flag in _FAMILY_PARAM_FLAGS:
        p_ra.add_argument(f"--{flag}", type=float)
    p_ra.add_argument("--b", type=float, default=2.0, help="profile outer radius")
    p_ra.add_argument("--n", type=int, default=8193, help="profile sample count")
    p_ra.add_argument("--dim", type=int, required=True, help="ambient dimension")
    p_ra.add_argument("--radii", required=True, help="comma-separated radii")
    p_ra.add_argument("--out", default="radial.csv")
    p_ra.set_defaults(func=_cmd_radial)

    p_ve = subs.add_parser("verify", help="run a verification suite and write a report")
    p_ve.add_argument("--suite", choices=("all",) + SUITE_NAMES, default="all")
    p_ve.add_argument("--profile", choices=sorted(PROFILES), default="default")
    p_ve.add_argument("--out", default="report.txt")
    p_ve.set_defaults(func=_cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
