"""Command-line front end.

Subcommands cover the transforms (``transform``), test-image generation
(``phantom``, ``random``), the analysis sweeps (``error-sweep``,
``opcount``, ``sp-size``), and CSV-to-SVG charting (``plot``).  All output
is deterministic for a given invocation.
"""

from __future__ import annotations

import argparse
import csv
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import analysis
from .dyadic import gdt_transform
from .image import (
    CapacityError,
    GrayImage,
    GraymapError,
    load_graymap,
    random_image,
    save_graymap,
    shepp_logan,
)
from .reference import ref_transform
from .superpixel import (
    DEFAULT_PIXEL_BUDGET,
    SuperpixelSpec,
    sp_transform,
    spec_from_lambda,
    superpixel_size,
)

_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def _fmt(value) -> str:
    """Numbers rendered with 12 significant digits; integers verbatim."""
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return f"{float(value):.12g}"


def _parse_lambda(text: str) -> float:
    try:
        if "/" in text:
            return float(Fraction(text))
        return float(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"invalid lambda {text!r}") from None


def _parse_lambda_list(text: str) -> list[float]:
    return [_parse_lambda(part) for part in text.split(",") if part]


def _parse_sizes(text: str) -> list[int]:
    try:
        sizes = [int(part) for part in text.split(",") if part]
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid size list {text!r}") from None
    if not sizes:
        raise argparse.ArgumentTypeError("size list must be non-empty")
    if any(b <= a for a, b in zip(sizes, sizes[1:])):
        raise argparse.ArgumentTypeError("size list must be strictly ascending")
    return sizes


def _write_csv(path: str, header: list[str], rows) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def _resolve_spec(args, parser: argparse.ArgumentParser, width: int) -> SuperpixelSpec:
    explicit = any(
        v is not None for v in (args.sp_width, args.sp_height, args.sp_col)
    )
    if args.lam is not None and explicit:
        parser.error("--lambda and explicit --sp-* options are mutually exclusive")
    if args.lam is not None:
        if width == 1:
            return SuperpixelSpec(1, 1, 0)
        return spec_from_lambda(width, args.lam)
    if explicit:
        if args.sp_width is None or args.sp_height is None:
            parser.error("explicit superpixels need both --sp-width and --sp-height")
        col = args.sp_col if args.sp_col is not None else (args.sp_width - 1) // 2
        return SuperpixelSpec(args.sp_width, args.sp_height, col)
    parser.error("algo sp needs --lambda or an explicit superpixel")


def cmd_transform(args, parser) -> int:
    img = load_graymap(args.input)
    if args.algo == "gdt":
        hough, ops = gdt_transform(img)
    elif args.algo == "ref":
        hough, ops = ref_transform(img)
    else:
        spec = _resolve_spec(args, parser, img.w)
        hough, ops = sp_transform(img, spec, pixel_budget=args.mem_cap)
    rows = (
        (t, s, int(hough.values[s, t]))
        for t in range(hough.w)
        for s in range(hough.h)
    )
    _write_csv(args.out_csv, ["t", "s", "value"], rows)
    if args.out_pgm:
        peak = int(hough.values.max())
        if peak > 0:
            viewable = (hough.values * 65535) // peak
        else:
            viewable = hough.values
        save_graymap(GrayImage(viewable.astype(np.int64)), args.out_pgm)
        note = Path(args.out_pgm + ".txt")
        note.write_text(
            f"algorithm: {hough.algorithm}\n"
            f"values scaled by 65535/{max(peak, 1)} (integer division)\n"
        )
    print(f"additions: {ops.additions}")
    return 0


def cmd_phantom(args, parser) -> int:
    save_graymap(shepp_logan(args.size), args.out_pgm)
    return 0


def cmd_random(args, parser) -> int:
    save_graymap(random_image(args.size, args.size, 255, args.seed), args.out_pgm)
    return 0


def cmd_error_sweep(args, parser) -> int:
    if args.algo == "sp":
        if args.lam is None:
            parser.error("error-sweep --algo sp needs --lambda")
        reports = analysis.error_sweep("sp", args.sizes, lam=args.lam)
    else:
        if args.lam is not None:
            parser.error(f"--lambda does not apply to --algo {args.algo}")
        reports = analysis.error_sweep(args.algo, args.sizes)
    lam_text = _fmt(args.lam) if args.lam is not None else ""
    rows = [
        (rep.w, rep.algorithm, lam_text, _fmt(float(rep.global_max)))
        for rep in reports
    ]
    _write_csv(args.out_csv, ["n", "algo", "lambda", "max_error"], rows)
    return 0


def cmd_opcount(args, parser) -> int:
    if args.algo == "sp":
        if args.lam is None:
            parser.error("opcount --algo sp needs --lambda")
        points = analysis.complexity_sweep(args.lam, args.sizes)
    else:
        if args.lam is not None:
            parser.error("--lambda does not apply to --algo gdt")
        points = analysis.dyadic_complexity_points(args.sizes)
    rows = [
        (
            p.n,
            _fmt(p.lam) if p.lam is not None else "",
            p.sp_size,
            p.additions,
            _fmt(p.normalized),
        )
        for p in points
    ]
    _write_csv(
        args.out_csv, ["n", "lambda", "sp_size", "additions", "normalized"], rows
    )
    return 0


def cmd_sp_size(args, parser) -> int:
    if args.width is None and args.sizes is None:
        parser.error("sp-size needs --width or --sizes")
    if args.lam is None:
        parser.error("sp-size needs --lambda")
    if args.width is not None:
        if len(args.lam) != 1:
            parser.error("--width takes a single --lambda value")
        result = superpixel_size(args.width, args.lam[0])
        print(f"sp_size: {result.size}")
        print(f"real_root: {_fmt(result.real_root)}")
        return 0
    if args.out_csv is None:
        parser.error("sp-size --sizes needs --out-csv")
    curve = analysis.size_curve(args.lam, args.sizes)
    rows = [(n, _fmt(lam), size) for n, lam, size in curve]
    _write_csv(args.out_csv, ["n", "lambda", "sp_size"], rows)
    return 0


def render_line_chart(
    rows: list[dict],
    x: str,
    ys: list[str],
    width: int = 640,
    height: int = 480,
) -> str:
    """Standalone SVG line chart: one polyline per y column, linear axes."""
    if not rows:
        raise ValueError("no data rows to plot")
    for col in [x, *ys]:
        if col not in rows[0]:
            raise ValueError(f"missing column {col!r}")
    try:
        xs = [float(r[x]) for r in rows]
        series = [(y, [float(r[y]) for r in rows]) for y in ys]
    except ValueError:
        raise ValueError("plot columns must be numeric") from None

    ml, mr, mt, mb = 60.0, 20.0, 20.0, 45.0
    px_w = width - ml - mr
    px_h = height - mt - mb
    x_min, x_max = min(xs), max(xs)
    all_y = [v for _, vals in series for v in vals]
    y_min, y_max = min(all_y), max(all_y)
    if x_max == x_min:
        x_min, x_max = x_min - 1.0, x_max + 1.0
    if y_max == y_min:
        y_min, y_max = y_min - 1.0, y_max + 1.0

    def sx(v: float) -> float:
        return ml + (v - x_min) / (x_max - x_min) * px_w

    def sy(v: float) -> float:
        return mt + px_h - (v - y_min) / (y_max - y_min) * px_h

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}"'
        f' height="{height}" viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{ml:.2f}" y1="{mt + px_h:.2f}" x2="{ml + px_w:.2f}"'
        f' y2="{mt + px_h:.2f}" stroke="black"/>',
        f'<line x1="{ml:.2f}" y1="{mt:.2f}" x2="{ml:.2f}"'
        f' y2="{mt + px_h:.2f}" stroke="black"/>',
    ]
    label = '<text x="{0:.2f}" y="{1:.2f}" font-size="12" {2}>{3}</text>'
    parts.append(label.format(ml, mt + px_h + 16.0, "", _fmt(x_min)))
    parts.append(
        label.format(ml + px_w, mt + px_h + 16.0, 'text-anchor="end"', _fmt(x_max))
    )
    parts.append(
        label.format(ml - 6.0, mt + px_h, 'text-anchor="end"', _fmt(y_min))
    )
    parts.append(label.format(ml - 6.0, mt + 10.0, 'text-anchor="end"', _fmt(y_max)))
    parts.append(
        label.format(ml + px_w / 2.0, height - 8.0, 'text-anchor="middle"', x)
    )
    for i, (name, vals) in enumerate(series):
        color = _PALETTE[i % len(_PALETTE)]
        points = " ".join(
            f"{sx(a):.2f},{sy(b):.2f}" for a, b in zip(xs, vals)
        )
        parts.append(
            f'<polyline fill="none" stroke="{color}" stroke-width="1.5"'
            f' points="{points}"/>'
        )
        parts.append(
            f'<text x="{ml + px_w - 4.0:.2f}" y="{mt + 14.0 + 14.0 * i:.2f}"'
            f' font-size="12" text-anchor="end" fill="{color}">{name}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def cmd_plot(args, parser) -> int:
    with open(args.in_csv, newline="") as fh:
        rows = list(csv.DictReader(fh))
    svg = render_line_chart(rows, args.x, args.y.split(","))
    Path(args.out_svg).write_text(svg)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fasthough",
        description="Fast Hough transforms, sweeps, and sizing queries.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_sp_options(p):
        p.add_argument("--lambda", dest="lam", type=_parse_lambda, default=None)
        p.add_argument("--sp-width", type=int, default=None)
        p.add_argument("--sp-height", type=int, default=None)
        p.add_argument("--sp-col", type=int, default=None)

    p = sub.add_parser("transform", help="Hough-transform a graymap")
    p.add_argument("--input", required=True)
    p.add_argument("--algo", required=True, choices=("gdt", "sp", "ref"))
    p.add_argument("--out-csv", required=True)
    p.add_argument("--out-pgm", default=None)
    p.add_argument("--mem-cap", type=int, default=DEFAULT_PIXEL_BUDGET)
    add_sp_options(p)
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("phantom", help="write the head-phantom graymap")
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--out-pgm", required=True)
    p.set_defaults(func=cmd_phantom)

    p = sub.add_parser("random", help="write a seeded random graymap")
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-pgm", required=True)
    p.set_defaults(func=cmd_random)

    p = sub.add_parser("error-sweep", help="max orthotropic error per size")
    p.add_argument("--algo", required=True, choices=("gdt", "sp", "ref"))
    p.add_argument("--sizes", type=_parse_sizes, required=True)
    p.add_argument("--lambda", dest="lam", type=_parse_lambda, default=None)
    p.add_argument("--out-csv", required=True)
    p.set_defaults(func=cmd_error_sweep)

    p = sub.add_parser("opcount", help="analytic addition counts per size")
    p.add_argument("--algo", default="sp", choices=("gdt", "sp"))
    p.add_argument("--sizes", type=_parse_sizes, required=True)
    p.add_argument("--lambda", dest="lam", type=_parse_lambda_list, default=None)
    p.add_argument("--out-csv", required=True)
    p.set_defaults(func=cmd_opcount)

    p = sub.add_parser("sp-size", help="superpixel side for a target accuracy")
    p.add_argument("--width", type=int, default=None)
    p.add_argument("--lambda", dest="lam", type=_parse_lambda_list, default=None)
    p.add_argument("--sizes", type=_parse_sizes, default=None)
    p.add_argument("--out-csv", default=None)
    p.set_defaults(func=cmd_sp_size)

    p = sub.add_parser("plot", help="render a CSV as an SVG line chart")
    p.add_argument("--in-csv", required=True)
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True, help="comma-separated column names")
    p.add_argument("--out-svg", required=True)
    p.set_defaults(func=cmd_plot)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, parser)
    except (GraymapError, CapacityError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
