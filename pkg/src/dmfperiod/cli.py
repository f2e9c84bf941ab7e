"""
Command-line front end.

    dmfperiod generate  --texel example --size 20x8 --out t1.pgm
    dmfperiod analyze   t1.pgm --mode direct --emit-dmf t1 --out report.json
    dmfperiod texels    t1.pgm --period-col 4 --period-row 5 --out texels.csv
    dmfperiod synthesize t1.pgm --texel-index 1 --period-col 4 --period-row 5 --size 40x16 --out big.pgm

``analyze`` exits 0 when both periods are found, 2 when a direction is
aperiodic (the report is still written) and 1 on errors. The other commands
exit 0 on success and 1 on errors.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .dmf import DmfSeries, summed_col_dmf, summed_row_dmf
from .haar import haar_dwt1
from .image import (
    GrayImage,
    NoiseSpec,
    add_noise,
    random_texel,
    read_image,
    tile_texture,
    write_image,
)
from .periodicity import DEFAULT_PROMINENCE, MODES, PeriodicityEstimate, analyze_image
from .texels import extract_texel_grid, rank_texels, ranking_to_csv, synthesize

# fundamental 4x5 block of the 3-bit example image; tiled to 20x8 it gives the full image
EXAMPLE_TEXEL = GrayImage(
    [
        [6, 7, 0, 1, 2],
        [1, 2, 4, 5, 0],
        [5, 6, 7, 0, 1],
        [7, 6, 5, 4, 3],
    ],
    max_value=7,
)

EXIT_OK, EXIT_ERROR, EXIT_APERIODIC = 0, 1, 2


class CliError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # usage errors are hard errors (exit 1); exit 2 means "aperiodic"
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _dims(text: str) -> tuple[int, int]:
    m = re.fullmatch(r"\s*(\d+)\s*[xX]\s*(\d+)\s*", text)
    if not m or int(m.group(1)) < 1 or int(m.group(2)) < 1:
        raise argparse.ArgumentTypeError(f"expected AxB with positive integers, got {text!r}")
    return int(m.group(1)), int(m.group(2))


def _fraction(text: str) -> float:
    value = float(text)
    if not 0 < value <= 1:
        raise argparse.ArgumentTypeError(f"prominence must be in (0, 1], got {text}")
    return value


# ---------------------------------------------------------------------------
# report


def build_report(path, img: GrayImage, estimate: PeriodicityEstimate, prominence: float) -> dict:
    return {
        "tool": "dmfperiod",
        "version": __version__,
        "input": str(path),
        "width": img.width,
        "height": img.height,
        "max_value": img.max_value,
        "mode": estimate.mode,
        "min_prominence_fraction": prominence,
        "period_row": estimate.period_row,
        "period_col": estimate.period_col,
        "method": estimate.method,
        "row": estimate.row.to_dict(),
        "column": estimate.col.to_dict(),
    }


def dumps_report(report: dict) -> str:
    return json.dumps(report, indent=2) + "\n"


def loads_report(text: str) -> dict:
    report = json.loads(text)
    if not isinstance(report, dict):
        raise ValueError("report must be a single JSON object")
    return report


def _write_text(text: str, out) -> None:
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


# ---------------------------------------------------------------------------
# SVG plot


def dmf_svg(series: DmfSeries, valleys=(), period=None, width=640, height=260) -> str:
    """Polyline plot of a DMF series with valleys marked."""
    values = np.asarray(series.values, dtype=np.float64)
    margin = 36
    n = len(values)
    top = values.max() if values.max() > 0 else 1.0

    def xy(i, v):
        x = margin + (width - 2 * margin) * (i / max(n - 1, 1))
        y = height - margin - (height - 2 * margin) * (v / top)
        return f"{x:.2f},{y:.2f}"

    points = " ".join(xy(i, v) for i, v in enumerate(values))
    title = f"summed {series.direction} DMF"
    if period is not None:
        title += f", period {period}"
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<text x="{margin}" y="20" font-family="sans-serif" font-size="13">{title}</text>',
        f'<line x1="{margin}" y1="{height - margin}" x2="{width - margin}" '
        f'y2="{height - margin}" stroke="gray"/>',
        f'<polyline fill="none" stroke="steelblue" stroke-width="1.5" points="{points}"/>',
    ]
    for i in valleys:
        x, y = xy(i, values[i]).split(",")
        parts.append(f'<circle cx="{x}" cy="{y}" r="4" fill="crimson"/>')
        parts.append(
            f'<text x="{x}" y="{height - margin + 14}" font-family="sans-serif" '
            f'font-size="10" text-anchor="middle">{i}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


# ---------------------------------------------------------------------------
# commands


def cmd_analyze(args) -> int:
    img = read_image(args.image)
    estimate = analyze_image(img, args.mode, args.prominence)
    report = build_report(args.image, img, estimate, args.prominence)
    _write_text(dumps_report(report), args.out)
    series = {"row": summed_row_dmf(img), "col": summed_col_dmf(img)}
    directions = {"row": estimate.row, "col": estimate.col}
    if args.emit_dmf:
        for key, s in series.items():
            Path(f"{args.emit_dmf}.{key}.csv").write_text(s.to_csv())
            Path(f"{args.emit_dmf}.{key}.haar.csv").write_text(haar_dwt1(s.values).to_csv())
    if args.emit_plot:
        for key, s in series.items():
            d = directions[key]
            Path(f"{args.emit_plot}.{key}.svg").write_text(
                dmf_svg(s, d.valleys.indices, d.period)
            )
    if estimate.period_row is None or estimate.period_col is None:
        return EXIT_APERIODIC
    return EXIT_OK


def _grid(img, period_col, period_row):
    try:
        return extract_texel_grid(img, period_col, period_row)
    except ValueError as exc:
        raise CliError(str(exc)) from None


def cmd_texels(args) -> int:
    img = read_image(args.image)
    grid = _grid(img, args.period_col, args.period_row)
    extra = (45, 90, 135) if args.all_angles else ()
    ranked = rank_texels(img, grid, args.glcm_levels, extra_angles=extra)
    _write_text(ranking_to_csv(ranked), args.out)
    return EXIT_OK


def cmd_synthesize(args) -> int:
    img = read_image(args.image)
    grid = _grid(img, args.period_col, args.period_row)
    if not 1 <= args.texel_index <= len(grid):
        raise CliError(f"texel index {args.texel_index} outside 1..{len(grid)}")
    width, height = args.size or (img.width, img.height)
    out = synthesize(img, grid[args.texel_index - 1], width, height)
    write_image(out, args.out)
    return EXIT_OK


def _load_texel(args) -> GrayImage:
    name = args.texel
    if name == "example":
        texel = EXAMPLE_TEXEL
    elif name in ("random", "smooth"):
        if args.periods is None:
            raise CliError(f"--periods is required for the {name!r} texel")
        rows, cols = args.periods
        texel = random_texel(
            rows, cols, seed=args.seed, smoothness=1.0 if name == "smooth" else 0.0
        )
        return texel
    else:
        texel = read_image(name)
    if args.periods is not None and args.periods != texel.shape:
        raise CliError(
            f"--periods {args.periods[0]}x{args.periods[1]} does not match texel "
            f"of size {texel.height}x{texel.width}"
        )
    return texel


def cmd_generate(args) -> int:
    texel = _load_texel(args)
    width, height = args.size
    img = tile_texture(texel, width, height)
    if args.noise:
        try:
            spec = NoiseSpec.parse(args.noise, seed=args.seed + 1)
        except ValueError as exc:
            raise CliError(str(exc)) from None
        img = add_noise(img, spec)
    write_image(img, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dmfperiod", description=__doc__.split("\n\n")[0].strip())
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("analyze", help="estimate row/column periods of an image")
    p.add_argument("image")
    p.add_argument("--mode", choices=MODES, default="auto")
    p.add_argument("--prominence", type=_fraction, default=DEFAULT_PROMINENCE,
                   help="minimum valley prominence as a fraction of the series range")
    p.add_argument("--emit-dmf", metavar="PREFIX",
                   help="write PREFIX.row.csv / PREFIX.col.csv (and .haar.csv)")
    p.add_argument("--emit-plot", metavar="PREFIX",
                   help="write PREFIX.row.svg / PREFIX.col.svg")
    p.add_argument("--out", default="-", help="report path, '-' for stdout")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("texels", help="rank texels against the whole texture")
    p.add_argument("image")
    p.add_argument("--period-col", type=int, required=True, help="texel height")
    p.add_argument("--period-row", type=int, required=True, help="texel width")
    p.add_argument("--glcm-levels", type=int, default=None)
    p.add_argument("--all-angles", action="store_true",
                   help="also report GLCM features at 45, 90 and 135 degrees")
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_texels)

    p = sub.add_parser("synthesize", help="tile one texel into a new image")
    p.add_argument("image")
    p.add_argument("--texel-index", type=int, required=True, help="1-based, row-major")
    p.add_argument("--period-col", type=int, required=True)
    p.add_argument("--period-row", type=int, required=True)
    p.add_argument("--size", type=_dims, metavar="WxH", help="default: source size")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_synthesize)

    p = sub.add_parser("generate", help="tile a texel, optionally adding noise")
    p.add_argument("--texel", default="example",
                   help="image path, or builtin 'example', 'random' or 'smooth'")
    p.add_argument("--periods", type=_dims, metavar="PCxPR",
                   help="texel size (rows x columns); required for random texels")
    p.add_argument("--size", type=_dims, metavar="WxH", required=True)
    p.add_argument("--noise", help="gaussian:<sigma> or replace:<probability>")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_generate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CliError, OSError, ValueError) as exc:
        print(f"dmfperiod: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
