"""Command-line frontend.

Subcommands: theory, sample, analyze, compare, crossing.  Exit codes
form a stable scripting contract: 0 success, 2 usage, 3 input data,
4 tolerance failure, 5 numerical failure.

Option precedence is flags > config file (simple ``key = value`` lines,
given with --config) > built-in defaults.  Randomized commands require
an explicit --seed; outputs are byte-identical across repeated runs.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import boxcount, nnsd, spectra, theory

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_TOLERANCE = 4
EXIT_NUMERIC = 5

THEORY_MODELS = ("poisson", "goe", "gue", "gse", "equal")
SAMPLE_MODELS = THEORY_MODELS + ("goe-matrix",)

_DEFAULTS = {
    "grid_min": 0.02,
    "grid_max": 5.0,
    "points_per_decade": 48,
    "window": 5,
    "out": ".",
    "plot": False,
    "tol": None,
}

_CASTS = {
    "grid_min": float,
    "grid_max": float,
    "points_per_decade": int,
    "window": int,
    "out": str,
    "plot": lambda v: v.strip().lower() in ("1", "true", "yes", "on"),
    "tol": float,
    "n": int,
    "seed": int,
    "model": str,
    "overlay": str,
}


@dataclass
class RunConfig:
    """Effective options for one command after precedence resolution."""

    command: str
    grid_min: float
    grid_max: float
    points_per_decade: int
    window: int
    out: Path
    plot: bool
    model: str | None = None
    input: str | None = None
    input_b: str | None = None
    n: int | None = None
    seed: int | None = None
    tol: float | None = None
    overlay: str | None = None

    @property
    def slope(self):
        return boxcount.SlopeConfig(
            window=self.window,
            grid_points_per_decade=self.points_per_decade,
            r_min_over_sbar=self.grid_min,
            r_max_over_sbar=self.grid_max,
        )

    @property
    def grid(self):
        return boxcount.log_grid(self.grid_min, self.grid_max, self.points_per_decade)


def _read_config_file(path):
    options = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            text = raw.strip()
            if not text or text.startswith("#"):
                continue
            if "=" not in text:
                raise ValueError(f"{path}:{lineno}: expected 'key = value'")
            key, value = (part.strip() for part in text.split("=", 1))
            key = key.replace("-", "_")
            if key not in _CASTS:
                raise ValueError(f"{path}:{lineno}: unknown option {key!r}")
            options[key] = _CASTS[key](value)
    return options


def resolve_config(args):
    """Merge flags over config-file values over built-in defaults."""
    from_file = _read_config_file(args.config) if getattr(args, "config", None) else {}

    def pick(key, default):
        flag = getattr(args, key, None)
        if flag is not None:
            return flag
        if key in from_file:
            return from_file[key]
        return default

    cfg = RunConfig(
        command=args.command,
        grid_min=pick("grid_min", _DEFAULTS["grid_min"]),
        grid_max=pick("grid_max", _DEFAULTS["grid_max"]),
        points_per_decade=pick("points_per_decade", _DEFAULTS["points_per_decade"]),
        window=pick("window", _DEFAULTS["window"]),
        out=Path(pick("out", _DEFAULTS["out"])),
        plot=bool(getattr(args, "plot", False) or from_file.get("plot", False)),
        model=pick("model", None),
        input=getattr(args, "input", None),
        n=pick("n", None),
        seed=pick("seed", None),
        tol=pick("tol", _DEFAULTS["tol"]),
        overlay=pick("overlay", None),
    )
    cfg.out.mkdir(parents=True, exist_ok=True)
    return cfg


def _add_common(parser, grid=True):
    parser.add_argument("--config", help="optional key = value config file")
    parser.add_argument("--out", help="output directory (default current)")
    if grid:
        parser.add_argument("--grid-min", dest="grid_min", type=float, help="smallest r/sbar")
        parser.add_argument("--grid-max", dest="grid_max", type=float, help="largest r/sbar")
        parser.add_argument(
            "--points-per-decade", dest="points_per_decade", type=int,
            help="log-grid density",
        )
        parser.add_argument("--plot", action="store_true", default=None, help="write an SVG plot")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="boxdim",
        description="Local box-counting dimension of discrete level spectra",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("theory", help="theoretical dimension curve of a model")
    p.add_argument(
        "--model", required=True,
        help=f"one of {', '.join(THEORY_MODELS)} or tabulated:<file>",
    )
    _add_common(p)

    p = sub.add_parser("sample", help="generate a spectrum level file")
    p.add_argument("--model", required=True, help=f"one of {', '.join(SAMPLE_MODELS)} or tabulated:<file>")
    p.add_argument("--n", type=int, required=True, help="number of levels")
    p.add_argument("--seed", type=int, required=True, help="sampler seed (reproducible)")
    _add_common(p, grid=False)

    p = sub.add_parser("analyze", help="box-count a level file and estimate D_b(r)")
    p.add_argument("input", help="level file, one value per line")
    p.add_argument("--unfold-semicircle", action="store_true", help="semicircle unfolding (GOE matrices)")
    p.add_argument("--decimate", choices=("even", "odd"), help="keep alternate levels")
    p.add_argument("--rescale", action="store_true", help="rescale to unit mean spacing")
    p.add_argument("--overlay", help="also write a theory curve of this model")
    p.add_argument("--window", type=int, help="slope window (odd, >= 3)")
    _add_common(p)

    p = sub.add_parser("compare", help="max/RMS deviation between two curve CSVs")
    p.add_argument("curve_a", help="dimension-curve CSV")
    p.add_argument("curve_b", help="dimension-curve CSV")
    p.add_argument("--tol", type=float, help="exit 4 when max deviation exceeds this")
    p.add_argument("--config", help="optional key = value config file")

    p = sub.add_parser("crossing", help="intersection of two closed-form curves")
    p.add_argument("model_a", choices=THEORY_MODELS)
    p.add_argument("model_b", choices=THEORY_MODELS)
    p.add_argument(
        "--bracket", nargs=2, type=float, default=(0.1, 1.0), metavar=("LO", "HI"),
        help="search bracket in units of the mean spacing",
    )
    p.add_argument("--config", help="optional key = value config file")
    return parser


# -- commands ----------------------------------------------------------


def cmd_theory(cfg: RunConfig):
    try:
        model = nnsd.from_kind(cfg.model)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    name = cfg.model.replace(":", "_").replace("/", "_").replace("-", "_")
    try:
        curve = theory.curve(model, cfg.grid * model.mean_spacing)
    except theory.QuadratureError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    path = cfg.out / f"theory_{name}.csv"
    curve.write_csv(path)
    print(path)
    if cfg.plot:
        from .plots import save_dimension_plot

        svg = cfg.out / f"theory_{name}.svg"
        save_dimension_plot(svg, [curve], title=cfg.model)
        print(svg)
    return EXIT_OK


def cmd_sample(cfg: RunConfig):
    if cfg.n < 2:
        print("error: need --n >= 2", file=sys.stderr)
        return EXIT_USAGE
    try:
        if cfg.model == "goe-matrix":
            spectrum = spectra.goe_spectrum(cfg.n, cfg.seed)
        else:
            model = nnsd.from_kind(cfg.model)
            spectrum = spectra.renewal_spectrum(model, cfg.n, cfg.seed)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except RuntimeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    name = cfg.model.replace(":", "_").replace("/", "_").replace("-", "_")
    path = cfg.out / f"{name}_n{cfg.n}_seed{cfg.seed}.txt"
    spectra.save_levels(spectrum, path)
    print(path)
    return EXIT_OK


def cmd_analyze(cfg: RunConfig, args):
    try:
        spectrum = spectra.ingest_levels(cfg.input)
    except (spectra.LevelFileError, spectra.DuplicateLevelError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    try:
        if args.unfold_semicircle:
            spectrum = spectra.unfold_semicircle(spectrum)
        if args.decimate:
            spectrum = spectra.decimate(spectrum, args.decimate)
        if args.rescale:
            spectrum = spectra.rescale_to_unit_mean(spectrum)
        box = boxcount.count_curve(spectrum, cfg.slope)
        dim = boxcount.local_slope_curve(box, cfg.slope)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    stem = Path(cfg.input).stem
    box_path = cfg.out / f"{stem}_boxcount.csv"
    dim_path = cfg.out / f"{stem}_dimension.csv"
    box.write_csv(box_path)
    dim.write_csv(dim_path)
    print(box_path)
    print(dim_path)
    overlay_curve = None
    if cfg.overlay:
        try:
            model = nnsd.from_kind(cfg.overlay)
        except (ValueError, OSError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_USAGE
        try:
            overlay_curve = theory.curve(model, cfg.grid * model.mean_spacing)
        except theory.QuadratureError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_NUMERIC
        name = cfg.overlay.replace(":", "_").replace("/", "_").replace("-", "_")
        overlay_path = cfg.out / f"{stem}_overlay_{name}.csv"
        overlay_curve.write_csv(overlay_path)
        print(overlay_path)
    if cfg.plot:
        from .plots import save_dimension_plot

        svg = cfg.out / f"{stem}.svg"
        curves = [dim] + ([overlay_curve] if overlay_curve is not None else [])
        save_dimension_plot(svg, curves, box_curve=box, title=spectrum.label)
        print(svg)
    return EXIT_OK


def cmd_compare(cfg: RunConfig):
    try:
        a = theory.DimensionCurve.read_csv(cfg.input)
        b = theory.DimensionCurve.read_csv(cfg.input_b)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    lo = max(a.r_over_sbar[0], b.r_over_sbar[0])
    hi = min(a.r_over_sbar[-1], b.r_over_sbar[-1])
    if not lo < hi:
        print("error: curves share no r/sbar range", file=sys.stderr)
        return EXIT_DATA
    grid = np.geomspace(lo, hi, 256)
    da = np.interp(np.log(grid), np.log(a.r_over_sbar), a.d_b)
    db = np.interp(np.log(grid), np.log(b.r_over_sbar), b.d_b)
    dev = np.abs(da - db)
    imax = int(np.argmax(dev))
    rms = float(np.sqrt(np.mean(dev**2)))
    print(f"range r/sbar in [{lo:.6g}, {hi:.6g}] ({grid.size} points)")
    print(f"max |delta| = {dev[imax]:.6g} at r/sbar = {grid[imax]:.6g}")
    print(f"rms |delta| = {rms:.6g}")
    if cfg.tol is not None and dev[imax] > cfg.tol:
        print(f"FAIL: exceeds tolerance {cfg.tol:g}")
        return EXIT_TOLERANCE
    return EXIT_OK


def cmd_crossing(cfg: RunConfig, args):
    lo, hi = args.bracket
    if not 0.0 < lo < hi:
        print("error: bracket must satisfy 0 < LO < HI", file=sys.stderr)
        return EXIT_USAGE
    model_a = nnsd.from_kind(args.model_a)
    model_b = nnsd.from_kind(args.model_b)
    try:
        r_star = theory.find_crossing(model_a, model_b, (lo, hi))
    except theory.BracketError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    print(f"crossing r*/sbar = {r_star:.12g}")
    print(f"|r*/sbar - 1| = {abs(r_star - 1.0):.12g}")
    return EXIT_OK


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = resolve_config(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.command == "theory":
        return cmd_theory(cfg)
    if args.command == "sample":
        return cmd_sample(cfg)
    if args.command == "analyze":
        return cmd_analyze(cfg, args)
    if args.command == "compare":
        cfg.input = args.curve_a
        cfg.input_b = args.curve_b
        return cmd_compare(cfg)
    if args.command == "crossing":
        return cmd_crossing(cfg, args)
    parser.error(f"unknown command {args.command!r}")


if __name__ == "__main__":
    sys.exit(main())
