"""``rig``: command-line front end.

    rig simulate|diurnal|sweep|invert --config PATH [--out DIR] [--svg] [--seed N]

Exit status: 0 success, 1 parse/validation/domain error, 2 the fit did not
converge.
"""
from __future__ import annotations

import argparse
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import csvio, inversion, optics, sky, svgplot, synthesis
from .config import RunConfig, load_config
from .errors import NonConvergence, RigError

EXIT_OK, EXIT_INVALID, EXIT_NONCONVERGENCE = 0, 1, 2


class Diagnostics:
    """Coloured messages on stderr unless RIG_NO_COLOR is set or stderr is not a tty."""

    COLORS = {"warning": "33", "error": "31", "note": "36"}

    def __init__(self, stream=None):
        self.stream = stream if stream is not None else sys.stderr
        self.color = ("RIG_NO_COLOR" not in os.environ
                      and hasattr(self.stream, "isatty") and self.stream.isatty())

    def __call__(self, level, message):
        tag = f"{level}:"
        if self.color:
            tag = f"\033[{self.COLORS.get(level, '0')}m{tag}\033[0m"
        print(f"{tag} {message}", file=self.stream)


def _out_dir(cfg: RunConfig, args) -> Path:
    out = Path(args.out if args.out is not None else cfg.output.dir)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _want_svg(cfg, args):
    return args.svg or cfg.output.svg


def cmd_simulate(cfg: RunConfig, out: Path, svg=False, diag=None, stdout=None):
    """Single-point evaluation of the signal chain at ``[simulate] v_mps``."""
    stdout = stdout or sys.stdout
    inst = cfg.instrument.interferometer()
    v = cfg.simulate.v_mps
    if inst.epsilon_difference == 0 and diag is not None:
        diag("warning", "degenerate instrument: eps1 == eps2, the first-order signal is zero")
    dt = optics.delta_t_first_order(inst, v)
    signal = optics.fringe_shift(dt, inst.wavelength, inst.bandwidth)
    a_m = abs(signal.fringe_shift)
    path = csvio.write_csv(out / "simulate.csv", csvio.SIMULATE_COLUMNS,
                           [(v, dt, signal.fringe_shift, a_m)])
    print(f"v          = {v / 1000:.3f} km/s", file=stdout)
    print(f"delta_t    = {dt:.6e} s", file=stdout)
    print(f"X_m        = {signal.x_m * 1000:.6g} mm  ({signal.fringe_shift:.6g} fringe)", file=stdout)
    print(f"A_m        = {a_m:.6g}", file=stdout)
    if inst.epsilon_difference != 0:
        v_back = inversion.invert_velocity_point(a_m, inst)
        print(f"v_hor(A_m) = {v_back / 1000:.3f} km/s", file=stdout)
    paths = [path]
    if svg:
        angles = np.linspace(0.0, 360.0, 181)
        fr = [optics.fringe_shift(optics.rotation_signal(inst, v, math.radians(a)),
                                  inst.wavelength).fringe_shift for a in angles]
        svg_path = out / "simulate.svg"
        svg_path.write_text(svgplot.rotation_figure(list(angles), fr,
                                                    title="Fringe shift vs rotation angle"),
                            encoding="utf-8")
        paths.append(svg_path)
    return paths


def diurnal_series(cfg: RunConfig, seed=None):
    site = cfg.site.site()
    inst = cfg.instrument.interferometer()
    epochs = sky.schedule(cfg.start_epoch, cfg.schedule.duration_s, cfg.schedule.step_s)
    noise = cfg.noise.model(seed)
    series = synthesis.synthesize_series(cfg.wind.wind(), site, inst, epochs, noise)
    return series


def cmd_diurnal(cfg: RunConfig, out: Path, svg=False, seed=None, diag=None, stdout=None):
    cfg.require("wind", "schedule")
    stdout = stdout or sys.stdout
    series = diurnal_series(cfg, seed)
    wind = cfg.wind.wind()
    v_hor = np.atleast_1d(sky.horizontal_projection(wind, series.site, series.epochs))
    hours = sky.local_time_hours(series.epochs, series.site.utc_offset_h)
    rows = zip(series.epochs, hours, v_hor, series.a_m_clean, series.a_m)
    path = csvio.write_csv(out / "diurnal.csv", csvio.DIURNAL_COLUMNS, rows)
    print(f"samples    = {len(series)}", file=stdout)
    print(f"v_hor      = {v_hor.min() / 1000:.2f} .. {v_hor.max() / 1000:.2f} km/s", file=stdout)
    print(f"A_m clean  = {series.a_m_clean.min():.4f} .. {series.a_m_clean.max():.4f}", file=stdout)
    paths = [path]
    if svg:
        inst = series.instrument
        per_amp = (inversion.invert_velocity_point(1.0, inst) / 1000.0
                   if inst.epsilon_difference != 0 else 1.0)
        start_h = float(hours[0])
        axis = list(start_h + (series.epochs - series.epochs[0]) / 3600.0)
        text = svgplot.diurnal_figure(axis, list(series.a_m_clean), list(series.a_m),
                                      series.noise.amplitude, per_amp,
                                      title="Diurnal fringe amplitude")
        svg_path = out / "diurnal.svg"
        svg_path.write_text(text, encoding="utf-8")
        paths.append(svg_path)
    return paths


def cmd_sweep(cfg: RunConfig, out: Path, svg=False, diag=None, stdout=None):
    stdout = stdout or sys.stdout
    table = synthesis.epsilon_sweep(cfg.sweep_pairs(), cfg.sweep.v_hor_mps)
    rows = [(r.label, r.eps1, r.eps2, r.deps, r.x_m) for r in table.rows]
    path = csvio.write_csv(out / "sweep.csv", csvio.SWEEP_COLUMNS, rows)
    fit = None
    if len({r.deps for r in table.rows}) >= 2 and all(r.x_m > 0 for r in table.rows):
        fit = inversion.fit_loglog_slope(table)
        print(f"log-log slope = {fit.slope:.9f}  intercept = {fit.intercept:.6f}  "
              f"r^2 = {fit.r_squared:.9f}", file=stdout)
    elif diag is not None:
        diag("note", "regression skipped: needs two distinct positive points")
    paths = [path]
    if svg:
        pos = [r for r in table.rows if r.x_m > 0 and r.deps > 0]
        if pos:
            svg_path = out / "sweep.svg"
            svg_path.write_text(svgplot.sweep_figure([r.deps for r in pos], [r.x_m for r in pos],
                                                     fit, title="Fringe shift vs eps1 - eps2"),
                                encoding="utf-8")
            paths.append(svg_path)
    return paths, fit


def load_series(path, cfg: RunConfig) -> synthesis.MeasurementSeries:
    cols = csvio.read_csv(path, csvio.DIURNAL_COLUMNS)
    return synthesis.MeasurementSeries(cfg.site.site(), cfg.instrument.interferometer(),
                                       cols["epoch_utc_s"], cols["A_m_noisy"])


def cmd_invert(cfg: RunConfig, series_path, out: Path, svg=False, diag=None, stdout=None):
    stdout = stdout or sys.stdout
    series = load_series(series_path, cfg)
    fit = inversion.fit_wind(series)
    curve = fit.curve(series)
    v_fit = np.atleast_1d(sky.horizontal_projection(fit.wind, series.site, series.epochs))
    hours = sky.local_time_hours(series.epochs, series.site.utc_offset_h)
    rows = zip(series.epochs, hours, series.a_m, curve, series.a_m - curve, v_fit)
    path = csvio.write_csv(out / "invert.csv", csvio.INVERT_COLUMNS, rows)
    sd = [math.sqrt(v) if math.isfinite(v) else math.inf for v in fit.covariance_diag]
    print(f"speed        = {fit.wind.speed / 1000:.3f} km/s  (+/- {sd[0] / 1000:.3g})", file=stdout)
    print(f"right asc.   = {math.degrees(fit.wind.right_ascension):.3f} deg  "
          f"(+/- {math.degrees(sd[1]):.3g})", file=stdout)
    print(f"declination  = {math.degrees(fit.wind.declination):.3f} deg  "
          f"(+/- {math.degrees(sd[2]):.3g})", file=stdout)
    print(f"v_hor range  = {v_fit.min() / 1000:.2f} .. {v_fit.max() / 1000:.2f} km/s", file=stdout)
    print(f"residual rms = {fit.residual_rms:.3e} (A_m)", file=stdout)
    print(f"iterations   = {fit.iterations}, converged = {fit.converged}, "
          f"|grad| = {fit.gradient_norm:.2e}", file=stdout)
    if fit.unconstrained and diag is not None:
        diag("note", "unconstrained by the data: " + ", ".join(fit.unconstrained))
    paths = [path]
    if svg:
        per_amp = inversion.invert_velocity_point(1.0, series.instrument) / 1000.0
        axis = list(float(hours[0]) + (series.epochs - series.epochs[0]) / 3600.0)
        svg_path = out / "invert.svg"
        svg_path.write_text(svgplot.diurnal_figure(axis, list(curve), list(series.a_m), 0.0,
                                                   per_amp, title="Fitted diurnal curve"),
                            encoding="utf-8")
        paths.append(svg_path)
    return paths, fit


def build_parser():
    parser = argparse.ArgumentParser(prog="rig", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (("simulate", "single-point signal chain"),
                            ("diurnal", "synthetic 24 h amplitude series"),
                            ("sweep", "fringe shift vs permittivity difference"),
                            ("invert", "fit a wind vector to a diurnal series")):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", required=True, help="run configuration file")
        p.add_argument("--out", default=None, help="output directory (default: [output] dir)")
        p.add_argument("--svg", action="store_true", help="also write an SVG plot")
        p.add_argument("--seed", type=int, default=None, help="override [noise] seed")
        if name == "invert":
            p.add_argument("--series", required=True, help="CSV written by 'rig diurnal'")
    return parser


def main(argv=None, stdout=None, stderr=None):
    args = build_parser().parse_args(argv)
    diag = Diagnostics(stderr)
    try:
        cfg = load_config(args.config)
        if args.seed is not None and args.seed < 0:
            raise RigError("--seed must be non-negative")
        out = _out_dir(cfg, args)
        svg = _want_svg(cfg, args)
        if args.command == "simulate":
            paths = cmd_simulate(cfg, out, svg, diag, stdout)
        elif args.command == "diurnal":
            paths = cmd_diurnal(cfg, out, svg, args.seed, diag, stdout)
        elif args.command == "sweep":
            paths, _ = cmd_sweep(cfg, out, svg, diag, stdout)
        else:
            paths, fit = cmd_invert(cfg, args.series, out, svg, diag, stdout)
            if not fit.converged:
                diag("error", "fit stalled before reaching the gradient tolerance")
                return EXIT_NONCONVERGENCE
    except NonConvergence as exc:
        diag("error", str(exc))
        return EXIT_NONCONVERGENCE
    except (RigError, OSError) as exc:
        diag("error", str(exc))
        return EXIT_INVALID
    for p in paths:
        print(f"wrote {p}", file=stdout or sys.stdout)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
