"""Command-line front end: replicate, report, scan, evolve.

Outputs land in --out (or $BOXWAVE_OUTDIR, or the working directory); the
report/scan/evolve paths write a rendered figure next to the CSV unless
--no-figure is given.
"""

import argparse
import os
import sys
from pathlib import Path

import numpy as np

from .errors import BoxwaveError
from .figures import render_evolve_figure, render_report_figure, render_scan_figure
from .moments import natural_window
from .quadrature import QuadratureConfig
from .replicate import REPLICATION_COLUMNS, rows_as_dicts, run_replication
from .reporting import (
    REPORT_COLUMNS,
    format_value,
    report_sections,
    write_csv,
    write_text_report,
)
from .statespec import build_state, load_spec
from .states import recurrence_period, sample_density

SCAN_AXES = ("L", "b", "k", "t", "K")
_INT_AXES = ("k", "K")


def _out_path(args, default_name):
    if args.out:
        return Path(args.out)
    outdir = Path(os.environ.get("BOXWAVE_OUTDIR", "."))
    outdir.mkdir(parents=True, exist_ok=True)
    return outdir / default_name


def _quad(args):
    if getattr(args, "panels", None):
        return QuadratureConfig(panels=args.panels)
    return QuadratureConfig()


def _cmd_replicate(args):
    rows, all_passed = run_replication()
    dicts = rows_as_dicts(rows)
    path = _out_path(args, "replicate.csv")
    write_csv(path, dicts, REPLICATION_COLUMNS)
    width = max(len(r.check) for r in rows)
    for row in rows:
        status = "pass" if row.passed else "FAIL"
        print(f"{row.check:<{width}}  closed={row.closed_form: .12e}  "
              f"computed={row.computed: .12e}  diff={row.abs_diff:.3e}  [{status}]")
    print(f"replication table written to {path}")
    if not all_passed:
        print("replication FAILED", file=sys.stderr)
        return 1
    return 0


def _cmd_report(args):
    from .reporting import full_report

    spec = load_spec(args.spec)
    state, consts = build_state(spec, k_max=args.k_max)
    quad = _quad(args)
    row = full_report(state, args.t, consts, quad, label=spec["kind"])
    path = _out_path(args, "report.csv")
    write_csv(path, [row], REPORT_COLUMNS)
    text_path = path.with_suffix(".txt")
    write_text_report(text_path, f"uncertainty report: {spec['kind']} at t = {args.t:g}",
                      report_sections(row))
    print(f"report written to {path} and {text_path}")
    if not args.no_figure:
        fig_path = render_report_figure(state, args.t, row, path.with_suffix(".png"), consts)
        print(f"figure written to {fig_path}")
    for key in ("product", "cut_bound", "min_density_bound", "maxmin_bound",
                "judge_bound", "trig_bound"):
        print(f"{key} = {format_value(row[key])}")
    return 0


def _axis_values(args):
    raw = np.linspace(args.sweep_from, args.sweep_to, args.steps)
    if args.axis in _INT_AXES:
        values = []
        for v in raw:
            iv = int(round(v))
            if iv not in values:
                values.append(iv)
        return values
    return [float(v) for v in raw]


def _cmd_scan(args):
    from .reporting import full_report

    spec = load_spec(args.spec)
    if args.axis not in SCAN_AXES:
        raise BoxwaveError(f"unknown scan axis {args.axis!r}; expected one of {SCAN_AXES}")
    values = _axis_values(args)
    quad = _quad(args)
    rows = []
    for value in values:
        sweep_spec = dict(spec)
        t = args.t
        k_max = args.k_max
        if args.axis == "t":
            t = float(value)
        elif args.axis == "K":
            if spec["kind"] != "profile":
                raise BoxwaveError("axis 'K' only applies to kind = profile")
            k_max = int(value)
        else:
            if args.axis != "L" and args.axis not in spec:
                raise BoxwaveError(
                    f"axis {args.axis!r} does not apply to kind = {spec['kind']!r}"
                )
            sweep_spec[args.axis] = repr(value)
        state, consts = build_state(sweep_spec, k_max=k_max)
        row = full_report(state, t, consts, quad, label=spec["kind"])
        row = {"axis": args.axis, "axis_value": value, **row}
        rows.append(row)
    path = _out_path(args, "scan.csv")
    write_csv(path, rows, ["axis", "axis_value"] + REPORT_COLUMNS)
    print(f"scan ({len(rows)} points, seed {args.seed}) written to {path}")
    if not args.no_figure:
        fig_path = render_scan_figure(args.axis, [r["axis_value"] for r in rows], rows,
                                      path.with_suffix(".png"))
        print(f"figure written to {fig_path}")
    return 0


def _cmd_evolve(args):
    spec = load_spec(args.spec)
    state, consts = build_state(spec)
    t_max = args.t_max if args.t_max is not None else recurrence_period(state, consts)
    if args.frames < 1:
        raise BoxwaveError(f"frame count must be >= 1, got {args.frames}")
    times = [0.0] if args.frames == 1 else [
        i * t_max / (args.frames - 1) for i in range(args.frames)
    ]
    frames = []
    for t in times:
        window = natural_window(state, t, consts)
        frame = sample_density(state, window.start, window.width, t, args.grid, consts)
        total = float(np.trapezoid(frame.samples, frame.positions))
        if abs(total - 1.0) > 1e-8:
            raise BoxwaveError(
                f"frame at t={t:g} integrates to {total!r}, expected 1 within 1e-8"
            )
        frames.append(frame)
    rows = []
    for frame in frames:
        for x, rho in zip(frame.positions, frame.samples):
            rows.append({"t": frame.t, "x": float(x), "density": float(rho)})
    path = _out_path(args, "evolve.csv")
    write_csv(path, rows, ["t", "x", "density"])
    print(f"{len(frames)} frames written to {path}")
    if not args.no_figure:
        fig_path = render_evolve_figure(frames, path.with_suffix(".png"))
        print(f"figure written to {fig_path}")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="boxwave",
        description="Uncertainty relations for free particles on a periodic box "
                    "(units hbar = mass = 1 unless the spec overrides them).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_rep = sub.add_parser("replicate", help="check built-in closed-form values")
    p_rep.add_argument("--out", help="output CSV path (default replicate.csv)")
    p_rep.set_defaults(func=_cmd_replicate)

    p_report = sub.add_parser("report", help="all bound prescriptions for one state")
    p_report.add_argument("--spec", required=True, help="state-spec file")
    p_report.add_argument("--t", type=float, default=0.0, help="evaluation time (default 0)")
    p_report.add_argument("--out", help="output CSV path (default report.csv)")
    p_report.add_argument("--panels", type=int, default=None,
                          help="quadrature panels (default 64)")
    p_report.add_argument("--k-max", type=int, default=None,
                          help="sine truncation for profile specs (default 256)")
    p_report.add_argument("--no-figure", action="store_true", help="skip the PNG figure")
    p_report.set_defaults(func=_cmd_report)

    p_scan = sub.add_parser("scan", help="sweep one axis and emit a CSV row per point")
    p_scan.add_argument("--spec", required=True, help="state-spec file")
    p_scan.add_argument("--axis", required=True, choices=SCAN_AXES, help="sweep axis")
    p_scan.add_argument("--from", dest="sweep_from", type=float, required=True,
                        help="first axis value")
    p_scan.add_argument("--to", dest="sweep_to", type=float, required=True,
                        help="last axis value")
    p_scan.add_argument("--steps", type=int, required=True, help="number of points (>= 2)")
    p_scan.add_argument("--t", type=float, default=0.0,
                        help="report time for non-t axes (default 0)")
    p_scan.add_argument("--seed", type=int, default=0,
                        help="run seed, recorded for reproducibility (default 0)")
    p_scan.add_argument("--out", help="output CSV path (default scan.csv)")
    p_scan.add_argument("--panels", type=int, default=None,
                        help="quadrature panels (default 64)")
    p_scan.add_argument("--k-max", type=int, default=None,
                        help="sine truncation for profile specs (default 256)")
    p_scan.add_argument("--no-figure", action="store_true", help="skip the PNG figure")
    p_scan.set_defaults(func=_cmd_scan)

    p_ev = sub.add_parser("evolve", help="density frames over time, one window each")
    p_ev.add_argument("--spec", required=True, help="state-spec file")
    p_ev.add_argument("--frames", type=int, default=16, help="frame count (default 16)")
    p_ev.add_argument("--grid", type=int, default=512,
                      help="samples per frame (default 512)")
    p_ev.add_argument("--t-max", type=float, default=None,
                      help="last frame time (default: one recurrence period)")
    p_ev.add_argument("--out", help="output CSV path (default evolve.csv)")
    p_ev.add_argument("--no-figure", action="store_true", help="skip the PNG figure")
    p_ev.set_defaults(func=_cmd_evolve)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "steps", None) is not None and args.steps < 2:
        parser.error("scan needs --steps >= 2")
    try:
        return args.func(args)
    except BoxwaveError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
