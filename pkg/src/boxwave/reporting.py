"""Report assembly and serialization: CSV rows and structured text.

The CSV dialect is fixed for lossless round-trips: comma separators, '.'
decimal point, 17 significant digits, one header row, LF line endings.
"""

import csv
import io
import math

from . import bounds as bounds_mod
from .moments import (
    Window,
    boundary_force,
    centered_x_moments,
    natural_window,
    p_moments,
)
from .quadrature import DEFAULT_QUADRATURE
from .states import BlochSineState, DEFAULT_CONSTANTS, recurrence_period

REPORT_COLUMNS = [
    "state",
    "t",
    "L",
    "hbar",
    "mass",
    "window_start",
    "window_width",
    "mean_x",
    "mean_x2",
    "mean_p",
    "mean_p2",
    "dx",
    "dp",
    "product",
    "cut_x",
    "cut_level",
    "cut_bound",
    "cut_satisfied",
    "min_density_x",
    "min_density_level",
    "min_density_bound",
    "min_density_satisfied",
    "maxmin_t",
    "maxmin_level",
    "maxmin_bound",
    "maxmin_satisfied",
    "judge_gamma",
    "judge_dx",
    "judge_product",
    "judge_bound",
    "judge_curvature_ok",
    "trig_spread",
    "trig_product",
    "trig_bound",
    "trig_satisfied",
    "boundary_force",
    "recurrence_period",
]


def format_value(value):
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


def full_report(state, t, consts=DEFAULT_CONSTANTS, quad=DEFAULT_QUADRATURE, label="state"):
    """All five prescriptions plus the windowed moments, as one flat mapping.

    The moment window follows the state's own prescription: the min-density
    cut for plane-wave states, the moving node window for Bloch-sine states.
    The default cut bound sits at the window end (the box edge).
    """
    is_bloch = isinstance(state, BlochSineState)
    min_cut = bounds_mod.min_density_cut(state, t, consts, quad)
    if is_bloch:
        window = natural_window(state, t, consts)
    else:
        window = Window(start=min_cut.witness, width=state.domain.length)

    m1, m2, c = centered_x_moments(state, t, window, consts, quad)
    mean_x = c + m1
    mean_x2 = m2 + 2.0 * c * m1 + c * c
    dx = math.sqrt(max(m2 - m1 * m1, 0.0))
    mean_p, mean_p2 = p_moments(state, t, consts, quad)
    dp = math.sqrt(max(mean_p2 - mean_p * mean_p, 0.0))
    product = dx * dp

    cut = bounds_mod.cut_bound(state, t, window.end, consts, quad)
    maxmin = bounds_mod.maxmin_bound(state, consts, quad, t_eval=t)
    judge = bounds_mod.judge_minimize(state, t, consts, quad)
    trig = bounds_mod.trig_relation(state, t, consts, quad)

    return {
        "state": label,
        "t": float(t),
        "L": state.domain.length,
        "hbar": consts.hbar,
        "mass": consts.mass,
        "window_start": window.start,
        "window_width": window.width,
        "mean_x": mean_x,
        "mean_x2": mean_x2,
        "mean_p": mean_p,
        "mean_p2": mean_p2,
        "dx": dx,
        "dp": dp,
        "product": product,
        "cut_x": cut.witness,
        "cut_level": cut.density_level,
        "cut_bound": cut.value,
        "cut_satisfied": cut.satisfied,
        "min_density_x": min_cut.witness,
        "min_density_level": min_cut.density_level,
        "min_density_bound": min_cut.value,
        "min_density_satisfied": min_cut.satisfied,
        "maxmin_t": maxmin.witness,
        "maxmin_level": maxmin.density_level,
        "maxmin_bound": maxmin.value,
        "maxmin_satisfied": maxmin.satisfied,
        "judge_gamma": judge.gamma_star,
        "judge_dx": judge.dx_gamma,
        "judge_product": dp * judge.dx_gamma,
        "judge_bound": judge.bound,
        "judge_curvature_ok": judge.curvature_ok,
        "trig_spread": trig.lhs_product / dp if dp > 0 else None,
        "trig_product": trig.lhs_product,
        "trig_bound": trig.value,
        "trig_satisfied": trig.satisfied,
        "boundary_force": boundary_force(state, t, consts) if is_bloch else None,
        "recurrence_period": recurrence_period(state, consts),
    }


def rows_to_csv(rows, columns):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_value(row.get(col)) for col in columns])
    return buf.getvalue()


def write_csv(path, rows, columns):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(rows_to_csv(rows, columns))


def write_text_report(path, title, sections):
    """Structured text: '[section]' headers over key = value lines."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"# {title}\n")
        for name, mapping in sections:
            fh.write(f"\n[{name}]\n")
            for key, value in mapping.items():
                fh.write(f"{key} = {format_value(value)}\n")


def report_sections(row):
    """Split a flat report row into readable sections for the text output."""
    def pick(keys):
        return {k: row[k] for k in keys}

    return [
        ("state", pick(["state", "t", "L", "hbar", "mass", "recurrence_period"])),
        ("moments", pick([
            "window_start", "window_width", "mean_x", "mean_x2", "mean_p", "mean_p2",
            "dx", "dp", "product",
        ])),
        ("bound_cut", pick(["cut_x", "cut_level", "cut_bound", "cut_satisfied"])),
        ("bound_min_density", pick([
            "min_density_x", "min_density_level", "min_density_bound",
            "min_density_satisfied",
        ])),
        ("bound_maxmin", pick(["maxmin_t", "maxmin_level", "maxmin_bound", "maxmin_satisfied"])),
        ("bound_judge", pick(["judge_gamma", "judge_dx", "judge_product", "judge_bound",
                              "judge_curvature_ok"])),
        ("bound_trig", pick(["trig_spread", "trig_product", "trig_bound", "trig_satisfied"])),
        ("envelope", pick(["boundary_force"])),
    ]
