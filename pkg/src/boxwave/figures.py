"""Figure rendering for the CLI: density panels, bound charts, sweep curves.

Figures are written straight to files (Agg backend); nothing interactive.
"""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .moments import natural_window
from .states import DEFAULT_CONSTANTS, density

_BOUND_BARS = [
    ("cut_bound", "cut"),
    ("min_density_bound", "min density"),
    ("maxmin_bound", "max-min"),
    ("judge_bound", "shift (Judge)"),
    ("trig_bound", "trig"),
]


def render_report_figure(state, t, row, path, consts=DEFAULT_CONSTANTS):
    """Two panels: the density over its window, and bounds vs the product."""
    window = natural_window(state, t, consts)
    xs = np.linspace(window.start, window.end, 1024)
    rho = density(state, xs, t, consts)

    fig, (ax_rho, ax_bounds) = plt.subplots(1, 2, figsize=(10, 4))
    ax_rho.plot(xs, rho, lw=1.5)
    ax_rho.axvline(row["min_density_x"], color="tab:red", ls="--", lw=1,
                   label="min-density cut")
    ax_rho.axhline(1.0 / state.domain.length, color="gray", ls=":", lw=1,
                   label="uniform level 1/L")
    ax_rho.set_xlabel("x")
    ax_rho.set_ylabel(r"$|\psi(x,t)|^2$")
    ax_rho.set_title(f"density at t = {t:g}")
    ax_rho.legend(fontsize=8, loc="best")

    labels = [label for _, label in _BOUND_BARS]
    values = [row[key] for key, _ in _BOUND_BARS]
    ax_bounds.bar(range(len(values)), values, color="tab:blue", alpha=0.75)
    ax_bounds.axhline(row["product"], color="tab:green", lw=1.5,
                      label=r"$\Delta x\,\Delta p$")
    ax_bounds.axhline(0.5 * consts.hbar, color="gray", ls=":", lw=1,
                      label=r"$\hbar/2$")
    ax_bounds.set_xticks(range(len(labels)), labels, rotation=20, fontsize=8)
    ax_bounds.set_ylabel("action")
    ax_bounds.set_title("lower bounds vs product")
    ax_bounds.legend(fontsize=8)

    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def render_scan_figure(axis, values, rows, path):
    """Product and every bound column against the sweep axis."""
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot(values, [r["product"] for r in rows], "o-", lw=1.5,
            label=r"$\Delta x\,\Delta p$")
    for key, label in _BOUND_BARS:
        ax.plot(values, [r[key] for r in rows], lw=1, label=label)
    ax.set_xlabel(axis)
    ax.set_ylabel("action")
    ax.set_title(f"sweep over {axis}")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def render_evolve_figure(frames, path):
    """Waterfall of density frames over one window per frame."""
    dens = np.array([frame.samples for frame in frames])
    ts = [frame.t for frame in frames]
    rel = np.linspace(0.0, 1.0, dens.shape[1])

    fig, ax = plt.subplots(figsize=(7, 4.5))
    mesh = ax.pcolormesh(rel, ts, dens, shading="auto", cmap="viridis")
    fig.colorbar(mesh, ax=ax, label=r"$|\psi|^2$")
    ax.set_xlabel("window fraction (x − window start)/Λ")
    ax.set_ylabel("t")
    ax.set_title("density evolution")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
