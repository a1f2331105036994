"""Scalar minimization: coarse grid bracketing plus golden-section refinement.

The objective functions here (densities, shifted variances) are smooth and
low-frequency, so a coarse grid already isolates every basin; golden-section
then drives the witness to the requested tolerance.  Ties are resolved toward
the smallest coordinate and reported through a `degenerate` flag.
"""

import math
from dataclasses import dataclass

import numpy as np

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
_INV_PHI2 = (3.0 - math.sqrt(5.0)) / 2.0

# Candidate basins within this fraction of the grid spread are refined too,
# so coarse sampling error cannot hide the true global minimum.
_BASIN_REL_TOL = 1e-4
_MAX_BASINS = 16


@dataclass(frozen=True)
class GridSearchResult:
    x: float
    value: float
    degenerate: bool


def golden_minimize(f, a, b, tol):
    """Golden-section search on [a, b]; returns (x, f(x)) with |bracket| <= tol."""
    a, b = min(a, b), max(a, b)
    h = b - a
    if h <= tol:
        x = 0.5 * (a + b)
        return x, f(x)
    n = int(math.ceil(math.log(tol / h) / math.log(_INV_PHI)))
    c = a + _INV_PHI2 * h
    d = a + _INV_PHI * h
    yc = f(c)
    yd = f(d)
    for _ in range(n - 1):
        h *= _INV_PHI
        if yc < yd:
            b, d, yd = d, c, yc
            c = a + _INV_PHI2 * h
            yc = f(c)
        else:
            a, c, yc = c, d, yd
            d = a + _INV_PHI * h
            yd = f(d)
    if yc < yd:
        return c, yc
    return d, yd


def _parabolic_polish(f, x, h, lo, hi):
    """Sharpen a golden-section minimum below the sqrt(eps) comparison floor.

    Near a smooth minimum, function-value comparisons degrade once the
    bracket shrinks to ~sqrt(eps); two parabola fits through points spaced
    wider than that floor recover the vertex to ~1e-11 of the scan range.
    """
    for _ in range(2):
        if x - h < lo or x + h > hi:
            return x
        fm, f0, fp = f(x - h), f(x), f(x + h)
        denom = fm - 2.0 * f0 + fp
        if denom <= 0.0:
            return x
        shift = 0.5 * h * (fm - fp) / denom
        if abs(shift) > h:
            return x
        x = x + shift
        h *= 0.03
    return x


def _local_minima(values, periodic):
    n = len(values)
    idx = []
    for i in range(n):
        if not periodic and (i == 0 or i == n - 1):
            left = values[i - 1] if i > 0 else np.inf
            right = values[i + 1] if i < n - 1 else np.inf
        else:
            left = values[(i - 1) % n]
            right = values[(i + 1) % n]
        if values[i] <= left and values[i] <= right:
            idx.append(i)
    return idx


def minimize_on_grid(f, lo, hi, num, tol, periodic=False):
    """Global minimum of f on [lo, hi) by grid scan plus golden refinement.

    `f` must accept an ndarray for the scan stage and a scalar during
    refinement.  With `periodic=True` the interval is treated as one full
    period of f (brackets may wrap).  Exact ties are broken toward the
    smallest x and flagged as degenerate.
    """
    xs = lo + (hi - lo) * np.arange(num) / num
    vs = np.asarray(f(xs), dtype=float)
    vmin = float(vs.min())
    vmax = float(vs.max())
    spread = vmax - vmin
    scale = max(abs(vmin), abs(vmax), 1e-300)

    if spread <= 1e-13 * scale:
        # Flat objective: every point minimizes; report the interval start.
        return GridSearchResult(x=float(lo), value=float(vs[0]), degenerate=True)

    step = (hi - lo) / num
    basin_tol = _BASIN_REL_TOL * spread
    candidates = [i for i in _local_minima(vs, periodic) if vs[i] <= vmin + basin_tol]
    candidates.sort(key=lambda i: vs[i])
    candidates = candidates[:_MAX_BASINS]

    refined = []
    for i in candidates:
        if periodic:
            a = xs[i] - step
            b = xs[i] + step
        else:
            a = max(lo, xs[i] - step)
            b = min(hi, xs[i] + step)
        x_star, v_star = golden_minimize(f, a, b, tol)
        polish_lo = lo - step if periodic else lo
        polish_hi = hi + step if periodic else hi
        x_star = _parabolic_polish(f, x_star, 0.125 * step, polish_lo, polish_hi)
        v_star = float(f(x_star))
        # A flat basin gives no improvement; keep the bracket edge then, so
        # the smallest-x tie rule matches a brute-force grid argmin.
        v_edge = float(f(a))
        if v_edge <= v_star:
            x_star, v_star = a, v_edge
        if periodic:
            x_star = lo + (x_star - lo) % (hi - lo)
            if hi - x_star <= 1e-9 * (hi - lo):  # wrap artifact: hi is lo
                x_star = lo
        refined.append((float(x_star), float(v_star)))

    best = min(v for _, v in refined)
    tie_tol = 1e-10 * spread + 1e-15 * scale
    ties = [x for x, v in refined if v <= best + tie_tol]
    x_min = min(ties)
    v_min = next(v for x, v in refined if x == x_min)
    return GridSearchResult(x=x_min, value=v_min, degenerate=len(ties) > 1)


def maximize_on_grid(f, lo, hi, num, tol, periodic=False):
    """Mirror of `minimize_on_grid` for maximization."""
    res = minimize_on_grid(lambda x: -f(x), lo, hi, num, tol, periodic=periodic)
    return GridSearchResult(x=res.x, value=-res.value, degenerate=res.degenerate)
