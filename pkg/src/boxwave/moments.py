"""Position/momentum moments over a window, and the envelope decomposition.

For plane-wave states the momentum moments are exact coefficient sums.  For
Bloch-sine states they split into carrier and envelope parts,

    ⟨p⟩  = p̄ + ⟨p⟩_φ(t),      ⟨p²⟩ = p̄² + 2p̄⟨p⟩_φ(t) + ⟨p²⟩_φ(t),
    ⟨x⟩  = (p̄/m)t + ⟨x⟩_φ(t),  ⟨x²⟩ likewise,

with the envelope moments taken on the moving window [(p̄/m)t, L+(p̄/m)t];
(Δx, Δp) of the full state equal those of the envelope alone.  Momentum
moments are the boundary-inclusive integrals ∫ψ*(ħ/i ∂)ψ and ∫ψ*(ħ/i ∂)²ψ,
with no symmetrized operator variants.
"""

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import QuadratureConvergenceError
from .quadrature import DEFAULT_QUADRATURE, grid as quad_grid
from .states import (
    BlochSineState,
    DEFAULT_CONSTANTS,
    PlaneWaveState,
    density,
    drift_velocity,
    recurrence_period,
)

# Window kinds understood by `uncertainty_report`.
WINDOW_RULES = ("base", "moving_node", "min_cut")
BOUND_KINDS = ("none", "cut", "min_density", "maxmin", "judge")

_REFINE_TOL = 1e-9
_DECOMPOSITION_TOL = 1e-8


@dataclass(frozen=True)
class Window:
    """Integration window [start, start + width]."""

    start: float
    width: float

    def __post_init__(self):
        if not (self.width > 0):
            raise ValueError(f"window width must be positive, got {self.width}")

    @property
    def center(self):
        return self.start + 0.5 * self.width

    @property
    def end(self):
        return self.start + self.width


@dataclass(frozen=True)
class UncertaintyReport:
    window: Window
    t: float
    mean_x: float
    mean_x2: float
    mean_p: float
    mean_p2: float
    dx: float
    dp: float
    product: float
    bound_kind: str
    bound_value: float

    @property
    def satisfied(self):
        if self.bound_kind == "none":
            return True
        return self.product >= self.bound_value - 1e-9


def natural_window(state, t, consts=DEFAULT_CONSTANTS):
    """Base window for plane waves, the moving node window for Bloch states."""
    L = state.domain.length
    if isinstance(state, BlochSineState):
        return Window(start=state.drift_velocity(consts) * t, width=L)
    return Window(start=state.domain.x_lo, width=L)


def _window_for_rule(state, t, window_rule, consts):
    if window_rule == "base":
        return Window(start=state.domain.x_lo, width=state.domain.length)
    if window_rule == "moving_node":
        if not isinstance(state, BlochSineState):
            raise ValueError("window rule 'moving_node' applies to Bloch-sine states only")
        return natural_window(state, t, consts)
    if window_rule == "min_cut":
        from . import bounds as _bounds  # local import; bounds builds on this module

        res = _bounds.min_density_cut(state, t, consts, with_moments=False)
        return Window(start=res.witness, width=state.domain.length)
    raise ValueError(f"unknown window rule {window_rule!r}; expected one of {WINDOW_RULES}")


def _envelope_p_moments_quadrature(state, t, consts, quad):
    L = state.domain.length
    xs, ws = quad_grid(0.0, L, quad)
    kappa = np.pi * state.mode_indices / L
    p_k = consts.hbar * kappa
    phased = state.amplitudes * np.exp(-1j * p_k**2 * t / (2.0 * consts.mass * consts.hbar))
    sin_tbl = np.sin(np.multiply.outer(xs, kappa))
    cos_tbl = np.cos(np.multiply.outer(xs, kappa))
    root = math.sqrt(2.0 / L)
    phi = root * (sin_tbl @ phased)
    dphi = root * (cos_tbl @ (kappa * phased))
    d2phi = -root * (sin_tbl @ (kappa**2 * phased))
    mean_p = float(np.sum(ws * np.real(np.conj(phi) * (-1j * consts.hbar) * dphi)))
    mean_p2 = float(np.sum(ws * np.real(np.conj(phi) * (-(consts.hbar**2)) * d2phi)))
    return mean_p, mean_p2


def _envelope_p_moments_selection_rule(state, t, consts):
    # Sine-mode matrix elements of p vanish unless j+k is odd:
    # ∫ sin(jπx/L) cos(kπx/L) dx = (1 − (−1)^{j+k}) jL / (π(j² − k²)).
    L = state.domain.length
    ks = state.mode_indices
    p_k = np.pi * consts.hbar * ks / L
    phased = state.amplitudes * np.exp(-1j * p_k**2 * t / (2.0 * consts.mass * consts.hbar))
    j = ks[:, None].astype(float)
    k = ks[None, :].astype(float)
    parity = 1.0 - (-1.0) ** (j + k)
    with np.errstate(divide="ignore", invalid="ignore"):
        overlap = np.where(j == k, 0.0, parity * j * L / (np.pi * (j**2 - k**2)))
    weights = (2.0 / L) * (np.pi * k / L) * overlap
    mean_p = consts.hbar * float(
        np.real(-1j * np.einsum("j,jk,k->", np.conj(phased), weights, phased))
    )
    mean_p2 = float(np.sum(np.abs(phased) ** 2 * p_k**2))
    return mean_p, mean_p2


def envelope_p_moments(state, t, consts=DEFAULT_CONSTANTS, quad=DEFAULT_QUADRATURE,
                       method="quadrature"):
    """(⟨p⟩_φ, ⟨p²⟩_φ) of the sine envelope in its own window [0, L]."""
    if method == "quadrature":
        return _envelope_p_moments_quadrature(state, t, consts, quad)
    if method == "selection_rule":
        return _envelope_p_moments_selection_rule(state, t, consts)
    raise ValueError(f"unknown method {method!r}")


def p_moments(state, t, consts=DEFAULT_CONSTANTS, quad=DEFAULT_QUADRATURE,
              envelope_method="quadrature"):
    """(⟨p⟩, ⟨p²⟩) at time t.

    Plane-wave states: exact sums Σ|c_n|² p_n and Σ|c_n|² p_n².  Bloch-sine
    states: carrier/envelope decomposition; Δp is window-shift invariant.
    """
    if isinstance(state, PlaneWaveState):
        p = state.mode_momenta(consts)
        w = np.abs(state.amplitudes) ** 2
        return float(np.sum(w * p)), float(np.sum(w * p * p))
    if isinstance(state, BlochSineState):
        p_phi, p2_phi = envelope_p_moments(state, t, consts, quad, envelope_method)
        p_bar = state.p_bar
        return p_bar + p_phi, p_bar**2 + 2.0 * p_bar * p_phi + p2_phi
    raise TypeError(f"unsupported state type {type(state).__name__}")


def _centered_x_moments_once(state, t, window, consts, quad):
    c = window.center
    half = 0.5 * window.width
    us, ws = quad_grid(-half, half, quad)
    rho = density(state, c + us, t, consts)
    m1 = float(np.sum(ws * us * rho))
    m2 = float(np.sum(ws * us * us * rho))
    return m1, m2


def centered_x_moments(state, t, window, consts=DEFAULT_CONSTANTS, quad=DEFAULT_QUADRATURE,
                       check_convergence=True):
    """First/second density moments about the window center.

    Returns (m1, m2, center) with ⟨x⟩ = center + m1 and Var(x) = m2 − m1²;
    the centered form keeps the variance stable when the window sits far from
    the origin.  Raises QuadratureConvergenceError if doubling the panel
    count moves either moment by more than 1e-9 (relative to the window).
    """
    m1, m2 = _centered_x_moments_once(state, t, window, consts, quad)
    if check_convergence:
        r1, r2 = _centered_x_moments_once(state, t, window, consts, quad.refined())
        scale = max(1.0, window.width, window.width**2)
        delta = max(abs(m1 - r1), abs(m2 - r2)) / scale
        if delta > _REFINE_TOL:
            raise QuadratureConvergenceError(
                f"x-moment panel refinement moved the result by {delta:.3e} "
                f"(> {_REFINE_TOL:g}); increase the panel count"
            )
        m1, m2 = r1, r2
    return m1, m2, window.center


def x_moments(state, t, window, consts=DEFAULT_CONSTANTS, quad=DEFAULT_QUADRATURE,
              check_convergence=True, verify_decomposition=True):
    """(⟨x⟩, ⟨x²⟩) over the window; window width must equal the box length."""
    L = state.domain.length
    if abs(window.width - L) > 1e-9 * L:
        raise ValueError(
            f"moment window width must equal the envelope length {L:g}, got {window.width:g}"
        )
    m1, m2, c = centered_x_moments(state, t, window, consts, quad, check_convergence)
    mean_x = c + m1
    mean_x2 = m2 + 2.0 * c * m1 + c * c
    if verify_decomposition and isinstance(state, BlochSineState):
        vt = state.drift_velocity(consts) * t
        if abs(window.start - vt) <= 1e-9 * L:
            # Carrier/envelope split: ⟨x⟩ must equal (p̄/m)t + ⟨x⟩_φ.
            env = BlochSineState(domain=state.domain, p_bar=0.0, coeffs=state.coeffs)
            e1, e2, ec = centered_x_moments(env, t, Window(0.0, L), consts, quad,
                                            check_convergence=False)
            mean_x_env = ec + e1
            if abs(mean_x - (vt + mean_x_env)) > _DECOMPOSITION_TOL * max(1.0, abs(mean_x)):
                raise QuadratureConvergenceError(
                    "moving-window moments disagree with the carrier/envelope "
                    f"decomposition: {mean_x!r} vs {vt + mean_x_env!r}"
                )
    return mean_x, mean_x2


def spreads(state, t, window, consts=DEFAULT_CONSTANTS, quad=DEFAULT_QUADRATURE):
    """(Δx, Δp) over the window, with the variance formed in centered form."""
    m1, m2, _ = centered_x_moments(state, t, window, consts, quad)
    var_x = m2 - m1 * m1
    mp, mp2 = p_moments(state, t, consts, quad)
    var_p = mp2 - mp * mp
    if var_x < -1e-12 or var_p < -1e-12:
        raise ArithmeticError(f"negative variance: var_x={var_x!r}, var_p={var_p!r}")
    return math.sqrt(max(var_x, 0.0)), math.sqrt(max(var_p, 0.0))


def uncertainty_report(state, t, window_rule="base", bound_kind="none",
                       consts=DEFAULT_CONSTANTS, quad=DEFAULT_QUADRATURE):
    """Assemble moments, deviations, product, and the requested lower bound."""
    if bound_kind not in BOUND_KINDS:
        raise ValueError(f"unknown bound kind {bound_kind!r}; expected one of {BOUND_KINDS}")
    window = _window_for_rule(state, t, window_rule, consts)
    m1, m2, c = centered_x_moments(state, t, window, consts, quad)
    mean_x = c + m1
    mean_x2 = m2 + 2.0 * c * m1 + c * c
    var_x = max(m2 - m1 * m1, 0.0)
    mean_p, mean_p2 = p_moments(state, t, consts, quad)
    var_p = max(mean_p2 - mean_p * mean_p, 0.0)
    dx = math.sqrt(var_x)
    dp = math.sqrt(var_p)

    bound_value = 0.0
    if bound_kind != "none":
        from . import bounds as _bounds

        if bound_kind == "cut":
            bound_value = _bounds.cut_bound(state, t, window.end, consts, quad,
                                            with_moments=False).value
        elif bound_kind == "min_density":
            bound_value = _bounds.min_density_cut(state, t, consts, with_moments=False).value
        elif bound_kind == "maxmin":
            bound_value = _bounds.maxmin_bound(state, consts, with_moments=False).value
        elif bound_kind == "judge":
            bound_value = _bounds.judge_minimize(state, t, consts, quad=quad).bound

    return UncertaintyReport(
        window=window,
        t=float(t),
        mean_x=mean_x,
        mean_x2=mean_x2,
        mean_p=mean_p,
        mean_p2=mean_p2,
        dx=dx,
        dp=dp,
        product=dx * dp,
        bound_kind=bound_kind,
        bound_value=bound_value,
    )


def boundary_force_terms(ks, amplitudes, length, t, consts=DEFAULT_CONSTANTS):
    """Raw window-edge force for arbitrary (k, amplitude) envelope data.

    (1/mL)·{|Σ c_k p_k e^{−i p_k² t/2mħ}|² − |Σ (−1)^k c_k p_k e^{−i p_k² t/2mħ}|²};
    quadratic in the amplitudes, no normalization assumed.
    """
    ks = np.asarray(ks, dtype=np.int64)
    cs = np.asarray(amplitudes, dtype=complex)
    p_k = np.pi * consts.hbar * ks / length
    phased = cs * p_k * np.exp(-1j * p_k**2 * t / (2.0 * consts.mass * consts.hbar))
    plus = np.sum(phased)
    minus = np.sum(((-1.0) ** ks) * phased)
    return float((abs(plus) ** 2 - abs(minus) ** 2) / (consts.mass * length))


def boundary_force(state, t, consts=DEFAULT_CONSTANTS):
    """d⟨p⟩_φ/dt: the force the moving window edges exert on the envelope."""
    if not isinstance(state, BlochSineState):
        raise TypeError("boundary_force is defined for Bloch-sine states")
    return boundary_force_terms(state.mode_indices, state.amplitudes,
                                state.domain.length, t, consts)


class ConvergenceNorm(NamedTuple):
    sum_abs: float
    sum_sq: float
    exceeds_cap: bool


def convergence_norm(state, consts=DEFAULT_CONSTANTS, cap=None):
    """Σ|c_k p_k| and Σ|c_k p_k|² of the envelope series (truncated sums).

    A finite Σ|c_k p_k| makes the envelope-derivative series absolutely
    convergent and the window-edge force vanish in the large-box limit; when
    `cap` is given the first sum is checked against it.
    """
    if not isinstance(state, BlochSineState):
        raise TypeError("convergence_norm is defined for Bloch-sine states")
    terms = np.abs(state.amplitudes) * state.mode_momenta(consts)
    sum_abs = float(np.sum(terms))
    sum_sq = float(np.sum(terms**2))
    return ConvergenceNorm(sum_abs, sum_sq, cap is not None and sum_abs > cap)


def ehrenfest_residual(state, t, dt=None, consts=DEFAULT_CONSTANTS, quad=DEFAULT_QUADRATURE):
    """|d⟨x⟩/dt − ⟨p⟩/m| with ⟨x⟩ differenced on drift-following windows.

    The window at each sample time s is [anchor + v·s, anchor + v·s + L] with
    v the state's drift velocity, so both sides see the same content.  dt
    defaults to recurrence_period/1000.
    """
    if dt is None:
        dt = recurrence_period(state, consts) / 1000.0
    if dt <= 0:
        raise ValueError(f"dt must be positive, got {dt}")
    v = drift_velocity(state, consts)
    anchor = 0.0 if isinstance(state, BlochSineState) else state.domain.x_lo
    L = state.domain.length

    def mean_x(s):
        w = Window(start=anchor + v * s, width=L)
        m1, _, c = centered_x_moments(state, s, w, consts, quad, check_convergence=False)
        return c + m1

    velocity = (mean_x(t + dt) - mean_x(t - dt)) / (2.0 * dt)
    mean_p, _ = p_moments(state, t, consts, quad)
    return abs(velocity - mean_p / consts.mass)
