"""Named states and their closed-form moments/bounds, used as oracles.

Everything the generic machinery computes for these states is also available
here in closed form, so each prescription can be cross-checked end to end:

* the three-wave packet (modes n−1, n, n+1 with side weight b),
* two-mode standing/travelling pairs (modes n±k),
* half-box sine states: a single sine envelope under a Bloch carrier,
* the pure plane wave and the test state √(2/L) sin(2πx/L).
"""

import math
from dataclasses import dataclass

import numpy as np

from .states import (
    BlochSineState,
    BoxDomain,
    DEFAULT_CONSTANTS,
    PlaneWaveState,
    evaluate,
    normalized_plane_waves,
)


@dataclass(frozen=True)
class ThreeWavePacketParams:
    """Central mode n with side modes n±1 carrying relative weight b ≥ 0."""

    n: int
    b: float
    length: float

    def __post_init__(self):
        if self.b < 0:
            raise ValueError(f"side weight b must be >= 0, got {self.b}")
        if self.length <= 0:
            raise ValueError(f"length must be positive, got {self.length}")


@dataclass(frozen=True)
class ElementaryParams:
    """Half-box sine state ψ_{n,k} or a two-mode pair, depending on use.

    For `half_box_state` the carrier momentum is πħn/L; for
    `bloch_pair_state` the modes are n±k on the ordinary circle (momenta
    2πħ(n±k)/L) combined with the given sign.
    """

    n: int
    k: int
    length: float
    sign: str = "none"

    def __post_init__(self):
        if self.k < 0:
            raise ValueError(f"k must be >= 0, got {self.k}")
        if self.length <= 0:
            raise ValueError(f"length must be positive, got {self.length}")
        if self.sign not in ("plus", "minus", "none"):
            raise ValueError(f"sign must be plus/minus/none, got {self.sign!r}")


def symmetric_domain(length):
    """Box [−L/2, L/2], the convention for the plane-wave family."""
    return BoxDomain(length=length, x_lo=-0.5 * length)


def three_wave_packet(params, consts=DEFAULT_CONSTANTS):
    """Packet with modes (n−1, b), (n, 1), (n+1, b); normalization 1/√(1+2b²).

    b = 0 degenerates to the pure plane wave of mode n.
    """
    weights = [(params.n - 1, params.b), (params.n, 1.0), (params.n + 1, params.b)]
    return normalized_plane_waves(symmetric_domain(params.length), weights)


def plane_wave_state(n, length, consts=DEFAULT_CONSTANTS):
    """Single plane-wave mode; uniform density 1/L."""
    return PlaneWaveState(domain=symmetric_domain(length), modes=((int(n), 1.0 + 0.0j),))


def sine_test_state(length, consts=DEFAULT_CONSTANTS):
    """The state √(2/L) sin(2πx/L): equal/opposite weights on modes ±1."""
    return normalized_plane_waves(symmetric_domain(length), [(1, 1.0), (-1, -1.0)])


def bloch_pair_state(params, consts=DEFAULT_CONSTANTS):
    """Two-mode superposition (n+k, 1/√2) and (n−k, ±1/√2); k = 0 → plane wave."""
    if params.k == 0:
        if params.sign == "minus":
            raise ValueError("k = 0 with sign 'minus' cancels to the empty state")
        return plane_wave_state(params.n, params.length, consts)
    if params.sign == "none":
        raise ValueError("sign 'none' is only allowed for k = 0")
    s = 1.0 if params.sign == "plus" else -1.0
    return normalized_plane_waves(
        symmetric_domain(params.length),
        [(params.n + params.k, 1.0), (params.n - params.k, s)],
    )


def half_box_state(params, consts=DEFAULT_CONSTANTS):
    """Single sine envelope sin(kπx/L) under a carrier of momentum πħn/L."""
    if params.k < 1:
        raise ValueError(f"half-box states need k >= 1, got {params.k}")
    p_bar = math.pi * consts.hbar * params.n / params.length
    return BlochSineState(
        domain=BoxDomain(length=params.length),
        p_bar=p_bar,
        coeffs=((params.k, 1.0 + 0.0j),),
    )


def packet_alpha(params, t, consts=DEFAULT_CONSTANTS):
    """Dimensionless phase α(t) = 2πħt/(mL²) driving the packet density.

    cos(πα) modulates the interference and the pattern translates by nαL;
    α advances by 2 over one recurrence period.
    """
    return 2.0 * math.pi * consts.hbar * t / (consts.mass * params.length**2)


def time_at_alpha(params, alpha, consts=DEFAULT_CONSTANTS):
    """Inverse of `packet_alpha`."""
    return alpha * consts.mass * params.length**2 / (2.0 * math.pi * consts.hbar)


def packet_density_closed_form(params, x, t, consts=DEFAULT_CONSTANTS):
    """|ψ(x,t)|² of the three-wave packet in closed form (requires b > 0):

        (1/((1+2b²)L)) [ (2b)² (cos 2π(x/L − nα) + cos(πα)/(2b))² + 1 − cos²(πα) ].
    """
    if params.b <= 0:
        raise ValueError("the closed-form density needs b > 0 (b = 0 is the plane wave)")
    b = params.b
    L = params.length
    alpha = packet_alpha(params, t, consts)
    beta = np.cos(2.0 * np.pi * (np.asarray(x, dtype=float) / L - params.n * alpha))
    ca = math.cos(math.pi * alpha)
    val = ((2 * b) ** 2 * (beta + ca / (2 * b)) ** 2 + 1.0 - ca * ca) / ((1 + 2 * b * b) * L)
    return float(val) if np.ndim(x) == 0 else val


def packet_min_level(params, t, consts=DEFAULT_CONSTANTS):
    """L × min_x |ψ(x,t)|² of the packet, by the two-branch closed form."""
    if params.b <= 0:
        raise ValueError("the closed-form minimum needs b > 0")
    b = params.b
    ca = abs(math.cos(math.pi * packet_alpha(params, t, consts)))
    norm = 1.0 + 2.0 * b * b
    if ca <= 2.0 * b:
        # interior minimum of the quadratic in cos
        return (1.0 - ca * ca) / norm
    if ca <= 1.0:
        # clamped at the nearest endpoint of cos
        return ((2 * b) ** 2 * (1.0 - ca / (2 * b)) ** 2 + 1.0 - ca * ca) / norm
    raise AssertionError(f"|cos| = {ca} > 1: branch coverage broken")


def packet_min_and_maxmin(params, t="all", consts=DEFAULT_CONSTANTS):
    """(L·min density, time-maximized L·min, resulting bound) for the packet.

    The time maximum is 1/(1+2b²), reached where cos(πα) = 0, giving the
    bound (ħ/2)(1 − 1/(1+2b²)); with t = "all" the instantaneous entry
    equals the maximized one.
    """
    maxmin = 1.0 / (1.0 + 2.0 * params.b**2)
    level = maxmin if t == "all" else packet_min_level(params, float(t), consts)
    return {
        "L_min_density": level,
        "maxmin": maxmin,
        "bound": 0.5 * consts.hbar * (1.0 - maxmin),
    }


def packet_momentum_spread(params, consts=DEFAULT_CONSTANTS):
    """Δp = √(2b²/(1+2b²)) · 2πħ/L, independent of t and n."""
    b = params.b
    return math.sqrt(2 * b * b / (1 + 2 * b * b)) * 2 * math.pi * consts.hbar / params.length


def packet_mean_momentum(params, consts=DEFAULT_CONSTANTS):
    """⟨p⟩ = 2πnħ/L for every b."""
    return 2 * math.pi * params.n * consts.hbar / params.length


def elementary_closed_forms(params, consts=DEFAULT_CONSTANTS):
    """Closed moments of the half-box state ψ_{n,k} on its moving window:

        Δp = kπħ/L,   Δx = (L/2√3) √(1 − 24/(2πk)²),   product = Δp·Δx.
    """
    if params.k < 1:
        raise ValueError(f"elementary closed forms need k >= 1, got {params.k}")
    L = params.length
    dp = params.k * math.pi * consts.hbar / L
    dx = (L / (2.0 * math.sqrt(3.0))) * math.sqrt(1.0 - 24.0 / (2.0 * math.pi * params.k) ** 2)
    return {"dp": dp, "dx": dx, "product": dp * dx}


def elementary_mean_x(params, t, consts=DEFAULT_CONSTANTS):
    """⟨x⟩ = L/2 + (p̄/m)t on the moving window."""
    p_bar = math.pi * consts.hbar * params.n / params.length
    return 0.5 * params.length + p_bar * t / consts.mass


def packet_density_matches(params, samples, consts=DEFAULT_CONSTANTS, rng=None):
    """Max |closed form − direct evaluation| over random (x, t); oracle hook."""
    rng = rng or np.random.default_rng(0)
    state = three_wave_packet(params, consts)
    L = params.length
    T = consts.mass * L * L / (math.pi * consts.hbar)
    xs = rng.uniform(-L / 2, L / 2, samples)
    ts = rng.uniform(0.0, T, samples)
    worst = 0.0
    for x, t in zip(xs, ts):
        direct = abs(evaluate(state, float(x), float(t), consts)) ** 2
        closed = packet_density_closed_form(params, float(x), float(t), consts)
        worst = max(worst, abs(direct - closed))
    return worst
