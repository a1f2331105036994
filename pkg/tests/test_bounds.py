import math

import numpy as np
import pytest

from boxwave.bounds import (
    chain_check,
    cut_bound,
    judge_minimize,
    maxmin_bound,
    min_density_cut,
    trig_relation,
)
from boxwave.catalog import (
    ElementaryParams,
    ThreeWavePacketParams,
    bloch_pair_state,
    elementary_closed_forms,
    half_box_state,
    packet_min_level,
    plane_wave_state,
    sine_test_state,
    three_wave_packet,
    time_at_alpha,
)
from boxwave.quadrature import QuadratureConfig, grid as quad_grid
from boxwave.states import density, normalized_bloch_sine, BoxDomain
from conftest import L2PI, random_plane_state

PACKET = ThreeWavePacketParams(n=1, b=0.5, length=L2PI)


class TestCutBound:
    def test_plane_wave_vanishes_at_any_cut(self, rng):
        state = plane_wave_state(2, L2PI)
        for cut in rng.uniform(-math.pi, math.pi, 5):
            res = cut_bound(state, 0.0, float(cut))
            assert res.value == pytest.approx(0.0, abs=1e-12)
            assert res.satisfied

    def test_packet_edge_cut_at_t0(self):
        state = three_wave_packet(PACKET)
        res = cut_bound(state, 0.0, math.pi)
        assert res.value == pytest.approx(0.5, abs=1e-12)
        assert res.satisfied
        assert res.lhs_product >= 0.5

    def test_packet_edge_cut_general_b(self):
        for b in np.linspace(0.05, 3.0, 12):
            state = three_wave_packet(ThreeWavePacketParams(n=1, b=float(b), length=L2PI))
            res = cut_bound(state, 0.0, math.pi, with_moments=False)
            expected = 0.5 * abs(1.0 - (1 - 2 * b) ** 2 / (1 + 2 * b * b))
            assert res.value == pytest.approx(expected, abs=1e-12)

    def test_packet_cut_half_period_later(self):
        # cos(pi alpha) = -1 pushes the edge density to (1+2b)^2/(1+2b^2)
        state = three_wave_packet(PACKET)
        t = time_at_alpha(PACKET, 1.0)
        res = cut_bound(state, t, math.pi, with_moments=False)
        assert res.density_level == pytest.approx(8.0 / 3.0, abs=1e-12)
        assert res.value == pytest.approx(5.0 / 6.0, abs=1e-12)
        # direct density cross-check
        assert res.density_level == pytest.approx(L2PI * density(state, math.pi, t), abs=1e-13)


class TestMinDensityCut:
    def test_plane_wave_vanishes(self):
        res = min_density_cut(plane_wave_state(1, L2PI), 0.0)
        assert res.value == pytest.approx(0.0, abs=1e-12)
        assert res.degenerate
        assert res.satisfied

    def test_bloch_states_pin_half_hbar(self, rng):
        state = normalized_bloch_sine(BoxDomain(length=L2PI), 1.5, [(1, 0.8), (3, 0.6)])
        for t in rng.uniform(0.0, 30.0, 3):
            res = min_density_cut(state, float(t), with_moments=False)
            assert res.value == pytest.approx(0.5, abs=1e-10)
            assert res.density_level == pytest.approx(0.0, abs=1e-10)

    def test_packet_quarter_period_level(self):
        # closed-form minimum vs the grid+golden argmin
        state = three_wave_packet(PACKET)
        t = time_at_alpha(PACKET, 0.5)
        res = min_density_cut(state, t, with_moments=False)
        assert res.density_level == pytest.approx(2.0 / 3.0, abs=1e-10)
        assert res.value == pytest.approx(1.0 / 6.0, abs=1e-10)
        assert res.density_level == pytest.approx(packet_min_level(PACKET, t), abs=1e-10)

    def test_witness_matches_brute_force(self, rng):
        # golden-refined argmin vs a brute-force grid with its cell
        # parabolically interpolated (a bare 1e6 grid only localizes the
        # minimum to half a cell)
        n_grid = 1_000_000
        for _ in range(5):
            state = random_plane_state(rng)
            t = float(rng.uniform(0.0, 10.0))
            res = min_density_cut(state, t, with_moments=False)
            xs = -math.pi + L2PI * np.arange(n_grid) / n_grid
            vs = density(state, xs, t)
            i = int(np.argmin(vs))
            h = L2PI / n_grid
            fm, f0, fp = vs[(i - 1) % n_grid], vs[i], vs[(i + 1) % n_grid]
            denom = fm - 2 * f0 + fp
            brute = xs[i] + (0.5 * h * (fm - fp) / denom if denom > 0 else 0.0)
            delta = abs(res.witness - brute)
            assert min(delta, L2PI - delta) < 1e-9 * L2PI


class TestMaxminBound:
    def test_packet_levels(self):
        for b in (0.25, 0.5, 1.0, 2.0):
            state = three_wave_packet(ThreeWavePacketParams(n=1, b=b, length=L2PI))
            res = maxmin_bound(state, with_moments=False)
            assert res.density_level == pytest.approx(1.0 / (1 + 2 * b * b), abs=1e-6)

    def test_packet_bound_value(self):
        res = maxmin_bound(three_wave_packet(PACKET), with_moments=False)
        assert res.value == pytest.approx(1.0 / 6.0, abs=1e-8)

    def test_small_b_limit(self):
        state = three_wave_packet(ThreeWavePacketParams(n=1, b=1e-4, length=L2PI))
        res = maxmin_bound(state, with_moments=False)
        assert res.value < 1e-7

    def test_equals_min_over_time_of_min_density_values(self):
        state = three_wave_packet(PACKET)
        from boxwave.states import recurrence_period

        T = recurrence_period(state)
        sampled = min(
            min_density_cut(state, t, with_moments=False).value
            for t in np.linspace(0.0, T, 64, endpoint=False)
        )
        res = maxmin_bound(state, with_moments=False)
        assert res.value <= sampled + 1e-8
        assert res.value == pytest.approx(1.0 / 6.0, abs=1e-8)

    def test_bloch_state_flat_maxmin(self):
        state = half_box_state(ElementaryParams(n=2, k=1, length=L2PI))
        res = maxmin_bound(state, with_moments=False)
        assert res.value == pytest.approx(0.5, abs=1e-10)


class TestJudge:
    def test_plane_wave_flat(self):
        res = judge_minimize(plane_wave_state(3, L2PI), 0.0)
        assert res.degenerate
        assert res.dx_gamma == pytest.approx(L2PI / math.sqrt(12.0), abs=1e-10)
        assert res.bound == pytest.approx(0.0, abs=1e-10)
        assert abs(res.mean_x_at_gamma) < 1e-8
        assert res.curvature_ok

    def test_recentring_aligns_peak(self):
        # k=1 half-box envelope: the optimal shift puts the hump at x = 0
        state = half_box_state(ElementaryParams(n=0, k=1, length=L2PI))
        res = judge_minimize(state, 0.0)
        assert abs(res.mean_x_at_gamma) < 1e-8
        assert res.curvature_ok
        closed = elementary_closed_forms(ElementaryParams(n=0, k=1, length=L2PI))
        assert res.dx_gamma == pytest.approx(closed["dx"], abs=1e-8)
        assert res.gamma_star == pytest.approx(math.pi, abs=1e-6)
        assert res.bound == pytest.approx(0.5, abs=1e-10)

    def test_packet_against_brute_force_scan(self):
        # oracle: 1e5-point gamma scan of the shifted variance
        state = three_wave_packet(PACKET)
        res = judge_minimize(state, 0.0)
        us, ws = quad_grid(-math.pi, math.pi, QuadratureConfig(panels=16))
        wu2 = ws * us * us
        gammas = L2PI * np.arange(100_000) / 100_000
        best_val = math.inf
        best_gamma = 0.0
        for chunk in np.array_split(gammas, 50):
            pts = us[None, :] + chunk[:, None]
            vals = density(state, pts.ravel(), 0.0).reshape(pts.shape) @ wu2
            i = int(np.argmin(vals))
            if vals[i] < best_val:
                best_val = float(vals[i])
                best_gamma = float(chunk[i])
        assert res.dx_gamma**2 <= best_val + 1e-10
        assert abs(res.gamma_star - best_gamma) < 2 * L2PI / 100_000
        assert abs(res.mean_x_at_gamma) < 1e-8
        assert res.curvature_ok

    def test_stationarity_and_curvature_on_random_states(self, rng):
        for _ in range(10):
            state = random_plane_state(rng)
            t = float(rng.uniform(0.0, 10.0))
            res = judge_minimize(state, t)
            assert abs(res.mean_x_at_gamma) < 1e-8
            assert res.curvature_ok


class TestChain:
    def test_plane_wave_equalities(self):
        res = chain_check(plane_wave_state(2, L2PI), 0.0)
        assert res.min_density_bound == pytest.approx(0.0, abs=1e-10)
        assert res.judge_bound == pytest.approx(0.0, abs=1e-10)
        assert res.min_cut_product == pytest.approx(res.judge_product, abs=1e-9)
        assert res.ok

    def test_packet_chain_holds(self):
        res = chain_check(three_wave_packet(PACKET), 0.0)
        assert res.ok
        assert res.min_density_bound >= res.judge_bound - 1e-9
        assert res.min_cut_product >= res.judge_product - 1e-9

    def test_random_states_chain(self, rng):
        quad = QuadratureConfig(panels=24)
        for _ in range(25):
            state = random_plane_state(rng)
            t = float(rng.uniform(0.0, 20.0))
            assert chain_check(state, t, quad=quad).ok


class TestTrig:
    def test_sine_state_values(self):
        state = sine_test_state(L2PI)
        res = trig_relation(state, 0.0)
        assert res.value == pytest.approx(0.0, abs=1e-10)  # <cos> = 0
        # dp = 2 pi hbar/L = 1 and the sine spread is sqrt(3) L/4
        assert res.lhs_product == pytest.approx(math.sqrt(3.0) * L2PI / 4.0, abs=1e-10)
        assert res.satisfied

    def test_plane_wave_trivial(self):
        res = trig_relation(plane_wave_state(1, L2PI), 0.0)
        assert res.value == pytest.approx(0.0, abs=1e-12)
        assert res.lhs_product == pytest.approx(0.0, abs=1e-12)  # dp = 0
        assert res.satisfied

    def test_plane_wave_sine_spread(self):
        # uniform density: spread of (L/2) sin(2 pi x/L) is L/(2 sqrt 2)
        from boxwave.moments import natural_window
        from boxwave.quadrature import grid

        state = plane_wave_state(1, L2PI)
        w = natural_window(state, 0.0)
        xs, ws = grid(w.start, w.end)
        rho = density(state, xs, 0.0)
        s = 0.5 * L2PI * np.sin(2 * np.pi * xs / L2PI)
        spread = math.sqrt(float(np.sum(ws * s * s * rho)) - float(np.sum(ws * s * rho)) ** 2)
        assert spread == pytest.approx(L2PI / (2 * math.sqrt(2.0)), abs=1e-10)

    def test_packet_satisfied(self):
        res = trig_relation(three_wave_packet(PACKET), 0.0)
        assert res.lhs_product >= res.value - 1e-9


class TestOrderingInvariants:
    def test_prescription_ordering_random_suite(self, rng):
        quad = QuadratureConfig(panels=24)
        for _ in range(10):
            state = random_plane_state(rng)
            t = float(rng.uniform(0.0, 10.0))
            res = chain_check(state, t, quad=quad)
            assert res.min_density_bound >= res.judge_bound - 1e-9
            assert res.min_cut_product >= res.judge_product - 1e-9

    def test_robertson_validity_all_prescriptions(self, rng):
        for _ in range(5):
            state = random_plane_state(rng)
            t = float(rng.uniform(0.0, 10.0))
            for res in (
                cut_bound(state, t, 0.3),
                min_density_cut(state, t),
                maxmin_bound(state, t_eval=t),
                trig_relation(state, t),
            ):
                assert res.lhs_product >= res.value - 1e-9

    def test_bound_values_lie_in_range(self, rng):
        for _ in range(5):
            state = random_plane_state(rng)
            t = float(rng.uniform(0.0, 10.0))
            for res in (min_density_cut(state, t, with_moments=False),
                        maxmin_bound(state, with_moments=False)):
                assert -1e-12 <= res.value <= 0.5 + 1e-12

    def test_bloch_pair_min_density(self):
        state = bloch_pair_state(ElementaryParams(n=2, k=1, length=L2PI, sign="minus"))
        res = min_density_cut(state, 0.7, with_moments=False)
        assert res.value == pytest.approx(0.5, abs=1e-10)
