"""Built-in replication table: closed-form values vs the generic machinery.

Each check recomputes one published closed-form number through the module
stack (moments, bounds, projections) and compares at a gate that reflects the
computation path: 1e-8 where the path is analytic, 1e-6 where quadrature or
grid search is involved.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import bounds as bounds_mod
from .catalog import (
    ElementaryParams,
    ThreeWavePacketParams,
    elementary_closed_forms,
    half_box_state,
    packet_min_and_maxmin,
    packet_momentum_spread,
    plane_wave_state,
    sine_test_state,
    three_wave_packet,
    time_at_alpha,
)
from .moments import p_moments, uncertainty_report
from .states import DEFAULT_CONSTANTS, mean_momentum

ANALYTIC_GATE = 1e-8
QUADRATURE_GATE = 1e-6


@dataclass(frozen=True)
class ReplicationRow:
    check: str
    description: str
    closed_form: float
    computed: float
    gate: float

    @property
    def abs_diff(self):
        return abs(self.closed_form - self.computed)

    @property
    def passed(self):
        return self.abs_diff <= self.gate


def _packet(b=0.5, n=1, length=2 * math.pi):
    return ThreeWavePacketParams(n=n, b=b, length=length)


def run_replication(consts=DEFAULT_CONSTANTS):
    """Compute every replication row; returns (rows, all_passed)."""
    rows = []
    L = 2 * math.pi
    hbar = consts.hbar

    params = _packet()
    packet = three_wave_packet(params, consts)

    mp, mp2 = p_moments(packet, 0.0, consts)
    rows.append(ReplicationRow(
        "packet-dp", "momentum spread of the three-wave packet (b=1/2)",
        packet_momentum_spread(params, consts),
        math.sqrt(mp2 - mp * mp), ANALYTIC_GATE,
    ))

    rows.append(ReplicationRow(
        "packet-cut-t0", "edge-cut bound at t=0, b=1/2",
        0.5 * hbar,
        bounds_mod.cut_bound(packet, 0.0, 0.5 * L, consts, with_moments=False).value,
        ANALYTIC_GATE,
    ))

    t_half_period = time_at_alpha(params, 1.0, consts)
    rows.append(ReplicationRow(
        "packet-cut-half-period", "edge-cut bound half a density period later",
        (5.0 / 6.0) * hbar,
        bounds_mod.cut_bound(packet, t_half_period, 0.5 * L, consts,
                             with_moments=False).value,
        ANALYTIC_GATE,
    ))

    t_quarter = time_at_alpha(params, 0.5, consts)
    rows.append(ReplicationRow(
        "packet-min-level", "L x min density at the quarter period (b=1/2)",
        2.0 / 3.0,
        bounds_mod.min_density_cut(packet, t_quarter, consts,
                                   with_moments=False).density_level,
        QUADRATURE_GATE,
    ))

    closed = packet_min_and_maxmin(params, "all", consts)
    maxmin = bounds_mod.maxmin_bound(packet, consts, with_moments=False)
    rows.append(ReplicationRow(
        "packet-maxmin-level", "time-maximized L x min density (b=1/2)",
        closed["maxmin"], maxmin.density_level, QUADRATURE_GATE,
    ))
    rows.append(ReplicationRow(
        "packet-maxmin-bound", "time-independent packet bound (b=1/2)",
        hbar / 6.0, maxmin.value, QUADRATURE_GATE,
    ))
    rows.append(ReplicationRow(
        "packet-maxmin-closed", "closed-form packet bound equals hbar/6 at b=1/2",
        hbar / 6.0, closed["bound"], ANALYTIC_GATE,
    ))

    plane = plane_wave_state(3, L, consts)
    plane_report = uncertainty_report(plane, 0.0, window_rule="base", consts=consts)
    rows.append(ReplicationRow(
        "planewave-dx", "uniform-density position spread L/sqrt(12)",
        L / math.sqrt(12.0), plane_report.dx, QUADRATURE_GATE,
    ))
    rows.append(ReplicationRow(
        "planewave-dp", "single-mode momentum spread", 0.0, plane_report.dp, ANALYTIC_GATE,
    ))
    rows.append(ReplicationRow(
        "planewave-min-bound", "min-density bound vanishes for the plane wave",
        0.0,
        bounds_mod.min_density_cut(plane, 0.0, consts, with_moments=False).value,
        QUADRATURE_GATE,
    ))
    rows.append(ReplicationRow(
        "planewave-judge-bound", "shift-prescription bound vanishes for the plane wave",
        0.0, bounds_mod.judge_minimize(plane, 0.0, consts).bound, QUADRATURE_GATE,
    ))

    sine = sine_test_state(L, consts)
    smp, smp2 = p_moments(sine, 0.0, consts)
    rows.append(ReplicationRow(
        "sine-dp", "momentum spread of sqrt(2/L) sin(2 pi x/L)",
        2.0 * math.pi * hbar / L, math.sqrt(smp2 - smp * smp), ANALYTIC_GATE,
    ))
    trig = bounds_mod.trig_relation(sine, 0.0, consts)
    rows.append(ReplicationRow(
        "sine-trig-spread", "spread of (L/2) sin(2 pi x/L) equals sqrt(3) L/4",
        math.sqrt(3.0) * L / 4.0,
        trig.lhs_product / math.sqrt(smp2 - smp * smp), QUADRATURE_GATE,
    ))

    elem = ElementaryParams(n=4, k=1, length=L)
    closed_elem = elementary_closed_forms(elem, consts)
    state_elem = half_box_state(elem, consts)
    report_elem = uncertainty_report(state_elem, 1.0, window_rule="moving_node", consts=consts)
    rows.append(ReplicationRow(
        "halfbox-dp-k1", "envelope momentum spread pi hbar/L",
        closed_elem["dp"], report_elem.dp, QUADRATURE_GATE,
    ))
    rows.append(ReplicationRow(
        "halfbox-dx-k1", "envelope position spread, k=1",
        closed_elem["dx"], report_elem.dx, QUADRATURE_GATE,
    ))
    rows.append(ReplicationRow(
        "halfbox-product-k1", "minimum uncertainty product (~0.567862 hbar)",
        closed_elem["product"], report_elem.product, QUADRATURE_GATE,
    ))
    elem2 = ElementaryParams(n=4, k=2, length=L)
    rows.append(ReplicationRow(
        "halfbox-product-k2", "uncertainty product, k=2",
        elementary_closed_forms(elem2, consts)["product"],
        uncertainty_report(half_box_state(elem2, consts), 0.0,
                           window_rule="moving_node", consts=consts).product,
        QUADRATURE_GATE,
    ))

    boost = 3.0
    profile = lambda x: np.exp(1j * boost * np.asarray(x, dtype=float)) * math.sqrt(
        2.0 / L
    ) * np.sin(np.pi * np.asarray(x, dtype=float) / L)
    rows.append(ReplicationRow(
        "profile-mean-momentum", "current integral recovers the carrier momentum",
        boost, mean_momentum(profile, L, consts), QUADRATURE_GATE,
    ))

    return rows, all(row.passed for row in rows)


def rows_as_dicts(rows):
    return [
        {
            "check": row.check,
            "description": row.description,
            "closed_form": row.closed_form,
            "computed": row.computed,
            "abs_diff": row.abs_diff,
            "gate": row.gate,
            "passed": row.passed,
        }
        for row in rows
    ]


REPLICATION_COLUMNS = ["check", "description", "closed_form", "computed",
                       "abs_diff", "gate", "passed"]
