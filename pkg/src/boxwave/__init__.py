"""boxwave: free-particle states on a periodic box and their uncertainty bounds."""

from .bounds import (
    BoundResult,
    ChainCheck,
    JudgeResult,
    chain_check,
    cut_bound,
    judge_minimize,
    maxmin_bound,
    min_density_cut,
    trig_relation,
)
from .catalog import (
    ElementaryParams,
    ThreeWavePacketParams,
    bloch_pair_state,
    elementary_closed_forms,
    half_box_state,
    packet_density_closed_form,
    packet_min_and_maxmin,
    plane_wave_state,
    sine_test_state,
    three_wave_packet,
    time_at_alpha,
)
from .errors import (
    BoxwaveError,
    NormalizationError,
    QuadratureConvergenceError,
    SpecFormatError,
    TruncationError,
)
from .moments import (
    UncertaintyReport,
    Window,
    boundary_force,
    convergence_norm,
    ehrenfest_residual,
    natural_window,
    p_moments,
    uncertainty_report,
    x_moments,
)
from .quadrature import QuadratureConfig
from .states import (
    BlochSineState,
    BoxDomain,
    Constants,
    GridDensity,
    PlaneWaveState,
    density,
    evaluate,
    mean_momentum,
    project_to_sine,
    recurrence_period,
    sample_density,
)

__version__ = "0.1.0"

__all__ = [
    "BlochSineState",
    "BoundResult",
    "BoxDomain",
    "BoxwaveError",
    "ChainCheck",
    "Constants",
    "ElementaryParams",
    "GridDensity",
    "JudgeResult",
    "NormalizationError",
    "PlaneWaveState",
    "QuadratureConfig",
    "QuadratureConvergenceError",
    "SpecFormatError",
    "ThreeWavePacketParams",
    "TruncationError",
    "UncertaintyReport",
    "Window",
    "bloch_pair_state",
    "boundary_force",
    "chain_check",
    "convergence_norm",
    "cut_bound",
    "density",
    "ehrenfest_residual",
    "elementary_closed_forms",
    "evaluate",
    "half_box_state",
    "judge_minimize",
    "maxmin_bound",
    "mean_momentum",
    "min_density_cut",
    "natural_window",
    "p_moments",
    "packet_density_closed_form",
    "packet_min_and_maxmin",
    "plane_wave_state",
    "project_to_sine",
    "recurrence_period",
    "sample_density",
    "sine_test_state",
    "three_wave_packet",
    "time_at_alpha",
    "trig_relation",
    "uncertainty_report",
    "x_moments",
]
