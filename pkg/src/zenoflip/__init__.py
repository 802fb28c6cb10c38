"""Resonant state-flip dynamics, measurement collapse, and timing games."""

from .resonance import (
    IntegrationError,
    SpectrumConfig,
    ResonanceParams,
    CouplingPotential,
    WaveState,
    ProbabilityPair,
    TwoLevelValidation,
    resonance_params,
    two_level_probabilities,
    two_level_amplitudes,
    build_coupling,
    integrate_full,
    validate_two_level,
    linear_spectrum,
    spectrum_from_json,
    spectrum_to_json,
    trajectory_to_csv,
)
from .collapse import (
    CollapseOutcome,
    MeasurementSchedule,
    TransitionStep,
    MixingCoefficients,
    step_matrix,
    propagate_schedule,
    iterate_matrices,
    regular_coefficients,
    zeno_coefficients,
    flip_probability,
    sample_trajectory,
    sample_final_states,
    zeno_scan,
)
from .games import (
    GameVariant,
    GameSpec,
    StrategyProfile,
    PayoffReport,
    RoundResult,
    win_probability,
    win_probability_grid,
    expected_payoffs,
    play_round,
    play_rounds,
    schedule_for,
    round_log_line,
)
from .analysis import (
    QuadratureError,
    WinDensity,
    HeatmapGrid,
    BestResponse,
    Maximin,
    win_density,
    heatmap,
    random_strategy_payoff,
    best_response,
    maximin_strategy,
    monte_carlo_payoff,
)

__version__ = "0.1.0"
