"""Traveling fronts of a delayed monostable reaction-diffusion equation.

Subpackages cover the birth nonlinearity (model), the linearized
dispersion analysis (spectral), wave-profile computation and minimal
speeds (profile), direct time integration (simulator), convergence and
stability diagnostics (diagnostics), and the command line front end
(config, cli).
"""

from .model import (
    BirthFunction,
    HypothesisReport,
    equilibria,
    from_coefficients,
    hadeler_rothe,
    kpp,
    make_birth_function,
    validate_hypothesis,
)
from .spectral import (
    DecayPair,
    SpectralSummary,
    decay_rates,
    dispersion,
    dispersion_dz,
    kappa_approach_rate,
    minimal_linear_speed,
)
from .profile import (
    FrontClass,
    IndeterminateError,
    NoFront,
    TailFit,
    WaveProfile,
    c_star_sweep,
    classify_front,
    minimal_speed,
    profile_operator_apply,
    solve_profile,
    tail_fit,
)
from .simulator import (
    DelayedField,
    ICReport,
    InitialDatum,
    Observer,
    SchemeInstabilityError,
    choose_time_step,
    initialize,
    make_initial_datum,
    run,
    step,
    validate_ic,
)
from .diagnostics import (
    ConvergenceReport,
    EnvelopeConstants,
    comparison_weight,
    envelope_check,
    envelope_constants,
    fit_phase,
    level_set_position,
    moving_frame,
    origin_approach_fit,
    spreading_speed_estimate,
    two_front_report,
    weighted_distance_to_shift,
    weighted_norm,
)
from .config import ConfigError, RunConfig, dump_defaults, load_config, validate

__all__ = [
    "BirthFunction",
    "HypothesisReport",
    "equilibria",
    "from_coefficients",
    "hadeler_rothe",
    "kpp",
    "make_birth_function",
    "validate_hypothesis",
    "DecayPair",
    "SpectralSummary",
    "decay_rates",
    "dispersion",
    "dispersion_dz",
    "kappa_approach_rate",
    "minimal_linear_speed",
    "FrontClass",
    "IndeterminateError",
    "NoFront",
    "TailFit",
    "WaveProfile",
    "c_star_sweep",
    "classify_front",
    "minimal_speed",
    "profile_operator_apply",
    "solve_profile",
    "tail_fit",
    "DelayedField",
    "ICReport",
    "InitialDatum",
    "Observer",
    "SchemeInstabilityError",
    "choose_time_step",
    "initialize",
    "make_initial_datum",
    "run",
    "step",
    "validate_ic",
    "ConvergenceReport",
    "EnvelopeConstants",
    "comparison_weight",
    "envelope_check",
    "envelope_constants",
    "fit_phase",
    "level_set_position",
    "moving_frame",
    "origin_approach_fit",
    "spreading_speed_estimate",
    "two_front_report",
    "weighted_distance_to_shift",
    "weighted_norm",
    "ConfigError",
    "RunConfig",
    "dump_defaults",
    "load_config",
    "validate",
]

__version__ = "0.1.0"
