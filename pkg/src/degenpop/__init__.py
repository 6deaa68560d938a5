"""Coherent population transfer in degenerate few-state systems.

Closed-form dressed-state propagation, complete-transfer design rules,
a reference Runge-Kutta integrator for the non-degenerate equations,
and a CLI front end.
"""

from .analytic import (Trajectory, amplitudes_at, amplitudes_many,
                       delta_kick_response, flat_top_quartic,
                       flatness_frequency, leakage_estimate,
                       probabilities_2state, probabilities_at,
                       probabilities_cosine_form, probabilities_nstate_sym,
                       trajectory, trajectory_to_csv)
from .control import (ControlDesign, design_3state, design_nstate,
                      designs_to_csv, enumerate_designs,
                      max_transfer_bound_2state, pulse_for_design,
                      target_2state, two_state_design)
from .coupling import (CouplingModel, pulse_from_dict, pulse_to_dict,
                       standard_2state, standard_3state, symmetric_nstate)
from .dressed import (DressedBasis, decompose_2state, decompose_3state,
                      decompose_general, decompose_symmetric_nstate,
                      eigen_residual, solve_cubic)
from .errors import (ConfigError, DegenerateSpectrum, DegenpopError,
                     DimensionTooSmall, DomainError, FirstComponentZero,
                     GridMismatch, InvalidQuantumNumbers, OutOfDomain,
                     PointwiseUndefined, SingularTransfer, Unattainable,
                     UnresolvedTimescale)
from .numeric import (IntegratorConfig, compare, integrate, kick_convergence,
                      leakage_scan)
from .pulses import (DeltaKickPulse, HarmonicPulse, Pulse, RectKickPulse,
                     SampledPulse, action, action_values, adaptive_simpson,
                     envelope_value, load_sampled_csv, quadrature_action,
                     save_sampled_csv, solve_time_for_action)

__version__ = "0.1.0"

__all__ = [
    "Trajectory", "amplitudes_at", "amplitudes_many", "delta_kick_response",
    "flat_top_quartic", "flatness_frequency", "leakage_estimate",
    "probabilities_2state", "probabilities_at", "probabilities_cosine_form",
    "probabilities_nstate_sym", "trajectory", "trajectory_to_csv",
    "ControlDesign", "design_3state", "design_nstate", "designs_to_csv",
    "enumerate_designs", "max_transfer_bound_2state", "pulse_for_design",
    "target_2state", "two_state_design",
    "CouplingModel", "pulse_from_dict", "pulse_to_dict", "standard_2state",
    "standard_3state", "symmetric_nstate",
    "DressedBasis", "decompose_2state", "decompose_3state",
    "decompose_general", "decompose_symmetric_nstate", "eigen_residual",
    "solve_cubic",
    "ConfigError", "DegenerateSpectrum", "DegenpopError", "DimensionTooSmall",
    "DomainError", "FirstComponentZero", "GridMismatch",
    "InvalidQuantumNumbers", "OutOfDomain", "PointwiseUndefined",
    "SingularTransfer", "Unattainable", "UnresolvedTimescale",
    "IntegratorConfig", "compare", "integrate", "kick_convergence",
    "leakage_scan",
    "DeltaKickPulse", "HarmonicPulse", "Pulse", "RectKickPulse",
    "SampledPulse", "action", "action_values", "adaptive_simpson",
    "envelope_value", "load_sampled_csv", "quadrature_action",
    "save_sampled_csv", "solve_time_for_action",
]
