from polymellin.mellin.continuation import (
    ContinuationState,
    GammaSkeleton,
    PhiValue,
    continue_to_m,
    continued_mellin_eval,
    gamma_skeleton,
    phi_eval,
)
from polymellin.mellin.transform import (
    ConvergenceDomain,
    DecayEstimate,
    MellinValue,
    TubePoint,
    convergence_domain,
    decay_check,
    inverse_mellin_eval,
    laurent_coefficient,
    laurent_partial_sum,
    mellin_eval,
    shift_factor,
)

__all__ = [
    "ContinuationState",
    "ConvergenceDomain",
    "DecayEstimate",
    "GammaSkeleton",
    "MellinValue",
    "PhiValue",
    "TubePoint",
    "continue_to_m",
    "continued_mellin_eval",
    "convergence_domain",
    "decay_check",
    "gamma_skeleton",
    "inverse_mellin_eval",
    "laurent_coefficient",
    "laurent_partial_sum",
    "mellin_eval",
    "phi_eval",
    "shift_factor",
]
