from prodint.engine.evolution import (
    SCHEMES,
    StepperConfig,
    EvolutionResult,
    build_partition,
    sample_points,
    integrand_samples,
    evolve_on_partition,
    evolve,
    evolve_curve,
    log_derivative,
    log_derivative_array,
)
from prodint.engine.identities import (
    identity_a_residual,
    identity_b_residual,
    identity_c_residual,
    identity_d_residual,
    exp_scaling_check,
    ScalingCheck,
    composite_integrand,
)

__all__ = [
    "SCHEMES",
    "StepperConfig",
    "EvolutionResult",
    "build_partition",
    "sample_points",
    "integrand_samples",
    "evolve_on_partition",
    "evolve",
    "evolve_curve",
    "log_derivative",
    "log_derivative_array",
    "identity_a_residual",
    "identity_b_residual",
    "identity_c_residual",
    "identity_d_residual",
    "exp_scaling_check",
    "ScalingCheck",
    "composite_integrand",
]
