from prodint.trotter.harness import (
    TrotterFamily,
    ConvergenceTable,
    build_chi,
    build_phi_tau_n,
    verify_power_identity,
    trotter_error,
    uniform_trotter_sweep,
    trotter_sequence,
    uniform_convergence_check,
    continuity_probe,
    TROTTER_COLUMNS,
    POWER_COLUMNS,
)
from prodint.trotter.metrics import ConvergenceMetrics

__all__ = [
    "TrotterFamily",
    "ConvergenceTable",
    "build_chi",
    "build_phi_tau_n",
    "verify_power_identity",
    "trotter_error",
    "uniform_trotter_sweep",
    "trotter_sequence",
    "uniform_convergence_check",
    "continuity_probe",
    "TROTTER_COLUMNS",
    "POWER_COLUMNS",
    "ConvergenceMetrics",
]
