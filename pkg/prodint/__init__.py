__version__ = "0.1.0"

from prodint.errors import (
    ProdintError,
    ConfigurationError,
    GroupMismatchError,
    DomainError,
    ContractError,
    OutOfChartDomain,
)
from prodint.utils import Config
from prodint.space import ModelVector, Seminorm, SeminormFamily, seminorm_eval, sup_seminorm, l1_seminorm
from prodint.groups import get_group, list_groups, exp_group, adjoint, chart_forward, chart_backward
from prodint.curves import (
    PiecewiseCurve,
    GroupCurve,
    Reparametrization,
    constant_curve,
    make_algebra_curve,
    make_group_curve,
)
from prodint.engine import StepperConfig, evolve, evolve_curve, log_derivative
from prodint.trotter import TrotterFamily, ConvergenceMetrics, uniform_trotter_sweep
