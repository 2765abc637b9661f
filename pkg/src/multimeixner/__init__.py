"""Multiple Meixner polynomials of the first and second kind.

Stepline recurrences, explicit series, zeros, spectral curves, limiting zero
densities, equilibrium checks and nth-root asymptotics.
"""
from .params import (
    ParameterError,
    ParamsClassical,
    ParamsFirst,
    ParamsSecond,
    kind_of,
)
from .polyeval import build_stepline, eval_scaled
from .curves import branch_points, branch_phi0, density_lambda, density_mu_second, trace_gamma
from .zerofind import zeros_of
from .regimes import classify

__all__ = [
    "ParameterError",
    "ParamsClassical",
    "ParamsFirst",
    "ParamsSecond",
    "kind_of",
    "build_stepline",
    "eval_scaled",
    "branch_points",
    "branch_phi0",
    "density_lambda",
    "density_mu_second",
    "trace_gamma",
    "zeros_of",
    "classify",
]

__version__ = "0.1.0"
