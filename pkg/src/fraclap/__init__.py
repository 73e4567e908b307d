"""Fractional p-Laplacian of the radial profile (1 - |x|^(p/(p-1)))^s_+ in one dimension.

The value at a point is a principal-value integral; it is evaluated by splitting
the real line into two tails (closed form), two regular interior pieces and a
symmetric singular window, the last three integrated with Gauss-Legendre rules.
"""

__version__ = "0.1.0"

from .errors import (
    DomainError,
    FraclapError,
    InsufficientDataError,
    InvalidX,
    NoOracleError,
    PoleError,
    QuadratureError,
    SingularityError,
)
from .evaluator import (
    EvalBreakdown,
    EvalConfig,
    GridReport,
    constancy_gap,
    eval_grid,
    eval_point,
    tails_closed_form,
)
from .profile import Params, a_power, integrand_g, profile_u, symmetrized_h
from .quadrature import (
    AdaptiveResult,
    GaussLegendreRule,
    build_rule,
    integrate_adaptive,
    integrate_rule,
    map_tail,
)
from .reference import ConvergenceReport, convergence_study, fit_rate, p2_exact, x0_exact
from .specfun import c_s, gamma, reflection_constant

__all__ = [
    "AdaptiveResult",
    "ConvergenceReport",
    "DomainError",
    "EvalBreakdown",
    "EvalConfig",
    "FraclapError",
    "GaussLegendreRule",
    "GridReport",
    "InsufficientDataError",
    "InvalidX",
    "NoOracleError",
    "Params",
    "PoleError",
    "QuadratureError",
    "SingularityError",
    "a_power",
    "build_rule",
    "c_s",
    "constancy_gap",
    "convergence_study",
    "eval_grid",
    "eval_point",
    "fit_rate",
    "gamma",
    "integrand_g",
    "integrate_adaptive",
    "integrate_rule",
    "map_tail",
    "p2_exact",
    "profile_u",
    "reflection_constant",
    "symmetrized_h",
    "tails_closed_form",
    "x0_exact",
]
