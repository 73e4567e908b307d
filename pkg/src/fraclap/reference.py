"""Exact reference values and error-versus-order studies."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import DomainError, NoOracleError, QuadratureError
from .evaluator import EvalConfig, eval_point, with_order
from .profile import Params
from .quadrature import integrate_adaptive
from .specfun import reflection_constant

# errors at or below this are rounding noise and are left out of rate fits
NOISE_FLOOR = 1e-14


def p2_exact(s: float) -> float:
    """I(x) for p = 2, the same at every x in (-1, 1): pi / sin(pi s)."""
    return reflection_constant(s)


def x0_exact(params: Params, tol: float = 1e-12) -> float:
    """I(0) = 2/(sp) + 2 * int_0^1 (1 - (1 - y^m)^s)^(p-1) / y^(1+sp) dy.

    The integrand behaves like y^(p(1-s)-1) near 0. The bracket is formed with
    expm1/log1p so it keeps full relative accuracy for small y.
    """
    if not tol >= 1e-12:
        raise DomainError(f"tol must be >= 1e-12, got {tol!r}")
    s, p, m, sp = params.s, params.p, params.m, params.sp

    def f(y):
        with np.errstate(divide="ignore"):
            ym = np.exp(m * np.log(y))
        gap = -np.expm1(s * np.log1p(-ym))
        return gap ** (p - 1.0) / y ** (1.0 + sp)

    grading = max(5, math.ceil(2.0 / (p * (1.0 - s))))
    res = integrate_adaptive(f, 0.0, 1.0, 0.5 * tol, grading=grading)
    if not res.converged:
        raise QuadratureError(
            f"x=0 reference integral did not converge (estimate {res.error_estimate:.3g}, tol {tol:.3g})"
        )
    return 2.0 / sp + 2.0 * res.value


@dataclass(frozen=True)
class ConvergenceEntry:
    n: int
    value: float
    abs_error: float


@dataclass
class ConvergenceReport:
    params: Params
    x: float
    oracle: float
    oracle_kind: str
    entries: list[ConvergenceEntry] = field(default_factory=list)
    fitted_rate: float | None = None


def fit_rate(ns: Sequence[int], errors: Sequence[float]) -> float | None:
    """Decay rate sigma of error ~ C n^(-sigma), by least squares in log-log.

    Points at the noise floor are dropped; None if fewer than three remain.
    """
    pts = [(n, e) for n, e in zip(ns, errors) if e > NOISE_FLOOR]
    if len(pts) < 3:
        return None
    logn = np.log([n for n, _ in pts])
    loge = np.log([e for _, e in pts])
    slope = np.polyfit(logn, loge, 1)[0]
    return float(-slope)


def oracle_for(params: Params, x: float, tol: float = 1e-12) -> tuple[float, str]:
    if params.p == 2.0:
        return p2_exact(params.s), "p2_exact"
    if x == 0.0:
        return x0_exact(params, tol), "x0_exact"
    raise NoOracleError(f"no exact value known for p={params.p!r} at x={x!r} (need p=2 or x=0)")


def convergence_study(
    params: Params,
    x: float,
    n_list: Sequence[int],
    config: EvalConfig | None = None,
) -> ConvergenceReport:
    """Error of the six-piece approximation against the exact value, per rule order."""
    config = config or EvalConfig()
    ns = [int(n) for n in n_list]
    if ns != sorted(ns):
        raise DomainError("n_list must be ascending")
    oracle, kind = oracle_for(params, float(x))
    report = ConvergenceReport(params, float(x), oracle, kind)
    for n in ns:
        value = eval_point(params, x, with_order(config, n)).total
        report.entries.append(ConvergenceEntry(n, value, abs(value - oracle)))
    report.fitted_rate = fit_rate(ns, [e.abs_error for e in report.entries])
    return report
