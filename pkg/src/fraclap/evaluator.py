"""Principal-value integral I(x) of g_x over the real line, split into six pieces.

    I1: (-inf, -1)       closed form (optionally checked by adaptive quadrature)
    I2: (-1, x - eps)    Gauss-Legendre
    I34: (x - eps, x + eps), folded onto (0, eps) with the symmetrized integrand
    I5: (x + eps, 1)     Gauss-Legendre
    I6: (1, inf)         closed form

The result is the unnormalized operator value, i.e. without the constant c_{1,s,p}.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from typing import Sequence

from .errors import DomainError, FraclapError, InsufficientDataError, InvalidX
from .profile import Params, integrand_g, profile_u, symmetrized_h
from .quadrature import build_rule, integrate_adaptive, integrate_rule, map_tail

TAIL_MODES = ("closed_form", "adaptive", "both")
# slack for grid abscissas like 0.98 that sit exactly on 1 - eps
_EDGE_SLACK = 4 * 2.0**-52


@dataclass(frozen=True)
class EvalConfig:
    epsilon: float = 1.0 / 50.0
    n: int = 256
    tail_mode: str = "closed_form"
    tail_tol: float = 1e-15
    auto_shrink_eps: bool = False

    def __post_init__(self):
        if not 0.0 < self.epsilon < 1.0:
            raise DomainError(f"epsilon must lie in (0, 1), got {self.epsilon!r}")
        if isinstance(self.n, bool) or int(self.n) != self.n or self.n < 1:
            raise DomainError(f"n must be an integer >= 1, got {self.n!r}")
        if self.tail_mode not in TAIL_MODES:
            raise DomainError(f"tail_mode must be one of {TAIL_MODES}, got {self.tail_mode!r}")
        if not self.tail_tol >= 1e-15:
            raise DomainError(f"tail_tol must be >= 1e-15, got {self.tail_tol!r}")

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class EvalBreakdown:
    x: float
    I1: float
    I2: float
    I34: float
    I5: float
    I6: float
    total: float
    epsilon: float
    tail_check_discrepancy: float | None = None
    flags: list[str] = field(default_factory=list)
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.error is None

    @classmethod
    def failed(cls, x: float, epsilon: float, message: str) -> EvalBreakdown:
        nan = math.nan
        return cls(x, nan, nan, nan, nan, nan, nan, epsilon, None, [f"error: {message}"], message)

    def to_dict(self) -> dict:
        return {
            "x": self.x,
            "I1": self.I1,
            "I2": self.I2,
            "I34": self.I34,
            "I5": self.I5,
            "I6": self.I6,
            "total": self.total,
            "epsilon": self.epsilon,
            "tail_check_discrepancy": self.tail_check_discrepancy,
            "flags": list(self.flags),
        }


@dataclass
class GridReport:
    params: Params
    config: EvalConfig
    entries: list[EvalBreakdown]

    @property
    def xs(self) -> list[float]:
        return [e.x for e in self.entries]

    @property
    def totals(self) -> list[float]:
        return [e.total for e in self.entries]

    @property
    def successful(self) -> list[EvalBreakdown]:
        return [e for e in self.entries if e.ok]


def _check_inside(x: float) -> None:
    if not -1.0 < x < 1.0:
        raise InvalidX(f"x must lie in (-1, 1), got {x!r}")


def tails_closed_form(params: Params, x: float) -> tuple[float, float]:
    """Exact tail integrals over (-inf, -1) and (1, inf).

    There u(y) = 0, so g_x(y) = u(x)^(p-1) / |x - y|^(1+sp) integrates in closed
    form to u(x)^(p-1) / (sp (1 -/+ x)^sp).
    """
    x = float(x)
    _check_inside(x)
    sp = params.sp
    c = profile_u(params, x) ** (params.p - 1.0) / sp
    return c / (1.0 + x) ** sp, c / (1.0 - x) ** sp


def tails_adaptive(params: Params, x: float, tol: float):
    """Tail integrals by y = -/+1/t folding and graded adaptive quadrature."""
    _check_inside(x)
    # mapped integrand ~ t^(sp-1) at 0; grade so that it becomes ~ w^(>=1)
    grading = max(5, math.ceil(2.0 / params.sp))

    def g(y):
        return integrand_g(params, x, y)

    left = integrate_adaptive(map_tail("left", g), 0.0, 1.0, tol, grading=grading)
    right = integrate_adaptive(map_tail("right", g), 0.0, 1.0, tol, grading=grading)
    return left, right


def eval_point(params: Params, x: float, config: EvalConfig | None = None) -> EvalBreakdown:
    """Approximate I(x) as the sum of the six pieces."""
    config = config or EvalConfig()
    x = float(x)
    eps = config.epsilon
    flags: list[str] = []
    if abs(x) > 1.0 - eps + _EDGE_SLACK:
        if not config.auto_shrink_eps:
            raise InvalidX(f"|x| = {abs(x)!r} exceeds 1 - eps = {1.0 - eps!r}")
        _check_inside(x)
        eps = 0.5 * (1.0 - abs(x))
        flags.append(f"epsilon_shrunk_to={eps!r}")

    rule = build_rule(config.n)

    def g(y):
        return integrand_g(params, x, y)

    def h(tau):
        return symmetrized_h(params, x, tau)

    lo, hi = x - eps, x + eps
    i2 = integrate_rule(g, -1.0, lo, rule) if lo > -1.0 else 0.0
    i5 = integrate_rule(g, hi, 1.0, rule) if hi < 1.0 else 0.0
    i34 = integrate_rule(h, 0.0, eps, rule)

    i1, i6 = tails_closed_form(params, x)
    discrepancy = None
    if config.tail_mode != "closed_form":
        left, right = tails_adaptive(params, x, config.tail_tol)
        for name, res in (("I1", left), ("I6", right)):
            if not res.converged:
                flags.append(f"{name}_adaptive_not_converged(err={res.error_estimate:.3g})")
        if config.tail_mode == "both":
            discrepancy = max(abs(left.value - i1), abs(right.value - i6))
        else:
            i1, i6 = left.value, right.value

    total = i1 + i2 + i34 + i5 + i6
    return EvalBreakdown(x, i1, i2, i34, i5, i6, total, eps, discrepancy, flags)


def _max_workers() -> int:
    raw = os.environ.get("FRACLAP_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def eval_grid(
    params: Params, xs: Sequence[float], config: EvalConfig | None = None
) -> GridReport:
    """Evaluate every abscissa; a failing point is recorded in place, not raised.

    Points are independent; ``FRACLAP_THREADS`` sets the worker count. The output
    is identical to a sequential run.
    """
    config = config or EvalConfig()
    build_rule(config.n)  # warm the cache before fanning out

    def one(x: float) -> EvalBreakdown:
        try:
            return eval_point(params, x, config)
        except FraclapError as exc:
            return EvalBreakdown.failed(float(x), config.epsilon, str(exc))

    workers = _max_workers()
    if workers > 1 and len(xs) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            entries = list(pool.map(one, xs))
    else:
        entries = [one(x) for x in xs]
    return GridReport(params, config, entries)


def constancy_gap(report: GridReport) -> tuple[float, float, float]:
    """(max total - min total, abscissa of the max, abscissa of the min)."""
    good = report.successful
    if len(good) < 2:
        raise InsufficientDataError(
            f"need at least 2 successful points, got {len(good)}"
        )
    hi = max(good, key=lambda e: e.total)
    lo = min(good, key=lambda e: e.total)
    return hi.total - lo.total, hi.x, lo.x


def with_order(config: EvalConfig, n: int) -> EvalConfig:
    return replace(config, n=n)
