"""The profile u(x) = (1 - |x|^m)^s_+ and the integrands built from it.

All functions broadcast over numpy arrays in their point arguments.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, SingularityError


@dataclass(frozen=True)
class Params:
    """Fractional order ``s`` in (0, 1) and integrability exponent ``p`` > 1."""

    s: float
    p: float

    def __post_init__(self):
        if not 0.0 < self.s < 1.0:
            raise DomainError(f"s must lie in (0, 1), got {self.s!r}")
        if not self.p > 1.0:
            raise DomainError(f"p must exceed 1, got {self.p!r}")

    @property
    def m(self) -> float:
        """Conjugate exponent p / (p - 1)."""
        return self.p / (self.p - 1.0)

    @property
    def sp(self) -> float:
        return self.s * self.p


def _abs_pow(x, m):
    # |x|^m as exp(m log|x|), with 0^m = 0
    ax = np.abs(np.asarray(x, dtype=float))
    with np.errstate(divide="ignore"):
        return np.exp(m * np.log(ax))


def profile_u(params: Params, x):
    """(1 - |x|^m)^s inside (-1, 1), zero outside."""
    base = 1.0 - _abs_pow(x, params.m)
    out = np.where(base > 0.0, np.power(np.maximum(base, 0.0), params.s), 0.0)
    return out if out.ndim else float(out)


def profile_drop(params: Params, x: float, delta):
    """u(x) - u(x + delta), without cancellation for small delta.

    Written as u(x) (1 - ((1 - |y|^m) / (1 - |x|^m))^s) with y = x + delta and
    expanded through expm1/log1p; when x and y share a sign, |x|^m - |y|^m is
    itself formed from the relative offset delta / |x|.
    """
    m, s = params.m, params.s
    x = float(x)
    delta = np.asarray(delta, dtype=float)
    ax = abs(x)
    if ax >= 1.0:
        raise DomainError(f"profile_drop needs |x| < 1, got {x!r}")
    y = x + delta
    ay = np.abs(y)
    ux = profile_u(params, x)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        axm = ax**m
        one_minus_axm = -np.expm1(m * np.log(ax)) if ax > 0.0 else 1.0
        rel = np.sign(x) * delta / ax if ax > 0.0 else np.full_like(delta, np.inf)
        # the relative form only matters (and is only safe) when |y| is close to |x|
        same_side = np.abs(rel) < 0.5
        rel = np.where(same_side, rel, 0.0)
        dm_near = -axm * np.expm1(m * np.log1p(rel))
        dm_far = axm - _abs_pow(y, m)
        dm = np.where(same_side, dm_near, dm_far)
        drop = ux * -np.expm1(s * np.log1p(dm / one_minus_axm))
    out = np.where(ay < 1.0, drop, ux)
    return out if out.ndim else float(out)


def a_power(p: float, h):
    """The odd power map |h|^(p-2) h, extended by 0 at h = 0."""
    h = np.asarray(h, dtype=float)
    ah = np.abs(h)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(ah > 0.0, np.sign(h) * np.power(ah, p - 1.0), 0.0)
    return out if out.ndim else float(out)


def integrand_g(params: Params, x: float, y):
    """A(u(x) - u(y)) / |x - y|^(1 + sp); singular at y = x."""
    y = np.asarray(y, dtype=float)
    dist = np.abs(x - y)
    if np.any(dist == 0.0):
        raise SingularityError(f"integrand sampled at its singular point y = x = {x!r}")
    num = a_power(params.p, profile_drop(params, x, y - x))
    out = num / dist ** (1.0 + params.sp)
    return out if np.ndim(out) else float(out)


def symmetrized_h(params: Params, x: float, tau):
    """g_x(x + tau) + g_x(x - tau) for tau > 0.

    The two numerators are added before dividing by tau^(1+sp): their leading
    odd parts cancel, and for p(1 - s) <= 1 only the sum is integrable at 0.
    """
    tau = np.asarray(tau, dtype=float)
    if np.any(tau <= 0.0):
        raise SingularityError("symmetrized integrand needs tau > 0")
    num = a_power(params.p, profile_drop(params, x, tau)) + a_power(
        params.p, profile_drop(params, x, -tau)
    )
    out = num / tau ** (1.0 + params.sp)
    return out if np.ndim(out) else float(out)
