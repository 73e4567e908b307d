"""Gamma function and the constants built on it."""

from __future__ import annotations

import math

from .errors import DomainError, PoleError

# Lanczos approximation, g = 7, nine terms (Godfrey's coefficients).
_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_SQRT_2PI = math.sqrt(2.0 * math.pi)


def gamma(x: float) -> float:
    """Gamma function for real arguments.

    Uses the reflection formula below 1/2, so negative non-integers are fine.
    Relative accuracy is about 1e-15 on moderate arguments.
    """
    x = float(x)
    if x <= 0.0 and x == math.floor(x):
        raise PoleError(f"gamma has a pole at x={x!r}")
    if x < 0.5:
        return math.pi / (math.sin(math.pi * x) * gamma(1.0 - x))
    x -= 1.0
    acc = _LANCZOS_COEF[0]
    for i, c in enumerate(_LANCZOS_COEF[1:], start=1):
        acc += c / (x + i)
    t = x + _LANCZOS_G + 0.5
    # split the power so t**(x+0.5) does not overflow before exp(-t) tames it
    half = t ** (0.5 * (x + 0.5))
    return _SQRT_2PI * half * (math.exp(-t) * half) * acc


def _check_s(s: float) -> float:
    s = float(s)
    if not 0.0 < s < 1.0:
        raise DomainError(f"s must lie in (0, 1), got {s!r}")
    return s


def reflection_constant(s: float) -> float:
    """pi / sin(pi s), i.e. Gamma(s) Gamma(1 - s)."""
    s = _check_s(s)
    return math.pi / math.sin(math.pi * s)


def c_s(s: float) -> float:
    """Normalization constant of the one-dimensional fractional Laplacian.

    c_s = 4^s / sqrt(pi) * Gamma(1/2 + s) / Gamma(1 - s) * s
    """
    s = _check_s(s)
    return 4.0**s / math.sqrt(math.pi) * gamma(0.5 + s) / gamma(1.0 - s) * s
