"""Exception hierarchy.

Domain and usage problems derive from :class:`DomainError` (the CLI maps them to
exit code 2); failures of the numerics derive from :class:`QuadratureError`
(exit code 1).
"""


class FraclapError(Exception):
    pass


class DomainError(FraclapError, ValueError):
    """An argument lies outside the domain of the operation."""


class PoleError(DomainError):
    """Gamma evaluated at a non-positive integer."""


class SingularityError(DomainError):
    """An integrand was sampled exactly at its singular point."""


class InvalidX(DomainError):
    """Evaluation point too close to (or outside) the boundary of (-1, 1)."""


class NoOracleError(DomainError):
    """No exact reference value is known for the requested (p, x)."""


class InsufficientDataError(DomainError):
    pass


class QuadratureError(FraclapError, ArithmeticError):
    """Numerical integration failed (non-finite samples, no convergence)."""
