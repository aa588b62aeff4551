"""Exception types shared across the package.

Callers that drive long simulations (CLI, batch studies) rely on these to
separate bad input from numerical breakdown from plain non-convergence.
"""

from __future__ import annotations


class SwellDiffError(Exception):
    """Base class for all package errors."""


class DomainError(SwellDiffError, ValueError):
    """An argument is outside the physically admissible domain."""


class ConfigError(SwellDiffError, ValueError):
    """A run configuration is malformed.  ``field`` names the offending key."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"config field '{field}': {message}")


class NumericsError(SwellDiffError, ArithmeticError):
    """A nodal evaluation produced NaN/Inf.  ``node`` is the first bad index."""

    def __init__(self, message: str, node: int | None = None):
        self.node = node
        if node is not None:
            message = f"{message} (node {node})"
        super().__init__(message)


class BoundaryRootError(SwellDiffError, ArithmeticError):
    """The boundary traction equation has no bracketed root."""


class StepConvergenceError(SwellDiffError, ArithmeticError):
    """The staggered inner iteration did not converge within the allowed sweeps."""

    def __init__(self, residual: float, t_star: float, iterations: int):
        self.residual = residual
        self.t_star = t_star
        self.iterations = iterations
        super().__init__(
            f"staggered iteration at t*={t_star:g} stalled after "
            f"{iterations} sweeps (last residual {residual:.3e})"
        )


class EquilibrationError(SwellDiffError, RuntimeError):
    """A run ended before its observable settled (e.g. mass curve not flat)."""
