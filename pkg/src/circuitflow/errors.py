"""Exception taxonomy shared across the package.

The CLI maps these onto process exit codes: usage problems exit 1, data
validation problems exit 2, solver non-convergence exits 3.
"""


class CircuitFlowError(Exception):
    """Base class for all circuitflow errors."""


class ValidationError(CircuitFlowError, ValueError):
    """Invalid data or a violated call contract (bad weights, unknown nodes,
    non-dominant systems, guard refusals)."""


class EdgeListError(ValidationError):
    """Malformed edge-list input; message carries the offending line number."""


class NonConvergenceError(CircuitFlowError, RuntimeError):
    """Iterative solve hit its iteration cap before reaching tolerance."""

    def __init__(self, message: str, residual: float, iterations: int):
        super().__init__(message)
        self.residual = residual
        self.iterations = iterations


class UsageError(CircuitFlowError):
    """Command-line invocation error (bad flags, missing required options)."""
