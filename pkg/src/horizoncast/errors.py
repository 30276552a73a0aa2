"""Exception hierarchy shared across the package.

Input-side problems (bad files, bad values, bad schemas) and
computation-side problems (solvers, calibrations, integrations) are kept
on separate branches so the CLI can map them to distinct exit codes.
"""


class HorizoncastError(Exception):
    """Base class for all package errors."""


class InputError(HorizoncastError):
    """Problems with user-supplied data or configuration."""


class SchemaError(InputError):
    """A CSV/JSON payload is missing required structure."""


class ValidationError(InputError):
    """Values are present but violate their constraints."""


class DomainError(InputError):
    """An argument is outside the mathematical domain of an operation."""


class InsufficientDataError(InputError):
    """Not enough observations to run the requested estimate."""


class ConfigError(InputError):
    """The configuration file is malformed or references missing files."""


class ComputationError(HorizoncastError):
    """Problems arising while running a numerical procedure."""


class UnidentifiedSlopeError(ComputationError):
    """No within-group compute variation; the shared slope is not identified."""


class SolverError(ComputationError):
    """An iterative solver failed to converge or to bracket a solution."""


class CalibrationError(ComputationError):
    """Trend calibration produced a degenerate result."""


class IntegrationError(ComputationError):
    """An ODE/quadrature step produced a non-finite or non-positive state."""

    def __init__(self, message: str, t: float | None = None):
        super().__init__(message if t is None else f"{message} (at t={t:.6f})")
        self.t = t


class DivergenceError(ComputationError):
    """A simulated quantity failed to converge within the allowed span."""


class InfeasibleError(ComputationError):
    """The requested target is unreachable (e.g. below the irreducible loss)."""
