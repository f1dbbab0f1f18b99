"""Exception types shared across the package.

The CLI maps these onto stable exit codes: configuration problems exit
with 2, numerical-convergence failures with 3 and I/O failures with 4.
"""


class AnyondecError(Exception):
    """Base class for all package-specific errors."""


class ConfigError(AnyondecError):
    """A configuration file or option is invalid."""


class ConvergenceError(AnyondecError):
    """A numerical routine failed to reach its tolerance.

    Attributes
    ----------
    achieved : float
        The error estimate actually reached when the routine gave up.
    """

    def __init__(self, message, achieved=float("nan")):
        super().__init__(message)
        self.achieved = achieved


class RangeError(AnyondecError):
    """The requested evaluation point lies outside the supported range."""
