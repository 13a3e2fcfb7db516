"""Exception classes, roughly one per failure family the CLI maps to exit codes."""


class BlueTrapError(Exception):
    """Base class for all package errors."""


class InvalidGeometryError(BlueTrapError):
    """Cavity geometry violates a constructive invariant."""


class OutsideCavityError(BlueTrapError):
    """Position outside the mirror gap |z| <= L/2."""


class UnsupportedModeError(BlueTrapError):
    """Transverse order outside the supported set (0,0), (1,0), (0,1)."""


class InvalidParamsError(BlueTrapError):
    """Physical parameters violate an invariant (e.g. kappa <= 0)."""


class SolverError(BlueTrapError):
    """A numerical solve failed (singular or ill-conditioned system)."""


class NoInformationError(BlueTrapError):
    """Hypothesis test with identical rates under both hypotheses."""


class ConfigError(BlueTrapError):
    """Config text failed to parse or validate.

    Carries the 1-based line number when the failure is tied to a line.
    """

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class UnreachableTargetError(BlueTrapError):
    """A requested target (e.g. confidence level) cannot be reached."""
