"""Exception hierarchy shared across the package."""


class BikePathError(Exception):
    """Base class for all errors raised by bikepath."""


class InvalidInputError(BikePathError, ValueError):
    """An argument violates a documented precondition."""


class ModeError(InvalidInputError):
    """Rational and float scalars were mixed in one computation."""


class InvalidMapError(InvalidInputError):
    """A Moebius matrix is singular."""


class DegenerateError(BikePathError):
    """Geometrically degenerate input (exit code 3 on the command line)."""


class DegenerateFitError(DegenerateError):
    """Three-point Moebius fit got coincident parameters or images."""


class InconsistentSequenceError(DegenerateError):
    """Sign sequence does not sum to zero, so the path cannot close."""


class UndefinedDirectionError(DegenerateError):
    """Darboux step with Q_i == P_{i+1}: the trapezoid direction is undefined."""

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class InconsistentInputError(DegenerateError):
    """Darboux step whose current leg does not have length ell."""

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class DegenerateEdgeError(DegenerateError):
    """An edge whose induced circle map is not a Moebius transformation."""

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class AllFixedError(DegenerateError):
    """The Moebius map is the identity, so every parameter is fixed."""


class TooLargeError(InvalidInputError):
    """Enumeration size exceeds the configured cap."""


class BaselineError(InvalidInputError):
    """Area baseline y = -c does not lie strictly below the paths."""
