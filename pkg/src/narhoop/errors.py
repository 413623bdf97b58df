"""Exception types shared across the package."""


class NarhoopError(Exception):
    """Base class for all package errors."""


class MagmaError(NarhoopError, ValueError):
    """Malformed operation tables or model files."""


class PreconditionError(NarhoopError, ValueError):
    """An operation was called on input outside its domain."""


class UsageError(NarhoopError, ValueError):
    """Unknown class name, invalid enumeration task, infeasible request."""


class ConsistencyError(NarhoopError, RuntimeError):
    """Two independent routes to the same quantity disagreed."""


class TheoremViolation(NarhoopError, AssertionError):
    """A finite model falsified a statement that should hold on it.

    ``witness`` carries whatever data falsified the statement, so that the
    failure can be replayed.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness
