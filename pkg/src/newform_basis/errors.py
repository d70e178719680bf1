"""Exception hierarchy shared across the package."""


class NewformBasisError(Exception):
    """Base class for all package-specific errors."""


class FormatError(NewformBasisError):
    """Malformed descriptor file.  Carries the offending line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class IntegrityError(NewformBasisError):
    """Data fails a consistency check (coverage gap, bound violation, corrupt cache)."""


class TableTooSmallError(NewformBasisError):
    """The coefficient table does not reach the indices an operation needs."""


class NotFoundError(NewformBasisError):
    """A search completed without locating the requested object."""


class InfeasibleError(NewformBasisError):
    """The requested construction cannot be carried out with the given inputs."""


class MemoryGuardError(NewformBasisError):
    """An enumeration would exceed its configured memory budget."""


class VerificationError(NewformBasisError):
    """An exact re-check failed; signals an internal inconsistency."""
