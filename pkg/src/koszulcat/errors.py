"""Exception hierarchy shared across the package."""


class KoszulcatError(Exception):
    """Base class for all library errors."""


class DimensionError(KoszulcatError):
    """Shapes or ambient dimensions do not match."""


class FieldError(KoszulcatError):
    """Bad field descriptor or mixed-field arithmetic."""


class NotSurjectiveError(KoszulcatError):
    """A section was requested for a map that is not surjective."""


class StructuralError(KoszulcatError):
    """Input data is malformed (missing tables, inconsistent dims)."""


class WrongObjectError(KoszulcatError):
    """An element lives at the wrong object of the category."""


class NotCentralError(KoszulcatError):
    """An element required to lie in the commutant does not."""


class StabilityError(KoszulcatError):
    """A submodule is not stable under the actions; names the violator."""


class WindowError(KoszulcatError):
    """A requested degree window exceeds the certified truncation."""


class IsoFailureError(KoszulcatError):
    """A map supplied or constructed as an isomorphism is not one."""


class PreconditionError(KoszulcatError):
    """A documented operation precondition was violated."""


class ParseError(KoszulcatError):
    """Problem-file syntax error, carries line information."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = "line %d: %s" % (line, message)
        super().__init__(message)
