"""Exception hierarchy.

Every domain error carries its class name as a stable machine-readable code;
the CLI prints ``<Code>: <message>`` on a single line.
"""


class CgkError(Exception):
    """Base class for all domain errors."""

    @property
    def code(self) -> str:
        return type(self).__name__


class NotRational(CgkError):
    pass


class BoundExceeded(CgkError):
    pass


class InternalSplitFailure(CgkError):
    pass


class NotCompatible(CgkError):
    pass


class NotWellDefined(CgkError):
    pass


class NegativeEntries(CgkError):
    pass


class ValidationFailed(CgkError):
    pass


class NonIntegralMultiplicity(CgkError):
    pass


class ProblemFormatError(CgkError):
    """Malformed problem file (CLI exit code 2)."""
