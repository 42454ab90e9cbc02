"""Exception types shared across the package."""


class HnnForgeError(Exception):
    """Base class for all package errors."""


class ResourceLimit(HnnForgeError):
    """An exact computation would exceed a configured size bound."""


class WordSyntaxError(HnnForgeError, ValueError):
    """Raised when word text does not match the grammar."""


class EmptySequence(HnnForgeError, ValueError):
    pass


class InvalidSpec(HnnForgeError, ValueError):
    """A relator exponent sequence failed validation."""

    def __init__(self, report):
        self.report = report
        super().__init__(f"invalid relator sequence: {report.failure_reason()}")


class DegreeMismatch(HnnForgeError, ValueError):
    pass


class NotCertified(HnnForgeError):
    pass
