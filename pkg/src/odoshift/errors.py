"""Exception hierarchy shared across the package.

The distinction between "you gave me garbage" (InvalidInputError), "your
prefix is too short to decide" (InsufficientDataError) and "this sequence
cannot belong to the subshift" (NotInSubshiftError) is deliberate: callers
acting on finite data need to know whether to fetch more data or to reject
the input outright.
"""


class OdoshiftError(Exception):
    """Base class for all package errors."""


class InvalidInputError(OdoshiftError, ValueError):
    """Malformed or out-of-domain argument."""


class InsufficientDataError(OdoshiftError):
    """The available prefix is too short to certify the requested property.

    ``required_length`` names the prefix length that would suffice.
    """

    def __init__(self, message, required_length=None):
        super().__init__(message)
        self.required_length = required_length


class NotInSubshiftError(OdoshiftError):
    """Input violates a structural constraint every valid sequence satisfies."""


class ResourceLimitError(OdoshiftError):
    """An operation would exceed the configured allocation cap.

    ``required_bytes`` is the cap that would let the operation proceed.
    """

    def __init__(self, message, required_bytes=None):
        super().__init__(message)
        self.required_bytes = required_bytes
