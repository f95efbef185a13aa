class StackedBasesError(Exception):
    """Base class for domain errors raised by this package."""


class RingMismatch(StackedBasesError, ValueError):
    pass


class UnsupportedRing(StackedBasesError):
    """The requested operation is not available for this ring kind."""


class PreconditionError(StackedBasesError, ValueError):
    pass


class SearchExhausted(StackedBasesError):
    """A finite search guaranteed to succeed on supported instances failed."""


class NotInvertible(StackedBasesError, ValueError):
    pass


class ParseError(StackedBasesError, ValueError):
    pass
