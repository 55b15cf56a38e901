"""Exception types shared across the package."""


class P3HullError(Exception):
    """Base class for all errors raised by p3hull."""


class NotPrimePower(P3HullError, ValueError):
    pass


class LimitExceeded(P3HullError):
    """A configured resource cap (table size, enumeration, edges) was hit."""


class DivisionByZero(P3HullError, ZeroDivisionError):
    pass


class InvalidParams(P3HullError, ValueError):
    pass


class AmbientMismatch(P3HullError, ValueError):
    pass


class IndexOutOfRange(P3HullError, IndexError):
    pass


class IdOutOfRange(P3HullError, IndexError):
    pass


class PreconditionViolated(P3HullError, ValueError):
    pass
