"""Exception types raised across the package."""


class TernpolyError(Exception):
    """Base class for all errors raised by ternpoly."""


class InvalidTripleError(TernpolyError, ValueError):
    pass


class NotInvertibleError(TernpolyError, ValueError):
    pass


class SearchCapExceeded(TernpolyError, RuntimeError):
    """A bounded search ran out of candidates before finding an answer."""


class DegreeCapExceeded(TernpolyError, ValueError):
    pass


class OutOfDomainError(TernpolyError, ValueError):
    pass


class NotConformingError(TernpolyError, ValueError):
    pass


class EngineFault(TernpolyError, AssertionError):
    """An internal consistency check failed; this indicates a bug, not bad input."""
