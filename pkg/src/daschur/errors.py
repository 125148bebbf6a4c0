"""Exception hierarchy.

Every failure that comes from the mathematical content of a request (as
opposed to a programming error) derives from :class:`DomainError`, which the
CLI turns into a JSON error object and exit status 1.
"""


class DomainError(ValueError):
    pass


class FloatOverflowError(DomainError, OverflowError):
    pass


class WindowError(DomainError):
    pass


class PathError(DomainError):
    pass


class OriginMissingError(WindowError):
    pass


class NotAnalyticError(DomainError):
    pass


class PoleError(DomainError):
    pass


class DivergentTailError(DomainError):
    pass


class NonHermitianError(DomainError):
    pass
