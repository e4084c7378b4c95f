"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class GIDError(Exception):
    """Base class for all errors raised by :mod:`gid`."""


class FieldError(GIDError, ValueError):
    """Raised for an unsupported field order (non-prime or too large)."""


class ZeroInverse(GIDError, ZeroDivisionError):
    """Raised when inverting the zero element."""


class DimensionMismatch(GIDError, ValueError):
    pass


class FieldMismatch(GIDError, ValueError):
    pass


class NotFullRank(GIDError, ValueError):
    pass


class RetryExhausted(GIDError, RuntimeError):
    """No random column permutation produced an invertible pivot block."""


class CapExceeded(GIDError, ValueError):
    pass


class ZeroSyndrome(GIDError, ValueError):
    pass


class ZeroVector(GIDError, ValueError):
    pass


class NotAGI(GIDError, ValueError):
    pass


class ConfigError(GIDError, ValueError):
    pass


class WrongField(GIDError, ValueError):
    pass


class TooManyVars(GIDError, ValueError):
    pass


class TooLarge(GIDError, ValueError):
    pass


class Inconsistent(GIDError, ValueError):
    """The linear system has no solution."""


class FormatError(GIDError, ValueError):
    """Malformed instance, solution or constraint file."""
