"""
Exception hierarchy shared by the algebra, geometry and CLI layers.
"""
from typing import Optional


class SympQuotError(Exception):
    """Base class for every error raised by this package."""


class TruncationMismatchError(SympQuotError):
    """Two jets (or jet matrices) with different truncation orders were combined."""


class NonUnitError(SympQuotError):
    """A jet with positive valuation was inverted."""


class RankDeficientError(SympQuotError):
    """A jet matrix has determinant valuation at least the truncation order."""


class NotLagrangianError(SympQuotError):
    """A subspace failed the Lagrangian test."""

    def __init__(self, message: str, index: Optional[int] = None):
        super().__init__(message)
        self.index = index


class RepeatedSupportError(SympQuotError):
    """Two local models (or fiber inputs) share a support point."""


class MembershipError(SympQuotError):
    """An operation that requires membership in Q-tilde or Q got a non-member."""


class NonReducedDivisorError(MembershipError):
    """The fiber inverse was asked for a point whose divisor has a multiplicity above 1."""


class InputFormatError(SympQuotError):
    """A file did not match its JSON format; `location` names the line or field."""

    def __init__(self, message: str, location: Optional[str] = None):
        super().__init__(f"{location}: {message}" if location else message)
        self.location = location


class UsageError(SympQuotError):
    """Command-line flags are missing or out of range."""
