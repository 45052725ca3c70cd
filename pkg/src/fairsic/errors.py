"""Exception types shared across the package.

The CLI maps these onto exit codes, so new error conditions should reuse
one of the existing classes where the meaning fits.
"""


class FairsicError(Exception):
    """Base class for all package-specific errors."""


class ValidationError(FairsicError):
    """Input data violates a structural contract (shapes, pmfs, ranges)."""


class IncompleteTableError(ValidationError):
    """A tabulated rank backend is missing one or more subset entries."""


class NonRankInputError(FairsicError):
    """A set function failed the rank axioms where a rank function is required."""


class CapacityError(FairsicError):
    """An enumeration would exceed the configured budget."""


class ScenarioParseError(FairsicError):
    """A scenario document is malformed or carries unknown fields."""
