"""Exception types shared across the package.

The CLI maps these onto its exit-code contract: usage problems and bad
parameters exit 1, internal-consistency failures exit 2, and character
table validation failures exit 3.
"""


class SgpError(Exception):
    """Base class for all errors raised by this package."""


class InvalidOrderError(SgpError, ValueError):
    """A cyclotomic order that is not a positive integer."""


class InvalidLiftError(SgpError, ValueError):
    """Attempt to lift a cyclotomic value to a non-multiple order."""


class InvalidParameterError(SgpError, ValueError):
    """A group-construction or subgroup parameter is out of range."""


class SizeLimitError(SgpError, ValueError):
    """A group exceeds the configured order bound for enumeration."""


class DomainMismatchError(SgpError, ValueError):
    """Operands live on different groups (or a non-subgroup was passed)."""


class UnsupportedFamilyError(SgpError, ValueError):
    """The requested operation only supports the built-in group families."""


class OracleFailureError(SgpError, RuntimeError):
    """An independent reconstruction failed to produce a valid result."""


class InternalConsistencyError(SgpError, RuntimeError):
    """Two independent computation paths disagree; signals a bug, exit 2."""


class IntegralityError(InternalConsistencyError):
    """A multiplicity that must be a nonnegative integer is not."""
