"""Exception types shared across the package.

``DomainError`` covers violated mathematical preconditions (the CLI maps it
to exit status 2); ``ParseError`` covers malformed textual input (exit 1).
"""


class DomainError(Exception):
    """An input violates a mathematical precondition of an operation."""


class FieldMismatch(DomainError):
    """Operands belong to different fields."""


class DivisionByZero(DomainError, ZeroDivisionError):
    """Division or inversion of a zero field element."""


class NotSquare(DomainError):
    """A square matrix was required."""


class NotNilpotent(DomainError):
    """No power of the matrix up to its size vanishes."""


class DimensionMismatch(DomainError):
    """Matrix or block dimensions are inconsistent."""


class NotAnEigenvalue(DomainError):
    """The given scalar is not an eigenvalue of the matrix."""


class DuplicateEigenvalue(DomainError):
    """Eigenvalues in an assembled form must be pairwise distinct."""


class CharacteristicTooSmall(DomainError):
    """The field characteristic is below the guard bound of a theorem."""


class NonSplitSpectrum(DomainError):
    """The characteristic polynomial has irrational roots, so a per-eigenvalue
    computation over Q cannot cover the whole matrix."""


class InvalidRange(DomainError):
    """An index or exponent is outside its valid range."""


class InvalidK(InvalidRange):
    """A power exponent is outside its valid range."""


class OrderNotApplicable(DomainError):
    """The requested basis order is not defined for these degrees."""


class InvalidGrouping(DomainError):
    """A variable grouping is not a partition of the variable count."""


class ParseError(ValueError):
    """Malformed textual input (scalar, matrix, or element serialization)."""
