"""Exception hierarchy shared by all mocktd modules."""


class MockTDError(Exception):
    """Base class for every error raised by mocktd."""


class FieldError(MockTDError, ValueError):
    """Invalid field description or cross-field operation."""


class ScalarParseError(FieldError):
    """Text does not encode a scalar of the requested field."""


class FieldMismatchError(FieldError):
    pass


class FieldZeroDivisionError(MockTDError, ZeroDivisionError):
    pass


class ShapeError(MockTDError, ValueError):
    pass


class QuotientActionError(MockTDError, ArithmeticError):
    """The subspace is not invariant, or the transversal is not a complement."""


class SpectralError(MockTDError, ArithmeticError):
    pass


class DuplicateEigenvalue(SpectralError):
    pass


class ProductNotZero(SpectralError):
    """prod(A - theta_i I) != 0: not diagonalizable with the given spectrum."""


class ZeroIdempotent(SpectralError):
    """A supplied value is not an eigenvalue."""


class DoesNotSplit(SpectralError):
    """Minimal polynomial is not a product of distinct linear factors over the field."""


class InvalidSystem(MockTDError, ValueError):
    """Inconsistent (mock) tridiagonal system data."""


class DiameterMismatch(InvalidSystem):
    pass


class NotSharp(MockTDError, ValueError):
    pass


class NotScalarMultiple(MockTDError, ArithmeticError):
    pass


class InternalInvariantViolation(MockTDError, AssertionError):
    """A guaranteed algebraic identity failed; indicates a bug or invalid input."""


class AdmissibilityError(MockTDError, ValueError):
    """Diameter-two parameters violate an admissibility clause."""

    clause = "admissibility"


class DistinctnessViolated(AdmissibilityError):
    clause = "(i) distinct eigenvalues"


class Zeta0NotOne(AdmissibilityError):
    clause = "(ii) zeta_0 = 1"


class Zeta2Zero(AdmissibilityError):
    clause = "(ii) zeta_2 != 0"


class NonvanishingSumViolated(AdmissibilityError):
    clause = "(ii) nonvanishing sum"


class NotDegenerate(MockTDError, ValueError):
    pass
