class JordanianError(Exception):
    """Base exception for the toolkit; ``code`` names the failure kind."""

    code = "ERROR"


class DimensionMismatchError(JordanianError):
    """Operands have incompatible shapes."""

    code = "DIMENSION_MISMATCH"


class NotNilpotentError(JordanianError):
    code = "NOT_NILPOTENT"


class SingularMatrixError(JordanianError):
    code = "SINGULAR"


class ParseError(JordanianError):
    """Polynomial text does not follow the grammar."""

    code = "PARSE_ERROR"

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class SchemaError(JordanianError):
    """JSON input does not match the expected schema."""

    code = "SCHEMA_ERROR"


class RelationFailsError(JordanianError):
    """XY - YX != Y^2; ``entry`` is the first offending (row, col), 0-indexed."""

    code = "RELATION_FAILS"

    def __init__(self, entry: tuple[int, int]):
        super().__init__(f"XY - YX != Y^2 at entry {entry}")
        self.entry = entry


class YNotNilpotentError(JordanianError):
    code = "Y_NOT_NILPOTENT"


class ParamCountMismatchError(JordanianError):
    code = "PARAM_COUNT_MISMATCH"


class ZeroPolynomialError(JordanianError):
    code = "ZERO_POLYNOMIAL"


class EigenvaluesNotRationalError(JordanianError):
    """The characteristic polynomial of X does not split over the rationals."""

    code = "EIGENVALUES_NOT_RATIONAL"


class NotAnAlgebraError(JordanianError):
    code = "NOT_AN_ALGEBRA"


class GensNotInAlgebraError(JordanianError):
    code = "GENS_NOT_IN_ALGEBRA"


class InvarianceFailureError(JordanianError):
    code = "INVARIANCE_FAILURE"


class NotFullBlockError(JordanianError):
    """Y is not conjugate to a single Jordan block (rank Y != n - 1)."""

    code = "NOT_FULL_BLOCK"


class InconclusiveError(JordanianError):
    """No invertible intertwiner found within the trial budget."""

    code = "INCONCLUSIVE"


class ZeroParameterError(JordanianError):
    code = "ZERO_PARAMETER"


class InvariantViolationError(JordanianError):
    """An internal consistency check failed; indicates a bug, not bad input."""

    code = "INVARIANT_VIOLATION"
