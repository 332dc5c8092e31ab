"""Exception types shared across the package."""


class ExactFormsError(Exception):
    """Base class for all library errors."""


class DivisionByZero(ExactFormsError, ZeroDivisionError):
    pass


class UnsupportedField(ExactFormsError):
    pass


class FieldMismatch(ExactFormsError):
    pass


class SingularForm(ExactFormsError):
    pass


class ZeroEntry(ExactFormsError):
    pass


class ZeroSlot(ExactFormsError):
    pass


class ZeroScalar(ExactFormsError):
    pass


class SingularParameters(ExactFormsError):
    pass


class NotPowerOfTwoDim(ExactFormsError):
    pass


class DegenerateParameters(ExactFormsError):
    pass


class OwnerMismatch(ExactFormsError):
    pass


class NotEven(ExactFormsError):
    pass


class Degenerate(ExactFormsError):
    pass


class SignatureMismatch(ExactFormsError):
    pass


class UnsupportedVariant(ExactFormsError):
    pass


class HypothesisViolation(ExactFormsError):
    pass


class InternalInconsistency(ExactFormsError):
    """Two routes that must agree disagreed; always a bug, never an input error."""


class OracleUndecided(ExactFormsError):
    """A decision procedure ran out of certificates within its bounds.

    Carries whatever partial progress was made (e.g. a partial Witt
    decomposition) in the ``partial`` attribute.
    """

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


class GrammarError(ExactFormsError):
    """Syntax error in the CLI object grammar, with input position."""

    def __init__(self, line: int, col: int, expected: str):
        super().__init__(f"line {line}, col {col}: expected {expected}")
        self.line = line
        self.col = col
        self.expected = expected
