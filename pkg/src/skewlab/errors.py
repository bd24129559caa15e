"""Exception types shared across the package."""


class SkewlabError(Exception):
    """Base class for every error raised by this library."""


class ContextMismatch(SkewlabError):
    """Operands belong to different rings or skew-ring contexts."""


class DivisionByZero(SkewlabError):
    """Inversion of zero, or division by the zero polynomial."""


class NotInvertible(SkewlabError):
    """Element of a (declared-division) algebra turned out to be singular."""


class NotInTower(SkewlabError):
    """No registered chain of subfields connects the two fields."""


class BothZero(SkewlabError):
    """gcrd(0, 0) is undefined."""


class ZeroOperand(SkewlabError):
    """lclm requires both operands nonzero."""


class DeltaUnsupported(SkewlabError):
    """The operation requires delta = 0."""


class NotCoprimeWithT(SkewlabError):
    """The polynomial has zero constant term, so gcrd(f, t) != 1."""


class NotIrreducible(SkewlabError):
    """A verified-reducible polynomial was passed where an irreducible is required."""


class PreconditionFailed(SkewlabError):
    """A stated precondition of the operation does not hold."""


class NotInE(SkewlabError):
    """Cyclic-algebra coefficients were expected to lie in the maximal subfield E."""


class LengthMismatch(SkewlabError):
    """Coefficient vector has the wrong length."""


class SNotOne(SkewlabError):
    """Matrix emission requires s = 1 (commutative B = E_hhat)."""


class UnsupportedMatrixEmission(SNotOne):
    """Alias carrying the factory-level meaning of the s > 1 refusal."""


class DegreeTooHigh(SkewlabError):
    """Polynomial degree exceeds the bound admitted by the operation."""


class DegreeOutOfRange(SkewlabError):
    """Residue degree outside [0, deg h)."""


class ShapeMismatch(SkewlabError):
    """Input does not have the t^n - theta shape the closed form requires."""


class InfiniteField(SkewlabError):
    """Exhaustive enumeration was requested over an infinite field."""


class EmptyCode(SkewlabError):
    """The code contains no nonzero codeword."""


class UnknownIrreducibility(SkewlabError):
    """Irreducibility over Q is only decided up to degree 4."""


class BudgetExceeded(SkewlabError):
    """An enumeration hit its budget; carries the partial progress count."""

    def __init__(self, message: str, emitted: int = 0):
        super().__init__(message)
        self.emitted = emitted


class SpecFileError(SkewlabError):
    """Spec-file parse error with position information."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        super().__init__(f"line {line}, col {column}: {message}")
        self.line = line
        self.column = column
