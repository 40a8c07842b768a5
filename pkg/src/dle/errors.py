"""Exception hierarchy for the engine.

Every error carries a short class name; the scenario runner reports that
name verbatim as the ``actual`` value of a failed check.
"""


class DLEError(Exception):
    """Base class of all engine errors."""


class NonPrimeModulus(DLEError):
    pass


class NonMonicPolynomial(DLEError):
    pass


class WrongRingKind(DLEError):
    pass


class RingMismatch(DLEError):
    pass


class ShapeMismatch(DLEError):
    pass


class NoSolution(DLEError):
    """Raised by :func:`dle.linalg.solve` when ``M x = b`` has no solution."""


class InhomogeneousElement(DLEError):
    pass


class NotAChainComplex(DLEError):
    """Differentials fail ``d o d = 0``."""


class NotAChainMap(DLEError):
    pass


class GradedCutoffExceeded(DLEError):
    """Graded homology is not certified finite-length below the cutoff."""


class InfiniteHomology(DLEError):
    pass


class NoResolution(DLEError):
    pass


class LiftFailure(DLEError):
    pass


class SimplicialIdentityError(DLEError):
    pass


class MissingProfile(DLEError):
    pass


class NonFiniteClass(DLEError):
    pass


class UnderdeterminedProfile(DLEError):
    pass


class CommonComponent(DLEError):
    pass


class ZeroDerivative(DLEError):
    pass


class UnknownScenario(DLEError):
    pass


class InvalidParameter(DLEError):
    pass


class ParseError(DLEError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class UndefinedName(DLEError):
    def __init__(self, name, line=None):
        self.name = name
        self.line = line
        msg = f"undefined name {name!r}"
        if line is not None:
            msg = f"line {line}: {msg}"
        super().__init__(msg)
