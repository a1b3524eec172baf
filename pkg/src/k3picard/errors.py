"""Exception hierarchy shared by all modules."""


class K3Error(Exception):
    """Base class for every error raised by this package."""


class FieldError(K3Error):
    pass


class NotPrime(FieldError):
    pass


class EvenCharacteristic(FieldError):
    pass


class DegreeOutOfRange(FieldError):
    pass


class BudgetExceeded(K3Error):
    """A configured work cap (points, pairs, degree) was hit."""


class PolyError(K3Error):
    pass


class NonSquare(PolyError):
    pass


class DimensionMismatch(PolyError):
    pass


class ZeroLine(PolyError):
    pass


class ZeroForm(PolyError):
    pass


class ZeroDivisor(PolyError):
    pass


class NotDivisible(PolyError):
    pass


class IndexOutOfRange(PolyError):
    pass


class OutOfRange(PolyError):
    pass


class ParseError(K3Error):
    pass


class GeometryError(K3Error):
    pass


class WrongVariableCount(GeometryError):
    pass


class LineNotContained(GeometryError):
    def __init__(self, offending):
        self.offending = list(offending)
        super().__init__("line V(x0,x1,x2) not contained; offending monomials: %s" % self.offending)


class ZeroSextic(GeometryError):
    pass


class CommonComponent(GeometryError):
    pass


class BadChart(GeometryError):
    pass


class ZetaError(K3Error):
    pass


class InsufficientCounts(ZetaError):
    def __init__(self, required, available):
        self.required = required
        self.available = available
        super().__init__("need traces a_1..a_%d, have %d" % (required, available))


class NoCandidate(ZetaError):
    pass


class NotWeil(ZetaError):
    pass


class NotSquarefree(ZetaError):
    pass


class EqualPrimes(K3Error):
    pass
