"""Exception hierarchy shared by all nccr modules."""


class NCCRError(Exception):
    """Base class for every error raised by this package."""


class CapExceeded(NCCRError):
    """A configured resource cap (arity, basis size, degree, truncation) was hit."""


# polynomial core
class UnknownVariable(NCCRError, ValueError):
    def __init__(self, name, position):
        super().__init__(f"unknown variable {name!r} at offset {position}")
        self.name = name
        self.position = position


class PolynomialSyntaxError(NCCRError, ValueError):
    def __init__(self, message, position):
        super().__init__(f"{message} at offset {position}")
        self.position = position


class NonIntegerExponent(PolynomialSyntaxError):
    pass


class RingMismatch(NCCRError, ValueError):
    pass


class NoGrading(NCCRError, ValueError):
    pass


# standard bases and modules
class NotAGroebnerBasis(NCCRError, ValueError):
    pass


class NotHomogeneous(NCCRError, ValueError):
    pass


# singularities
class NotVanishingAtOrigin(NCCRError, ValueError):
    pass


class NonIsolated(NCCRError, ValueError):
    pass


# torus invariants
class InvalidWeights(NCCRError, ValueError):
    pass


class TooFewPositive(InvalidWeights):
    pass


class TooFewNegative(InvalidWeights):
    pass


class GcdNotOne(InvalidWeights):
    pass


class SumNotZero(NCCRError, ValueError):
    pass


class TruncationTooLarge(CapExceeded):
    pass


class TruncationInsufficient(NCCRError):
    pass


class NotCohenMacaulay(NCCRError):
    pass


# del Pezzo surfaces
class TooManyPoints(NCCRError, ValueError):
    pass


class LatticeMismatch(NCCRError, ValueError):
    pass


class NonIntegralResult(NCCRError, ValueError):
    pass


class ZeroRank(NCCRError, ValueError):
    pass


class NotAmple(NCCRError, ValueError):
    pass


class NotNumericallyExceptional(NCCRError, ValueError):
    pass
