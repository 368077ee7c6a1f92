"""Exception hierarchy shared by all cyclomap modules."""


class CyclomapError(Exception):
    """Base class for all library errors."""


class HypothesisError(CyclomapError):
    """A criterion or constructor was invoked outside its hypotheses."""


# -- field construction / arithmetic ----------------------------------------

class NotPrime(CyclomapError):
    pass


class ReducibleModulus(CyclomapError):
    pass


class NotPrimitive(CyclomapError):
    pass


class DivisionByZero(CyclomapError):
    pass


class ZeroArgument(CyclomapError):
    pass


# -- integer lemmas ----------------------------------------------------------

class DivisibilityViolation(CyclomapError):
    pass


# -- groups, cosets, branch maps ---------------------------------------------

class IndexNotDividingOrder(HypothesisError):
    pass


class NotInGroup(CyclomapError):
    pass


class UnsupportedContext(CyclomapError):
    pass


class DomainElementOutsideField(CyclomapError):
    pass


# -- parsing -----------------------------------------------------------------

class ParseError(CyclomapError):
    pass


class CoefficientNotInField(ParseError):
    pass


# -- criteria and families ---------------------------------------------------

class WrongIndex(HypothesisError):
    pass


class UnequalGcds(HypothesisError):
    pass


class HypothesisViolated(HypothesisError):
    pass


class GcdHypothesis(HypothesisError):
    pass


class RootOnUnitCircle(CyclomapError):
    def __init__(self, msg, point=None):
        super().__init__(msg)
        self.point = point


class ConstraintViolated(HypothesisError):
    pass


# -- sweeps ------------------------------------------------------------------

class CapExceeded(CyclomapError):
    pass
