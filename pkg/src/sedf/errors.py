"""Exception hierarchy shared by all modules."""


class SedfError(Exception):
    pass


class EmptyFactorList(SedfError, ValueError):
    pass


class FactorBelowTwo(SedfError, ValueError):
    pass


class MismatchedGroup(SedfError, ValueError):
    pass


class PrimeDoesNotDivideOrder(SedfError, ValueError):
    pass


class DuplicateElement(SedfError, ValueError):
    pass


class NonBinaryCoefficients(SedfError, ValueError):
    pass


class PrincipalCharacter(SedfError, ValueError):
    pass


class TotalVanishes(SedfError, ArithmeticError):
    pass


class SetSumVanishes(SedfError, ArithmeticError):
    pass


class NotPrime(SedfError, ValueError):
    pass


class NotPrimePower(SedfError, ValueError):
    pass


class DegreeZero(SedfError, ValueError):
    pass


class IndexDoesNotDivide(SedfError, ValueError):
    pass


class IndexOutOfRange(SedfError, IndexError):
    pass


class WrongResidueClass(SedfError, ValueError):
    pass


class BadCongruence(SedfError, ValueError):
    pass


class OrderTooSmall(SedfError, ValueError):
    pass


class UnknownRule(SedfError, KeyError):
    pass


class InvalidParams(SedfError, ValueError):
    pass


class ParseError(SedfError, ValueError):
    pass


class ConflictError(SedfError, ValueError):
    pass
