class FramedQuiverError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(FramedQuiverError, ValueError):
    pass


class CyclicQuiver(ValidationError):
    pass


class EmptyModuli(FramedQuiverError):
    pass


class NonUnitConstantTerm(FramedQuiverError, ValueError):
    pass


class SearchSpaceTooLarge(FramedQuiverError):
    pass


class NonDivisibleCount(FramedQuiverError, ArithmeticError):
    pass


class NotASubrepresentation(FramedQuiverError, ValueError):
    pass


class UnknownIsoClass(FramedQuiverError, KeyError):
    pass
