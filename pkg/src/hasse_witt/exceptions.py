"""Exception hierarchy shared by all modules."""


class HasseWittError(Exception):
    """Base class for errors raised by this package."""


class NotSquarefree(HasseWittError):
    pass


class DegreeOutOfRange(HasseWittError):
    pass


class TooDivisibleByX(HasseWittError):
    pass


class NotInvertible(HasseWittError, ZeroDivisionError):
    pass


class DivisorVanishes(HasseWittError, ZeroDivisionError):
    pass


class NotHyperelliptic(HasseWittError):
    pass


class BadPrime(HasseWittError):
    pass


class DuplicateTranslations(HasseWittError):
    pass


class GenusExceedsPrime(HasseWittError):
    pass


class EmptyInput(HasseWittError):
    pass
