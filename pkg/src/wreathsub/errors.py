"""Exception hierarchy shared by every module."""


class GroupError(Exception):
    """Base class for all errors raised by wreathsub."""


class InputError(GroupError):
    """Errors caused by malformed or inconsistent user input."""


class WordSyntaxError(InputError):
    pass


class UnknownGenerator(InputError):
    pass


class FactorOutOfRange(InputError):
    pass


class SchemaError(InputError):
    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field


class NotASubgroup(InputError):
    pass


class NotAHomomorphism(InputError):
    def __init__(self, a, b, message=None):
        super().__init__(message or f"homomorphism equation fails for pair ({a}, {b})")
        self.pair = (a, b)


class CapExceeded(InputError):
    pass


class ClosureCapExceeded(CapExceeded):
    pass


class WrongKind(InputError):
    pass


class NotInSubgroup(InputError):
    pass


class InvalidTransversal(InputError):
    def __init__(self, coset):
        super().__init__(f"transversal entry {coset} does not lie in coset {coset}")
        self.coset = coset


class DomainMismatch(GroupError):
    pass


class PointNotFixed(GroupError):
    def __init__(self, point):
        super().__init__(f"permutation part does not fix coset {point}")
        self.point = point


class InternalInductionOrder(GroupError):
    """A Kurosh-system lookup was attempted before it was assigned (a bug)."""


class FactorElementNotLocated(GroupError):
    """A y-element could not be written as u x u^-1 with x in the stabilizer."""
