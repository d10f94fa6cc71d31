class ToricapError(Exception):
    """Base class for all errors raised by toricap."""


class InvalidInput(ToricapError, ValueError):
    """Bad caller input: malformed rationals, regions outside a class, out-of-range parameters."""


class UndecidedError(ToricapError):
    """The computation ran out of budget before reaching a verdict."""


class NonTermination(UndecidedError):
    def __init__(self, message, residual_area=None):
        super().__init__(message)
        self.residual_area = residual_area
