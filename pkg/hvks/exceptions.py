__all__ = ["hvksError", "NotHermitian", "NoConvergence", "DomainError",
           "DimMismatch", "NotCommuting", "NotNormalized", "SizeError",
           "UnknownId", "UndeclaredRelation", "RelationError", "ModelError",
           "PremiseFailure", "TooManyVariables", "ConstraintError",
           "ExpressionSyntaxError", "SiteOutOfRange", "SpecFileError"]


class hvksError(Exception):
    """Base class for every error raised by hvks."""


class NotHermitian(hvksError, ValueError):
    pass


class NoConvergence(hvksError, ArithmeticError):
    pass


class DomainError(hvksError, ValueError):
    """A table-backed function was applied outside its declared domain."""


class DimMismatch(hvksError, ValueError):
    pass


class NotCommuting(hvksError, ValueError):
    pass


class NotNormalized(hvksError, ValueError):
    pass


class SizeError(hvksError, ValueError):
    pass


class UnknownId(hvksError, KeyError):

    def __str__(self):
        # KeyError quotes its argument
        return str(self.args[0]) if self.args else ''


class UndeclaredRelation(hvksError, KeyError):

    def __str__(self):
        return str(self.args[0]) if self.args else ''


class RelationError(hvksError, ValueError):
    """A declared relation target = u(source) fails numerically."""


class ModelError(hvksError, ValueError):
    """A finite hidden-variable model violates one of its invariants."""


class PremiseFailure(hvksError, RuntimeError):
    """
    A quantum premise of the contradiction could not be verified.

    Parameters
    ----------
    premise: str
    Name of the premise that failed.

    detail: str, optional
    Observed value or other context.
    """

    def __init__(self, premise, detail=None):

        self.premise = premise
        self.detail = detail
        msg = "Premise not verified: %s" % premise
        if detail is not None:
            msg += " (%s)" % detail
        super(PremiseFailure, self).__init__(msg)


class TooManyVariables(hvksError, ValueError):
    pass


class ConstraintError(hvksError, ValueError):
    pass


class ExpressionSyntaxError(hvksError, ValueError):
    """
    Syntax error in an operator expression, positioned by 1-based line
    and column.
    """

    def __init__(self, message, line, column):

        self.line = line
        self.column = column
        super(ExpressionSyntaxError, self).__init__(
            "%s at line %i, column %i" % (message, line, column))


class SiteOutOfRange(hvksError, ValueError):
    pass


class SpecFileError(hvksError, ValueError):
    pass
