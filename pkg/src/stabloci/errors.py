"""Exception hierarchy shared by all modules.

Three families matter to callers (and map to distinct CLI exit codes):
input/parse errors, violated operation preconditions, and exhausted
enumeration or degree bounds.
"""


class StablociError(Exception):
    """Base class for all library errors."""


class ParseError(StablociError):
    """A document could not be turned into a valid action."""


class MalformedDocument(ParseError):
    pass


class DimensionMismatch(ParseError):
    pass


class NotNilpotent(ParseError):
    pass


class NonPositiveGradingWeight(ParseError):
    pass


class GradingCommutationFailure(ParseError):
    pass


class PreconditionError(StablociError):
    """An operation was called outside its stated domain."""


class TrivialAction(PreconditionError):
    pass


class NotAdapted(PreconditionError):
    pass


class MTooSmall(PreconditionError):
    pass


class UnsupportedUnipotentDimension(PreconditionError):
    pass


class UnknownIndex(PreconditionError):
    pass


class ZeroForm(PreconditionError):
    pass


class BoundExceeded(StablociError):
    """A configured enumeration or degree bound was exhausted."""


class EnumerationBoundExceeded(BoundExceeded):
    pass


class DegreeBoundExceeded(BoundExceeded):
    pass
