"""Exception hierarchy.

``InputError`` covers malformed or out-of-range inputs (CLI exit code 3);
``ComputationError`` covers domain failures raised by a correct input that
cannot be processed as asked (CLI exit code 2).
"""


class CospecError(Exception):
    """Base class for all package errors."""


class InputError(CospecError, ValueError):
    pass


class ComputationError(CospecError):
    pass


# graph-core
class MalformedEncoding(InputError):
    pass


class OrderOutOfRange(InputError):
    pass


# trees
class TreeSyntaxError(InputError):
    pass


class UnaryInternalNode(TreeSyntaxError):
    pass


class MultipleStarLeaves(TreeSyntaxError):
    pass


class StarAbsentWhenRequired(TreeSyntaxError):
    pass


class PatternTooSmall(InputError):
    pass


class VertexNotFound(InputError):
    pass


class NotACograph(ComputationError):
    pass


# spectra / mates
class OrderMismatch(InputError):
    pass


class CorpusIncomplete(InputError):
    pass


class AmbiguousBasePair(ComputationError):
    pass


class PatternAbsent(ComputationError):
    pass


class PreconditionViolated(ComputationError):
    pass


class BudgetExceeded(InputError):
    pass


# asymptotics
class DomainError(InputError):
    pass


class InsufficientTruncation(ComputationError):
    pass


class ConsistencyFailure(ComputationError):
    pass


class DegenerateSingularity(ComputationError):
    pass
