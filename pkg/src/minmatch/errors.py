"""Exception hierarchy shared across the package."""


class MinmatchError(Exception):
    """Base class for all package errors."""


# -- graph construction / mutation -------------------------------------------

class GraphError(MinmatchError):
    pass


class SelfLoop(GraphError):
    pass


class DuplicateEdge(GraphError):
    pass


class DegreeOverflow(GraphError):
    """Adding the edge would push an endpoint above degree 3."""


class UnknownVertex(GraphError):
    pass


class MissingEdge(GraphError):
    pass


class NotSubcubic(GraphError):
    """Input data encodes a vertex of degree greater than 3."""


class Disconnected(GraphError):
    """Operation requires a connected graph."""


class EmptyGraph(GraphError):
    pass


# -- matchings ----------------------------------------------------------------

class EdgeNotInGraph(MinmatchError):
    pass


class NotAMatching(MinmatchError):
    pass


# -- solver -------------------------------------------------------------------

class InvalidConstraint(MinmatchError):
    """The designated pendant-avoidance constraint does not fit the graph."""


class PreconditionViolated(MinmatchError):
    """Caller passed arguments outside an operation's contract."""


class InternalInvariantViolation(MinmatchError):
    """A property the construction guarantees failed; always a bug."""


# -- oracle -------------------------------------------------------------------

class BudgetExceeded(MinmatchError):
    """Node budget ran out; carries the best (inexact) incumbent found."""

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result


class Infeasible(MinmatchError):
    """No maximal matching satisfies the requested exclusion."""


class TooLarge(MinmatchError):
    """Instance exceeds the hard size limit of an exhaustive routine."""


# -- generators / io ----------------------------------------------------------

class BadParameter(MinmatchError):
    pass


class RejectionLimitExceeded(MinmatchError):
    """Random generation failed to produce a valid graph within the attempt cap."""


class MalformedGraph6(MinmatchError):
    pass


class MalformedLine(MinmatchError):
    pass
