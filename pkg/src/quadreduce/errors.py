"""Exception hierarchy shared by all quadreduce modules."""


class QuadError(Exception):
    """Base class for all errors raised by this package."""


class MalformedRotation(QuadError):
    """The rotation data does not describe a signed rotation system."""


class ParseError(QuadError):
    """An .rsq file could not be parsed."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class NotACycle(QuadError):
    """The given vertex sequence is not a cycle of the graph."""


class NotContractible(QuadError):
    """The cycle has sign -1 and does not bound a disk."""


class WrongDegree(QuadError):
    """The pivot vertex does not have the required degree."""


class WouldDestroyC4(QuadError):
    """Degree-2 deletion is not allowed on the 4-cycle itself."""


class NeighborhoodNotStable(QuadError):
    """The pivot has two adjacent neighbours."""


class UnsafeContraction(QuadError):
    """The pivot lies on a contractible 4-cycle with non-empty interior."""


class NotAFace(QuadError):
    """The given 4-tuple does not bound a face."""


class AdjacentPair(QuadError):
    """The two vertices to identify are adjacent."""


class ExtraCommonNeighbor(QuadError):
    """The pair has common neighbours besides the two face corners."""


class DegenerateResult(QuadError):
    """The operation would not produce a simple quadrangulation."""


class NotExpandable(QuadError):
    """The step cannot be expanded into face-contractions."""


class NoSuchVertex(QuadError):
    """No vertex of degree 2 or 3 exists where one is guaranteed."""


class InvalidInput(QuadError):
    """The input graph violates an operation's precondition."""


class BipartiteInput(QuadError):
    """A non-bipartite quadrangulation is required."""


class NotOpposite(QuadError):
    """The corner pair is not an opposite pair of the face."""


class BadSplitSpec(QuadError):
    """The vertex split specification is invalid."""


class SizeUnreachable(QuadError):
    """The requested size cannot be reached from the seed graph."""


class TooLarge(QuadError):
    """The instance exceeds the configured enumeration cap."""


class UnsupportedFormat(QuadError):
    """Unknown export format."""
