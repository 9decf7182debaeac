"""Exception hierarchy.  Every error is a ``ValueError`` so callers that
only care about bad input can catch one type."""


class PinnedBallsError(ValueError):
    pass


class InvalidArgument(PinnedBallsError):
    pass


class DimensionMismatch(PinnedBallsError):
    pass


class IndexOutOfRange(PinnedBallsError, IndexError):
    pass


class OverlapError(PinnedBallsError):
    """Two balls have overlapping interiors."""


class NotTouching(PinnedBallsError):
    """An operation needed a contact edge but the balls do not touch."""


class DisconnectedGraph(PinnedBallsError):
    pass


class ScheduleEdgeNotInGraph(PinnedBallsError):
    pass


class TooManyEdges(PinnedBallsError):
    pass


class InfeasibleStar(PinnedBallsError):
    pass


class PlacementFailure(PinnedBallsError):
    pass


class InfeasibleBudget(PinnedBallsError):
    pass
