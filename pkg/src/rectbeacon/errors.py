"""Exception hierarchy shared by all modules."""


class GeometryError(Exception):
    """Base class for every structured failure in this package."""


class NotRectilinear(GeometryError):
    pass


class NotSimple(GeometryError):
    pass


class GeneralPositionViolated(GeometryError):
    """A horizontal or vertical cut connects two reflex vertices."""

    def __init__(self, msg, pair=None):
        super().__init__(msg)
        self.pair = pair


class NotAChord(GeometryError):
    pass


class PointOutsidePolygon(GeometryError):
    pass


class NotMonotone(GeometryError):
    pass


class TooManyReflexVertices(GeometryError):
    pass


class NotCoverageSpiral(GeometryError):
    pass


class ConstraintUnsatisfied(GeometryError):
    pass


class GenerationFailed(GeometryError):
    pass


class BudgetExceeded(GeometryError):
    pass


class InternalCaseError(GeometryError):
    """A case the underlying theory rules out was reached; indicates a bug."""
