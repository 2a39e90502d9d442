"""Exception hierarchy shared by all modules."""


class GeometryError(ValueError):
    """Base class for precondition failures in this package."""


class ZeroDirection(GeometryError):
    pass


class NotInBall(GeometryError):
    pass


class NullVector(GeometryError):
    pass


class NotLorentz(GeometryError):
    pass


class NotOrthogonal(GeometryError):
    pass


class OutsideOmega(GeometryError):
    pass


class TranslationTooLarge(GeometryError):
    pass


class MismatchedSampling(GeometryError):
    pass


class NotRadial(GeometryError):
    pass


class TooFewPoints(GeometryError):
    pass


class AllCollinear(GeometryError):
    pass


class DuplicatePoints(GeometryError):
    pass


class DegenerateQuad(GeometryError):
    pass


class DegenerateHull(GeometryError):
    pass


class BoundaryEdge(GeometryError):
    pass


class OriginNotInterior(GeometryError):
    pass


class UnboundedExtension(GeometryError):
    pass


class OriginInHull(GeometryError):
    pass


class DegenerateBody(GeometryError):
    pass


class InvalidSurface(GeometryError):
    pass


class DeltaTooLarge(GeometryError):
    pass


class PunctureHitsEndpoint(GeometryError):
    pass
