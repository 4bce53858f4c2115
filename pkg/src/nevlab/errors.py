"""Exception types raised by nevlab.

Every failure mode that callers are expected to branch on gets its own
class; everything derives from :class:`NevlabError` so that callers can
also catch the whole family at once.
"""


class NevlabError(Exception):
    """Base class for all nevlab-specific errors."""


class ConstantPolynomialError(NevlabError):
    """Root finding was requested for a polynomial of degree < 1."""


class NoConvergenceError(NevlabError):
    """An iterative solver failed to meet its residual contract."""


class ZeroNearContourError(NevlabError):
    """A zero of the function lies too close to the integration contour."""


class NonIntegerWindingError(NevlabError):
    """A winding-number integral did not settle close to an integer."""


class BadRadiusError(NevlabError):
    """A radius parameter was outside the open interval (0, 1)."""


class NotUnitVectorError(NevlabError):
    """A direction vector was not unit length to within tolerance."""


class AtomSingularityError(NevlabError):
    """Evaluation was requested at (or too close to) a singular atom."""


class AtBasePointError(NevlabError):
    """The counting function was requested at the image of the origin."""


class ConstantMapError(NevlabError):
    """A constant map was supplied where a nonconstant one is required."""


class BasePointInDiskError(NevlabError):
    """The image of the origin lies inside the test disk."""


class DiskNotInDomainError(NevlabError):
    """The closed test disk is not contained in the open unit disk."""


class SequenceViolationError(NevlabError):
    """A radius sequence was not strictly increasing inside (0, 1)."""


class InsufficientProfileError(NevlabError):
    """A profile does not carry enough radii, or reaches too small a radius."""


class ConfigError(NevlabError):
    """An experiment configuration failed validation."""

    def __init__(self, message, field=None):
        super().__init__(message)
        self.field = field
