"""
Error types for rotsurf
"""


class RotsurfError(Exception):
    """Base class for every error raised by the library"""


class NonFiniteInput(RotsurfError, ValueError):
    """A vector or matrix contains NaN/Inf or has the wrong shape"""


class FailedConvergence(RotsurfError):
    """The exponential series did not settle within the term cap"""


class UnrecognizedBracket(RotsurfError):
    """A generator bracket is neither zero nor a signed generator"""


class EmptyGeneratorSet(RotsurfError, ValueError):
    """Subalgebra test called with no generators"""


class DomainViolation(RotsurfError, ValueError):
    """A curve was evaluated outside its domain interval"""


class UnknownCurve(RotsurfError, KeyError):
    """No builtin curve under that name"""


class CurveSyntaxError(RotsurfError, ValueError):
    """Curve or reparametrization expression could not be parsed"""


class DomainRequired(RotsurfError, ValueError):
    """An expression with a division needs an explicit domain interval"""


class RestrictionViolation(RotsurfError, ValueError):
    """Curve components required to vanish for a reduced surface do not"""


class NotRestricted(RotsurfError, ValueError):
    """Closed-form quantities need a restricted surface spec"""


class DegenerateSurface(RotsurfError):
    """Tangent plane or frame degenerates; curvature undefined at the point"""


class DegenerateMetric(DegenerateSurface):
    """Induced metric determinant vanishes"""


class DegenerateFrame(DegenerateSurface):
    """A frame normalizing radicand vanishes"""


class BadProjection(RotsurfError, ValueError):
    """OBJ projection is not three distinct indices from 1..4"""


class BadGrid(RotsurfError, ValueError):
    """Grid spec violates its invariants"""
