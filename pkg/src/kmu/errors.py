"""Exception types shared across the package."""


class KmuError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatchError(KmuError):
    """Operands have incompatible dimensions; the message carries both."""


class SingularMetricError(KmuError):
    """A metric with a zero diagonal entry cannot be inverted."""


class UnsupportedDimensionError(KmuError):
    """Model dimension below the smallest well-defined case (n >= 2)."""


class DegenerateModelError(KmuError):
    """Parameters violate beta^2 > alpha^2, so the model degenerates."""


class StructureError(KmuError):
    """A structural axiom (contact metric, h operator, ...) fails."""


class NotKappaMuError(StructureError):
    """The curvature condition defining the class fails for some pair."""


class DegeneratePlaneError(KmuError):
    """Sectional curvature requested for linearly dependent vectors."""


class ParameterError(KmuError):
    """A scalar parameter is outside its allowed range."""


class NonInvolutiveError(KmuError):
    """A distribution has no integral submanifold; construction refused."""


class DescriptorError(KmuError):
    """A model descriptor file does not match the expected grammar."""
