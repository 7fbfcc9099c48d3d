"""Error types raised by the pychen library.

Every error is a ``ValueError`` so callers that only care about bad input
can catch that; messages carry a bracket tag naming the failure class.
"""


class PyChenError(ValueError):
    """Base class for all pychen errors."""

    tag = "PYCHEN ERROR"

    def __init__(self, message):
        super().__init__(f"[{self.tag}] {message}")


class DimensionError(PyChenError):
    """Operands of quaternionic operations have mismatched sizes or signatures."""
    tag = "DIMENSION ERROR"


class NotOnQuadricError(PyChenError):
    tag = "NOT ON QUADRIC"


class HorizontalityError(PyChenError):
    tag = "NOT HORIZONTAL"


class SpecError(PyChenError):
    """Illegal family parameters (m, k, radius)."""
    tag = "SPEC ERROR"


class ChartError(PyChenError):
    tag = "CHART ERROR"


class DomainError(PyChenError):
    """A finite-difference stencil leaves the chart domain."""
    tag = "DOMAIN ERROR"


class ContractError(PyChenError):
    """A precondition of an operation does not hold (e.g. a frame is not curvature-adapted)."""
    tag = "CONTRACT ERROR"


class DegenerateSpectrumError(PyChenError):
    tag = "DEGENERATE SPECTRUM"


class ConfigError(PyChenError):
    """Unparsable or inconsistent run configuration."""
    tag = "CONFIG ERROR"
