"""Exception types raised across the package."""


class DomainError(ValueError):
    """Argument outside the domain where a formula is defined."""


class PolynomialCapError(OverflowError):
    """Requested polynomial order exceeds the supported exact-arithmetic cap."""


class RootFindingError(RuntimeError):
    """Root isolation or refinement failed (non-real roots, repeated roots, or cap)."""


class NotACompletelyMonotoneQuadratic(ValueError):
    """1/(1 + u x + v x^2) is not the Laplace transform of a e + b e'."""


class ToleranceNotReached(RuntimeError):
    """Adaptive quadrature hit its subdivision cap before meeting the tolerance."""


class NonDecayingIntegrand(RuntimeError):
    """Semi-infinite truncation never satisfied the tail test."""


class MaxStepsExceeded(RuntimeError):
    """A path simulation did not exit the cone within ``max_steps`` steps."""


class OriginTooClose(RuntimeError):
    """The planar path came within 1e-6 of the origin."""
