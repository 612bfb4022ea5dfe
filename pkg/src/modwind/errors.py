"""Exception types shared across the package."""


class ModwindError(Exception):
    """Base class for all library errors."""


class NotHyperbolic(ModwindError):
    """Matrix has |trace| <= 2 (or is upper triangular) where a hyperbolic one is required."""


class NotPrimitive(ModwindError):
    """Matrix is a proper power of another group element."""


class NonPositiveModulus(ModwindError):
    """Dedekind sum requested with modulus k < 1."""


class NumericalAmbiguity(ModwindError):
    """A quantity that must round to an integer was too far from one."""


class NonIntegralPhi(ModwindError):
    """Internal consistency failure: the closed-form Dedekind symbol was not an integer."""


class OddLength(ModwindError):
    """Cyclic word has odd length."""


class NonPositiveEntry(ModwindError):
    """Cyclic word contains an entry < 1."""


class CapExceeded(ModwindError):
    """A configured resource cap (length bound, trace cap) was exceeded."""


class Overflow(ModwindError):
    """Integer range guard tripped."""


class InsufficientData(ModwindError):
    """Not enough geodesic records for a meaningful statistic."""


class QuadratureFailure(ModwindError):
    """Numerical integration did not converge to the requested accuracy."""


class StepTooCoarse(ModwindError):
    """Argument tracking step produced an increment >= pi/2."""


class ResidualTooLarge(ModwindError):
    """Winding total was too far from an integer multiple of 2*pi."""


class NonPositiveImaginary(ModwindError):
    """Point is not in the upper half-plane."""


class DomainError(ModwindError):
    """Argument outside the mathematical domain of the function."""
