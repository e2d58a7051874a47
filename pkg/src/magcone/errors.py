"""Exception types shared across the package."""


class MagconeError(Exception):
    """Base class for all package-specific errors."""


class DomainError(MagconeError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class NonconvergenceError(MagconeError, ArithmeticError):
    """A series or iteration hit its term cap with the tail still above tolerance."""


class QuadratureError(MagconeError, ValueError):
    """A requested resolution exceeds what the quadrature grid can represent."""


class SingularTimeError(MagconeError, ValueError):
    """Propagator evaluation requested too close to a singular time."""


class WindowTooSmallError(MagconeError, ValueError):
    """A mode window does not cover the spectral content it is asked to represent."""


class GammaOutOfRangeError(MagconeError, ValueError):
    """Weight exponent outside the admissible range set by the flux distance."""


class ConfigError(MagconeError, ValueError):
    """Malformed run configuration."""
