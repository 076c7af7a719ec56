"""Exception types raised across the package.

All inherit from NfepmError so callers can catch the package's failures
with a single except clause while the CLI maps them to exit codes.
"""


class NfepmError(Exception):
    pass


class ValidityViolation(NfepmError):
    """Geometry or wavelength outside the range where a formula holds."""


class IndexOutOfRange(NfepmError):
    """Element index outside 1..N."""


class NonPositiveDistance(NfepmError):
    """A distance that must be strictly positive is not."""


class CoincidentPoints(NfepmError):
    """Two probe points coincide where distinct points are required."""


class DivisionByZero(NfepmError):
    pass


class NegativeRadicand(NfepmError):
    """Square root of a negative quantity in a real-valued path."""


class DegenerateElements(NfepmError):
    """Probe element pair unusable (coincident or out of band)."""


class NonFinite(NfepmError):
    """A computed quantity is NaN or infinite."""


class UnsupportedRegion(NfepmError):
    """Prior box not covered by any closed-form solver regime."""


class QuadratureFailure(NfepmError):
    """Numerical integration did not converge to tolerance."""


class AttitudeSingularity(NfepmError):
    """Attitude too close to t_z = 1 where 1/t_y diverges."""


class SingularFIM(NfepmError):
    """Fisher information matrix numerically singular."""


class ZeroNoise(NfepmError):
    """Operation requires sigma^2 > 0."""


class ParseError(NfepmError):
    """Malformed config file or override string."""


class InvariantViolation(NfepmError):
    """Internal consistency check failed."""
