"""Exception types shared across the package."""


class ZetapairError(Exception):
    """Base class for all package-specific errors."""


class RingError(ZetapairError):
    """Invalid exact-ring arithmetic (mixed rings, inexact division, ...)."""


class DomainError(ZetapairError):
    """Argument outside the mathematical domain of an operation."""


class NotHyperbolicError(DomainError):
    """Element is not hyperbolic where a hyperbolic one is required."""


class MembershipError(ZetapairError):
    """Element does not belong to the group it was claimed to be in."""


class GroupConstructionError(ZetapairError):
    """Coset/cusp construction could not be completed (overflow, bad pair)."""


class SearchExhaustedError(ZetapairError):
    """A bounded certificate search hit its bound without certifying."""


class CuspDataError(ZetapairError):
    """Missing or inconsistent cusp data on a group pair."""


class CharacterError(ZetapairError):
    """Character table construction or evaluation failed."""


class QuadratureError(ZetapairError):
    """Adaptive quadrature could not meet the requested tolerance."""


class ClosureError(ZetapairError):
    """A matched-truncation window is not closed under the term bijection."""


class ConfigError(ZetapairError):
    """Scenario configuration file is missing, unreadable or invalid."""
