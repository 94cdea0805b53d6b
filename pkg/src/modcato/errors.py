"""Exception types shared across the package."""


class ModcatoError(Exception):
    """Base class for all library errors."""


class BoxMarginError(ModcatoError):
    """A truncation box is too shallow or too narrow for the operation."""


class RegionError(ModcatoError):
    """A weight region misses entries the computation would need."""


class PredicateError(ModcatoError):
    """A set predicate failed its open/closed validation."""


class SizeGuardError(ModcatoError):
    """A configured size limit was exceeded; the instance is too large."""


class ExactnessError(ModcatoError):
    """An exact-integrality assertion failed.  This always indicates an
    internal inconsistency, never a bad input."""


class InvalidCharacterError(ModcatoError):
    """An input character is not a nonnegative combination of simples."""
