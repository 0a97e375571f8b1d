"""Exception hierarchy for moduli_divisors.

Every error derives from both ModuliError and ValueError so callers that only
know about ValueError still catch them.
"""

from __future__ import annotations


class ModuliError(Exception):
    """Base class of every domain error raised by this package."""


class InvalidContextError(ModuliError, ValueError):
    """A space context violates its invariants or a formula's (g, n) range."""


class InvalidSymbolError(ModuliError, ValueError):
    """A basis symbol is malformed or not valid in the given context."""


class MixedContextError(ModuliError, ValueError):
    """Divisor classes from different spaces were combined."""


class GeneratorDomainError(ModuliError, ValueError):
    """A generator's validity predicate (parity, primality, range) failed."""


class UnsupportedPullbackError(ModuliError, ValueError):
    """A pullback was requested on an input it is not defined for."""


class ReducedCoordinateError(ModuliError, ValueError):
    """A Reduced-mode generator was read on a coordinate it does not know."""


class ConfigError(ModuliError, ValueError):
    """Configuration or environment values could not be parsed."""


__all__ = [
    "ModuliError",
    "InvalidContextError",
    "InvalidSymbolError",
    "MixedContextError",
    "GeneratorDomainError",
    "UnsupportedPullbackError",
    "ReducedCoordinateError",
    "ConfigError",
]
