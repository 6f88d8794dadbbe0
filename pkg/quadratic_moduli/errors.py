"""
Domain exceptions raised by every quadratic_moduli module.

None of these derive from ValueError: pydantic only wraps ValueError/AssertionError
raised inside validators, so invariant failures detected while building a model
reach the caller as the exception below instead of a generic ValidationError.
"""


class ModuliError(Exception):
    """Base class for all domain failures."""


class ParseError(ModuliError):
    """Malformed serialized input (rationals, points, maps, prime sets)."""


class ValuationError(ModuliError):
    pass


class NotIntegralError(ModuliError):
    pass


class InvalidPrimeError(ModuliError):
    pass


class DegenerateMapError(ModuliError):
    pass


class SingularMobiusError(ModuliError):
    pass


class NotFixedError(ModuliError):
    pass


class InvalidTripleError(ModuliError):
    pass


class DegenerateNormalFormError(ModuliError):
    pass


class InvalidParameterError(ModuliError):
    pass


class WitnessError(ModuliError):
    """A witness or covering assertion failed on computed data."""
