"""
Scalar types shared by every module: exact rationals, prime-field elements and
finite sets of rational primes.

Rationals are plain `fractions.Fraction` values (always in lowest terms with a
positive denominator, so equality is structural). The `Rational` annotation
teaches pydantic to accept the canonical string forms "n" and "n/d" and to emit
them back in JSON, so no float ever enters or leaves a model.
"""

import re
from fractions import Fraction
from typing import Annotated, Any

from pydantic import BaseModel, BeforeValidator, ConfigDict, PlainSerializer, model_validator
from sympy import isprime

from quadratic_moduli.errors import InvalidPrimeError, ParseError

_RATIONAL_PATTERN = re.compile(r"[+-]?\d+(?:/(?P<denominator>\d+))?", re.ASCII)


def to_fraction(value: Any) -> Fraction:
    """Coerce int, Fraction or a canonical rational string to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ParseError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip().replace("−", "-")
        match = _RATIONAL_PATTERN.fullmatch(text)
        if match is None:
            raise ParseError(f"not a rational: {value!r}")
        if match["denominator"] is not None and int(match["denominator"]) == 0:
            raise ParseError(f"zero denominator: {value!r}")
        return Fraction(text)
    raise ParseError(f"not a rational: {value!r}")


Rational = Annotated[
    Fraction,
    BeforeValidator(to_fraction),
    PlainSerializer(str, return_type=str, when_used="json"),
]


def require_prime(p: int) -> int:
    if isinstance(p, bool) or not isinstance(p, int) or not isprime(p):
        raise InvalidPrimeError(f"{p!r} is not a prime")
    return p


class PrimeFieldElem(BaseModel):
    """An element of the prime field F_p, stored as its least non-negative residue."""

    model_config = ConfigDict(frozen=True)

    residue: int
    modulus: int

    @model_validator(mode="before")
    @classmethod
    def _reduce_residue(cls, data: Any) -> Any:
        if isinstance(data, dict) and "residue" in data and "modulus" in data:
            p = require_prime(data["modulus"])
            data = {**data, "residue": int(data["residue"]) % p}
        return data

    @classmethod
    def of(cls, residue: int, modulus: int) -> "PrimeFieldElem":
        # Trusted constructor for internal arithmetic: modulus already known prime.
        return cls.model_construct(residue=residue % modulus, modulus=modulus)

    def _coerce(self, other: Any) -> int:
        if isinstance(other, PrimeFieldElem):
            if other.modulus != self.modulus:
                raise InvalidPrimeError(f"mixed moduli {self.modulus} and {other.modulus}")
            return other.residue
        if isinstance(other, int) and not isinstance(other, bool):
            return other
        return NotImplemented

    def __add__(self, other: Any) -> "PrimeFieldElem":
        r = self._coerce(other)
        if r is NotImplemented:
            return NotImplemented
        return PrimeFieldElem.of(self.residue + r, self.modulus)

    __radd__ = __add__

    def __sub__(self, other: Any) -> "PrimeFieldElem":
        r = self._coerce(other)
        if r is NotImplemented:
            return NotImplemented
        return PrimeFieldElem.of(self.residue - r, self.modulus)

    def __rsub__(self, other: Any) -> "PrimeFieldElem":
        r = self._coerce(other)
        if r is NotImplemented:
            return NotImplemented
        return PrimeFieldElem.of(r - self.residue, self.modulus)

    def __mul__(self, other: Any) -> "PrimeFieldElem":
        r = self._coerce(other)
        if r is NotImplemented:
            return NotImplemented
        return PrimeFieldElem.of(self.residue * r, self.modulus)

    __rmul__ = __mul__

    def __neg__(self) -> "PrimeFieldElem":
        return PrimeFieldElem.of(-self.residue, self.modulus)

    def __pow__(self, exponent: int) -> "PrimeFieldElem":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        return PrimeFieldElem.of(pow(self.residue, exponent, self.modulus), self.modulus)

    def inverse(self) -> "PrimeFieldElem":
        if self.residue == 0:
            raise ZeroDivisionError(f"0 has no inverse mod {self.modulus}")
        return PrimeFieldElem.of(pow(self.residue, -1, self.modulus), self.modulus)

    def __truediv__(self, other: Any) -> "PrimeFieldElem":
        r = self._coerce(other)
        if r is NotImplemented:
            return NotImplemented
        return self * PrimeFieldElem.of(r, self.modulus).inverse()

    def __rtruediv__(self, other: Any) -> "PrimeFieldElem":
        r = self._coerce(other)
        if r is NotImplemented:
            return NotImplemented
        return PrimeFieldElem.of(r, self.modulus) * self.inverse()

    def __bool__(self) -> bool:
        return self.residue != 0

    def __str__(self) -> str:
        return f"{self.residue} mod {self.modulus}"


class PrimeSet(BaseModel):
    """The finite non-Archimedean part of S; the Archimedean place is implicit."""

    model_config = ConfigDict(frozen=True)

    primes: tuple[int, ...] = ()

    @model_validator(mode="before")
    @classmethod
    def _canonical(cls, data: Any) -> Any:
        if isinstance(data, dict) and "primes" in data:
            primes = {require_prime(p) for p in data["primes"]}
            data = {**data, "primes": tuple(sorted(primes))}
        return data

    @classmethod
    def of(cls, *primes: int) -> "PrimeSet":
        return cls(primes=primes)

    def __contains__(self, p: int) -> bool:
        return p in self.primes

    def __str__(self) -> str:
        return ",".join(str(p) for p in self.primes)
