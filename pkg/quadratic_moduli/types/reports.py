"""
S-units and the JSON reports produced by the search and witness operations.

Reports are plain frozen models; `model_dump(mode="json")` yields exactly the
payload the CLI prints and the HTTP API returns (rationals as canonical strings,
prime sets as sorted integer lists).
"""

from fractions import Fraction
from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field, computed_field, field_serializer, model_validator

from quadratic_moduli.errors import InvalidParameterError
from quadratic_moduli.types.numbers import PrimeSet, Rational, require_prime, to_fraction


class SUnit(BaseModel):
    """sign * prod p^e_p over the primes of S, stored as sorted (p, e_p) pairs."""

    model_config = ConfigDict(frozen=True)

    sign: Literal[1, -1]
    exponents: tuple[tuple[int, int], ...] = ()

    @model_validator(mode="before")
    @classmethod
    def _canonical(cls, data: Any) -> Any:
        if isinstance(data, dict) and "exponents" in data:
            raw = data["exponents"]
            pairs = raw.items() if isinstance(raw, dict) else raw
            exponents = {}
            for p, e in pairs:
                exponents[require_prime(p)] = exponents.get(p, 0) + int(e)
            data = {**data, "exponents": tuple(sorted(exponents.items()))}
        return data

    @classmethod
    def from_rational(cls, q: Any, S: PrimeSet) -> "SUnit":
        q = to_fraction(q)
        if q == 0:
            raise InvalidParameterError("0 is not an S-unit")
        exponents = []
        num, den = abs(q.numerator), q.denominator
        for p in S.primes:
            e = 0
            while num % p == 0:
                num //= p
                e += 1
            while den % p == 0:
                den //= p
                e -= 1
            exponents.append((p, e))
        if num != 1 or den != 1:
            raise InvalidParameterError(f"{q} is not an S-unit for S={{{S}}}")
        return cls(sign=1 if q > 0 else -1, exponents=exponents)

    @property
    def value(self) -> Fraction:
        result = Fraction(self.sign)
        for p, e in self.exponents:
            result *= Fraction(p) ** e
        return result

    def __str__(self) -> str:
        return str(self.value)


class UnitEquationSolutionSet(BaseModel):
    """Solutions (x, y) of x + y = 1 in S-units with x of exponent height <= bound."""

    model_config = ConfigDict(frozen=True)

    S: PrimeSet
    bound: int = Field(ge=0)
    solutions: tuple[tuple[Rational, Rational], ...] = Field(description="sorted by x, then y")

    @field_serializer("S")
    def _serialize_primes(self, S: PrimeSet) -> list[int]:
        return list(S.primes)

    @computed_field
    @property
    def u_values(self) -> list[Rational]:
        return sorted({y for _, y in self.solutions})


class CoveringReport(BaseModel):
    """
    Outcome of checking that every S-unit normal form with S-unit resultant has
    its u-invariant among the unit-equation values.
    """

    model_config = ConfigDict(frozen=True)

    S: PrimeSet
    coeff_bound: int = Field(ge=0)
    eq_bound: int = Field(ge=0)
    covering_set: tuple[Rational, ...]
    fixed_pair_count: int = Field(description="enumerated (a, b, c) with c(c - ab) an S-unit")
    fixed_pair_u_values: tuple[Rational, ...]
    two_cycle_count: int = Field(description="enumerated (a, b, c) with b(b - ac) an S-unit")
    two_cycle_u_values: tuple[Rational, ...]
    violations: tuple[str, ...] = ()

    @field_serializer("S")
    def _serialize_primes(self, S: PrimeSet) -> list[int]:
        return list(S.primes)

    @computed_field
    @property
    def ok(self) -> bool:
        return not self.violations


class DensityRow(BaseModel):
    model_config = ConfigDict(frozen=True)

    n: int
    sigma2: Rational
    bad_primes: tuple[int, ...] = ()
    sigma_part_valuation: int = Field(description="v_p(p^3n + (p^2N - 1) p^(6N - 3n)), always 3n")


class DensityReport(BaseModel):
    """The members of the phi_{n,N} family on the line sigma1 = 8p^2N - 6."""

    model_config = ConfigDict(frozen=True)

    p: int
    N: int
    sigma1: Rational
    rows: tuple[DensityRow, ...]


class LineReport(BaseModel):
    """Milnor point of phi_{alpha,z} checked against the line it must lie on."""

    model_config = ConfigDict(frozen=True)

    alpha: Rational
    z: Rational
    sigma1: Rational
    sigma2: Rational
    relation: str = Field(description="the linear relation checked, e.g. '2*sigma1 - sigma2 = 3'")
    holds: bool


class FamilySpec(BaseModel):
    """
    Parameters of one of the two witness families.

    cpnf_density: the phi_{n,N} critical normal forms, parameters p (prime) and N >= 1.
    fpnf_sunit: the fixed-point normal form phi_{alpha,beta}, parameters alpha, beta != 0.
    """

    model_config = ConfigDict(frozen=True)

    kind: Literal["cpnf_density", "fpnf_sunit"]
    p: int | None = None
    N: int | None = None
    alpha: Rational | None = None
    beta: Rational | None = None

    @model_validator(mode="after")
    def _check_parameters(self) -> "FamilySpec":
        if self.kind == "cpnf_density":
            if self.p is None or self.N is None:
                raise InvalidParameterError("cpnf_density needs p and N")
            require_prime(self.p)
            if self.N < 1:
                raise InvalidParameterError(f"N must be >= 1, got {self.N}")
        else:
            if self.alpha is None or self.beta is None:
                raise InvalidParameterError("fpnf_sunit needs alpha and beta")
            if self.alpha == 0 or self.beta == 0:
                raise InvalidParameterError("alpha and beta must be nonzero")
        return self
