"""Objects over a prime field F_p: reduced points and reduced maps."""

from typing import Any

from pydantic import BaseModel, ConfigDict, Field, model_validator

from quadratic_moduli.errors import InvalidParameterError
from quadratic_moduli.types.numbers import PrimeFieldElem, require_prime


class FpPoint(BaseModel):
    """A point of P^1(F_p) in canonical form: y = 1 when y != 0, otherwise (1:0)."""

    model_config = ConfigDict(frozen=True)

    x: int
    y: int
    prime: int

    @model_validator(mode="before")
    @classmethod
    def _canonical(cls, data: Any) -> Any:
        if isinstance(data, dict) and {"x", "y", "prime"} <= data.keys():
            p = require_prime(data["prime"])
            x, y = int(data["x"]) % p, int(data["y"]) % p
            if y:
                x, y = x * pow(y, -1, p) % p, 1
            elif x:
                x = 1
            else:
                raise InvalidParameterError(f"(0:0) is not a point of P^1(F_{p})")
            data = {**data, "x": x, "y": y}
        return data

    @classmethod
    def of(cls, x: int, y: int, prime: int) -> "FpPoint":
        return cls(x=x, y=y, prime=prime)

    @property
    def coords(self) -> tuple[PrimeFieldElem, PrimeFieldElem]:
        return (PrimeFieldElem.of(self.x, self.prime), PrimeFieldElem.of(self.y, self.prime))

    def __str__(self) -> str:
        return f"{self.x}:{self.y} mod {self.prime}"


class ReducedMap(BaseModel):
    """The reduction (A~ : B~) of a primitive integral model of a map modulo p."""

    model_config = ConfigDict(frozen=True)

    a: tuple[int, int, int] = Field(description="residues of a0, a1, a2")
    b: tuple[int, int, int] = Field(description="residues of b0, b1, b2")
    prime: int
    degree: int = Field(ge=0, le=2)

    @property
    def forms(self) -> tuple[tuple[PrimeFieldElem, ...], tuple[PrimeFieldElem, ...]]:
        p = self.prime
        return (
            tuple(PrimeFieldElem.of(c, p) for c in self.a),
            tuple(PrimeFieldElem.of(c, p) for c in self.b),
        )

    def __str__(self) -> str:
        a = ",".join(str(c) for c in self.a)
        b = ",".join(str(c) for c in self.b)
        return f"{a};{b} mod {self.prime}; degree={self.degree}"
