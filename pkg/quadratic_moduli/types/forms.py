"""
Binary forms, quadratic rational maps, projective points and Möbius
transformations over Q.

A QuadMap phi(X:Y) = (A(X,Y) : B(X,Y)) is identified with the point
(a0:a1:a2:b0:b1:b2) of P^5; the model refuses coefficient pairs whose
resultant vanishes, so every QuadMap really has degree 2.
"""

from fractions import Fraction
from typing import Any, Sequence

from pydantic import BaseModel, ConfigDict, model_validator

from quadratic_moduli.errors import DegenerateMapError, InvalidParameterError, SingularMobiusError
from quadratic_moduli.exactnum import determinant
from quadratic_moduli.types.numbers import Rational, to_fraction


def sylvester_matrix(a: Sequence[Any], b: Sequence[Any]) -> list[list[Any]]:
    """The 4x4 resultant matrix of two binary quadratic forms."""
    zero = a[0] * 0
    return [
        [a[0], a[1], a[2], zero],
        [zero, a[0], a[1], a[2]],
        [b[0], b[1], b[2], zero],
        [zero, b[0], b[1], b[2]],
    ]


def form_resultant(a: Sequence[Any], b: Sequence[Any]) -> Any:
    return determinant(sylvester_matrix(a, b))


class BinaryQuadForm(BaseModel):
    """c0*X^2 + c1*XY + c2*Y^2; the zero form is allowed as an intermediate."""

    model_config = ConfigDict(frozen=True)

    c0: Rational
    c1: Rational
    c2: Rational

    @classmethod
    def of(cls, c0: Any, c1: Any, c2: Any) -> "BinaryQuadForm":
        return cls(c0=c0, c1=c1, c2=c2)

    @property
    def coefficients(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.c0, self.c1, self.c2)

    def __str__(self) -> str:
        return ",".join(str(c) for c in self.coefficients)


class BinaryCubicForm(BaseModel):
    """c0*X^3 + c1*X^2Y + c2*XY^2 + c3*Y^3."""

    model_config = ConfigDict(frozen=True)

    c0: Rational
    c1: Rational
    c2: Rational
    c3: Rational

    @property
    def coefficients(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.c0, self.c1, self.c2, self.c3)

    def __str__(self) -> str:
        return ",".join(str(c) for c in self.coefficients)


class QuadMap(BaseModel):
    model_config = ConfigDict(frozen=True)

    A: BinaryQuadForm
    B: BinaryQuadForm

    @model_validator(mode="after")
    def _check_resultant(self) -> "QuadMap":
        if form_resultant(self.A.coefficients, self.B.coefficients) == 0:
            raise DegenerateMapError(f"degenerate map: {self} has zero resultant")
        return self

    @classmethod
    def of(cls, a: Sequence[Any], b: Sequence[Any]) -> "QuadMap":
        return cls(A=BinaryQuadForm.of(*a), B=BinaryQuadForm.of(*b))

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        """(a0, a1, a2, b0, b1, b2)."""
        return self.A.coefficients + self.B.coefficients

    def __str__(self) -> str:
        return f"{self.A};{self.B}"


class ProjPoint(BaseModel):
    """A point of P^1(Q) in canonical form: y = 1 when y != 0, otherwise (1:0)."""

    model_config = ConfigDict(frozen=True)

    x: Rational
    y: Rational

    @model_validator(mode="before")
    @classmethod
    def _canonical(cls, data: Any) -> Any:
        if isinstance(data, dict) and "x" in data and "y" in data:
            x, y = to_fraction(data["x"]), to_fraction(data["y"])
            if y != 0:
                x, y = x / y, Fraction(1)
            elif x != 0:
                x = Fraction(1)
            else:
                raise InvalidParameterError("(0:0) is not a projective point")
            data = {**data, "x": x, "y": y}
        return data

    @classmethod
    def of(cls, x: Any, y: Any) -> "ProjPoint":
        return cls(x=x, y=y)

    @property
    def coords(self) -> tuple[Fraction, Fraction]:
        return (self.x, self.y)

    def __str__(self) -> str:
        return f"{self.x}:{self.y}"


class Mobius(BaseModel):
    """f(X:Y) = (alpha*X + beta*Y : gamma*X + delta*Y), an element of PGL_2(Q)."""

    model_config = ConfigDict(frozen=True)

    alpha: Rational
    beta: Rational
    gamma: Rational
    delta: Rational

    @model_validator(mode="after")
    def _check_determinant(self) -> "Mobius":
        if self.det == 0:
            raise SingularMobiusError(f"singular matrix {self}")
        return self

    @classmethod
    def of(cls, alpha: Any, beta: Any, gamma: Any, delta: Any) -> "Mobius":
        return cls(alpha=alpha, beta=beta, gamma=gamma, delta=delta)

    @classmethod
    def identity(cls) -> "Mobius":
        return cls.of(1, 0, 0, 1)

    @classmethod
    def from_columns(cls, P1: ProjPoint, P2: ProjPoint) -> "Mobius":
        """The matrix whose columns are P1 and P2, so (1:0) -> P1 and (0:1) -> P2."""
        return cls.of(P1.x, P2.x, P1.y, P2.y)

    @property
    def det(self) -> Fraction:
        return self.alpha * self.delta - self.beta * self.gamma

    @property
    def matrix(self) -> tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]:
        return ((self.alpha, self.beta), (self.gamma, self.delta))

    def adjugate(self) -> "Mobius":
        """The adjugate matrix; it represents the inverse in PGL_2."""
        return Mobius.of(self.delta, -self.beta, -self.gamma, self.alpha)

    def apply(self, P: ProjPoint) -> ProjPoint:
        return ProjPoint.of(self.alpha * P.x + self.beta * P.y, self.gamma * P.x + self.delta * P.y)

    def apply_inverse(self, P: ProjPoint) -> ProjPoint:
        return self.adjugate().apply(P)

    def __str__(self) -> str:
        return f"{self.alpha},{self.beta};{self.gamma},{self.delta}"
