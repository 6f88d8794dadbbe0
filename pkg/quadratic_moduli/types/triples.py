"""
Quadratic maps carrying two marked rational points: either two distinct
unramified fixed points, or an unramified 2-cycle. Normal forms put the marked
points at (1:0) and (0:1).

The marked-point clauses (fixed/swapped, unramified) need the map machinery and
are checked by structures.validate_fixed_pair / validate_two_cycle; the models
only enforce what can be read off their own fields.
"""

from fractions import Fraction
from typing import Any

from pydantic import BaseModel, ConfigDict, model_validator

from quadratic_moduli.errors import DegenerateNormalFormError, InvalidTripleError
from quadratic_moduli.types.forms import ProjPoint, QuadMap
from quadratic_moduli.types.numbers import Rational


class _MarkedTriple(BaseModel):
    model_config = ConfigDict(frozen=True)

    map: QuadMap
    P1: ProjPoint
    P2: ProjPoint

    @model_validator(mode="after")
    def _distinct_points(self) -> "_MarkedTriple":
        if self.P1 == self.P2:
            raise InvalidTripleError("points equal")
        return self

    def __str__(self) -> str:
        return f"{self.map};P1={self.P1};P2={self.P2}"


class FixedPairTriple(_MarkedTriple):
    """(phi, P1, P2) with P1 != P2 distinct unramified fixed points of phi."""


class TwoCycleTriple(_MarkedTriple):
    """(phi, P1, P2) with phi(P1) = P2, phi(P2) = P1, both unramified."""


class FixedPairNormalForm(BaseModel):
    """(X^2 + aXY : bXY + cY^2) with marked points ((1:0), (0:1))."""

    model_config = ConfigDict(frozen=True)

    a: Rational
    b: Rational
    c: Rational

    @model_validator(mode="after")
    def _nondegenerate(self) -> "FixedPairNormalForm":
        if self.resultant == 0:
            raise DegenerateNormalFormError(f"c(c - ab) = 0 for normal form {self}")
        return self

    @classmethod
    def of(cls, a: Any, b: Any, c: Any) -> "FixedPairNormalForm":
        return cls(a=a, b=b, c=c)

    @property
    def resultant(self) -> Fraction:
        return self.c * (self.c - self.a * self.b)

    def __str__(self) -> str:
        return f"{self.a},{self.b},{self.c}"


class TwoCycleNormalForm(BaseModel):
    """(aXY + bY^2 : X^2 + cXY) with marked 2-cycle ((1:0), (0:1))."""

    model_config = ConfigDict(frozen=True)

    a: Rational
    b: Rational
    c: Rational

    @model_validator(mode="after")
    def _nondegenerate(self) -> "TwoCycleNormalForm":
        if self.resultant == 0:
            raise DegenerateNormalFormError(f"b(b - ac) = 0 for normal form {self}")
        return self

    @classmethod
    def of(cls, a: Any, b: Any, c: Any) -> "TwoCycleNormalForm":
        return cls(a=a, b=b, c=c)

    @property
    def resultant(self) -> Fraction:
        return self.b * (self.b - self.a * self.c)

    def __str__(self) -> str:
        return f"{self.a},{self.b},{self.c}"
