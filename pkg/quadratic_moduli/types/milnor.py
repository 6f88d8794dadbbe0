from pydantic import BaseModel, ConfigDict, Field

from quadratic_moduli.types.numbers import Rational


class MilnorPoint(BaseModel):
    """
    Coordinates of a conjugacy class in M_2 = A^2.

    sigma1, sigma2 are the first two elementary symmetric functions of the three
    fixed-point multipliers; sigma3 is carried so the relation sigma3 = sigma1 - 2
    can be checked on every computed point.
    """

    model_config = ConfigDict(frozen=True)

    sigma1: Rational = Field(description="lambda1 + lambda2 + lambda3")
    sigma2: Rational = Field(description="lambda1*lambda2 + lambda1*lambda3 + lambda2*lambda3")
    sigma3: Rational = Field(description="lambda1*lambda2*lambda3")


class CpnfInvariants(BaseModel):
    """The two invariants of a critical-point normal form (aX^2+bY^2 : cX^2+dY^2)."""

    model_config = ConfigDict(frozen=True)

    A: Rational = Field(description="ad / (ad - bc)")
    Sigma: Rational = Field(description="(a^3 b + c d^3) / (ad - bc)^2")
