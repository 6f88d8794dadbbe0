"""
Fixed points, multipliers and the Milnor coordinates of a quadratic map.

sigma_invariants never extracts fixed points. It works in the algebra
Q[z]/(f) where f(z) = F(z, 1) is the dehomogenized fixed-point cubic: the
class of z is a "generic fixed point", the multiplier is the class of
lambda(z) = (A'B - AB') / B^2, and the symmetric functions of the three
multipliers are read off the traces of lambda, lambda^2, lambda^3
(Newton's identities). This is exact for irrational and repeated fixed points.
"""

import logging
from fractions import Fraction

from sympy import QQ, Poly, Rational as SympyRational, symbols

from quadratic_moduli.errors import DegenerateNormalFormError, InvalidParameterError, NotFixedError
from quadratic_moduli.exactnum import from_sympy, to_sympy
from quadratic_moduli.projmap import conjugate, evaluate, fixed_point_coefficients
from quadratic_moduli.types.forms import BinaryCubicForm, Mobius, ProjPoint, QuadMap
from quadratic_moduli.types.milnor import CpnfInvariants, MilnorPoint
from quadratic_moduli.types.numbers import to_fraction

logger = logging.getLogger(__name__)

# A map has at most three fixed points, so one of the first four shears moves
# every fixed point off (1:0).
_MAX_SHEARS = 4

_Z = symbols("z")


def fixed_point_form(phi: QuadMap) -> BinaryCubicForm:
    """F = Y*A - X*B, whose projective roots are the fixed points of phi."""
    coeffs = fixed_point_coefficients(phi.A.coefficients, phi.B.coefficients)
    if not any(coeffs):
        raise RuntimeError(f"fixed-point form of {phi} vanished identically")
    return BinaryCubicForm(c0=coeffs[0], c1=coeffs[1], c2=coeffs[2], c3=coeffs[3])


def multiplier(phi: QuadMap, P: ProjPoint) -> Fraction:
    """The derivative of phi at the fixed point P, in the affine chart where P is finite."""
    if evaluate(phi, P) != P:
        raise NotFixedError(f"{P} is not fixed by {phi}")
    a0, a1, a2 = phi.A.coefficients
    b0, b1, b2 = phi.B.coefficients
    if P.y == 0:
        # chart w = Y/X at w = 0
        return (a0 * b1 - b0 * a1) / (a0 * a0)
    z = P.x
    A, dA = a0 * z * z + a1 * z + a2, 2 * a0 * z + a1
    B, dB = b0 * z * z + b1 * z + b2, 2 * b0 * z + b1
    return (dA * B - A * dB) / (B * B)


def sigma_from_multipliers(l1: Fraction, l2: Fraction, l3: Fraction) -> MilnorPoint:
    return MilnorPoint(
        sigma1=l1 + l2 + l3,
        sigma2=l1 * l2 + l1 * l3 + l2 * l3,
        sigma3=l1 * l2 * l3,
    )


def fpnf_third_multiplier(l1: Fraction | int | str, l2: Fraction | int | str) -> Fraction:
    """lambda3 = (2 - lambda1 - lambda2) / (1 - lambda1*lambda2) for the fixed-point normal form."""
    l1, l2 = to_fraction(l1), to_fraction(l2)
    if l1 * l2 == 1:
        raise InvalidParameterError(f"lambda1*lambda2 = 1 for ({l1}, {l2})")
    return (2 - l1 - l2) / (1 - l1 * l2)


def _trace(g: Poly, power_sums: tuple[SympyRational, SympyRational, SympyRational]) -> Fraction:
    coefficients = reversed(g.all_coeffs())
    return from_sympy(sum((c * s for c, s in zip(coefficients, power_sums)), SympyRational(0)))


def _sigma_finite_fixed_points(phi: QuadMap) -> MilnorPoint:
    a0, a1, a2 = (to_sympy(c) for c in phi.A.coefficients)
    b0, b1, b2 = (to_sympy(c) for c in phi.B.coefficients)
    f = Poly([-b0, a0 - b1, a1 - b2, a2], _Z, domain=QQ).monic()
    _, p2, p1, p0 = f.all_coeffs()
    # traces of 1, z, z^2 in Q[z]/(f): power sums of the three roots
    power_sums = (SympyRational(3), -p2, p2 * p2 - 2 * p1)

    A = Poly([a0, a1, a2], _Z, domain=QQ)
    B = Poly([b0, b1, b2], _Z, domain=QQ)
    numerator = A.diff(_Z) * B - A * B.diff(_Z)
    b_inverse, _, g = B.gcdex(f)
    if not g.is_one:
        raise RuntimeError(f"B and the fixed-point cubic share a root for {phi}")
    lam = (numerator * b_inverse**2).rem(f)

    lam2 = (lam * lam).rem(f)
    lam3 = (lam2 * lam).rem(f)
    t1, t2, t3 = (_trace(x, power_sums) for x in (lam, lam2, lam3))
    logger.debug("fixed-point cubic monic coefficients %s, traces %s %s %s", (p0, p1, p2), t1, t2, t3)
    return MilnorPoint(
        sigma1=t1,
        sigma2=(t1 * t1 - t2) / 2,
        sigma3=(t1**3 - 3 * t1 * t2 + 2 * t3) / 6,
    )


def sigma_invariants(phi: QuadMap) -> MilnorPoint:
    """(sigma1, sigma2, sigma3) of the multipliers of phi, exactly and without root extraction."""
    if phi.B.c0 != 0:
        return _sigma_finite_fixed_points(phi)
    # (1:0) is fixed: shear it away and use conjugation invariance
    for k in range(1, _MAX_SHEARS + 1):
        sheared = conjugate(phi, Mobius.of(1, 0, k, 1))
        if sheared.B.c0 != 0:
            logger.debug("sheared %s by k=%d to %s", phi, k, sheared)
            return _sigma_finite_fixed_points(sheared)
    raise RuntimeError(f"no shear moved the fixed points of {phi} off (1:0)")


def cpnf_invariants(a, b, c, d) -> tuple[CpnfInvariants, MilnorPoint]:
    """
    A and Sigma of the critical normal form (aX^2 + bY^2 : cX^2 + dY^2) and the
    Milnor point they determine: sigma1 = 8A - 6, sigma2 = 8A^2 - 20A + 4*Sigma + 12.
    """
    a, b, c, d = (to_fraction(x) for x in (a, b, c, d))
    det = a * d - b * c
    if det == 0:
        raise DegenerateNormalFormError(f"degenerate critical normal form: ad - bc = 0 for {a},{b},{c},{d}")
    A = a * d / det
    Sigma = (a**3 * b + c * d**3) / (det * det)
    sigma1 = 8 * A - 6
    point = MilnorPoint(sigma1=sigma1, sigma2=8 * A * A - 20 * A + 4 * Sigma + 12, sigma3=sigma1 - 2)
    return CpnfInvariants(A=A, Sigma=Sigma), point
