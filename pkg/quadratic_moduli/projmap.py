"""
Quadratic rational maps on P^1(Q): resultant, primitive scaling, evaluation,
conjugation by PGL_2(Q), local degree and the Wronskian.

The coefficient-level helpers (`substitute`, `local_degree_of_forms`,
`wronskian_coefficients`, ...) only use field arithmetic, so reduction.py runs
them unchanged on F_p coefficients. Root multiplicities and common factors of
binary forms go through sympy Polys over QQ, or over GF(p) for F_p coefficients.
"""

import logging
from fractions import Fraction
from math import gcd, lcm
from typing import Any, Sequence

from sympy import QQ, Poly, symbols

from quadratic_moduli.errors import SingularMobiusError
from quadratic_moduli.exactnum import from_sympy, to_sympy
from quadratic_moduli.types.forms import BinaryQuadForm, Mobius, ProjPoint, QuadMap, form_resultant
from quadratic_moduli.types.numbers import PrimeFieldElem

logger = logging.getLogger(__name__)

# Res(adj(M) o (A, B) o M) = det(M)**6 * Res(A, B). With the true inverse the
# 1/det factor on both forms removes det**4 and leaves det**2.
ADJUGATE_RESULTANT_EXPONENT = 6
INVERSE_RESULTANT_EXPONENT = 2

_Z = symbols("z")


def resultant(phi: QuadMap) -> Fraction:
    return form_resultant(phi.A.coefficients, phi.B.coefficients)


def normalize_primitive(phi: QuadMap) -> QuadMap:
    """Scale phi to integer coefficients with gcd 1 and positive first nonzero coefficient."""
    coeffs = phi.coefficients
    common_denominator = lcm(*(c.denominator for c in coeffs))
    ints = [int(c * common_denominator) for c in coeffs]
    content = gcd(*ints)
    sign = 1 if next(c for c in ints if c != 0) > 0 else -1
    ints = [sign * c // content for c in ints]
    return QuadMap.of(ints[:3], ints[3:])


def _poly_options(coeffs: Sequence[Any]) -> dict[str, Any]:
    modulus = next((c.modulus for c in coeffs if isinstance(c, PrimeFieldElem)), None)
    return {"domain": QQ} if modulus is None else {"modulus": modulus}


def _sympy_coefficient(c: Any) -> Any:
    return c.residue if isinstance(c, PrimeFieldElem) else to_sympy(c)


def dehomogenize(form: Sequence[Any]) -> Poly:
    """F(z, 1) for a binary form given X-heavy first, over QQ or GF(p)."""
    return Poly([_sympy_coefficient(c) for c in form], _Z, **_poly_options(form))


def infinity_multiplicity(form: Sequence[Any]) -> int:
    """Multiplicity of (1:0) as a root of a nonzero form: the degree lost on dehomogenizing."""
    if not any(form):
        raise ValueError("root multiplicity of the zero form")
    return len(form) - 1 - dehomogenize(form).degree()


def form_root_multiplicity(form: Sequence[Any], x: Any, y: Any) -> int:
    """Multiplicity of the projective point (x:y) as a root of a nonzero binary form."""
    if not any(form):
        raise ValueError("root multiplicity of the zero form")
    if not y:
        return infinity_multiplicity(form)
    poly = dehomogenize(form)
    linear = Poly([1, -_sympy_coefficient(x / y)], _Z, **_poly_options(form))
    count = 0
    while poly.degree() > 0:
        quotient, remainder = poly.div(linear)
        if not remainder.is_zero:
            break
        poly, count = quotient, count + 1
    return count


def common_factor_degree(a: Sequence[Any], b: Sequence[Any]) -> int:
    """Degree of gcd(A, B) for two binary forms of the same degree (gcd(0, B) = B)."""
    if not any(a) and not any(b):
        raise ValueError("gcd of two zero forms")
    if not any(a):
        return len(b) - 1
    if not any(b):
        return len(a) - 1
    at_infinity = min(infinity_multiplicity(a), infinity_multiplicity(b))
    return at_infinity + dehomogenize(a).gcd(dehomogenize(b)).degree()


def substitute(form: Sequence[Any], alpha: Any, beta: Any, gamma: Any, delta: Any) -> tuple[Any, Any, Any]:
    """The binary quadratic form F(alpha*X + beta*Y, gamma*X + delta*Y)."""
    c0, c1, c2 = form
    return (
        c0 * alpha * alpha + c1 * alpha * gamma + c2 * gamma * gamma,
        2 * c0 * alpha * beta + c1 * (alpha * delta + beta * gamma) + 2 * c2 * gamma * delta,
        c0 * beta * beta + c1 * beta * delta + c2 * delta * delta,
    )


def image_of_point(a: Sequence[Any], b: Sequence[Any], x: Any, y: Any) -> tuple[Any, Any]:
    """(A(x, y), B(x, y)) for coefficient triples a, b; not normalized."""
    return (
        a[0] * x * x + a[1] * x * y + a[2] * y * y,
        b[0] * x * x + b[1] * x * y + b[2] * y * y,
    )


def evaluate(phi: QuadMap, P: ProjPoint) -> ProjPoint:
    u, v = image_of_point(phi.A.coefficients, phi.B.coefficients, P.x, P.y)
    return ProjPoint.of(u, v)


def compose_mobius(f: Mobius, g: Mobius) -> Mobius:
    """f o g, i.e. apply g first; as matrices this is M_f * M_g."""
    (a1, b1), (c1, d1) = f.matrix
    (a2, b2), (c2, d2) = g.matrix
    return Mobius.of(a1 * a2 + b1 * c2, a1 * b2 + b1 * d2, c1 * a2 + d1 * c2, c1 * b2 + d1 * d2)


def conjugate_coefficients(
    a: Sequence[Any], b: Sequence[Any], alpha: Any, beta: Any, gamma: Any, delta: Any
) -> tuple[tuple[Any, ...], tuple[Any, ...]]:
    """adj(M) o (A, B) o M on coefficient triples, for M = [[alpha, beta], [gamma, delta]]."""
    c = substitute(a, alpha, beta, gamma, delta)
    d = substitute(b, alpha, beta, gamma, delta)
    new_a = tuple(delta * ci - beta * di for ci, di in zip(c, d))
    new_b = tuple(-gamma * ci + alpha * di for ci, di in zip(c, d))
    return new_a, new_b


def conjugate_raw(phi: QuadMap, f: Mobius, exact_inverse: bool = False) -> QuadMap:
    """
    M^-1 o (A, B) o M without normalization.

    With exact_inverse=False the adjugate replaces M^-1, which keeps the
    coefficients polynomial in the matrix entries; the resultant then scales by
    det**ADJUGATE_RESULTANT_EXPONENT instead of det**INVERSE_RESULTANT_EXPONENT.
    """
    det = f.det
    if det == 0:
        raise SingularMobiusError(f"singular matrix {f}")
    new_a, new_b = conjugate_coefficients(phi.A.coefficients, phi.B.coefficients, f.alpha, f.beta, f.gamma, f.delta)
    if exact_inverse:
        new_a = [x / det for x in new_a]
        new_b = [x / det for x in new_b]
    return QuadMap.of(new_a, new_b)


def conjugate(phi: QuadMap, f: Mobius) -> QuadMap:
    """phi^f = f^-1 o phi o f, primitively normalized."""
    return normalize_primitive(conjugate_raw(phi, f))


def local_degree_of_forms(a: Sequence[Any], b: Sequence[Any], x: Any, y: Any) -> int:
    """
    Multiplicity of (x:y) as a root of G = v*A - u*B where (u:v) is its image.

    Works in any characteristic. The forms must not have a common root at (x:y).
    """
    u, v = image_of_point(a, b, x, y)
    g = tuple(v * ai - u * bi for ai, bi in zip(a, b))
    if not any(g):
        raise RuntimeError("v*A - u*B vanished identically; the forms are proportional")
    return form_root_multiplicity(g, x, y)


def local_degree(phi: QuadMap, P: ProjPoint) -> int:
    """Ramification index e_phi(P) in {1, 2}; P is unramified iff it is 1."""
    return local_degree_of_forms(phi.A.coefficients, phi.B.coefficients, P.x, P.y)


def wronskian_coefficients(a: Sequence[Any], b: Sequence[Any]) -> tuple[Any, Any, Any]:
    """Coefficients of A_X*B_Y - A_Y*B_X; identically zero in characteristic 2."""
    return (
        2 * (a[0] * b[1] - a[1] * b[0]),
        4 * (a[0] * b[2] - a[2] * b[0]),
        2 * (a[1] * b[2] - a[2] * b[1]),
    )


def wronskian(phi: QuadMap) -> BinaryQuadForm:
    return BinaryQuadForm.of(*wronskian_coefficients(phi.A.coefficients, phi.B.coefficients))


def fixed_point_coefficients(a: Sequence[Any], b: Sequence[Any]) -> tuple[Any, Any, Any, Any]:
    """Y*A - X*B as a binary cubic, X-heavy first."""
    return (-b[0], a[0] - b[1], a[1] - b[2], a[2])


def fixed_points(phi: QuadMap) -> list[tuple[ProjPoint, int]]:
    """The Q-rational fixed points of phi with multiplicity, sorted with (1:0) last."""
    cubic = fixed_point_coefficients(phi.A.coefficients, phi.B.coefficients)
    at_infinity = infinity_multiplicity(cubic)
    points = []
    roots = dehomogenize(cubic).ground_roots()
    for root, multiplicity in sorted(roots.items(), key=lambda item: item[0]):
        points.append((ProjPoint.of(from_sympy(root), 1), int(multiplicity)))
    if at_infinity:
        points.append((ProjPoint.of(1, 0), at_infinity))
    logger.debug("rational fixed points of %s: %s", phi, [(str(P), m) for P, m in points])
    return points
