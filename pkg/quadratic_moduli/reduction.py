"""
Reduction of points and maps modulo a prime.

Good reduction of a plain map is certified on the given representative only:
phi is good at p when p does not divide the resultant of its primitive
integral model. Deciding good reduction over the whole PGL_2(Q)-orbit (the
minimal-resultant problem) is not attempted.
"""

import logging
from math import gcd, lcm

from quadratic_moduli.errors import InvalidParameterError
from quadratic_moduli.exactnum import prime_divisors, reduce_mod_p, require_prime
from quadratic_moduli.projmap import (
    common_factor_degree,
    image_of_point,
    local_degree_of_forms,
    normalize_primitive,
    resultant,
    wronskian_coefficients,
)
from quadratic_moduli.types.forms import ProjPoint, QuadMap, form_resultant
from quadratic_moduli.types.numbers import PrimeSet
from quadratic_moduli.types.reduced import FpPoint, ReducedMap

logger = logging.getLogger(__name__)


def reduce_point(P: ProjPoint, p: int) -> FpPoint:
    """Scale (x, y) to coprime integers, then reduce both coordinates mod p."""
    require_prime(p)
    common_denominator = lcm(P.x.denominator, P.y.denominator)
    x, y = int(P.x * common_denominator), int(P.y * common_denominator)
    content = gcd(x, y)
    return FpPoint.of(x // content, y // content, p)


def reduce_map(phi: QuadMap, p: int) -> ReducedMap:
    require_prime(p)
    model = normalize_primitive(phi)
    a = tuple(reduce_mod_p(c, p) for c in model.A.coefficients)
    b = tuple(reduce_mod_p(c, p) for c in model.B.coefficients)
    if form_resultant(a, b):
        degree = 2
    else:
        degree = 2 - common_factor_degree(a, b)
    logger.debug("%s mod %d has degree %d", phi, p, degree)
    return ReducedMap(
        a=tuple(c.residue for c in a),
        b=tuple(c.residue for c in b),
        prime=p,
        degree=degree,
    )


def is_good_at(phi: QuadMap, p: int) -> bool:
    """Certificate of good reduction: p does not divide the primitive resultant."""
    require_prime(p)
    return int(resultant(normalize_primitive(phi))) % p != 0


def bad_primes(phi: QuadMap) -> PrimeSet:
    return PrimeSet(primes=prime_divisors(int(resultant(normalize_primitive(phi)))))


def evaluate_reduced(reduced: ReducedMap, P: FpPoint) -> FpPoint:
    a, b = reduced.forms
    u, v = image_of_point(a, b, *P.coords)
    if not u and not v:
        raise InvalidParameterError(f"{P} is a common root of the reduced forms {reduced}")
    return FpPoint.of(u.residue, v.residue, reduced.prime)


def local_degree_reduced(reduced: ReducedMap, P: FpPoint) -> int:
    """Local degree at P of a reduced map of full degree 2; valid in every characteristic."""
    if reduced.degree != 2:
        raise InvalidParameterError(f"local degree needs a degree-2 reduction, got {reduced}")
    a, b = reduced.forms
    return local_degree_of_forms(a, b, *P.coords)


def reduced_wronskian(reduced: ReducedMap) -> tuple[int, int, int]:
    a, b = reduced.forms
    return tuple(c.residue for c in wronskian_coefficients(a, b))
