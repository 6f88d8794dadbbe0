"""
Quadratic maps with marked structure: two unramified rational fixed points, or
an unramified rational 2-cycle.

After moving the marked points to (1:0) and (0:1) the only automorphisms left
are the diagonal scalings (alpha*X : Y). They act on the normal forms by

    fixed pair  (X^2 + aXY : bXY + cY^2):  (a, b, c) -> (a/alpha, b, c/alpha)
    2-cycle     (aXY + bY^2 : X^2 + cXY):  (a, b, c) -> (a/alpha^2, b/alpha^3, c/alpha)

so ab/c and ac/b are invariants of the isomorphism class, and the triple has
good reduction at p iff some p-power alpha makes the coefficients and the
resultant factor p-units. Quantifying over the exponent of alpha gives the
valuation criteria in triple_good_at and cycle_good_at.
"""

import logging
from fractions import Fraction

from quadratic_moduli.errors import InvalidTripleError, ModuliError
from quadratic_moduli.exactnum import rational_prime_support, valuation
from quadratic_moduli.projmap import conjugate, evaluate, local_degree
from quadratic_moduli.types.forms import Mobius, ProjPoint, QuadMap
from quadratic_moduli.types.numbers import PrimeSet
from quadratic_moduli.types.triples import FixedPairNormalForm, FixedPairTriple, TwoCycleNormalForm, TwoCycleTriple

logger = logging.getLogger(__name__)


def _check_unramified(phi: QuadMap, P1: ProjPoint, P2: ProjPoint) -> None:
    for i, P in enumerate((P1, P2), start=1):
        if local_degree(phi, P) != 1:
            raise InvalidTripleError(f"P{i} ramified: {P} is a critical point of {phi}")


def validate_fixed_pair(phi: QuadMap, P1: ProjPoint, P2: ProjPoint) -> FixedPairTriple:
    if P1 == P2:
        raise InvalidTripleError(f"points equal: P1 = P2 = {P1}")
    for i, P in enumerate((P1, P2), start=1):
        if evaluate(phi, P) != P:
            raise InvalidTripleError(f"P{i} not fixed: {phi} sends {P} to {evaluate(phi, P)}")
    _check_unramified(phi, P1, P2)
    return FixedPairTriple(map=phi, P1=P1, P2=P2)


def validate_two_cycle(phi: QuadMap, P1: ProjPoint, P2: ProjPoint) -> TwoCycleTriple:
    if P1 == P2:
        raise InvalidTripleError(f"points equal: P1 = P2 = {P1}")
    if evaluate(phi, P1) != P2 or evaluate(phi, P2) != P1:
        raise InvalidTripleError(f"not a 2-cycle: {phi} does not swap {P1} and {P2}")
    _check_unramified(phi, P1, P2)
    return TwoCycleTriple(map=phi, P1=P1, P2=P2)


def conjugate_triple(triple: FixedPairTriple | TwoCycleTriple, f: Mobius) -> FixedPairTriple | TwoCycleTriple:
    """Phi^f = (phi^f, f^-1(P1), f^-1(P2)); the structure is re-validated on the result."""
    validate = validate_fixed_pair if isinstance(triple, FixedPairTriple) else validate_two_cycle
    phi = conjugate(triple.map, f)
    P1, P2 = f.apply_inverse(triple.P1), f.apply_inverse(triple.P2)
    try:
        return validate(phi, P1, P2)
    except ModuliError as error:
        raise RuntimeError(f"conjugation by {f} broke the structure of {triple}: {error}") from error


def fixed_pair_normal_form(triple: FixedPairTriple) -> tuple[FixedPairNormalForm, Mobius]:
    """
    (a, b, c) with Phi^f marked at ((1:0), (0:1)) and map (X^2 + aXY : bXY + cY^2),
    where f has the marked points as its columns.
    """
    f = Mobius.from_columns(triple.P1, triple.P2)
    psi = conjugate(triple.map, f)
    c0, c1, c2 = psi.A.coefficients
    d0, d1, d2 = psi.B.coefficients
    if c0 == 0 or c2 != 0 or d0 != 0:
        raise RuntimeError(f"{psi} does not fix (1:0) and (0:1)")
    return FixedPairNormalForm(a=c1 / c0, b=d1 / c0, c=d2 / c0), f


def two_cycle_normal_form(triple: TwoCycleTriple) -> tuple[TwoCycleNormalForm, Mobius]:
    """(a, b, c) with Phi^f = (aXY + bY^2 : X^2 + cXY) marked at ((1:0), (0:1))."""
    f = Mobius.from_columns(triple.P1, triple.P2)
    psi = conjugate(triple.map, f)
    c0, c1, c2 = psi.A.coefficients
    d0, d1, d2 = psi.B.coefficients
    if d0 == 0 or c0 != 0 or d2 != 0:
        raise RuntimeError(f"{psi} does not swap (1:0) and (0:1)")
    return TwoCycleNormalForm(a=c1 / d0, b=c2 / d0, c=d1 / d0), f


def fixed_pair_map(nf: FixedPairNormalForm) -> QuadMap:
    return QuadMap.of((1, nf.a, 0), (0, nf.b, nf.c))


def two_cycle_map(nf: TwoCycleNormalForm) -> QuadMap:
    return QuadMap.of((0, nf.a, nf.b), (1, nf.c, 0))


def u_invariant(nf: FixedPairNormalForm) -> Fraction:
    return nf.a * nf.b / nf.c


def cycle_invariant(nf: TwoCycleNormalForm) -> Fraction:
    return nf.a * nf.c / nf.b


def triple_good_at(nf: FixedPairNormalForm, p: int) -> bool:
    """Good reduction of the fixed-pair triple at p: v(b) = 0 and v(a) = v(c) = v(c - ab)."""
    if nf.a == 0 or nf.b == 0:
        return False
    return valuation(nf.b, p) == 0 and valuation(nf.a, p) == valuation(nf.c, p) == valuation(nf.c - nf.a * nf.b, p)


def cycle_good_at(nf: TwoCycleNormalForm, p: int) -> bool:
    """Good reduction of the 2-cycle triple at p: with t = v(c), v(a) = 2t and v(b) = v(b - ac) = 3t."""
    if nf.a == 0 or nf.c == 0:
        return False
    t = valuation(nf.c, p)
    return valuation(nf.a, p) == 2 * t and valuation(nf.b, p) == valuation(nf.b - nf.a * nf.c, p) == 3 * t


def triple_bad_primes(nf: FixedPairNormalForm) -> PrimeSet:
    """Primes where the fixed-pair triple has bad reduction; only primes in the support of a, b, c, c - ab can fail."""
    if nf.a == 0 or nf.b == 0:
        raise InvalidTripleError(f"normal form {nf} has a ramified marked point")
    support = rational_prime_support([nf.a, nf.b, nf.c, nf.c - nf.a * nf.b])
    return PrimeSet(primes=[p for p in support if not triple_good_at(nf, p)])


def cycle_bad_primes(nf: TwoCycleNormalForm) -> PrimeSet:
    if nf.a == 0 or nf.c == 0:
        raise InvalidTripleError(f"normal form {nf} has a ramified marked point")
    support = rational_prime_support([nf.a, nf.b, nf.c, nf.b - nf.a * nf.c])
    return PrimeSet(primes=[p for p in support if not cycle_good_at(nf, p)])
