"""
Exact arithmetic underpinning every other module: p-adic valuations, S-unit
tests, reduction of p-integral rationals into F_p, integer factorization and an
exact determinant that works over Q and over prime fields alike.
"""

from fractions import Fraction
from typing import Any, Sequence

from sympy import Matrix, Rational as SympyRational, factorint

from quadratic_moduli.errors import NotIntegralError, ValuationError
from quadratic_moduli.types.numbers import PrimeFieldElem, PrimeSet, require_prime, to_fraction


def _int_valuation(n: int, p: int) -> int:
    count = 0
    while n % p == 0:
        n //= p
        count += 1
    return count


def valuation(q: Fraction | int, p: int) -> int:
    """v_p(q) = (exponent of p in the numerator) - (exponent of p in the denominator)."""
    q = to_fraction(q)
    if q == 0:
        raise ValuationError("valuation of zero undefined")
    require_prime(p)
    return _int_valuation(q.numerator, p) - _int_valuation(q.denominator, p)


def strip_primes(n: int, primes: Sequence[int]) -> int:
    """Divide every factor of the given primes out of |n|."""
    n = abs(n)
    for p in primes:
        while n % p == 0:
            n //= p
    return n


def is_s_unit(q: Fraction | int, S: PrimeSet) -> bool:
    """True iff q = ±prod_{p in S} p^e_p, i.e. q is a unit of Z[1/S]."""
    q = to_fraction(q)
    if q == 0:
        return False
    return strip_primes(q.numerator, S.primes) == 1 and strip_primes(q.denominator, S.primes) == 1


def reduce_mod_p(q: Fraction | int, p: int) -> PrimeFieldElem:
    q = to_fraction(q)
    require_prime(p)
    if q.denominator % p == 0:
        raise NotIntegralError(f"{q} is not p-integral for p={p}")
    return PrimeFieldElem.of(q.numerator * pow(q.denominator, -1, p), p)


def prime_divisors(n: int) -> list[int]:
    """Sorted prime divisors of a nonzero integer.

    sympy's factorint runs trial division first and falls back to Pollard rho
    (and p-1) for the cofactor, which is plenty for desk-scale resultants.
    """
    if n == 0:
        raise ValuationError("zero has no finite factorization")
    return sorted(factorint(abs(n)).keys())


def rational_prime_support(values: Sequence[Fraction]) -> list[int]:
    """Primes dividing a numerator or denominator of any nonzero value."""
    support: set[int] = set()
    for value in values:
        if value != 0:
            support.update(prime_divisors(value.numerator))
            support.update(prime_divisors(value.denominator))
    return sorted(support)


def to_sympy(q: Fraction | int) -> SympyRational:
    q = to_fraction(q)
    return SympyRational(q.numerator, q.denominator)


def from_sympy(value: Any) -> Fraction:
    """Back from a sympy rational (Integer, Rational or a rational-valued expression)."""
    value = SympyRational(value)
    return Fraction(int(value.p), int(value.q))


def determinant(rows: Sequence[Sequence[Any]]) -> Any:
    """Exact determinant over Q, or over F_p when the entries are PrimeFieldElems."""
    rows = [list(row) for row in rows]
    if not rows:
        return Fraction(1)
    modulus = next((c.modulus for row in rows for c in row if isinstance(c, PrimeFieldElem)), None)
    if modulus is not None:
        residues = Matrix([[c.residue if isinstance(c, PrimeFieldElem) else int(c) for c in row] for row in rows])
        return PrimeFieldElem.of(int(residues.det()), modulus)
    return from_sympy(Matrix([[to_sympy(c) for c in row] for row in rows]).det())
