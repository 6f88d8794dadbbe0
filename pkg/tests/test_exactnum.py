"""Tests for valuations, S-unit predicates, reduction into F_p and exact determinants."""

from fractions import Fraction

import pytest
import sympy

from quadratic_moduli.errors import InvalidPrimeError, NotIntegralError, ValuationError
from quadratic_moduli.exactnum import (
    determinant,
    from_sympy,
    is_s_unit,
    prime_divisors,
    rational_prime_support,
    reduce_mod_p,
    to_sympy,
    valuation,
)
from quadratic_moduli.types.numbers import PrimeFieldElem, PrimeSet

from conftest import random_nonzero_rational


class TestValuation:
    @pytest.mark.parametrize("q, p, expected", [(12, 2, 2), (Fraction(1, 9), 3, -2), (7, 5, 0), ("-40/3", 2, 3)])
    def test_examples(self, q, p, expected):
        assert valuation(q, p) == expected

    def test_zero_is_undefined(self):
        with pytest.raises(ValuationError, match="valuation of zero undefined"):
            valuation(0, 2)

    def test_prime_is_checked(self):
        with pytest.raises(InvalidPrimeError):
            valuation(12, 4)

    def test_multiplicative_and_ultrametric(self, rng):
        for _ in range(200):
            q, r = random_nonzero_rational(rng, 40), random_nonzero_rational(rng, 40)
            for p in (2, 3, 5):
                assert valuation(q * r, p) == valuation(q, p) + valuation(r, p)
                if q + r != 0:
                    vq, vr = valuation(q, p), valuation(r, p)
                    assert valuation(q + r, p) >= min(vq, vr)
                    if vq != vr:
                        assert valuation(q + r, p) == min(vq, vr), f"strict ultrametric for {q}, {r} at {p}"


class TestSUnit:
    @pytest.mark.parametrize(
        "q, primes, expected",
        [(Fraction(3, 4), (2, 3), True), (Fraction(5, 2), (2,), False), (-1, (), True), (0, (2,), False)],
    )
    def test_examples(self, q, primes, expected):
        assert is_s_unit(q, PrimeSet(primes=primes)) is expected

    def test_group_closure(self, rng):
        S = PrimeSet.of(2, 3)
        for _ in range(200):
            q, r = random_nonzero_rational(rng, 12), random_nonzero_rational(rng, 12)
            if is_s_unit(q, S) and is_s_unit(r, S):
                assert is_s_unit(q * r, S)
                assert is_s_unit(1 / q, S)


class TestReduceModP:
    def test_examples(self):
        assert reduce_mod_p(Fraction(3, 4), 5) == PrimeFieldElem.of(2, 5)
        assert reduce_mod_p(7, 3) == PrimeFieldElem.of(1, 3)

    def test_not_integral(self):
        with pytest.raises(NotIntegralError, match="not p-integral"):
            reduce_mod_p(Fraction(1, 5), 5)

    def test_ring_homomorphism(self, rng):
        for _ in range(200):
            q, r = random_nonzero_rational(rng, 30), random_nonzero_rational(rng, 30)
            for p in (7, 11, 13):
                if q.denominator % p == 0 or r.denominator % p == 0:
                    continue
                assert reduce_mod_p(q + r, p) == reduce_mod_p(q, p) + reduce_mod_p(r, p)
                assert reduce_mod_p(q * r, p) == reduce_mod_p(q, p) * reduce_mod_p(r, p)


def test_prime_divisors():
    assert prime_divisors(360) == [2, 3, 5]
    assert prime_divisors(-1) == []
    assert prime_divisors(2**61 - 1) == [2**61 - 1]


def test_rational_prime_support():
    assert rational_prime_support([Fraction(6, 35), Fraction(0), Fraction(-11)]) == [2, 3, 5, 7, 11]


class TestDeterminant:
    def test_matches_sympy_over_q(self, rng):
        for _ in range(50):
            rows = [
                [random_nonzero_rational(rng, 9) if rng.random() < 0.8 else Fraction(0) for _ in range(4)]
                for _ in range(4)
            ]
            expected = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row] for row in rows]).det()
            assert determinant(rows) == Fraction(int(expected.p), int(expected.q))

    def test_over_prime_field(self):
        rows = [[PrimeFieldElem.of(x, 5) for x in row] for row in [[1, 2], [3, 4]]]
        assert determinant(rows) == PrimeFieldElem.of(-2, 5)

    def test_singular(self):
        assert determinant([[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]]) == 0

    def test_empty_matrix(self):
        assert determinant([]) == 1


def test_sympy_conversions_are_exact(rng):
    for _ in range(100):
        q = random_nonzero_rational(rng, 10**12)
        assert from_sympy(to_sympy(q)) == q
    assert from_sympy(sympy.Integer(-7)) == Fraction(-7)
    assert to_sympy(Fraction(-3, 4)) == sympy.Rational(-3, 4)
