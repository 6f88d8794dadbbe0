"""
Tests for fixed points, multipliers and the Milnor coordinates.

The trace algorithm never looks at individual fixed points, so it is checked
against explicit multipliers wherever the fixed points happen to be rational.
"""

from fractions import Fraction

import pytest

from quadratic_moduli.errors import DegenerateNormalFormError, InvalidParameterError, NotFixedError
from quadratic_moduli.invariants import (
    cpnf_invariants,
    fixed_point_form,
    fpnf_third_multiplier,
    multiplier,
    sigma_from_multipliers,
    sigma_invariants,
)
from quadratic_moduli.projmap import conjugate, fixed_points
from quadratic_moduli.types.forms import ProjPoint, QuadMap
from quadratic_moduli.types.milnor import CpnfInvariants, MilnorPoint

from conftest import random_map, random_mobius, random_nonzero_rational

FPNF_2_3 = QuadMap.of((1, 2, 0), (0, 3, 1))
SQUARE = QuadMap.of((1, 0, 0), (0, 0, 1))


class TestFixedPointForm:
    @pytest.mark.parametrize(
        "phi, expected",
        [
            (FPNF_2_3, (0, -2, 1, 0)),
            (SQUARE, (0, 1, -1, 0)),
            (QuadMap.of((1, 0, 1), (3, 0, 4)), (-3, 1, -4, 1)),
        ],
    )
    def test_examples(self, phi, expected):
        assert fixed_point_form(phi).coefficients == expected


class TestMultiplier:
    def test_fixed_point_normal_form(self):
        assert multiplier(FPNF_2_3, ProjPoint.of(0, 1)) == 2
        assert multiplier(FPNF_2_3, ProjPoint.of(1, 0)) == 3
        assert multiplier(FPNF_2_3, ProjPoint.of(1, 2)) == Fraction(3, 5)

    def test_square_map(self):
        assert multiplier(SQUARE, ProjPoint.of(0, 1)) == 0
        assert multiplier(SQUARE, ProjPoint.of(1, 1)) == 2
        assert multiplier(SQUARE, ProjPoint.of(1, 0)) == 0

    def test_point_not_fixed(self):
        with pytest.raises(NotFixedError):
            multiplier(SQUARE, ProjPoint.of(2, 1))

    def test_is_conjugation_invariant(self, rng):
        for _ in range(100):
            phi, f = random_map(rng), random_mobius(rng)
            psi = conjugate(phi, f)
            for P, _ in fixed_points(phi):
                assert multiplier(psi, f.apply_inverse(P)) == multiplier(phi, P), f"{phi} at {P} under {f}"


class TestSigma:
    @pytest.mark.parametrize(
        "phi, expected",
        [
            (FPNF_2_3, (Fraction(28, 5), 9, Fraction(18, 5))),
            (SQUARE, (2, 0, 0)),
            (QuadMap.of((1, 0, 1), (3, 0, 4)), (26, 832, 24)),
        ],
    )
    def test_examples(self, phi, expected):
        point = sigma_invariants(phi)
        assert (point.sigma1, point.sigma2, point.sigma3) == expected

    def test_sigma3_identity(self, rng):
        """sigma3 = sigma1 - 2 holds for every quadratic map"""
        for _ in range(1000):
            point = sigma_invariants(random_map(rng))
            assert point.sigma3 == point.sigma1 - 2

    def test_matches_multipliers_of_rational_fixed_points(self, rng):
        checked = 0
        for _ in range(100):
            l1, l2 = random_nonzero_rational(rng), random_nonzero_rational(rng)
            if l1 * l2 == 1:
                continue
            # conjugates of fixed-point normal forms keep three rational fixed points
            phi = conjugate(QuadMap.of((1, l1, 0), (0, l2, 1)), random_mobius(rng))
            points = fixed_points(phi)
            if [m for _, m in points] != [1, 1, 1]:
                continue
            expected = sigma_from_multipliers(*(multiplier(phi, P) for P, _ in points))
            assert sigma_invariants(phi) == expected, f"trace algorithm disagrees on {phi}"
            checked += 1
        assert checked > 0, "no random map had three distinct rational fixed points"

    def test_is_conjugation_invariant(self, rng):
        for _ in range(100):
            phi, f = random_map(rng), random_mobius(rng)
            assert sigma_invariants(conjugate(phi, f)) == sigma_invariants(phi)

    def test_triple_fixed_point_at_infinity(self):
        """z + 1/z fixes only (1:0), with multiplier 1 and multiplicity 3"""
        phi = QuadMap.of((1, 0, 1), (0, 1, 0))
        assert fixed_points(phi) == [(ProjPoint.of(1, 0), 3)]
        assert sigma_invariants(phi) == MilnorPoint(sigma1=3, sigma2=3, sigma3=1)


class TestCpnfInvariants:
    @pytest.mark.parametrize(
        "abcd, A, Sigma, sigma1, sigma2",
        [
            ((1, 1, 3, 4), 4, 193, 26, 832),
            ((1, 1, 1, 2), 2, 9, 10, 40),
            ((1, 0, 0, 1), 1, 0, 2, 0),
        ],
    )
    def test_examples(self, abcd, A, Sigma, sigma1, sigma2):
        invariants, point = cpnf_invariants(*abcd)
        assert invariants == CpnfInvariants(A=A, Sigma=Sigma)
        assert (point.sigma1, point.sigma2, point.sigma3) == (sigma1, sigma2, sigma1 - 2)

    def test_degenerate(self):
        with pytest.raises(DegenerateNormalFormError, match="degenerate critical normal form"):
            cpnf_invariants(1, 2, 2, 4)

    def test_matches_trace_algorithm(self, rng):
        for _ in range(100):
            a, b, c, d = (random_nonzero_rational(rng, 7) for _ in range(4))
            if a * d == b * c:
                continue
            _, point = cpnf_invariants(a, b, c, d)
            assert point == sigma_invariants(QuadMap.of((a, 0, b), (c, 0, d))), f"CPNF {a},{b},{c},{d}"


class TestFixedPointNormalForm:
    def test_third_multiplier(self):
        assert fpnf_third_multiplier(2, 3) == Fraction(3, 5)

    def test_third_multiplier_undefined(self):
        with pytest.raises(InvalidParameterError):
            fpnf_third_multiplier(2, "1/2")

    def test_oracle_matches_trace_algorithm(self, rng):
        for _ in range(100):
            l1, l2 = random_nonzero_rational(rng, 9), random_nonzero_rational(rng, 9)
            if l1 * l2 == 1:
                continue
            phi = QuadMap.of((1, l1, 0), (0, l2, 1))
            l3 = fpnf_third_multiplier(l1, l2)
            assert sigma_invariants(phi) == sigma_from_multipliers(l1, l2, l3)
            assert multiplier(phi, ProjPoint.of(0, 1)) == l1
            assert multiplier(phi, ProjPoint.of(1, 0)) == l2
