"""
Tests for the witness families: the critical normal forms on a line of
constant sigma1, and the fixed-point normal forms with prescribed resultant.
"""

from fractions import Fraction as F

import pytest

from quadratic_moduli.errors import InvalidParameterError, InvalidPrimeError
from quadratic_moduli.families import (
    build_family,
    cpnf_family,
    density_witness,
    family_sigma_closed,
    fpnf_map,
    line_membership,
    u_line_closed_form,
    u_point,
)
from quadratic_moduli.invariants import sigma_invariants
from quadratic_moduli.projmap import resultant
from quadratic_moduli.reduction import bad_primes
from quadratic_moduli.types.forms import QuadMap
from quadratic_moduli.types.reports import FamilySpec

LINE_PARAMETERS = [F(1), F(2), F(3), F(5), F(-1), F(1, 2)]


class TestCpnfFamily:
    def test_members(self):
        assert cpnf_family(2, 1) == [QuadMap.of((1, 0, 1), (3, 0, 4))]
        assert cpnf_family(3, 2)[1] == QuadMap.of((3, 0, 1), (80, 0, 27))

    def test_every_member_has_unit_resultant(self):
        for phi in cpnf_family(3, 3):
            assert resultant(phi) == 1

    @pytest.mark.parametrize("p, N", [(4, 1), (2, 0), (2, -1)])
    def test_bad_parameters(self, p, N):
        with pytest.raises((InvalidPrimeError, InvalidParameterError)):
            cpnf_family(p, N)

    def test_closed_sigma(self):
        point = family_sigma_closed(2, 1, 0)
        assert (point.sigma1, point.sigma2, point.sigma3) == (26, 832, 24)

    def test_closed_sigma_index_range(self):
        with pytest.raises(InvalidParameterError):
            family_sigma_closed(2, 3, 3)


class TestDensityWitness:
    @pytest.mark.parametrize("p, N", [(2, N) for N in range(1, 9)] + [(3, 3)])
    def test_witness(self, p, N):
        report = density_witness(p, N)
        assert report.sigma1 == 8 * p ** (2 * N) - 6
        assert len(report.rows) == N
        assert len({row.sigma2 for row in report.rows}) == N, "sigma2 values must be pairwise distinct"
        for row in report.rows:
            assert row.bad_primes == ()
            assert row.sigma_part_valuation == 3 * row.n

    def test_spot_values(self):
        assert density_witness(2, 1).rows[0].sigma2 == 832
        assert density_witness(2, 5).sigma1 == 8186

    def test_trace_algorithm_agrees_with_closed_form(self):
        for n, phi in enumerate(cpnf_family(3, 3)):
            assert sigma_invariants(phi) == family_sigma_closed(3, 3, n)

    def test_json(self):
        payload = density_witness(2, 2).model_dump(mode="json")
        assert payload["sigma1"] == "122"
        assert [row["n"] for row in payload["rows"]] == [0, 1]


class TestFpnfFamily:
    def test_map(self):
        assert fpnf_map(2, 3) == QuadMap.of((1, 2, 0), (0, -1, 1))

    def test_zero_parameters(self):
        with pytest.raises(InvalidParameterError):
            fpnf_map(0, 1)
        with pytest.raises(InvalidParameterError):
            fpnf_map(1, 0)

    def test_resultant_is_beta_and_bad_primes_lie_in_s(self, rng):
        primes = (2, 3)
        for _ in range(100):
            alpha, beta = (rng.choice((1, -1)) * F(2) ** rng.randint(-3, 3) * F(3) ** rng.randint(-3, 3) for _ in "ab")
            phi = fpnf_map(alpha, beta)
            assert resultant(phi) == beta
            assert set(bad_primes(phi).primes) <= set(primes), f"phi_{alpha},{beta}"

    @pytest.mark.parametrize("z", LINE_PARAMETERS)
    def test_alpha_one_line(self, z):
        point = u_point(1, z)
        assert 2 * point.sigma1 - point.sigma2 == 3
        assert (point.sigma1, point.sigma2) == u_line_closed_form(1, z)

    @pytest.mark.parametrize("z", LINE_PARAMETERS)
    def test_alpha_minus_one_line(self, z):
        point = u_point(-1, z)
        assert 2 * point.sigma1 + point.sigma2 == 1
        assert (point.sigma1, point.sigma2) == u_line_closed_form(-1, z)

    def test_line_membership_report(self):
        report = line_membership(-1, 2)
        assert report.holds
        assert report.relation == "2*sigma1 + sigma2 = 1"
        assert (report.sigma1, report.sigma2) == (1, -1)

    def test_line_membership_needs_unit_alpha(self):
        with pytest.raises(InvalidParameterError):
            line_membership(2, 1)


class TestBuildFamily:
    def test_cpnf(self):
        assert build_family(FamilySpec(kind="cpnf_density", p=2, N=3)) == cpnf_family(2, 3)

    def test_fpnf(self):
        assert build_family(FamilySpec(kind="fpnf_sunit", alpha="1/2", beta=-3)) == [fpnf_map(F(1, 2), -3)]
