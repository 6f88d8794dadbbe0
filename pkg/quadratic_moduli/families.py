"""
Witness families in the moduli space M_2 = A^2.

cpnf_family(p, N) gives N critical normal forms phi_{n,N} with ad - bc = 1, so
every member has good reduction everywhere, and all of them lie on the line
sigma1 = 8p^2N - 6 with pairwise distinct sigma2. density_witness computes those
points twice, through the closed formula and through the trace algorithm, and
fails loudly if the two disagree.

fpnf_map(alpha, beta) has resultant beta, so it has good reduction outside S
whenever beta is an S-unit; alpha = 1 and alpha = -1 trace out the lines
2*sigma1 - sigma2 = 3 and 2*sigma1 + sigma2 = 1.
"""

import logging
from fractions import Fraction

from quadratic_moduli.errors import InvalidParameterError, WitnessError
from quadratic_moduli.exactnum import require_prime, valuation
from quadratic_moduli.invariants import sigma_invariants
from quadratic_moduli.projmap import resultant
from quadratic_moduli.reduction import bad_primes
from quadratic_moduli.tracing import add_report_to_span, get_tracer
from quadratic_moduli.types.forms import QuadMap
from quadratic_moduli.types.milnor import MilnorPoint
from quadratic_moduli.types.numbers import to_fraction
from quadratic_moduli.types.reports import DensityReport, DensityRow, FamilySpec, LineReport

logger = logging.getLogger(__name__)
tracer = get_tracer(__name__)


def cpnf_map(a, b, c, d) -> QuadMap:
    """The critical normal form (aX^2 + bY^2 : cX^2 + dY^2), critical at (1:0) and (0:1)."""
    return QuadMap.of((a, 0, b), (c, 0, d))


def fpnf(l1, l2) -> QuadMap:
    """The fixed-point normal form (X^2 + l1*XY : l2*XY + Y^2) with multipliers l1 at (0:1), l2 at (1:0)."""
    return QuadMap.of((1, l1, 0), (0, l2, 1))


def _check_family_parameters(p: int, N: int) -> None:
    require_prime(p)
    if isinstance(N, bool) or not isinstance(N, int) or N < 1:
        raise InvalidParameterError(f"N must be an integer >= 1, got {N!r}")


def cpnf_family(p: int, N: int) -> list[QuadMap]:
    """phi_{n,N} = (p^n X^2 + Y^2 : (p^2N - 1) X^2 + p^(2N-n) Y^2) for 0 <= n < N."""
    _check_family_parameters(p, N)
    members = []
    for n in range(N):
        a, b, c, d = p**n, 1, p ** (2 * N) - 1, p ** (2 * N - n)
        if a * d - b * c != 1:
            raise RuntimeError(f"ad - bc != 1 for phi_{n},{N} at p={p}")
        members.append(cpnf_map(a, b, c, d))
    return members


def _sigma_part(p: int, N: int, n: int) -> int:
    return p ** (3 * n) + (p ** (2 * N) - 1) * p ** (6 * N - 3 * n)


def family_sigma_closed(p: int, N: int, n: int) -> MilnorPoint:
    _check_family_parameters(p, N)
    if not 0 <= n < N:
        raise InvalidParameterError(f"n must satisfy 0 <= n < N={N}, got {n}")
    q = p ** (2 * N)
    sigma1 = Fraction(8 * q - 6)
    sigma2 = Fraction(8 * q * q - 20 * q + 4 * _sigma_part(p, N, n) + 12)
    return MilnorPoint(sigma1=sigma1, sigma2=sigma2, sigma3=sigma1 - 2)


def fpnf_map(alpha, beta) -> QuadMap:
    """phi_{alpha,beta} = (X^2 + alpha*XY : ((1 - beta)/alpha)*XY + Y^2), whose resultant is beta."""
    alpha, beta = to_fraction(alpha), to_fraction(beta)
    if alpha == 0 or beta == 0:
        raise InvalidParameterError(f"alpha and beta must be nonzero, got ({alpha}, {beta})")
    phi = fpnf(alpha, (1 - beta) / alpha)
    if resultant(phi) != beta:
        raise RuntimeError(f"resultant of {phi} is {resultant(phi)}, expected {beta}")
    return phi


def u_point(alpha, beta) -> MilnorPoint:
    """The Milnor point of phi_{alpha,beta}."""
    return sigma_invariants(fpnf_map(alpha, beta))


def u_line_closed_form(alpha, z) -> tuple[Fraction, Fraction]:
    """(sigma1, sigma2) of phi_{alpha,z} on the lines alpha = 1 and alpha = -1."""
    alpha, z = to_fraction(alpha), to_fraction(z)
    if z == 0:
        raise InvalidParameterError("z must be nonzero")
    if alpha == 1:
        return 3 - z, 3 - 2 * z
    if alpha == -1:
        w = z + 4 / z
        return -3 + w, 7 - 2 * w
    raise InvalidParameterError(f"alpha must be 1 or -1, got {alpha}")


def build_family(spec: FamilySpec) -> list[QuadMap]:
    if spec.kind == "cpnf_density":
        return cpnf_family(spec.p, spec.N)
    return [fpnf_map(spec.alpha, spec.beta)]


def density_witness(p: int, N: int) -> DensityReport:
    """
    The phi_{n,N} witnesses on the line sigma1 = 8p^2N - 6. Raises WitnessError unless
    every member has that sigma1, the sigma2 values are pairwise distinct, no member
    has a bad prime, and the trace algorithm matches the closed formula.
    """
    with tracer.start_as_current_span("families.density_witness") as span:
        members = cpnf_family(p, N)
        expected_sigma1 = Fraction(8 * p ** (2 * N) - 6)
        rows = []
        for n, phi in enumerate(members):
            point = sigma_invariants(phi)
            closed = family_sigma_closed(p, N, n)
            if point != closed:
                raise WitnessError(f"phi_{n},{N} at p={p}: trace algorithm {point} != closed form {closed}")
            if point.sigma1 != expected_sigma1:
                raise WitnessError(f"phi_{n},{N} at p={p}: sigma1 = {point.sigma1}, expected {expected_sigma1}")
            primes = bad_primes(phi)
            if primes.primes:
                raise WitnessError(f"phi_{n},{N} at p={p} has bad primes {primes}")
            part_valuation = valuation(_sigma_part(p, N, n), p)
            if part_valuation != 3 * n:
                raise WitnessError(f"v_{p} of the Sigma part is {part_valuation} at n={n}, expected {3 * n}")
            rows.append(
                DensityRow(n=n, sigma2=point.sigma2, bad_primes=primes.primes, sigma_part_valuation=part_valuation)
            )
            logger.debug("p=%d N=%d n=%d sigma2=%s", p, N, n, point.sigma2)
        if len({row.sigma2 for row in rows}) != len(rows):
            raise WitnessError(f"sigma2 values are not pairwise distinct for p={p}, N={N}")
        report = DensityReport(p=p, N=N, sigma1=expected_sigma1, rows=tuple(rows))
        logger.info("density witness p=%d N=%d: %d distinct points on sigma1 = %s", p, N, N, expected_sigma1)
        add_report_to_span(span, "density", report.model_dump(mode="json"))
        return report


def line_membership(alpha, z) -> LineReport:
    """
    sigma of phi_{alpha,z}, checked against 2*sigma1 - sigma2 = 3 (alpha = 1)
    or 2*sigma1 + sigma2 = 1 (alpha = -1).
    """
    alpha, z = to_fraction(alpha), to_fraction(z)
    if alpha not in (1, -1):
        raise InvalidParameterError(f"alpha must be 1 or -1, got {alpha}")
    if z == 0:
        raise InvalidParameterError("z must be nonzero")
    point = u_point(alpha, z)
    if alpha == 1:
        relation, holds = "2*sigma1 - sigma2 = 3", 2 * point.sigma1 - point.sigma2 == 3
    else:
        relation, holds = "2*sigma1 + sigma2 = 1", 2 * point.sigma1 + point.sigma2 == 1
    if not holds:
        raise WitnessError(f"phi_{alpha},{z} with sigma ({point.sigma1}, {point.sigma2}) violates {relation}")
    if (point.sigma1, point.sigma2) != u_line_closed_form(alpha, z):
        raise WitnessError(
            f"phi_{alpha},{z}: sigma ({point.sigma1}, {point.sigma2}) disagrees with the line parametrisation"
        )
    return LineReport(alpha=alpha, z=z, sigma1=point.sigma1, sigma2=point.sigma2, relation=relation, holds=holds)
