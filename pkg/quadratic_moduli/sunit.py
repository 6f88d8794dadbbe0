"""
S-units of Q, a bounded-exhaustive solver for the unit equation x + y = 1 and
the covering check for structured triples.

The solver is not provably complete: it finds every solution whose x has all
exponents within `bound`, and the y side is accepted without any exponent
restriction. Completeness is only evidenced by stabilization as the bound grows.
"""

import logging
from fractions import Fraction
from itertools import product

from quadratic_moduli.errors import InvalidParameterError
from quadratic_moduli.exactnum import is_s_unit
from quadratic_moduli.structures import cycle_invariant, u_invariant
from quadratic_moduli.tracing import add_report_to_span, get_tracer
from quadratic_moduli.types.numbers import PrimeSet
from quadratic_moduli.types.reports import CoveringReport, SUnit, UnitEquationSolutionSet
from quadratic_moduli.types.triples import FixedPairNormalForm, TwoCycleNormalForm

logger = logging.getLogger(__name__)
tracer = get_tracer(__name__)


def enumerate_s_units(S: PrimeSet, bound: int) -> list[SUnit]:
    """All sign * prod p^e_p with |e_p| <= bound, lexicographic in exponents, then sign (+ before -)."""
    if bound < 0:
        raise InvalidParameterError(f"bound must be >= 0, got {bound}")
    units = []
    for exponents in product(range(-bound, bound + 1), repeat=len(S.primes)):
        for sign in (1, -1):
            units.append(SUnit(sign=sign, exponents=tuple(zip(S.primes, exponents))))
    return units


def solve_unit_equation(S: PrimeSet, bound: int) -> UnitEquationSolutionSet:
    with tracer.start_as_current_span("sunit.solve_unit_equation") as span:
        span.set_attribute("sunit.S", str(S))
        span.set_attribute("sunit.bound", bound)
        solutions: set[tuple[Fraction, Fraction]] = set()
        for unit in enumerate_s_units(S, bound):
            x = unit.value
            y = 1 - x
            if y != 0 and is_s_unit(y, S):
                solutions.add((x, y))
                solutions.add((y, x))
        result = UnitEquationSolutionSet(S=S, bound=bound, solutions=tuple(sorted(solutions)))
        logger.info("unit equation over S={%s}, bound %d: %d solutions", S, bound, len(solutions))
        span.set_attribute("sunit.solution_count", len(solutions))
        return result


def covering_set(S: PrimeSet, bound: int) -> list[Fraction]:
    """The u-values indexing the curves that cover every good-reduction structured class."""
    return solve_unit_equation(S, bound).u_values


class _Unit:
    # (sign, exponent vector) for fast products, plus the exact value
    __slots__ = ("sign", "exponents", "value")

    def __init__(self, unit: SUnit):
        self.sign = unit.sign
        self.exponents = tuple(e for _, e in unit.exponents)
        self.value = unit.value


def _combine(x: _Unit, y: _Unit, z: _Unit) -> tuple[int, tuple[int, ...]]:
    """Key of x*y/z."""
    return x.sign * y.sign * z.sign, tuple(ex + ey - ez for ex, ey, ez in zip(x.exponents, y.exponents, z.exponents))


def _scan(
    S: PrimeSet, units: list[_Unit], cover: set[Fraction], kind: str
) -> tuple[int, set[Fraction], list[str]]:
    """
    Walk all unit triples (a, b, c). The resultant factor is an S-unit iff 1 - w is
    one, where w = ab/c for fixed pairs and w = ac/b for 2-cycles, so that test is
    memoized on the exponent key of w.
    """
    good_keys: dict[tuple[int, tuple[int, ...]], bool] = {}
    representatives: dict[tuple[int, tuple[int, ...]], tuple[_Unit, _Unit, _Unit]] = {}
    count = 0
    for a, b, c in product(units, repeat=3):
        key = _combine(a, b, c) if kind == "fixed_pair" else _combine(a, c, b)
        good = good_keys.get(key)
        if good is None:
            w = Fraction(key[0])
            for p, e in zip(S.primes, key[1]):
                w *= Fraction(p) ** e
            good = w != 1 and is_s_unit(1 - w, S)
            good_keys[key] = good
        if good:
            count += 1
            representatives.setdefault(key, (a, b, c))

    hit: set[Fraction] = set()
    violations = []
    for key, (a, b, c) in sorted(representatives.items()):
        if kind == "fixed_pair":
            nf = FixedPairNormalForm.of(a.value, b.value, c.value)
            u = u_invariant(nf)
        else:
            nf = TwoCycleNormalForm.of(a.value, b.value, c.value)
            u = cycle_invariant(nf)
        hit.add(u)
        if not is_s_unit(nf.resultant, S):
            violations.append(f"{kind} {nf}: resultant factor {nf.resultant} is not an S-unit")
        if u not in cover:
            violations.append(f"{kind} {nf}: u = {u} not in the covering set")
    return count, hit, violations


def covering_check(S: PrimeSet, coeff_bound: int, eq_bound: int) -> CoveringReport:
    """
    Enumerate every fixed-pair and 2-cycle normal form whose coefficients are
    S-units with exponents <= coeff_bound and whose resultant is an S-unit, and
    check that its u-invariant lies in covering_set(S, eq_bound).
    """
    with tracer.start_as_current_span("sunit.covering_check") as span:
        cover = covering_set(S, eq_bound)
        units = [_Unit(unit) for unit in enumerate_s_units(S, coeff_bound)]
        logger.debug("covering check over %d units, covering set %s", len(units), [str(u) for u in cover])
        fixed_count, fixed_hit, fixed_violations = _scan(S, units, set(cover), "fixed_pair")
        cycle_count, cycle_hit, cycle_violations = _scan(S, units, set(cover), "two_cycle")
        report = CoveringReport(
            S=S,
            coeff_bound=coeff_bound,
            eq_bound=eq_bound,
            covering_set=tuple(cover),
            fixed_pair_count=fixed_count,
            fixed_pair_u_values=tuple(sorted(fixed_hit)),
            two_cycle_count=cycle_count,
            two_cycle_u_values=tuple(sorted(cycle_hit)),
            violations=tuple(fixed_violations + cycle_violations),
        )
        logger.info(
            "covering check S={%s}: %d fixed pairs, %d 2-cycles, %d violations",
            S,
            fixed_count,
            cycle_count,
            len(report.violations),
        )
        add_report_to_span(span, "covering", report.model_dump(mode="json", exclude={"violations"}))
        return report
