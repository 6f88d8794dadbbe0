"""Shared fixtures: a seeded random source and random maps / Möbius transformations."""

import random
from fractions import Fraction

import pytest

from quadratic_moduli.errors import DegenerateMapError, SingularMobiusError
from quadratic_moduli.types.forms import Mobius, ProjPoint, QuadMap

SEED = 20240611


@pytest.fixture
def rng() -> random.Random:
    return random.Random(SEED)


def random_map(rng: random.Random, bound: int = 5) -> QuadMap:
    """A random integer-coefficient map of exact degree 2."""
    while True:
        coeffs = [rng.randint(-bound, bound) for _ in range(6)]
        try:
            return QuadMap.of(coeffs[:3], coeffs[3:])
        except DegenerateMapError:
            continue


def random_mobius(rng: random.Random, bound: int = 4) -> Mobius:
    while True:
        try:
            return Mobius.of(*(rng.randint(-bound, bound) for _ in range(4)))
        except SingularMobiusError:
            continue


def random_point(rng: random.Random, bound: int = 6) -> ProjPoint:
    if rng.random() < 0.1:
        return ProjPoint.of(1, 0)
    return ProjPoint.of(Fraction(rng.randint(-bound, bound), rng.randint(1, bound)), 1)


def random_nonzero_rational(rng: random.Random, bound: int = 6) -> Fraction:
    numerator = 0
    while numerator == 0:
        numerator = rng.randint(-bound, bound)
    return Fraction(numerator, rng.randint(1, bound))
