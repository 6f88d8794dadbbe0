"""String codecs for the CLI and HTTP surfaces: "a0,a1,a2;b0,b1,b2", "x:y", "α,β;γ,δ", "2,3"."""

import re
from fractions import Fraction

from quadratic_moduli.errors import ParseError
from quadratic_moduli.types.forms import Mobius, ProjPoint, QuadMap
from quadratic_moduli.types.numbers import PrimeSet, to_fraction


def parse_rational(text: str) -> Fraction:
    return to_fraction(text)


def _split(text: str, separator: str, count: int, what: str) -> list[str]:
    parts = [part.strip() for part in text.strip().split(separator)]
    if len(parts) != count or any(part == "" for part in parts):
        raise ParseError(f"malformed {what}: {text!r}")
    return parts


def parse_map(text: str) -> QuadMap:
    """Parse "a0,a1,a2;b0,b1,b2"; proportional forms raise DegenerateMapError ("degenerate map")."""
    a_text, b_text = _split(text, ";", 2, "map")
    a = [parse_rational(c) for c in _split(a_text, ",", 3, "map")]
    b = [parse_rational(c) for c in _split(b_text, ",", 3, "map")]
    return QuadMap.of(a, b)


def parse_point(text: str) -> ProjPoint:
    x, y = _split(text, ":", 2, "point")
    return ProjPoint.of(parse_rational(x), parse_rational(y))


def parse_mobius(text: str) -> Mobius:
    top, bottom = _split(text, ";", 2, "matrix")
    alpha, beta = _split(top, ",", 2, "matrix")
    gamma, delta = _split(bottom, ",", 2, "matrix")
    return Mobius.of(*(parse_rational(c) for c in (alpha, beta, gamma, delta)))


def parse_prime_set(text: str) -> PrimeSet:
    """Comma-separated primes; the empty string is the empty set."""
    text = text.strip().strip("{}")
    if not text:
        return PrimeSet()
    primes = []
    for part in text.split(","):
        part = part.strip()
        if not re.fullmatch(r"\d+", part, re.ASCII):
            raise ParseError(f"malformed prime set: {text!r}")
        primes.append(int(part))
    return PrimeSet.of(*primes)
