"""
Command-line front end.

    quadratic-moduli invariants --map "1,2,0;3,1,1"
    quadratic-moduli density-witness --p 2 --N 5
    quadratic-moduli sunit-solve --S 2 --bound 4 --format csv

Every command prints one JSON document (or CSV with --format csv) on stdout.
Errors go to stderr as {"error": message}; exit codes are 0 on success, 1 on a
domain error or failed witness, 2 on malformed input.

The *_payload functions build the JSON documents and are shared with the HTTP API.
"""

import argparse
import csv
import io
import json
import logging
import sys
from typing import Any, TextIO

from quadratic_moduli import env
from quadratic_moduli.errors import InvalidParameterError, ModuliError, ParseError, WitnessError
from quadratic_moduli.families import build_family, density_witness, line_membership
from quadratic_moduli.invariants import multiplier, sigma_invariants
from quadratic_moduli.projmap import conjugate, fixed_points, resultant
from quadratic_moduli.reduction import bad_primes, reduce_map
from quadratic_moduli.structures import (
    cycle_bad_primes,
    cycle_invariant,
    fixed_pair_normal_form,
    triple_bad_primes,
    two_cycle_normal_form,
    u_invariant,
    validate_fixed_pair,
    validate_two_cycle,
)
from quadratic_moduli.sunit import covering_check, solve_unit_equation
from quadratic_moduli.tracing import add_report_to_span, get_tracer, setup_tracing
from quadratic_moduli.types.forms import Mobius, ProjPoint, QuadMap
from quadratic_moduli.types.numbers import PrimeSet
from quadratic_moduli.types.reports import FamilySpec
from quadratic_moduli.utils import parse_map, parse_mobius, parse_point, parse_prime_set, parse_rational

logger = logging.getLogger(__name__)
tracer = get_tracer(__name__)

Payload = dict[str, Any]


# Payload builders


def invariants_payload(phi: QuadMap) -> Payload:
    point = sigma_invariants(phi)
    return {
        "map": str(phi),
        "resultant": str(resultant(phi)),
        **point.model_dump(mode="json"),
        "fixed_points": [
            {"point": str(P), "multiplicity": m, "multiplier": str(multiplier(phi, P))} for P, m in fixed_points(phi)
        ],
    }


def conjugate_payload(phi: QuadMap, f: Mobius) -> Payload:
    psi = conjugate(phi, f)
    return {"map": str(phi), "mobius": str(f), "conjugate": str(psi), "resultant": str(resultant(psi))}


def reduce_payload(phi: QuadMap, p: int) -> Payload:
    reduced = reduce_map(phi, p)
    return {"map": str(phi), "reduced": str(reduced), **reduced.model_dump(mode="json")}


def good_reduction_payload(phi: QuadMap, S: PrimeSet) -> Payload:
    primes = bad_primes(phi)
    return {
        "map": str(phi),
        "resultant": str(resultant(phi)),
        "bad_primes": list(primes.primes),
        "S": list(S.primes),
        "good_outside_S": all(p in S for p in primes.primes),
    }


def classify_fixed_payload(phi: QuadMap, P1: ProjPoint, P2: ProjPoint, S: PrimeSet) -> Payload:
    triple = validate_fixed_pair(phi, P1, P2)
    nf, f = fixed_pair_normal_form(triple)
    primes = triple_bad_primes(nf)
    return {
        "triple": str(triple),
        "normal_form": nf.model_dump(mode="json"),
        "mobius": str(f),
        "u": str(u_invariant(nf)),
        "bad_primes": list(primes.primes),
        "S": list(S.primes),
        "good_outside_S": all(p in S for p in primes.primes),
    }


def classify_cycle_payload(phi: QuadMap, P1: ProjPoint, P2: ProjPoint, S: PrimeSet) -> Payload:
    triple = validate_two_cycle(phi, P1, P2)
    nf, f = two_cycle_normal_form(triple)
    primes = cycle_bad_primes(nf)
    return {
        "triple": str(triple),
        "normal_form": nf.model_dump(mode="json"),
        "mobius": str(f),
        "u": str(cycle_invariant(nf)),
        "bad_primes": list(primes.primes),
        "S": list(S.primes),
        "good_outside_S": all(p in S for p in primes.primes),
    }


def family_payload(spec: FamilySpec) -> Payload:
    maps = []
    for phi in build_family(spec):
        point = sigma_invariants(phi)
        maps.append(
            {
                "map": str(phi),
                "resultant": str(resultant(phi)),
                "sigma1": str(point.sigma1),
                "sigma2": str(point.sigma2),
                "bad_primes": list(bad_primes(phi).primes),
            }
        )
    payload: Payload = {**spec.model_dump(mode="json", exclude_none=True), "maps": maps}
    if spec.kind == "fpnf_sunit" and spec.alpha in (1, -1):
        payload["line"] = line_membership(spec.alpha, spec.beta).model_dump(mode="json")
    return payload


def density_witness_payload(p: int, N: int) -> Payload:
    if N > env.MAX_FAMILY_N:
        raise InvalidParameterError(f"N={N} exceeds the configured ceiling QM_MAX_FAMILY_N={env.MAX_FAMILY_N}")
    return density_witness(p, N).model_dump(mode="json")


def sunit_solve_payload(S: PrimeSet, bound: int) -> Payload:
    if bound < 0:
        raise InvalidParameterError(f"bound must be >= 0, got {bound}")
    return solve_unit_equation(S, bound).model_dump(mode="json")


# Argument parsing


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message: str):
        raise ParseError(message)


def _build_parser() -> argparse.ArgumentParser:
    common = _ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv"], default="json")

    parser = _ArgumentParser(
        prog="quadratic-moduli", description="Exact arithmetic for quadratic rational maps over Q"
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    sub = subparsers.add_parser("invariants", parents=[common], help="resultant, Milnor point and fixed points")
    sub.add_argument("--map", required=True, type=parse_map)

    sub = subparsers.add_parser("conjugate", parents=[common], help="phi^f = f^-1 o phi o f")
    sub.add_argument("--map", required=True, type=parse_map)
    sub.add_argument("--pgl", required=True, type=parse_mobius, help='"alpha,beta;gamma,delta"')

    sub = subparsers.add_parser("reduce", parents=[common], help="reduction of a map modulo a prime")
    sub.add_argument("--map", required=True, type=parse_map)
    sub.add_argument("--prime", required=True, type=int)

    sub = subparsers.add_parser("good-reduction", parents=[common], help="bad primes of the given representative")
    sub.add_argument("--map", required=True, type=parse_map)
    sub.add_argument("--outside-S", dest="S", default="", type=parse_prime_set)

    for name, help_text in (
        ("classify-fixed", "normal form of a map with two marked unramified fixed points"),
        ("classify-cycle", "normal form of a map with a marked unramified 2-cycle"),
    ):
        sub = subparsers.add_parser(name, parents=[common], help=help_text)
        sub.add_argument("--map", required=True, type=parse_map)
        sub.add_argument("--p1", required=True, type=parse_point)
        sub.add_argument("--p2", required=True, type=parse_point)
        sub.add_argument("--outside-S", dest="S", default="", type=parse_prime_set)

    sub = subparsers.add_parser("family", parents=[common], help="members of a witness family")
    sub.add_argument("--kind", required=True, choices=["cpnf", "fpnf"])
    sub.add_argument("--p", type=int)
    sub.add_argument("--N", type=int)
    sub.add_argument("--alpha", type=parse_rational)
    sub.add_argument("--beta", type=parse_rational)

    sub = subparsers.add_parser("density-witness", parents=[common], help="distinct everywhere-good points on a line")
    sub.add_argument("--p", required=True, type=int)
    sub.add_argument("--N", required=True, type=int)

    sub = subparsers.add_parser("sunit-solve", parents=[common], help="solutions of x + y = 1 in S-units")
    sub.add_argument("--S", required=True, type=parse_prime_set)
    sub.add_argument("--bound", type=int, default=env.DEFAULT_EQ_BOUND)

    sub = subparsers.add_parser(
        "covering-check", parents=[common], help="u-invariants of good triples vs the unit equation"
    )
    sub.add_argument("--S", required=True, type=parse_prime_set)
    sub.add_argument("--coeff-bound", type=int, default=env.DEFAULT_COEFF_BOUND)
    sub.add_argument("--eq-bound", type=int, default=env.DEFAULT_EQ_BOUND)

    return parser


def _dispatch(args: argparse.Namespace) -> Payload:
    match args.command:
        case "invariants":
            return invariants_payload(args.map)
        case "conjugate":
            return conjugate_payload(args.map, args.pgl)
        case "reduce":
            return reduce_payload(args.map, args.prime)
        case "good-reduction":
            return good_reduction_payload(args.map, args.S)
        case "classify-fixed":
            return classify_fixed_payload(args.map, args.p1, args.p2, args.S)
        case "classify-cycle":
            return classify_cycle_payload(args.map, args.p1, args.p2, args.S)
        case "family":
            if args.kind == "cpnf":
                if args.N is not None and args.N > env.MAX_FAMILY_N:
                    raise InvalidParameterError(f"N={args.N} exceeds QM_MAX_FAMILY_N={env.MAX_FAMILY_N}")
                spec = FamilySpec(kind="cpnf_density", p=args.p, N=args.N)
            else:
                spec = FamilySpec(kind="fpnf_sunit", alpha=args.alpha, beta=args.beta)
            return family_payload(spec)
        case "density-witness":
            return density_witness_payload(args.p, args.N)
        case "sunit-solve":
            return sunit_solve_payload(args.S, args.bound)
        case "covering-check":
            if args.coeff_bound < 0 or args.eq_bound < 0:
                raise InvalidParameterError("bounds must be >= 0")
            report = covering_check(args.S, args.coeff_bound, args.eq_bound)
            payload = report.model_dump(mode="json")
            if report.violations:
                raise _FailedReport(payload, f"covering check found {len(report.violations)} violations")
            return payload
    raise ParseError(f"unknown command {args.command!r}")


class _FailedReport(WitnessError):
    """A report that was computed in full but records failed assertions."""

    def __init__(self, payload: Payload, message: str):
        super().__init__(message)
        self.payload = payload


# Rendering


def _cell(value: Any) -> str:
    if isinstance(value, (list, tuple)):
        return " ".join(_cell(item) for item in value)
    if isinstance(value, dict):
        return json.dumps(value, separators=(",", ":"))
    return str(value).lower() if isinstance(value, bool) else str(value)


def render_csv(payload: Payload) -> str:
    """
    Tabular payloads (rows, maps, solutions, fixed_points) become one CSV table;
    anything else becomes key,value lines.
    """
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    for key in ("rows", "maps", "fixed_points", "solutions"):
        table = payload.get(key)
        if table and isinstance(table[0], dict):
            columns = list(table[0].keys())
            writer.writerow(columns)
            for row in table:
                writer.writerow([_cell(row[column]) for column in columns])
            return out.getvalue()
        if table and isinstance(table[0], list):
            writer.writerow(["x", "y"])
            writer.writerows(table)
            return out.getvalue()
    writer.writerow(["key", "value"])
    for key, value in payload.items():
        writer.writerow([key, _cell(value)])
    return out.getvalue()


def render(payload: Payload, output_format: str) -> str:
    if output_format == "csv":
        return render_csv(payload)
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


def _report_error(stderr: TextIO, message: str) -> None:
    stderr.write(json.dumps({"error": message}, ensure_ascii=False) + "\n")


def run(argv: list[str], stderr: TextIO | None = None) -> tuple[int, str]:
    """Parse argv, run one command, return (exit code, stdout text). Errors are written to stderr."""
    stderr = stderr if stderr is not None else sys.stderr
    try:
        args = _build_parser().parse_args(argv)
    except ParseError as error:
        _report_error(stderr, f"usage: {error}")
        return 2, ""
    except ModuliError as error:
        # argparse type= converters that fail on domain grounds (e.g. "degenerate map")
        _report_error(stderr, str(error))
        return 1, ""

    with tracer.start_as_current_span(f"cli.{args.command}") as span:
        try:
            payload = _dispatch(args)
        except _FailedReport as error:
            _report_error(stderr, str(error))
            return 1, render(error.payload, args.format)
        except ParseError as error:
            _report_error(stderr, f"usage: {error}")
            return 2, ""
        except ModuliError as error:
            logger.info("%s failed: %s", args.command, error)
            _report_error(stderr, str(error))
            return 1, ""
        add_report_to_span(span, "output", payload)
        return 0, render(payload, args.format)


def main() -> None:
    logging.basicConfig(level=env.LOG_LEVEL, format="%(asctime)s %(levelname)s %(name)s: %(message)s")
    if env.TRACE_ENDPOINT:
        setup_tracing(env.TRACE_ENDPOINT)
    code, output = run(sys.argv[1:])
    sys.stdout.write(output)
    sys.exit(code)


if __name__ == "__main__":
    main()
