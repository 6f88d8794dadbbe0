"""
Tests for the command-line front end.

run() is exercised in-process: it returns (exit code, stdout text) and writes
errors to the stream it is given, so no subprocess is needed.
"""

import io
import json
from fractions import Fraction

import pytest

from quadratic_moduli import env
from quadratic_moduli.cli import render_csv, run
from quadratic_moduli.errors import DegenerateMapError, ParseError
from quadratic_moduli.utils import parse_map, parse_mobius, parse_point, parse_prime_set


def invoke(*argv):
    stderr = io.StringIO()
    code, stdout = run(list(argv), stderr=stderr)
    return code, stdout, stderr.getvalue()


def invoke_json(*argv):
    code, stdout, stderr = invoke(*argv)
    assert code == 0, f"{argv} failed with {code}: {stderr}"
    return json.loads(stdout)


class TestParsers:
    def test_parse_map(self):
        phi = parse_map("1,2,0;3,1,1")
        assert phi.coefficients == (1, 2, 0, 3, 1, 1)
        assert str(parse_map(" 1, 1, 0 ; 0, 1, 2 ")) == "1,1,0;0,1,2"

    def test_degenerate_map(self):
        with pytest.raises(DegenerateMapError, match="degenerate map"):
            parse_map("1,0,0;2,0,0")

    @pytest.mark.parametrize("text", ["1,2;3,4,5", "1,2,0", "1,2,0;3,1,x", "1,,0;3,1,1"])
    def test_malformed_map(self, text):
        with pytest.raises(ParseError):
            parse_map(text)

    def test_parse_point_and_mobius(self):
        assert str(parse_point("2:4")) == "1/2:1"
        assert str(parse_mobius("0,1;1,0")) == "0,1;1,0"

    def test_parse_prime_set(self):
        assert parse_prime_set("").primes == ()
        assert parse_prime_set("{3,2}").primes == (2, 3)

    @pytest.mark.parametrize("text", ["2,x", "2,²", "٣", "-3", "2.0"])
    def test_malformed_prime_set(self, text):
        with pytest.raises(ParseError, match="malformed prime set"):
            parse_prime_set(text)


class TestCommands:
    def test_invariants(self):
        payload = invoke_json("invariants", "--map", "1,2,0;3,1,1")
        assert payload["resultant"] == "11"
        assert Fraction(payload["sigma3"]) == Fraction(payload["sigma1"]) - 2

    def test_invariants_lists_rational_fixed_points(self):
        payload = invoke_json("invariants", "--map", "1,2,0;0,3,1")
        assert (payload["sigma1"], payload["sigma2"], payload["sigma3"]) == ("28/5", "9", "18/5")
        assert payload["fixed_points"] == [
            {"point": "0:1", "multiplicity": 1, "multiplier": "2"},
            {"point": "1/2:1", "multiplicity": 1, "multiplier": "3/5"},
            {"point": "1:0", "multiplicity": 1, "multiplier": "3"},
        ]

    def test_conjugate(self):
        payload = invoke_json("conjugate", "--map", "1,1,0;0,1,2", "--pgl", "3,0;0,1")
        assert payload["conjugate"] == "3,1,0;0,3,2"
        assert payload["resultant"] == "18"

    def test_reduce(self):
        payload = invoke_json("reduce", "--map", "1,1,0;0,1,2", "--prime", "2")
        assert payload["degree"] == 1
        assert payload["b"] == [0, 1, 0]

    def test_good_reduction(self):
        payload = invoke_json("good-reduction", "--map", "1,2,0;0,3,1", "--outside-S", "5")
        assert payload["bad_primes"] == [5]
        assert payload["good_outside_S"] is True

    def test_classify_fixed(self):
        payload = invoke_json("classify-fixed", "--map", "1,2,0;0,3,1", "--p1", "1:0", "--p2", "0:1")
        assert payload["normal_form"] == {"a": "2", "b": "3", "c": "1"}
        assert payload["u"] == "6"
        assert payload["mobius"] == "1,0;0,1"
        assert payload["bad_primes"] == [2, 3, 5]
        assert payload["good_outside_S"] is False

    def test_classify_cycle(self):
        payload = invoke_json(
            "classify-cycle", "--map", "0,1,2;1,1,0", "--p1", "1:0", "--p2", "0:1", "--outside-S", "2"
        )
        assert payload["u"] == "1/2"
        assert payload["good_outside_S"] is True

    def test_family(self):
        payload = invoke_json("family", "--kind", "cpnf", "--p", "2", "--N", "2")
        assert [member["sigma1"] for member in payload["maps"]] == ["122", "122"]
        assert all(member["bad_primes"] == [] for member in payload["maps"])

    def test_family_on_a_line(self):
        payload = invoke_json("family", "--kind", "fpnf", "--alpha", "1", "--beta", "2")
        assert payload["maps"][0]["resultant"] == "2"
        assert payload["line"]["holds"] is True

    def test_density_witness(self):
        payload = invoke_json("density-witness", "--p", "2", "--N", "5")
        assert payload["sigma1"] == "8186"
        assert len(payload["rows"]) == 5

    def test_sunit_solve(self):
        payload = invoke_json("sunit-solve", "--S", "2", "--bound", "4")
        assert payload["solutions"] == [["-1", "2"], ["1/2", "1/2"], ["2", "-1"]]

    def test_covering_check(self):
        payload = invoke_json("covering-check", "--S", "2", "--coeff-bound", "1", "--eq-bound", "4")
        assert payload["ok"] is True
        assert payload["violations"] == []


class TestExitCodes:
    def test_degenerate_map_is_a_domain_error(self):
        code, stdout, stderr = invoke("invariants", "--map", "1,0,0;2,0,0")
        assert code == 1
        assert stdout == ""
        assert "degenerate map" in json.loads(stderr)["error"]

    @pytest.mark.parametrize(
        "argv",
        [
            ["invariants", "--map", "1,2;3"],
            ["invariants", "--map", "1/00,0,1;0,1,0"],
            ["sunit-solve", "--S", "2,²"],
            ["invariants"],
            ["invariants", "--map", "1,2,0;3,1,1", "--verbose"],
            ["reduce", "--map", "1,2,0;3,1,1", "--prime", "two"],
            ["no-such-command"],
            [],
        ],
    )
    def test_usage_errors(self, argv):
        code, _, stderr = invoke(*argv)
        assert code == 2
        assert "error" in json.loads(stderr)

    @pytest.mark.parametrize(
        "argv",
        [
            ["reduce", "--map", "1,2,0;3,1,1", "--prime", "4"],
            ["classify-fixed", "--map", "1,2,0;0,3,1", "--p1", "1:0", "--p2", "1:1"],
            ["classify-cycle", "--map", "1,2,0;0,3,1", "--p1", "1:0", "--p2", "0:1"],
            ["family", "--kind", "cpnf", "--p", "2"],
            ["sunit-solve", "--S", "2", "--bound", "-1"],
        ],
    )
    def test_domain_errors(self, argv):
        code, stdout, stderr = invoke(*argv)
        assert code == 1
        assert stdout == ""
        assert json.loads(stderr)["error"]

    def test_family_ceiling(self, monkeypatch):
        monkeypatch.setattr(env, "MAX_FAMILY_N", 2)
        code, _, stderr = invoke("density-witness", "--p", "2", "--N", "3")
        assert code == 1
        assert "QM_MAX_FAMILY_N" in json.loads(stderr)["error"]
        code, _, _ = invoke("family", "--kind", "cpnf", "--p", "2", "--N", "3")
        assert code == 1


class TestOutput:
    def test_byte_deterministic(self):
        argv = ("density-witness", "--p", "3", "--N", "2")
        assert invoke(*argv) == invoke(*argv)

    def test_csv_solutions(self):
        code, stdout, _ = invoke("sunit-solve", "--S", "2", "--bound", "4", "--format", "csv")
        assert code == 0
        assert stdout == "x,y\n-1,2\n1/2,1/2\n2,-1\n"

    def test_csv_rows(self):
        code, stdout, _ = invoke("density-witness", "--p", "2", "--N", "2", "--format", "csv")
        assert code == 0
        lines = stdout.splitlines()
        assert lines[0] == "n,sigma2,bad_primes,sigma_part_valuation"
        assert len(lines) == 3

    def test_csv_key_value(self):
        assert render_csv({"u": "6", "good": True, "primes": [2, 3]}) == "key,value\nu,6\ngood,true\nprimes,2 3\n"

    def test_no_floats_in_json(self):
        _, stdout, _ = invoke("invariants", "--map", "1,2,0;0,3,1")
        assert "." not in stdout
