"""
Tests for the krullab command line, run through click's CliRunner.

Covers:
- Exit codes 0 (holds), 1 (counterexample or nothing found) and 2 (errors)
- Text, JSON and CSV output
- Option validation against the configuration
"""

import json

import pandas as pd
import pytest

from krullab.cli import cli


def _json(result):
    return json.loads(result.stdout)


# -------------------- MONOID COMMANDS --------------------

def test_classgroup(invoke):
    """
    GIVEN the four-slot fixture
    WHEN classgroup is run
    THEN the group Z and the slot classes are printed
    """
    result = invoke("classgroup", "-i", "inst_xy")
    assert result.exit_code == 0
    assert "classgroup: Z" in result.output
    assert "q3" in result.output


def test_classgroup_of_semigroup_json(invoke):
    """
    GIVEN the semigroup fixture
    WHEN classgroup is run with --json
    THEN the compiled classes are +1, +1, -1, -1
    """
    data = _json(invoke("classgroup", "-i", "semigroup_xyz", "--json"))
    assert data["witnesses"]["free_rank"] == 1
    assert [data["witnesses"]["classes"][q]["free"] for q in ("q1", "q2", "q3", "q4")] == [
        [1], [1], [-1], [-1]
    ]


def test_atoms_json(invoke):
    """
    GIVEN the four-slot fixture
    WHEN atoms is run with --json
    THEN the atoms are listed in canonical order with their names
    """
    result = invoke("atoms", "-i", "inst_xy", "--json")
    assert result.exit_code == 0
    data = _json(result)
    assert data["witnesses"]["atoms"] == [[0, 1, 0, 1], [0, 1, 1, 0], [1, 0, 0, 1], [1, 0, 1, 0]]
    assert [row["name"] for row in data["table"]] == ["y", "zy", "x", "zx"]
    assert "elapsed" not in data


def test_json_is_deterministic(invoke):
    """
    GIVEN the same command run twice
    WHEN --json is used
    THEN the outputs are identical
    """
    first = invoke("factor", "-i", "inst_xy", "2,2,2,2", "--json").stdout
    second = invoke("factor", "-i", "inst_xy", "2,2,2,2", "--json").stdout
    assert first == second


def test_factor(invoke):
    """
    GIVEN the element (2,2,2,2) written as a vector
    WHEN factor is run
    THEN three factorizations are reported
    """
    result = invoke("factor", "-i", "inst_xy", "2,2,2,2")
    assert result.exit_code == 0
    assert "3 factorizations" in result.output


def test_factor_csv(invoke, tmp_path):
    """
    GIVEN a CSV path
    WHEN factor is run with --csv
    THEN the factorization table is written
    """
    path = tmp_path / "factor.csv"
    result = invoke("factor", "-i", "inst_xy", "x^2*zy^2", "--csv", path)
    assert result.exit_code == 0
    table = pd.read_csv(path)
    assert list(table.columns) == ["length", "atoms", "indices"]
    assert set(table["length"]) == {4}


def test_lengths(invoke):
    """
    GIVEN the all-ones element u*v of the mixed Z/3 fixture
    WHEN lengths is run
    THEN the length set {2, 3} and elasticity 3/2 are printed
    """
    result = invoke("lengths", "-i", "inst_z3f", "u*v")
    assert result.exit_code == 0
    assert "lengths {2, 3}, elasticity 3/2" in result.output


def test_check_hfd_holds(invoke):
    """
    GIVEN the Z/3 fixture
    WHEN check-hfd is run up to degree 9
    THEN it holds with exit code 0
    """
    result = invoke("check-hfd", "-i", "inst_z3", "--bound", 9)
    assert result.exit_code == 0
    assert "check-hfd: holds" in result.output


def test_check_hfd_counterexample(invoke):
    """
    GIVEN the mixed Z/3 fixture
    WHEN check-hfd is run up to degree 6
    THEN the counterexample p3^3 p6^3 is reported with exit code 1
    """
    result = invoke("check-hfd", "-i", "inst_z3f", "--bound", 6, "--json")
    assert result.exit_code == 1
    data = _json(result)
    assert data["witnesses"] == {"element": [0, 0, 3, 0, 0, 3], "lengths": [2, 3]}


def test_check_z_counterexample(invoke):
    """
    GIVEN the four-slot fixture
    WHEN check-z is run with the default bound
    THEN the quintuple y, y, zx^2, zy^2, x^2 is reported
    """
    result = invoke("check-z", "-i", "inst_xy", "--json")
    assert result.exit_code == 1
    witnesses = _json(result)["witnesses"]
    assert witnesses == {
        "a": [0, 1, 0, 1], "b": [0, 1, 0, 1], "c": [2, 0, 2, 0], "d": [0, 2, 2, 0], "e": [2, 0, 0, 2]
    }


def test_check_c(invoke):
    """
    GIVEN the ideals (x, zx) and (x^2, zx^2)
    WHEN check-c is run
    THEN the first holds with alpha = x and the second fails
    """
    result = invoke("check-c", "-i", "inst_xy", "-g", "x", "-g", "zx", "--json")
    assert result.exit_code == 0
    assert _json(result)["witnesses"] == {"gcd": [1, 0, 0, 0], "alpha": [1, 0, 0, 1]}
    result = invoke("check-c", "-i", "inst_xy", "-g", "x^2", "-g", "zx^2")
    assert result.exit_code == 1


def test_check_c_not_primitive(invoke):
    """
    GIVEN the ideal (x^2, x*zx)
    WHEN check-c is run
    THEN NotPrimitive maps to exit code 2
    """
    result = invoke("check-c", "-i", "inst_xy", "-g", "x^2", "-g", "x*zx")
    assert result.exit_code == 2
    assert "Error:" in result.output


def test_check_cond3(invoke):
    """
    GIVEN A = B = (x, zx), then A = (x, zx) and B = (zx, zy)
    WHEN check-cond3 is run
    THEN the first holds and the second reports w = (-1,0,-1,0)
    """
    result = invoke("check-cond3", "-i", "inst_xy", "-a", "x", "-a", "zx", "-b", "x", "-b", "zx")
    assert result.exit_code == 0
    result = invoke("check-cond3", "-i", "inst_xy", "-a", "x", "-a", "zx", "-b", "zx", "-b", "zy",
                    "--json")
    assert result.exit_code == 1
    witnesses = _json(result)["witnesses"]
    assert witnesses["unsplittable"] == [-1, 0, -1, 0]
    assert witnesses["product_primitive"] is False


def test_unique_square(invoke):
    """
    GIVEN the four-slot fixture
    WHEN unique-square is run
    THEN x in q1 is reported
    """
    result = invoke("unique-square", "-i", "inst_xy", "--json")
    assert result.exit_code == 0
    assert _json(result)["witnesses"] == {"prime": "q1", "primes": ["q1", "q4"], "x": [1, 0, 0, 1], "eta": 2}


def test_unique_square_torsion(invoke):
    """
    GIVEN a torsion class group
    WHEN unique-square is run
    THEN exit code 1 reports the torsion class group
    """
    result = invoke("unique-square", "-i", "inst_z3")
    assert result.exit_code == 1
    assert "torsion class group" in result.output


def test_z_witness(invoke):
    """
    GIVEN the atom x
    WHEN z-witness is run
    THEN n = 1 and the quintuple x, x, zy^2, zx^2, y^2 is reported
    """
    result = invoke("z-witness", "-i", "inst_xy", "x", "--json")
    assert result.exit_code == 0
    witnesses = _json(result)["witnesses"]
    assert witnesses["n"] == 1
    assert witnesses["z"] == [-1, 1, 0, 0]
    assert [witnesses[k] for k in "cde"] == [[0, 2, 2, 0], [2, 0, 2, 0], [0, 2, 0, 2]]


def test_z_witness_not_an_atom(invoke):
    """
    GIVEN x^2, which is not an atom
    WHEN z-witness is run
    THEN NotAtom maps to exit code 2
    """
    result = invoke("z-witness", "-i", "inst_xy", "x^2")
    assert result.exit_code == 2


# -------------------- POLYNOMIAL COMMANDS --------------------

def test_verify_identity(invoke):
    """
    GIVEN the quintuple x, x, z^2*y^2, y^2, z^2*x^2 in the semigroup
    WHEN verify-identity is run
    THEN h keeps its t^2 term
    """
    result = invoke("verify-identity", "-i", "semigroup_xyz", "x", "x", "zy^2", "y^2", "zx^2", "--json")
    assert result.exit_code == 0
    witnesses = _json(result)["witnesses"]
    assert witnesses["h"] == "x^2*t^2 + x^2*z^2*t + y^2*t + y^2*z^2"
    assert witnesses["f"] == "x^2*t + y^2"


def test_verify_identity_mismatch(invoke):
    """
    GIVEN a quintuple with abc != de
    WHEN verify-identity is run
    THEN exit code 2 is returned
    """
    result = invoke("verify-identity", "-i", "semigroup_xyz", "x", "x", "x", "x", "zx")
    assert result.exit_code == 2


def test_section4_over_q(invoke):
    """
    GIVEN Q
    WHEN section4 is run
    THEN the length sets {2} and {3} show the ring is not half-factorial
    """
    result = invoke("section4", "--field", "q")
    assert result.exit_code == 0
    assert "length sets {2} and {3}: not HFD" in result.output
    assert "fails with c = x^2" in result.output


def test_sum_of_squares_over_f2(invoke):
    """
    GIVEN GF(2)
    WHEN sum-of-squares is run
    THEN x^2 + y^2 collapses to (x + y)^2 and no discrepancy is left
    """
    result = invoke("sum-of-squares", "--field", "f2", "--json")
    assert result.exit_code == 0
    data = _json(result)
    assert data["verdict"] == "length set {4}: no length discrepancy"
    assert data["witnesses"]["lengths"] == [4]


def test_sum_of_squares_alias(invoke):
    """
    GIVEN the sum-of-squares name
    WHEN it is run with --json
    THEN it runs the section4 command and reports under that name
    """
    result = invoke("sum-of-squares", "--field", "q", "--json")
    assert result.exit_code == 0
    data = _json(result)
    assert data["command"] == "section4"
    assert data["witnesses"]["lengths"] == [2, 3]


# -------------------- ERRORS AND OPTIONS --------------------

@pytest.mark.parametrize(
    "args",
    [
        ("atoms",),
        ("atoms", "-i", "no_such_instance"),
        ("atoms", "-i", "inst_xy", "--budget", 0),
        ("atoms", "-i", "inst_z3", "--budget", 10),
        ("check-z", "-i", "inst_xy", "--bound", 2),
        ("factor", "-i", "inst_xy", "1,0,0,0"),
        ("factor", "-i", "inst_xy", "w"),
        ("section4", "--field", "reals"),
    ],
)
def test_errors_exit_with_two(invoke, args):
    """
    GIVEN a missing option, an unknown instance, a bad bound, budget, element or field
    WHEN the command is run
    THEN it exits with code 2
    """
    result = invoke(*args)
    assert result.exit_code == 2


def test_error_message_on_stderr(invoke):
    """
    GIVEN a non-element
    WHEN factor is run
    THEN the error is printed with an Error: prefix
    """
    result = invoke("factor", "-i", "inst_xy", "1,0,0,0")
    assert "Error:" in result.output
    assert "not an element" in result.output


def test_verbose_logs_to_stderr(invoke):
    """
    GIVEN -v before the command
    WHEN atoms is run
    THEN INFO records appear with the [LEVEL] prefix
    """
    result = invoke("-v", "atoms", "-i", "inst_xy")
    assert result.exit_code == 0
    assert "[INFO] loaded inst_xy" in result.output


def test_bound_from_configuration(runner, config):
    """
    GIVEN a configuration with BOUND = 7
    WHEN check-z is run without --bound
    THEN the configured bound is used and no counterexample is found
    """
    config["BOUND"] = 7
    result = runner.invoke(cli, ["check-z", "-i", "inst_xy", "--json"], obj={"config": config})
    assert result.exit_code == 0
    assert json.loads(result.stdout)["bound"] == 7
