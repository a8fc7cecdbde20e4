import io
import json
import os
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, settings

from urntubes import checks, cli
from urntubes.analysis import IdentityReport
from urntubes.dist import from_json
from urntubes.textspec import print_distribution

from conftest import distributions

GOLDEN = Path(__file__).parent / "golden"

EXAMPLES = {
    "first_full_multinomial.json": ["first-full", "--mode", "multinomial", "--urn", "1/3 R + 2/3 B",
                                    "--tubes", "2R+3B", "--format", "json"],
    "negative_committee.txt": ["negative", "--mode", "hypergeometric", "--urn", "5M+4F",
                               "--tubes", "2M+2F"],
    "check_vandermonde.txt": ["check", "--suite", "vandermonde", "--seed", "7", "--trials", "100"],
}


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(argv, stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture(autouse=True)
def plain_env(monkeypatch):
    monkeypatch.delenv(cli.ENV_FORMAT, raising=False)


@pytest.mark.parametrize("name", sorted(EXAMPLES))
def test_golden_outputs_in_a_subprocess(name):
    env = {k: v for k, v in os.environ.items() if k != cli.ENV_FORMAT}
    proc = subprocess.run([sys.executable, "-m", "urntubes", *EXAMPLES[name]],
                          capture_output=True, env=env, check=False)
    assert proc.returncode == 0
    assert proc.stdout == (GOLDEN / name).read_bytes()


def test_golden_first_full_content():
    doc = json.loads((GOLDEN / "first_full_multinomial.json").read_text())
    assert from_json(doc)("R") == Fraction(11, 27)


def test_output_is_deterministic():
    argv = ["draw", "--mode", "polya", "--urn", "4a+6b", "-k", "3", "--format", "csv"]
    assert run(argv) == run(argv)


EXIT_MATRIX = [
    (["draw", "--mode", "hg", "--urn", "4a+6b", "-k", "3"], 0),
    (["points", "--target", "4", "--wins-a", "1", "--wins-b", "2", "--prob", "6/10",
      "--stake", "64"], 0),
    (["points", "--target", "4", "--grid", "--prob", "6/10"], 0),
    (["negative", "--mode", "mn", "--urn", "1/2 a + 1/2 b", "--tubes", "1a+1b"], 0),
    (["negative", "--mode", "pl", "--urn", "2a+2b", "--tubes", "1a+1b", "--kmax", "6"], 0),
    (["--format", "csv", "check", "--suite", "conditioning", "--trials", "3"], 0),
    ([], 1),
    (["draw"], 1),
    (["frobnicate"], 1),
    (["draw", "--mode", "bernoulli", "--urn", "1a", "-k", "1"], 1),
    (["draw", "--mode", "mn", "--urn", "1a", "-k", "x"], 1),
    (["points", "--target", "4", "--prob", "1/2"], 1),
    (["negative", "--mode", "mn", "--urn", "1a", "--tubes", "1a", "--kmax", "3",
      "--tail-eps", "1/10"], 1),
    (["check", "--suite", "everything"], 1),
    (["draw", "--mode", "hg", "--urn", "4a+6b", "-k", "11"], 2),
    (["draw", "--mode", "mn", "--urn", "1/3 a + 1/3 b", "-k", "2"], 2),
    (["first-full", "--mode", "hg", "--urn", "1R+1B", "--tubes", "2R+1B"], 2),
    (["first-full", "--mode", "pl", "--urn", "2R +", "--tubes", "1R"], 2),
    (["negative", "--mode", "pl", "--urn", "1a+1b", "--tubes", "1c", "--kmax", "4"], 2),
    (["points", "--target", "2", "--wins-a", "2", "--wins-b", "0", "--prob", "1/2"], 2),
    (["negative", "--mode", "mn", "--urn", "1a+1b", "--tubes", "1a", "--tail-eps", "0"], 2),
]


@pytest.mark.parametrize("argv, code", EXIT_MATRIX)
def test_exit_code_matrix(argv, code):
    got, out, err = run(argv)
    assert got == code
    if code:
        assert out == "" and err.count("\n") == 1 and err.startswith("urntubes: ")


def test_failed_check_exits_3(monkeypatch):
    bad = IdentityReport("toy", {}, Fraction(1), Fraction(0), False)
    monkeypatch.setattr(checks, "run_suite", lambda *a: [bad])
    code, out, err = run(["check", "--suite", "vandermonde"])
    assert code == 3 and "FAILED toy" in out and "some checks failed" in err


def test_environment_sets_default_format(monkeypatch):
    argv = ["first-full", "--mode", "pl", "--urn", "1R+1B", "--tubes", "2R+3B"]
    monkeypatch.setenv(cli.ENV_FORMAT, "csv")
    assert run(argv)[1] == "outcome,num,den,approx\nB,2,5,0.400000\nR,3,5,0.600000\n"
    assert run(argv + ["--format", "json"])[1].startswith("{")
    monkeypatch.setenv(cli.ENV_FORMAT, "xml")
    assert run(argv)[0] == 1


def test_trace_goes_to_stderr():
    code, out, err = run(["negative", "--mode", "hg", "--urn", "2a+1b", "--tubes", "1a",
                          "--trace", "--format", "csv"])
    records = [json.loads(line) for line in err.splitlines()]
    assert code == 0 and out.startswith("k,num,den,approx\n")
    assert [r["step"] for r in records] == [1, 2]
    assert sum(Fraction(int(o["num"]), int(o["den"])) for r in records for o in r["outputs"]) == 1


def test_negative_default_tail_eps():
    code, out, _ = run(["negative", "--mode", "mn", "--urn", "1/2 a + 1/2 b", "--tubes", "1a+1b",
                        "--format", "json"])
    doc = json.loads(out)
    assert code == 0
    assert Fraction(int(doc["residual"]["num"]), int(doc["residual"]["den"])) <= Fraction(1, 1000)


@settings(max_examples=25)
@given(distributions())
def test_first_full_round_trip_through_cli(omega):
    tubes = " + ".join(f"2{x}" for x in omega.support())
    code, out, _ = run(["first-full", "--mode", "mn", "--urn", print_distribution(omega),
                        "--tubes", tubes, "--format", "json"])
    assert code == 0
    result = from_json(json.loads(out))
    assert set(result.support()) == set(omega.support())
