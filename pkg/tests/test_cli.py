import json
import os
import random
import subprocess
import sys

import pytest

from thompsonfrac import fixtures
from thompsonfrac.cli import main
from thompsonfrac.fraction import FractionElement, random_fraction
from thompsonfrac.thompson import VElement

from oracles import apply_table, random_bits

A_TEXT = "00->0 01->10 1->11"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_proc(*argv, env=None):
    full = dict(os.environ)
    full.update(env or {})
    return subprocess.run([sys.executable, "-m", "thompsonfrac", *argv], capture_output=True, text=True, env=full)


# v

def test_compose_example(capsys):
    code, out, _ = run(capsys, "v", "compose", A_TEXT, "0->1 1->0")
    assert code == 0
    got = VElement.parse(out.strip().replace("e->", "ε->"))
    rng = random.Random(1)
    for _ in range(50):
        s = random_bits(rng)
        want = apply_table(VElement.parse(A_TEXT).pairs, apply_table([("0", "1"), ("1", "0")], s))
        assert apply_table(got.pairs, s)[:30] == want[:30]


def test_compose_a_with_itself(capsys):
    code, out, _ = run(capsys, "v", "compose", A_TEXT, A_TEXT)
    assert code == 0
    got = VElement.parse(out.strip())
    rng = random.Random(2)
    pairs = VElement.parse(A_TEXT).pairs
    for _ in range(50):
        s = random_bits(rng)
        assert apply_table(got.pairs, s)[:30] == apply_table(pairs, apply_table(pairs, s))[:30]


def test_slope_example(capsys):
    assert run(capsys, "v", "slope", A_TEXT, "--at", "(0)")[1] == "+1\n"
    assert run(capsys, "v", "slope", A_TEXT, "--at", "1(0)")[1] == "-1\n"
    assert run(capsys, "v", "slope", A_TEXT, "--at", "01(1)")[1] == "0\n"


def test_reduce_to_identity(capsys):
    code, out, _ = run(capsys, "v", "reduce", "0->0 10->10 11->11")
    assert code == 0 and out == "e->e\n"


def test_invert_and_apply(capsys):
    code, out, _ = run(capsys, "v", "invert", A_TEXT)
    assert code == 0 and VElement.parse(out.strip()) == VElement.parse(A_TEXT).inverse()
    code, out, _ = run(capsys, "v", "apply", A_TEXT, "--at", "01(1)")
    assert code == 0 and out.strip() == "10.(1)"


def test_membership(capsys):
    assert run(capsys, "v", "member", A_TEXT, "--group", "F")[1] == "true\n"
    assert run(capsys, "v", "member", "0->1 1->0", "--group", "F")[1] == "false\n"
    assert run(capsys, "v", "member", "0->1 1->0", "--group", "T")[1] == "true\n"


def test_malformed_table_exits_2_with_diagnostics(capsys):
    code, out, err = run(capsys, "v", "reduce", "0->0 10->1")
    assert code == 2 and out == ""
    assert "uncovered" in err or "overlap" in err


def test_missing_point_is_a_usage_error(capsys):
    assert run(capsys, "v", "slope", A_TEXT)[0] == 2
    assert run(capsys, "v", "invert", A_TEXT, A_TEXT)[0] == 2


# check

def test_check_cocycle_passes(capsys):
    code, out, _ = run(capsys, "check", "--suite", "cocycle", "--seed", "7", "--iters", "200", "--triple", fixtures.fixture_path("z3inv"))
    assert code == 0 and "result: pass" in out


def test_check_center_reports_two(capsys):
    code, out, _ = run(capsys, "check", "--suite", "center", "--triple", fixtures.fixture_path("z4inv"))
    assert code == 0 and "|Z| = 2" in out


def test_check_theorem33_on_s3(capsys):
    code, out, _ = run(capsys, "check", "--suite", "theorem33", "--seed", "1", "--iters", "100", "--triple", "s3")
    assert code == 0 and "result: pass" in out


@pytest.mark.parametrize("suite", ["group-axioms", "action-laws", "centralizer", "gamma-phi", "spatial-support",
                                   "wreath-containment", "cocf", "zeta-example"])
def test_every_suite_passes(capsys, suite):
    code, out, _ = run(capsys, "check", "--suite", suite, "--seed", "3", "--iters", "20")
    assert code == 0, out


def test_unknown_suite_exits_2(capsys):
    code, _, err = run(capsys, "check", "--suite", "nope")
    assert code == 2 and "unknown suite" in err


def test_timing_goes_to_stderr(capsys):
    _, out, err = run(capsys, "check", "--suite", "cocf", "--iters", "5")
    assert "elapsed" in err and "elapsed" not in out


# classify

def test_classify_identical_prop24(capsys):
    p = fixtures.fixture_path("s3_inner")
    code, out, _ = run(capsys, "classify", "--left", p, "--right", p, "--mode", "prop24")
    data = json.loads(out)
    assert code == 0 and data["verdict"] == "WitnessFound"
    e = fixtures.get("s3_inner").group.name(0)
    assert data["witness"] == {"beta": list(range(6)), "sigma": "id", "h0": e, "h1": e}


def test_classify_cor28(capsys):
    code, out, _ = run(capsys, "classify", "--left", "z4", "--right", "z4inv", "--mode", "cor28")
    assert code == 0 and json.loads(out)["verdict"] == "NotIsomorphic"


def test_classify_cocf(capsys):
    code, out, _ = run(capsys, "classify", "--left", "z5_2", "--right", "z5_4", "--mode", "cocf")
    data = json.loads(out)
    assert code == 0 and data["verdict"] == "Fails" and "4 vs 2" in data["reason"]


def test_classify_bound(capsys, monkeypatch):
    monkeypatch.setenv("THOMPSON_MAX_GROUP", "4")
    code, _, err = run(capsys, "classify", "--left", "z5_2", "--right", "z5_3", "--mode", "cocf")
    assert code == 2 and "bound" in err


def test_classify_missing_file(capsys):
    assert run(capsys, "classify", "--left", "/no/such.json", "--right", "z2")[0] == 2


# g and fixtures

def test_g_mul_and_inverse_round_trip(capsys):
    t = fixtures.get("z3inv")
    rng = random.Random(3)
    for _ in range(20):
        x, y = random_fraction(rng, t), random_fraction(rng, t)
        code, out, _ = run(capsys, "g", "mul", str(x), str(y), "--triple", "z3inv")
        assert code == 0 and FractionElement.parse(t, out.strip()) == x * y
        code, out, _ = run(capsys, "g", "inv", str(x), "--triple", "z3inv")
        assert code == 0 and FractionElement.parse(t, out.strip()) == x.inverse()


def test_fixtures_listing(capsys):
    code, out, _ = run(capsys, "fixtures")
    lines = out.splitlines()
    assert code == 0 and len(lines) == len(fixtures.NAMES)
    assert "z4dbl\torder=4\tautomorphisms=no" in lines


# processes

def test_output_is_deterministic():
    argv = ("check", "--suite", "theorem33", "--seed", "5", "--iters", "20", "--triple", "z2")
    a, b = run_proc(*argv), run_proc(*argv)
    assert a.returncode == b.returncode == 0
    assert a.stdout == b.stdout and a.stdout


def test_pure_backend_gives_the_same_answers():
    env = {"THOMPSONFRAC_PURE": "1"}
    probe = subprocess.run([sys.executable, "-c", "from thompsonfrac.kernel import BACKEND; print(BACKEND)"],
                           capture_output=True, text=True, env={**os.environ, **env})
    assert probe.stdout.strip() == "python"
    for argv in (("v", "compose", A_TEXT, "0->1 1->0", A_TEXT), ("check", "--suite", "group-axioms", "--iters", "30")):
        assert run_proc(*argv, env=env).stdout == run_proc(*argv).stdout
