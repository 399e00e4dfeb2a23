"""Acceptance checklist: eleven criteria, one visible pass/fail line each.

Every criterion runs the corresponding verification block at full scale
with its shipped sample counts and tolerances.  The summary lines are
printed with capture disabled so the checklist always appears in the
run log; the assertions make each criterion a real test.
"""

import math
import shutil
import subprocess
import sys
import time
from fractions import Fraction

import pytest

from tropibary.core import rho, scalar
from tropibary.verify import SCALES, _final_bound, run_suite

SEED = 7
KNOBS = SCALES["default"]


@pytest.fixture
def announce(capsys):
    def _line(num, name, ok, detail=""):
        verdict = "PASS" if ok else "FAIL"
        tail = f"  ({detail})" if detail else ""
        with capsys.disabled():
            print(f"\nacceptance {num:>2}/11 {name}: {verdict}{tail}", end="")

    return _line


def _run(name):
    start = time.perf_counter()
    result = run_suite(name, seed=SEED, scale="default")
    return result, time.perf_counter() - start


def _assert_green(result):
    assert result.ok, [f"{r.case}: {r.detail}" for r in result.rows if not r.ok]


def test_01_measure_axioms(announce):
    assert KNOBS["axioms"] == 1000
    result, elapsed = _run("measures")
    ok = result.ok and elapsed < 5.0
    announce(1, "measure axioms on 1000 random measures", ok, f"{elapsed:.2f}s < 5s")
    _assert_green(result)
    assert elapsed < 5.0


def test_02_pushforward_naturality(announce):
    assert KNOBS["naturality"] == 500
    result, elapsed = _run("naturality")
    announce(2, "pushforward/combination naturality, 500 instances", result.ok, f"{elapsed:.2f}s")
    _assert_green(result)


def test_03_barycenter_affinity(announce):
    assert KNOBS["affinity"] == 500
    result, elapsed = _run("affinity")
    announce(3, "barycenter affinity, 500 + 500 instances", result.ok, f"{elapsed:.2f}s")
    _assert_green(result)
    assert {r.case for r in result.rows} == {
        "barycenter-of-combination",
        "barycenter-of-weighted-join",
    }


def test_04_combination_lift(announce):
    assert KNOBS["lift_instances"] == 200 and KNOBS["lift_depth"] == 20
    assert _final_bound(20) < 1e-6  # depth-20 targets land within a millionth
    result, elapsed = _run("combination-lift")
    ok = result.ok and elapsed < 60.0
    announce(4, "combination lift, 200 instances to depth 20", ok, f"{elapsed:.2f}s < 60s")
    _assert_green(result)
    assert elapsed < 60.0
    assert {r.case for r in result.rows} == {
        "identity-at-exact-target",
        "perturbed-targets-accepted",
        "witness-recombines-exactly",
        "final-witness-distance-vanishes",
        "oracle-confirms-witness-exists",
    }


def test_05_fiber_lift_exhaustive(announce):
    assert KNOBS["fiber_lo"] == Fraction(-1)  # grid step 1/8 over [-1, 0] + bottom
    result, elapsed = _run("fiber")
    ok = result.ok and elapsed < 120.0
    announce(5, "fiber lift on the exhaustive weight grid", ok, f"{elapsed:.2f}s < 120s")
    _assert_green(result)
    assert elapsed < 120.0


def test_06_interval_and_box_lifts(announce):
    assert KNOBS["interval"] == 500 and KNOBS["box"] == 200
    result, elapsed = _run("point-lifts")
    announce(6, "interval/box lifts keep parameters fixed", result.ok, f"{elapsed:.2f}s")
    _assert_green(result)
    kept = [r for r in result.rows if r.case.endswith("params-returned-unchanged")]
    assert len(kept) == 2 and all(r.ok for r in kept)


def test_07_barycenter_lift(announce):
    assert KNOBS["beta"] == 100
    assert math.expm1(1.0 / 128) <= 1e-2  # initial targets sit within rho 1e-2
    result, elapsed = _run("barycenter-lift")
    announce(7, "barycenter lift, 100 measures over the square", result.ok, f"{elapsed:.2f}s")
    _assert_green(result)


def test_08_cover_approximation(announce):
    assert KNOBS["cover"] == 200
    result, elapsed = _run("cover")
    announce(8, "cover approximation preserves barycenters", result.ok, f"{elapsed:.2f}s")
    _assert_green(result)


def test_09_two_point_counterexample(announce):
    assert KNOBS["ce_id_samples"] == 10000
    result, elapsed = _run("counterexample-id")
    announce(9, "pairwise-max obstruction, i in {1,2,4,8} x 10^4", result.ok, f"{elapsed:.2f}s")
    _assert_green(result)
    obstructed = [r for r in result.rows if r.case.startswith("splits-obstructed")]
    replays = [r for r in result.rows if r.case.startswith("certificate-replays")]
    assert len(obstructed) == len(replays) == 4
    assert all("10000 splits" in r.detail for r in obstructed)


def test_10_hook_counterexample(announce):
    assert KNOBS["ce_y_samples"] == 10000
    result, elapsed = _run("counterexample-bary")
    announce(10, "hook-hull obstruction with exact extremals", result.ok, f"{elapsed:.2f}s")
    _assert_green(result)
    ext_rows = [r for r in result.rows if r.case == "extremal-points-exact"]
    assert len(ext_rows) == 1 and ext_rows[0].ok
    for i in (2, 4, 8):
        gap = rho(scalar(Fraction(-(i - 1), i)), scalar(-2))
        assert gap > 0
        matching = [r for r in result.rows if r.case == f"evaluation-gap-i={i}"]
        assert len(matching) == 1
        assert f"gap >= {gap}" in matching[0].detail


def test_11_full_verify_under_five_minutes(announce):
    exe = shutil.which("tropibary")
    argv = [exe, "verify", "--suite", "all", "--seed", str(SEED)] if exe else [
        sys.executable, "-m", "tropibary.cli", "verify", "--suite", "all", "--seed", str(SEED)
    ]
    start = time.perf_counter()
    proc = subprocess.run(argv, capture_output=True, text=True, timeout=300)
    elapsed = time.perf_counter() - start
    ok = proc.returncode == 0 and elapsed < 300.0
    announce(11, "verify --suite all at the default seed", ok, f"{elapsed:.2f}s < 300s")
    assert proc.returncode == 0, proc.stdout[-2000:]
    assert elapsed < 300.0
    lines = proc.stdout.strip().splitlines()
    assert lines[-1].startswith("verify: PASS")
    assert all(line.startswith("PASS") for line in lines[:-1])
