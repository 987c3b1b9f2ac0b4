"""Release acceptance suite.

One test per numbered criterion, each printing a single PASS/FAIL line
with the measured values next to the bound it is held to (run pytest
with -s to see the lines as they happen). Criteria 1 and 2 share three
full operator comparisons (5 operators x 50 runs x 5000 generations
each) and together take about half an hour on one core; everything
else finishes in a few minutes.
"""

import math
import subprocess
import sys

import numpy as np
import pytest

from gatsp.bench import ExperimentPlan, run_comparison
from gatsp.data import berlin52, berlin52_opt_tour
from gatsp.engine import GaParams, run_ga
from gatsp.exact import brute_force_optimum
from gatsp.operators import (
    CROSSOVER_NAMES,
    roulette_select,
    roulette_weights,
)
from gatsp.tsp import random_instance, tour_length, validate_tour

from test_operators import crossover_children

MASTER_SEEDS = (1, 2, 3)
COMPARED = ("cx", "pmx", "upmx", "nwox")


def report(criterion, ok, detail):
    line = f"[criterion {criterion}] {'PASS' if ok else 'FAIL'}  {detail}"
    print(line)
    if not ok:
        pytest.fail(line)


@pytest.fixture(scope="module")
def comparisons():
    inst = berlin52()
    out = {}
    for master in MASTER_SEEDS:
        plan = ExperimentPlan(
            instance=inst, base=GaParams(seed=master), populations=50
        )
        out[master] = run_comparison(plan)
    return out


@pytest.mark.slow
def test_criterion_1_berlin52_quality(comparisons):
    finals = [r.best_length for r in comparisons[MASTER_SEEDS[0]].records["ox"]]
    best = min(finals)
    mean = sum(finals) / len(finals)
    ok = best <= 8296 and mean <= 9050
    report(1, ok, f"50 runs: best {best:.0f} <= 8296, mean {mean:.1f} <= 9050")


@pytest.mark.slow
def test_criterion_2_operator_ranking(comparisons):
    wins, notes = 0, []
    for master in MASTER_SEEDS:
        summary = comparisons[master].summary
        ox = summary["ox"].mean
        beaten_by = [op for op in COMPARED if summary[op].mean < ox]
        if beaten_by:
            notes.append(f"seed {master}: ox {ox:.1f} beaten by "
                         + ", ".join(f"{op} {summary[op].mean:.1f}" for op in beaten_by))
        else:
            wins += 1
            notes.append(f"seed {master}: ox {ox:.1f} ranks first")
    for note in notes:
        print(f"  {note}")
    if wins == len(MASTER_SEEDS) - 1:
        print("  warning: ranking violated on one master seed")
    report(2, wins >= 2, f"ox mean ranks first on {wins}/3 master seeds (need >= 2)")


def test_criterion_3_oracle_equivalence():
    hits = 0
    for k in range(20):
        inst = random_instance(8, seed=9000 + k)
        opt = brute_force_optimum(inst).optimal_length
        rec = run_ga(inst, GaParams(population=50, iterations=500, seed=k))
        hits += math.isclose(rec.best_length, opt, rel_tol=1e-12)
    agree = 0
    for k in range(50):
        inst = random_instance(4 + k % 6, seed=4000 + k)
        a = brute_force_optimum(inst, symmetry=True).optimal_length
        b = brute_force_optimum(inst, symmetry=False).optimal_length
        agree += math.isclose(a, b, rel_tol=1e-9)
    ok = hits >= 18 and agree == 50
    report(3, ok, f"GA matched the optimum on {hits}/20 (need >= 18); "
                  f"enumeration modes agree on {agree}/50 (need 50)")


def test_criterion_4_closure():
    rng = np.random.default_rng(12345)
    violations = 0
    for kind in CROSSOVER_NAMES:
        for n in (2, 3, 5, 8, 52):
            for _ in range(10_000):
                p1, p2 = rng.permutation(n), rng.permutation(n)
                c1, c2 = crossover_children(kind, p1, p2, rng)
                if not (validate_tour(c1, n).ok and validate_tour(c2, n).ok):
                    violations += 1
    report(4, violations == 0,
           f"{violations} violations over 10^4 pairs x 6 kinds x 5 sizes")


def test_criterion_5_identical_parent_fixpoint():
    rng = np.random.default_rng(54321)
    violations = 0
    for kind in CROSSOVER_NAMES:
        for i in range(1000):
            n = 52 if i % 10 == 0 else int(rng.integers(1, 13))
            p = rng.permutation(n)
            c1, c2 = crossover_children(kind, p, p.copy(), rng)
            if not (np.array_equal(c1, p) and np.array_equal(c2, p)):
                violations += 1
    report(5, violations == 0, f"{violations} violations over 10^3 tours x 6 kinds")


def test_criterion_6_selection_correctness():
    rng = np.random.default_rng(777)
    worst = 0.0
    for i in range(1000):
        n = 2 + i % 99
        w = roulette_weights(rng.uniform(0.5, 500.0, n))
        worst = max(worst, abs(w.sum() - 1.0))
    sums_ok = worst <= 1e-12

    w = roulette_weights([1.0, 2.0, 3.0])
    exact_ok = list(w) == [5 / 12, 4 / 12, 3 / 12]

    draws = 100_000
    counts = np.bincount(
        [roulette_select(w, u) for u in rng.random(draws)], minlength=3
    )
    sigmas = [
        abs(counts[i] - draws * w[i]) / math.sqrt(draws * w[i] * (1 - w[i]))
        for i in range(3)
    ]
    freq_ok = max(sigmas) <= 3.0
    report(6, sums_ok and exact_ok and freq_ok,
           f"max |sum-1| {worst:.2e} <= 1e-12; (1,2,3) weights exact: {exact_ok}; "
           f"max frequency deviation {max(sigmas):.2f} sigma <= 3")


def test_criterion_7_monotone_traces_and_determinism(tmp_path):
    inst = berlin52()
    monotone = True
    for kind in CROSSOVER_NAMES:
        for seed in (11, 12):
            rec = run_ga(inst, GaParams(crossover=kind, iterations=300, seed=seed))
            monotone &= all(b <= a for a, b in zip(rec.trace, rec.trace[1:]))

    from gatsp.data import BERLIN52

    args = [sys.executable, "-m", "gatsp", "solve", "--instance", str(BERLIN52),
            "--iterations", "150", "--seed", "4"]
    out1 = subprocess.run(args, capture_output=True, text=True)
    out2 = subprocess.run(args, capture_output=True, text=True)
    processes_ok = out1.returncode == 0 and out1.stdout == out2.stdout

    plan = ExperimentPlan(
        instance=inst, operators=("ox", "nwox"),
        base=GaParams(iterations=200, seed=6), populations=3,
    )
    serial = run_comparison(plan, workers=1)
    pooled = run_comparison(plan, workers=4)
    pools_ok = all(
        r1.trace == r2.trace and r1.best_tour == r2.best_tour
        for op in plan.operators
        for r1, r2 in zip(serial.records[op], pooled.records[op])
    )
    report(7, monotone and processes_ok and pools_ok,
           f"traces non-increasing: {monotone}; process repeat identical: "
           f"{processes_ok}; worker pools 1 vs 4 identical: {pools_ok}")


def test_criterion_8_fixtures():
    inst = berlin52()
    tour = berlin52_opt_tour()
    rounded = tour_length(tour, inst)
    real = tour_length(tour, berlin52(metric="real"))
    ok = (
        inst.n == 52
        and validate_tour(tour, 52).ok
        and rounded == 7542.0
        and real == 7544.365901904089
    )
    report(8, ok, f"52 cities; published tour rounded {rounded:.0f} == 7542, "
                  f"real {real!r} == 7544.365901904089")
