"""GA loop: parameters, config files, init strategies, generations, runs."""

import numpy as np
import pytest

from gatsp.engine import (
    GaParams,
    Population,
    evolve_generation,
    init_population,
    nearest_neighbor_tour,
    parse_config,
    run_ga,
    sample_cuts,
    split_seed,
    unrank_segment,
)
from gatsp.exact import brute_force_optimum
from gatsp.tsp import TspInstance, random_instance, tour_lengths, validate_tour


def make_population(instance, size, seed=0):
    init_rng, _ = split_seed(seed)
    return init_population(instance, size, "random", init_rng)


# ---- params and config ----

def test_default_params():
    p = GaParams()
    assert (p.population, p.crossover, p.px, p.mutation, p.pm) == (100, "ox", 0.9, "rsm", 0.1)
    assert p.iterations == 5000
    assert p.init == "random"
    p.validate()


@pytest.mark.parametrize(
    "bad",
    [
        {"population": 1},
        {"crossover": "spx"},
        {"mutation": "swap"},
        {"px": 1.5},
        {"pm": -0.1},
        {"upmx_p": 2.0},
        {"iterations": -1},
        {"init": "clone"},
        {"seed": -3},
    ],
)
def test_params_validation_rejects(bad):
    with pytest.raises(ValueError):
        GaParams(**bad).validate()


def test_config_round_trip():
    p = GaParams(population=40, crossover="pmx", px=0.75, pm=0.2, iterations=123, seed=9)
    assert GaParams.from_config(p.to_config()) == p


def test_parse_config_comments_and_blanks():
    text = "# a comment\npopulation = 10\n\npx=0.5  # trailing\n"
    assert parse_config(text) == {"population": 10, "px": 0.5}


def test_parse_config_errors_carry_line_numbers():
    with pytest.raises(ValueError, match="line 2"):
        parse_config("population=10\nwhat is this\n")
    with pytest.raises(ValueError, match="unknown key"):
        parse_config("populaton=10\n")
    with pytest.raises(ValueError, match="bad value"):
        parse_config("population=ten\n")


# ---- cut sampling ----

def test_unrank_segment_is_a_bijection():
    for n in (1, 2, 3, 5, 8, 13):
        total = n * (n + 1) // 2
        seen = {unrank_segment(k, n) for k in range(total)}
        assert len(seen) == total
        assert all(0 <= lo <= hi < n for lo, hi in seen)


def test_sample_cuts_in_range():
    rng = np.random.default_rng(0)
    for _ in range(500):
        lo, hi = sample_cuts(rng, 7)
        assert 0 <= lo <= hi < 7


# ---- init strategies ----

def test_init_random_members_are_valid():
    inst = random_instance(52, seed=2)
    pop = make_population(inst, 50)
    assert pop.tours.shape == (50, 52)
    for row in pop.tours:
        assert validate_tour(row, 52).ok
    # lengths cache agrees with recomputation
    assert np.allclose(pop.lengths, tour_lengths(pop.tours, inst))


def test_init_single_city_instance():
    inst = TspInstance("one", [(0.0, 0.0)], "real")
    for strategy in ("random", "mutate-first", "heuristic-nn"):
        pop = init_population(inst, 2, strategy, np.random.default_rng(0))
        assert np.array_equal(pop.tours, [[0], [0]])


def test_init_rejects_tiny_population():
    inst = random_instance(5, seed=0)
    with pytest.raises(ValueError):
        init_population(inst, 1, "random", np.random.default_rng(0))


def test_init_mutate_first_members_are_single_reversals():
    inst = random_instance(10, seed=4)
    pop = init_population(inst, 20, "mutate-first", np.random.default_rng(5))
    base = pop.tours[0]
    for row in pop.tours[1:]:
        diff = np.nonzero(row != base)[0]
        if len(diff) == 0:
            continue  # degenerate single-position cut
        lo, hi = diff[0], diff[-1]
        assert np.array_equal(row[lo : hi + 1], base[lo : hi + 1][::-1])


def test_nearest_neighbor_collinear_cities():
    inst = TspInstance("col", [(0.0, 0.0), (1.0, 0.0), (5.0, 0.0)], "real")
    assert list(nearest_neighbor_tour(inst)) == [0, 1, 2]


def test_nearest_neighbor_tie_takes_lowest_index():
    inst = TspInstance("tie", [(0.0, 0.0), (1.0, 0.0), (-1.0, 0.0)], "real")
    assert list(nearest_neighbor_tour(inst)) == [0, 1, 2]


def test_init_heuristic_starts_from_greedy_tour():
    inst = TspInstance("col", [(0.0, 0.0), (1.0, 0.0), (5.0, 0.0)], "real")
    pop = init_population(inst, 6, "heuristic-nn", np.random.default_rng(3))
    assert list(pop.tours[0]) == [0, 1, 2]
    for row in pop.tours:
        assert validate_tour(row, 3).ok


# ---- one generation ----

def test_generation_without_variation_keeps_best():
    inst = random_instance(12, seed=6)
    pop = make_population(inst, 10, seed=3)
    params = GaParams(population=10, px=0.0, pm=0.0, seed=3)
    _, streams = split_seed(3)
    nxt = evolve_generation(pop, params, inst, streams)
    assert nxt.lengths.min() == pop.lengths.min()
    assert nxt.generation == pop.generation + 1
    # every member is a copy of some input member
    rows = {tuple(r) for r in pop.tours.tolist()}
    assert all(tuple(r) in rows for r in nxt.tours.tolist())


def test_generation_on_uniform_population_is_identity():
    inst = random_instance(8, seed=7)
    tour = np.random.default_rng(1).permutation(8)
    tours = np.tile(tour, (6, 1))
    pop = Population(tours, tour_lengths(tours, inst), 0)
    params = GaParams(population=6, px=0.9, pm=0.0, seed=5)
    _, streams = split_seed(5)
    nxt = evolve_generation(pop, params, inst, streams)
    assert np.array_equal(nxt.tours, pop.tours)


def test_generation_never_worsens_best():
    inst = random_instance(15, seed=8)
    params = GaParams(population=12, pm=0.3, seed=11)
    _, streams = split_seed(11)
    pop = make_population(inst, 12, seed=11)
    for _ in range(40):
        nxt = evolve_generation(pop, params, inst, streams)
        assert nxt.lengths.min() <= pop.lengths.min()
        assert nxt.tours.shape == pop.tours.shape
        pop = nxt
    for row in pop.tours:
        assert validate_tour(row, 15).ok


@pytest.mark.parametrize("kind", ["uxo", "cx", "pmx", "upmx", "nwox", "ox"])
def test_every_crossover_drives_a_run(kind):
    inst = random_instance(10, seed=9)
    rec = run_ga(inst, GaParams(population=8, crossover=kind, iterations=30, seed=2))
    assert validate_tour(rec.best_tour, 10).ok
    assert rec.best_length == min(rec.trace)


# ---- whole runs ----

def test_zero_iterations_returns_initial_best():
    inst = random_instance(9, seed=10)
    params = GaParams(population=7, iterations=0, seed=21)
    rec = run_ga(inst, params)
    pop = make_population(inst, 7, seed=21)
    assert rec.best_length == pop.lengths.min()
    assert rec.trace == [pop.lengths.min()]
    assert rec.generations_run == 0


def test_identical_seeds_reproduce_runs():
    inst = random_instance(14, seed=12)
    params = GaParams(population=10, iterations=60, seed=77)
    a = run_ga(inst, params)
    b = run_ga(inst, params)
    assert a.trace == b.trace
    assert a.best_tour == b.best_tour
    assert a.best_length == b.best_length


def test_different_seeds_usually_differ():
    inst = random_instance(14, seed=12)
    a = run_ga(inst, GaParams(population=10, iterations=60, seed=1))
    b = run_ga(inst, GaParams(population=10, iterations=60, seed=2))
    assert a.trace != b.trace


def test_trace_is_non_increasing():
    inst = random_instance(20, seed=13)
    rec = run_ga(inst, GaParams(population=16, iterations=120, seed=5))
    assert all(b <= a for a, b in zip(rec.trace, rec.trace[1:]))
    assert len(rec.trace) == 121
    assert rec.best_length == rec.trace[-1]


def test_small_instance_reaches_exact_optimum():
    # 30-member population, 200 generations; the contract asks for >= 95%
    # of seeds, checked here over 20 of them
    inst = random_instance(5, seed=77)
    opt = brute_force_optimum(inst).optimal_length
    hits = sum(
        run_ga(inst, GaParams(population=30, iterations=200, pm=0.2, seed=s)).best_length
        == pytest.approx(opt)
        for s in range(20)
    )
    assert hits >= 19


def test_split_seed_streams_are_distinct():
    init_rng, streams = split_seed(123)
    a = streams.selection.random(4)
    b = streams.cuts.random(4)
    c = streams.probs.random(4)
    d = init_rng.random(4)
    stacked = np.stack([a, b, c, d])
    assert len({tuple(r) for r in stacked.tolist()}) == 4
    # re-splitting the same seed replays the same streams
    init2, streams2 = split_seed(123)
    assert np.array_equal(init2.random(4), d)
    assert np.array_equal(streams2.selection.random(4), a)


def test_run_rejects_invalid_params():
    inst = random_instance(6, seed=1)
    with pytest.raises(ValueError):
        run_ga(inst, GaParams(population=0))
