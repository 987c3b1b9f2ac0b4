"""Elitist GA over tour permutations.

Each generation breeds N-1 children from roulette-selected parent
pairs, then the next population is the N shortest tours among the old
members and the children together.  The best tour therefore always
survives unchanged, and old members live on exactly as long as no
child beats them.

Reproducibility contract
------------------------
A run is a pure function of (instance, params).  The master seed is
split via ``numpy.random.SeedSequence(seed).spawn(4)`` into four
independent streams: **init** (initial population), **selection**
(roulette uniforms), **cuts** (all operator randomness: cut points,
masks, per-position decisions), and **probs** (the Px and Pm gates).
Per generation the draw order is fixed: selection uniforms are drawn as
one batch of 2*ceil((N-1)/2) values, then the Px gates (one per pair),
then the Pm gates (one per offspring slot), and the cuts stream is
consumed pair by pair as gates fire.  Survivor ties are broken by
candidate order (current members first, then children in breeding
order).  Because nothing else touches the streams, identical seeds give
bit-identical traces no matter how many runs execute concurrently
elsewhere.

Cut points for crossovers and mutations are sampled uniformly over the
set {(lo, hi) : 0 <= lo <= hi < n} by unranking a single integer draw,
so degenerate one-position segments are legal but rarer than on larger
instances.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field, replace

import numpy as np

from .operators import (
    CROSSOVER_NAMES,
    MUTATION_NAMES,
    cx_crossover,
    nwox_crossover,
    ox_crossover,
    pmx_crossover,
    roulette_weights,
    rsm_mutation,
    uniform_crossover,
    upmx_crossover,
)
from .tsp import TspInstance, tour_lengths

INIT_STRATEGIES = ("random", "mutate-first", "heuristic-nn")

# keys accepted in key=value config files, with their coercions
_CONFIG_KEYS = {
    "population": int,
    "crossover": str,
    "px": float,
    "mutation": str,
    "pm": float,
    "iterations": int,
    "init": str,
    "seed": int,
    "upmx_p": float,
}


@dataclass
class GaParams:
    """Run parameters; field names double as the config-file keys."""

    population: int = 100
    crossover: str = "ox"
    px: float = 0.9
    mutation: str = "rsm"
    pm: float = 0.1
    iterations: int = 5000
    init: str = "random"
    seed: int = 0
    upmx_p: float = 0.5  # only consulted when crossover == "upmx"

    def validate(self):
        if self.population < 2:
            raise ValueError("population must be at least 2")
        if self.crossover not in CROSSOVER_NAMES:
            raise ValueError(f"unknown crossover {self.crossover!r}, expected one of {CROSSOVER_NAMES}")
        if self.mutation not in MUTATION_NAMES:
            raise ValueError(f"unknown mutation {self.mutation!r}, expected one of {MUTATION_NAMES}")
        if not 0.0 <= self.px <= 1.0:
            raise ValueError(f"px must lie in [0, 1], got {self.px}")
        if not 0.0 <= self.pm <= 1.0:
            raise ValueError(f"pm must lie in [0, 1], got {self.pm}")
        if not 0.0 <= self.upmx_p <= 1.0:
            raise ValueError(f"upmx_p must lie in [0, 1], got {self.upmx_p}")
        if self.iterations < 0:
            raise ValueError("iterations must be non-negative")
        if self.init not in INIT_STRATEGIES:
            raise ValueError(f"unknown init strategy {self.init!r}, expected one of {INIT_STRATEGIES}")
        if self.seed < 0:
            raise ValueError("seed must be a non-negative integer")

    def to_config(self) -> str:
        lines = [f"{key}={getattr(self, key)}" for key in _CONFIG_KEYS]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_config(cls, text: str) -> "GaParams":
        return cls(**parse_config(text))


def parse_config(text: str) -> dict:
    """Parse key=value lines ('#' comments allowed) into a params dict."""
    values = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or not key or not value:
            raise ValueError(f"config line {lineno}: expected key=value, got {raw.strip()!r}")
        if key not in _CONFIG_KEYS:
            raise ValueError(f"config line {lineno}: unknown key {key!r}")
        try:
            values[key] = _CONFIG_KEYS[key](value)
        except ValueError:
            raise ValueError(f"config line {lineno}: bad value {value!r} for {key!r}") from None
    return values


@dataclass
class Population:
    """A block of tours plus their cached lengths."""

    tours: np.ndarray  # (size, n) intp, one permutation per row
    lengths: np.ndarray  # (size,) float64
    generation: int = 0

    @property
    def size(self) -> int:
        return self.tours.shape[0]

    def best(self):
        k = int(np.argmin(self.lengths))
        return self.tours[k].copy(), float(self.lengths[k])


@dataclass
class RngStreams:
    selection: np.random.Generator
    cuts: np.random.Generator
    probs: np.random.Generator


def split_seed(seed: int):
    """Master seed -> (init rng, variation streams).  See module docstring."""
    init_ss, sel_ss, cuts_ss, prob_ss = np.random.SeedSequence(seed).spawn(4)
    return np.random.default_rng(init_ss), RngStreams(
        np.random.default_rng(sel_ss),
        np.random.default_rng(cuts_ss),
        np.random.default_rng(prob_ss),
    )


def _segment_offset(lo: int, n: int) -> int:
    # rank of (lo, lo) in the lexicographic listing of segments
    return lo * (2 * n - lo + 1) // 2


def unrank_segment(k: int, n: int):
    """k-th pair in the lexicographic list of {(lo, hi): 0 <= lo <= hi < n}."""
    if not 0 <= k < n * (n + 1) // 2:
        raise ValueError(f"rank {k} out of range for length {n}")
    s = math.isqrt((2 * n + 1) ** 2 - 8 * k)
    lo = ((2 * n + 1) - s) // 2
    while _segment_offset(lo + 1, n) <= k:
        lo += 1
    while _segment_offset(lo, n) > k:
        lo -= 1
    return lo, lo + (k - _segment_offset(lo, n))


def sample_cuts(rng: np.random.Generator, n: int):
    """Uniform segment (lo, hi), 0 <= lo <= hi < n, from one integer draw."""
    return unrank_segment(int(rng.integers(n * (n + 1) // 2)), n)


def nearest_neighbor_tour(instance: TspInstance) -> np.ndarray:
    """Greedy tour from city 0, ties broken toward the lowest index."""
    n = instance.n
    d = instance.dist
    order = np.empty(n, dtype=np.intp)
    visited = np.zeros(n, dtype=bool)
    order[0] = 0
    visited[0] = True
    for i in range(1, n):
        row = np.where(visited, np.inf, d[order[i - 1]])
        nxt = int(np.argmin(row))
        order[i] = nxt
        visited[nxt] = True
    return order


def init_population(instance: TspInstance, size: int, strategy: str, rng: np.random.Generator) -> Population:
    """Build generation 0 by one of three strategies.

    ``random`` draws every member independently; ``mutate-first`` and
    ``heuristic-nn`` grow the whole population from one progenitor (a
    random tour or the greedy nearest-neighbor tour) by filling the
    remaining size-1 slots with independent reverse-segment mutants of it.
    """
    if size < 2:
        raise ValueError("population size must be at least 2")
    n = instance.n
    if strategy == "random":
        tours = np.stack([rng.permutation(n) for _ in range(size)])
    elif strategy == "mutate-first":
        tours = _grow_from(rng.permutation(n).astype(np.intp), size, rng)
    elif strategy == "heuristic-nn":
        tours = _grow_from(nearest_neighbor_tour(instance), size, rng)
    else:
        raise ValueError(f"unknown init strategy {strategy!r}, expected one of {INIT_STRATEGIES}")
    tours = tours.astype(np.intp, copy=False)
    return Population(tours, tour_lengths(tours, instance), generation=0)


def _grow_from(base: np.ndarray, size: int, rng) -> np.ndarray:
    n = len(base)
    rows = [base]
    for _ in range(size - 1):
        rows.append(rsm_mutation(base, sample_cuts(rng, n)))
    return np.stack(rows)


def _recombine(a, b, params: GaParams, n: int, cuts_rng):
    kind = params.crossover
    if kind == "cx":
        return cx_crossover(a, b)
    if kind == "uxo":
        return uniform_crossover(a, b, cuts_rng.random(n) < 0.5)
    if kind == "upmx":
        return upmx_crossover(a, b, params.upmx_p, cuts_rng.random(n))
    cuts = sample_cuts(cuts_rng, n)
    if kind == "pmx":
        return pmx_crossover(a, b, cuts)
    if kind == "nwox":
        return nwox_crossover(a, b, cuts)
    if kind == "ox":
        return ox_crossover(a, b, cuts)
    raise ValueError(f"unknown crossover {kind!r}")


def evolve_generation(pop: Population, params: GaParams, instance: TspInstance, streams: RngStreams) -> Population:
    """One generation: breed size-1 children, keep the size best overall.

    Parent pairs are roulette-selected (with replacement) and cross over
    with probability px (copied otherwise); each resulting child mutates
    with probability pm, and the second child of the final pair is
    dropped when the population size is even.  The children then compete
    with the entire current population for the next generation's slots,
    so the best tour is always carried over unchanged and the best
    length can never regress.
    """
    size, n = pop.tours.shape
    weights = roulette_weights(pop.lengths)
    cumw = np.cumsum(weights)

    pairs = size // 2  # ceil((size - 1) / 2)
    sel_u = streams.selection.random(2 * pairs)
    parent_idx = np.minimum(np.searchsorted(cumw, sel_u, side="right"), size - 1)
    x_gate = streams.probs.random(pairs)
    m_gate = streams.probs.random(size - 1)

    children = np.empty((size - 1, n), dtype=pop.tours.dtype)
    slot = 0
    for p in range(pairs):
        a = pop.tours[parent_idx[2 * p]]
        b = pop.tours[parent_idx[2 * p + 1]]
        if x_gate[p] < params.px:
            c1, c2 = _recombine(a, b, params, n, streams.cuts)
        else:
            c1, c2 = a, b  # copied into `children` below, never aliased
        for c in (c1, c2):
            if slot == size - 1:
                break
            if m_gate[slot] < params.pm:
                c = rsm_mutation(c, sample_cuts(streams.cuts, n))
            children[slot] = c
            slot += 1
    candidates = np.vstack([pop.tours, children])
    cand_lengths = np.concatenate([pop.lengths, tour_lengths(children, instance)])
    keep = np.argsort(cand_lengths, kind="stable")[:size]  # ties: earlier candidate wins
    return Population(candidates[keep], cand_lengths[keep], pop.generation + 1)


@dataclass
class RunRecord:
    """Outcome of one GA run.  wall_time is informational and never compared."""

    best_tour: list
    best_length: float
    trace: list  # best length per generation, entry 0 is the initial population
    seed: int
    generations_run: int
    wall_time: float = field(default=0.0, compare=False)


def run_ga(instance: TspInstance, params: GaParams) -> RunRecord:
    """Run the GA for exactly params.iterations generations."""
    params.validate()
    t0 = time.perf_counter()
    init_rng, streams = split_seed(params.seed)
    pop = init_population(instance, params.population, params.init, init_rng)
    trace = [float(pop.lengths.min())]
    for _ in range(params.iterations):
        pop = evolve_generation(pop, params, instance, streams)
        trace.append(float(pop.lengths.min()))
    best_order, best_length = pop.best()
    return RunRecord(
        best_tour=[int(c) for c in best_order],
        best_length=best_length,
        trace=trace,
        seed=params.seed,
        generations_run=params.iterations,
        wall_time=time.perf_counter() - t0,
    )


def params_for(seed: int, **overrides) -> GaParams:
    """Convenience: defaults with a seed plus keyword overrides."""
    return replace(GaParams(seed=seed), **overrides)
