"""Brute-force TSP optimum for small instances.

Search always fixes city 0 as the start, so (n-1)! orderings are
enumerated; with ``symmetry=True`` (the default) tours and their
reversals are collapsed by requiring the city after 0 to have a lower
index than the city before 0, which halves the work for n >= 3.  Ties
go to the first shortest tour in enumeration order, making results
deterministic in both modes.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

from .tsp import TspInstance

DEFAULT_MAX_N = 10


@dataclass
class ExactResult:
    optimal_tour: list
    optimal_length: float
    permutations_examined: int


def brute_force_optimum(instance: TspInstance, max_n: int = DEFAULT_MAX_N, symmetry: bool = True) -> ExactResult:
    """Exhaustively find a shortest tour; refuses instances above max_n cities."""
    n = instance.n
    if n > max_n:
        raise ValueError(f"instance has {n} cities, above the brute-force cap of {max_n}")
    if n == 1:
        return ExactResult([0], 0.0, 1)
    d = instance.dist.tolist()  # plain lists beat numpy for this inner loop
    best = float("inf")
    best_rest = None
    examined = 0
    prune = symmetry and n >= 3
    for rest in permutations(range(1, n)):
        if prune and rest[0] > rest[-1]:
            continue
        examined += 1
        length = d[0][rest[0]] + d[rest[-1]][0]
        prev = rest[0]
        for city in rest[1:]:
            length += d[prev][city]
            prev = city
        if length < best:
            best = length
            best_rest = rest
    return ExactResult([0, *best_rest], float(best), examined)
