"""Solve the bundled berlin52 instance and compare against the published optimum.

Run:  python demos/solve_berlin52.py

Uses a reduced budget (1000 generations) so the demo finishes in about a
second; the full defaults (5000 generations) typically land within 10%
of the optimal 7542.
"""

from gatsp import GaParams, run_ga
from gatsp.data import berlin52, berlin52_opt_tour
from gatsp.tsp import tour_length

inst = berlin52()
params = GaParams(iterations=1000, seed=2024)
record = run_ga(inst, params)

optimum = tour_length(berlin52_opt_tour(), inst)
gap = 100.0 * (record.best_length - optimum) / optimum

print(f"instance        {inst.name} ({inst.n} cities, {inst.metric} metric)")
print(f"operator        {params.crossover} + {params.mutation}, "
      f"Px={params.px}, Pm={params.pm}, population {params.population}")
print(f"generations     {record.generations_run}")
print(f"best length     {record.best_length:.0f}")
print(f"known optimum   {optimum:.0f}")
print(f"gap             {gap:.2f}%")
print(f"improvement     {record.trace[0]:.0f} -> {record.trace[-1]:.0f}")
