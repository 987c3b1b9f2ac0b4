"""Compare the three population seeding strategies on berlin52.

Run:  python demos/init_strategies.py

random        independent uniform permutations
mutate-first  one random tour plus reversal mutants of it
heuristic-nn  nearest-neighbor tour plus reversal mutants

The heuristic start starts far ahead; with enough generations the gap
narrows, which is typical of greedy seeding on small instances.
"""

from gatsp import GaParams, run_ga
from gatsp.data import berlin52

inst = berlin52()

print(f"{'strategy':<14}{'gen 0':>8}{'gen 200':>9}{'gen 1000':>10}")
for strategy in ("random", "mutate-first", "heuristic-nn"):
    rec = run_ga(inst, GaParams(init=strategy, iterations=1000, seed=11))
    print(f"{strategy:<14}{rec.trace[0]:>8.0f}{rec.trace[200]:>9.0f}"
          f"{rec.trace[1000]:>10.0f}")
