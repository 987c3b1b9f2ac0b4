"""Sweep crossover/mutation probabilities over a small grid.

Run:  python demos/probability_sweep.py

Each grid cell reruns the comparison with the same shared populations,
so cells are directly comparable. Kept tiny here (2x2 grid, one
operator, 4 populations, 400 generations).
"""

from gatsp import ExperimentPlan, GaParams, run_probability_sweep
from gatsp.data import berlin52

plan = ExperimentPlan(
    instance=berlin52(),
    operators=("ox",),
    base=GaParams(iterations=400, seed=3),
    populations=4,
    px_values=(0.9, 0.5),
    pm_values=(0.1, 0.3),
)

print(f"{'Px':>5}{'Pm':>6}{'best':>8}{'mean':>10}")
for (px, pm), report in run_probability_sweep(plan):
    s = report.summary["ox"]
    print(f"{px:>5.1f}{pm:>6.1f}{s.best:>8.0f}{s.mean:>10.1f}")
