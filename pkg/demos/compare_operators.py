"""Race all five segment crossovers on berlin52 from shared starting populations.

Run:  python demos/compare_operators.py

Every operator sees byte-identical generation-0 populations (the run
seed depends only on the population index), so differences in the table
come from the operators alone. Scaled down to 8 populations x 800
generations; the full experiment uses 50 x 5000.
"""

from gatsp import ExperimentPlan, GaParams, run_comparison, write_report
from gatsp.data import berlin52

plan = ExperimentPlan(
    instance=berlin52(),
    base=GaParams(iterations=800, seed=7),
    populations=8,
)
report = run_comparison(plan)

print(f"{'operator':<10}{'best':>8}{'mean':>10}{'std':>8}")
for op in sorted(report.operators, key=lambda o: report.summary[o].mean):
    s = report.summary[op]
    print(f"{op:<10}{s.best:>8.0f}{s.mean:>10.1f}{s.std:>8.1f}")

paths = write_report(report, "operator_comparison", format="csv")
print("\nwrote", *[str(p) for p in paths])
