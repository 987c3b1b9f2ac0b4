"""Operator comparison harness.

A plan fixes one instance, a list of crossover names, base parameters,
and a number of initial populations.  Population j's run seed is
derived as ``SeedSequence([master, j])`` from the master seed in the
base parameters, and the SAME seed is used for every operator, so all
operators start from byte-identical generation-0 populations and see
matched randomness; the only thing that varies between them is the
crossover itself.  Runs are independent, so a process pool of any size
produces the same report as a sequential pass.

Exports: a summary CSV (``operator,best,mean,std``), a long-format
trace CSV (``operator,population,generation,best_length``), and a JSON
mirror of the whole report.  Files are written atomically (temp file +
rename).
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
import tempfile
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from .engine import GaParams, RunRecord, run_ga
from .operators import CROSSOVER_NAMES
from .tsp import TspInstance, load_instance

# the usual comparison set; uxo is available by name but not part of it
COMPARISON_OPERATORS = ("ox", "nwox", "pmx", "upmx", "cx")


@dataclass
class Summary:
    """Aggregates over one operator's runs."""

    best: float
    mean: float
    std: float  # sample standard deviation (n-1), 0.0 for a single run
    mean_trace: list  # per-generation mean of the best-length traces


@dataclass
class ExperimentPlan:
    instance: object  # TspInstance, or a path to load lazily
    operators: tuple = COMPARISON_OPERATORS
    base: GaParams = field(default_factory=GaParams)
    populations: int = 50
    px_values: tuple | None = None  # optional sweep grids
    pm_values: tuple | None = None


@dataclass
class BenchReport:
    operators: list
    records: dict  # operator -> [RunRecord] ordered by population index
    summary: dict  # operator -> Summary


def derive_run_seed(master: int, population_index: int) -> int:
    """Seed for population j: pure function of (master, j), operator-free."""
    ss = np.random.SeedSequence([int(master), int(population_index)])
    return int(ss.generate_state(1, np.uint64)[0])


def _run_one(task):
    instance, params = task
    return run_ga(instance, params)


def run_comparison(plan: ExperimentPlan, workers: int = 1) -> BenchReport:
    """Run every operator over the plan's shared populations."""
    instance = plan.instance
    if not isinstance(instance, TspInstance):
        instance = load_instance(instance)
    if plan.populations < 1:
        raise ValueError("populations must be at least 1")
    if not plan.operators:
        raise ValueError("plan has no operators")
    for op in plan.operators:
        if op not in CROSSOVER_NAMES:
            raise ValueError(f"unknown crossover {op!r}, expected one of {CROSSOVER_NAMES}")

    seeds = [derive_run_seed(plan.base.seed, j) for j in range(plan.populations)]
    tasks = [
        (instance, replace(plan.base, crossover=op, seed=seeds[j]))
        for op in plan.operators
        for j in range(plan.populations)
    ]
    if workers <= 1:
        results = [_run_one(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_one, tasks, chunksize=1))

    records = {}
    for i, op in enumerate(plan.operators):
        records[op] = results[i * plan.populations : (i + 1) * plan.populations]
    return BenchReport(
        operators=list(plan.operators),
        records=records,
        summary={op: summarize(records[op]) for op in plan.operators},
    )


def run_probability_sweep(plan: ExperimentPlan, workers: int = 1):
    """Yield ((px, pm), report) over the plan's probability grids."""
    px_values = plan.px_values if plan.px_values else (plan.base.px,)
    pm_values = plan.pm_values if plan.pm_values else (plan.base.pm,)
    for px in px_values:
        for pm in pm_values:
            sub = replace(plan, base=replace(plan.base, px=px, pm=pm), px_values=None, pm_values=None)
            yield (px, pm), run_comparison(sub, workers=workers)


def summarize(records) -> Summary:
    """Min / mean / sample std of the final bests, plus the mean trace."""
    records = list(records)
    if not records:
        raise ValueError("no records to summarize")
    bests = [r.best_length for r in records]
    mean = sum(bests) / len(bests)
    if len(bests) > 1:
        std = math.sqrt(sum((b - mean) ** 2 for b in bests) / (len(bests) - 1))
    else:
        std = 0.0
    lengths = {len(r.trace) for r in records}
    if len(lengths) != 1:
        raise ValueError("records have traces of different lengths")
    mean_trace = [sum(col) / len(records) for col in zip(*(r.trace for r in records))]
    return Summary(min(bests), mean, std, mean_trace)


# ---------------------------------------------------------------------------
# serialization


def export_report(report: BenchReport, format: str = "csv") -> dict:
    """Render a report as {filename suffix: text}.

    csv yields the summary and trace tables; json yields one file
    mirroring the report (wall times excluded, they are not data).
    """
    if format == "csv":
        return {
            "summary.csv": _summary_csv(report),
            "trace.csv": _trace_csv(report),
        }
    if format == "json":
        return {"report.json": report_to_json(report)}
    raise ValueError(f"unknown format {format!r}, expected csv or json")


def _summary_csv(report) -> str:
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["operator", "best", "mean", "std"])
    for op in report.operators:
        s = report.summary[op]
        w.writerow([op, s.best, s.mean, s.std])
    return out.getvalue()


def _trace_csv(report) -> str:
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["operator", "population", "generation", "best_length"])
    for op in report.operators:
        for j, record in enumerate(report.records[op]):
            for g, best in enumerate(record.trace):
                w.writerow([op, j, g, best])
    return out.getvalue()


def report_to_json(report: BenchReport) -> str:
    payload = {
        "operators": report.operators,
        "records": {
            op: [
                {
                    "best_tour": r.best_tour,
                    "best_length": r.best_length,
                    "trace": r.trace,
                    "seed": r.seed,
                    "generations_run": r.generations_run,
                }
                for r in report.records[op]
            ]
            for op in report.operators
        },
        "summary": {
            op: {
                "best": s.best,
                "mean": s.mean,
                "std": s.std,
                "mean_trace": s.mean_trace,
            }
            for op, s in report.summary.items()
        },
    }
    return json.dumps(payload, indent=2)


def report_from_json(text: str) -> BenchReport:
    payload = json.loads(text)
    records = {
        op: [RunRecord(**entry) for entry in entries]
        for op, entries in payload["records"].items()
    }
    summary = {op: Summary(**s) for op, s in payload["summary"].items()}
    return BenchReport(payload["operators"], records, summary)


def parse_summary_csv(text: str) -> dict:
    rows = list(csv.reader(io.StringIO(text)))
    if rows[0] != ["operator", "best", "mean", "std"]:
        raise ValueError(f"unexpected summary header {rows[0]!r}")
    return {op: (float(b), float(m), float(s)) for op, b, m, s in rows[1:]}


def parse_trace_csv(text: str) -> dict:
    """Trace CSV -> {operator: [trace per population, in index order]}."""
    rows = list(csv.reader(io.StringIO(text)))
    if rows[0] != ["operator", "population", "generation", "best_length"]:
        raise ValueError(f"unexpected trace header {rows[0]!r}")
    traces: dict = {}
    for op, j, g, best in rows[1:]:
        per_op = traces.setdefault(op, {})
        per_op.setdefault(int(j), []).append(float(best))
    return {op: [per_op[j] for j in sorted(per_op)] for op, per_op in traces.items()}


def write_text_atomic(path, text: str):
    """Write via a sibling temp file and rename, so readers never see a torn file."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or Path("."), prefix=path.name + ".")
    try:
        with os.fdopen(fd, "w") as f:
            f.write(text)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def write_report(report: BenchReport, out, format: str = "csv"):
    """Write a report next to ``out`` (prefix for csv, file path for json)."""
    out = Path(out)
    written = []
    for suffix, text in export_report(report, format).items():
        if format == "json":
            path = out if out.suffix == ".json" else out.with_name(out.name + ".json")
        else:
            path = out.with_name(f"{out.name}_{suffix}")
        write_text_atomic(path, text)
        written.append(path)
    return written
