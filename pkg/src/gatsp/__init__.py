"""Permutation GA toolkit for the travelling salesman problem.

A small numpy library: TSPLIB instances, six permutation crossovers,
reverse-segment mutation, an elitist generational engine, a brute-force
oracle for small instances, and a benchmark harness that compares
operators across shared initial populations.
"""

from .bench import (
    BenchReport,
    ExperimentPlan,
    Summary,
    export_report,
    report_from_json,
    run_comparison,
    run_probability_sweep,
    summarize,
    write_report,
)
from .engine import (
    INIT_STRATEGIES,
    GaParams,
    Population,
    RngStreams,
    RunRecord,
    evolve_generation,
    init_population,
    nearest_neighbor_tour,
    parse_config,
    run_ga,
    sample_cuts,
    split_seed,
    unrank_segment,
)
from .exact import ExactResult, brute_force_optimum
from .operators import (
    CROSSOVER_NAMES,
    MUTATION_NAMES,
    cx_crossover,
    nwox_crossover,
    ox_crossover,
    pmx_crossover,
    roulette_select,
    roulette_weights,
    rsm_mutation,
    uniform_crossover,
    upmx_crossover,
)
from .tsp import (
    METRICS,
    Tour,
    TourViolations,
    TspInstance,
    euclid_distance,
    load_instance,
    parse_tsplib,
    random_instance,
    read_tour_file,
    tour_length,
    tour_lengths,
    validate_tour,
)

__version__ = "0.1.0"
