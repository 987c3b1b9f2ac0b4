"""Bundled TSPLIB fixtures."""

from pathlib import Path

from ..tsp import TspInstance, load_instance, read_tour_file

_HERE = Path(__file__).parent

BERLIN52 = _HERE / "berlin52.tsp"
BERLIN52_OPT = _HERE / "berlin52.opt.tour"


def berlin52(metric: str = "rounded") -> TspInstance:
    return load_instance(BERLIN52, metric=metric)


def berlin52_opt_tour() -> list:
    return read_tour_file(BERLIN52_OPT.read_text())
