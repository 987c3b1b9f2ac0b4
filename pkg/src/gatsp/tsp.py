"""TSP instances, tour arithmetic, and TSPLIB file handling.

Distances come in two flavours.  ``rounded`` follows the TSPLIB EUC_2D
convention (nearest-integer Euclidean length, computed as floor(d + 0.5),
under which berlin52's optimum is 7542); ``real`` keeps the exact float
value.  Instances precompute the full n x n distance matrix up front,
which is the right trade for the instance sizes this library targets.

Tours are permutations of ``0..n-1`` stored as plain integer arrays.
City indices are 0-based everywhere; TSPLIB's 1-based node ids are
shifted on parse.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

METRICS = ("rounded", "real")


def _pairwise(cities: np.ndarray, metric: str) -> np.ndarray:
    dx = cities[:, 0][:, None] - cities[:, 0][None, :]
    dy = cities[:, 1][:, None] - cities[:, 1][None, :]
    d = np.hypot(dx, dy)
    if metric == "rounded":
        d = np.floor(d + 0.5)  # TSPLIB nint()
    return d


@dataclass
class TspInstance:
    """A symmetric Euclidean TSP instance with a precomputed matrix."""

    name: str
    cities: np.ndarray  # shape (n, 2)
    metric: str = "rounded"
    dist: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        self.cities = np.asarray(self.cities, dtype=float).reshape(-1, 2)
        if len(self.cities) < 1:
            raise ValueError("instance needs at least one city")
        if self.metric not in METRICS:
            raise ValueError(f"unknown metric {self.metric!r}, expected one of {METRICS}")
        self.dist = _pairwise(self.cities, self.metric)

    @property
    def n(self) -> int:
        return len(self.cities)


@dataclass(eq=False)
class Tour:
    """A city ordering with an optional cached length."""

    order: np.ndarray
    length: float | None = None

    def copy(self) -> "Tour":
        return Tour(self.order.copy(), self.length)


def euclid_distance(a, b, metric: str = "real") -> float:
    """Distance between two (x, y) points under the given metric."""
    d = math.hypot(a[0] - b[0], a[1] - b[1])
    if metric == "rounded":
        return float(int(d + 0.5))  # TSPLIB nint()
    if metric != "real":
        raise ValueError(f"unknown metric {metric!r}, expected one of {METRICS}")
    return d


def tour_length(order, instance: TspInstance) -> float:
    """Cycle length of a tour, including the closing edge back to the start."""
    if isinstance(order, Tour):
        order = order.order
    o = np.asarray(order, dtype=np.intp)
    if o.shape != (instance.n,):
        raise ValueError(f"tour has {o.size} positions, instance has {instance.n} cities")
    d = instance.dist
    return float(d[o[:-1], o[1:]].sum() + d[o[-1], o[0]])


def tour_lengths(tours: np.ndarray, instance: TspInstance) -> np.ndarray:
    """Lengths of a whole (m, n) block of tours in one vectorized pass."""
    t = np.asarray(tours, dtype=np.intp)
    if t.ndim != 2 or t.shape[1] != instance.n:
        raise ValueError(f"expected shape (m, {instance.n}), got {t.shape}")
    d = instance.dist
    return d[t[:, :-1], t[:, 1:]].sum(axis=1) + d[t[:, -1], t[:, 0]]


@dataclass
class TourViolations:
    """Outcome of a tour check; empty lists everywhere means the tour is valid."""

    expected_length: int
    actual_length: int
    out_of_range: list
    duplicates: list
    missing: list

    @property
    def ok(self) -> bool:
        return (
            self.expected_length == self.actual_length
            and not self.out_of_range
            and not self.duplicates
            and not self.missing
        )

    def describe(self) -> str:
        if self.ok:
            return "ok"
        parts = []
        if self.expected_length != self.actual_length:
            parts.append(f"length {self.actual_length}, expected {self.expected_length}")
        if self.out_of_range:
            parts.append(f"out of range {self.out_of_range}")
        if self.duplicates:
            parts.append(f"duplicates {self.duplicates}")
        if self.missing:
            parts.append(f"missing {self.missing}")
        return "; ".join(parts)


def validate_tour(order, n: int) -> TourViolations:
    """Check that ``order`` is a permutation of 0..n-1, reporting what is wrong."""
    if isinstance(order, Tour):
        order = order.order
    values = [int(v) for v in order]
    in_range = [v for v in values if 0 <= v < n]
    out_of_range = sorted(set(values) - set(in_range))
    counts = np.bincount(in_range, minlength=n) if in_range else np.zeros(n, dtype=int)
    duplicates = [int(v) for v in np.nonzero(counts > 1)[0]]
    missing = [int(v) for v in np.nonzero(counts == 0)[0]] if len(values) else list(range(n))
    # a short tour is reported through both the length and the missing cities
    return TourViolations(n, len(values), out_of_range, duplicates, missing)


def parse_tsplib(text: str, metric: str = "rounded") -> TspInstance:
    """Parse the EUC_2D subset of TSPLIB (NAME/TYPE/DIMENSION/NODE_COORD_SECTION).

    Raises ValueError on a missing DIMENSION, a non-EUC_2D weight type,
    malformed coordinate lines, or duplicate node ids.
    """
    name = "unnamed"
    dimension = None
    weight_type = None
    lines = iter(text.splitlines())
    for raw in lines:
        line = raw.strip()
        if not line:
            continue
        if line == "EOF":
            break
        if line == "NODE_COORD_SECTION":
            if dimension is None:
                raise ValueError("DIMENSION not found before NODE_COORD_SECTION")
            if weight_type != "EUC_2D":
                raise ValueError(f"unsupported EDGE_WEIGHT_TYPE {weight_type!r}, only EUC_2D")
            return _read_coords(lines, name, dimension, metric)
        if ":" in line:
            key, _, value = line.partition(":")
            key = key.strip().upper()
            value = value.strip()
            if key == "NAME":
                name = value
            elif key == "TYPE":
                if value.split()[0] != "TSP":
                    raise ValueError(f"unsupported TYPE {value!r}, only TSP")
            elif key == "DIMENSION":
                try:
                    dimension = int(value)
                except ValueError:
                    raise ValueError(f"bad DIMENSION value {value!r}") from None
                if dimension < 1:
                    raise ValueError(f"bad DIMENSION value {value!r}")
            elif key == "EDGE_WEIGHT_TYPE":
                weight_type = value
            # COMMENT and anything else in the header is ignored
    raise ValueError("NODE_COORD_SECTION not found")


def _read_coords(lines, name, n, metric) -> TspInstance:
    cities = np.full((n, 2), np.nan)
    seen = np.zeros(n, dtype=bool)
    count = 0
    for raw in lines:
        line = raw.strip()
        if not line:
            continue
        if line == "EOF":
            break
        fields = line.split()
        if len(fields) != 3:
            raise ValueError(f"malformed coordinate line {line!r}")
        try:
            node = int(fields[0])
            x, y = float(fields[1]), float(fields[2])
        except ValueError:
            raise ValueError(f"malformed coordinate line {line!r}") from None
        if not 1 <= node <= n:
            raise ValueError(f"node id {node} outside 1..{n}")
        if seen[node - 1]:
            raise ValueError(f"duplicate node id {node}")
        seen[node - 1] = True
        cities[node - 1] = (x, y)
        count += 1
        if count == n:
            break
    if count != n:
        raise ValueError(f"expected {n} coordinate lines, found {count}")
    return TspInstance(name, cities, metric)


def load_instance(path, metric: str = "rounded") -> TspInstance:
    return parse_tsplib(Path(path).read_text(), metric=metric)


def read_tour_file(text: str) -> list:
    """Read a TSPLIB .tour file, returning 0-based city indices.

    The TOUR_SECTION may spread ids over any number of lines; -1 or EOF
    terminates it (tour files in the wild use both).
    """
    tour = []
    in_section = False
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line == "TOUR_SECTION":
            in_section = True
            continue
        if not in_section:
            continue
        done = False
        for tok in line.split():
            if tok == "-1" or tok == "EOF":
                done = True
                break
            try:
                tour.append(int(tok) - 1)
            except ValueError:
                raise ValueError(f"bad tour entry {tok!r}") from None
        if done:
            break
    if not tour:
        raise ValueError("TOUR_SECTION not found or empty")
    return tour


def random_instance(n: int, seed: int, metric: str = "real") -> TspInstance:
    """A random instance with coordinates uniform in the unit square."""
    if n < 1:
        raise ValueError("need at least one city")
    rng = np.random.default_rng(seed)
    return TspInstance(f"random{n}-{seed}", rng.random((n, 2)), metric)
