"""Permutation crossovers, reverse-segment mutation, and roulette selection.

Every operator is a pure function: randomness (cut points, masks,
per-position decisions, selection uniforms) always arrives as an
argument, never from hidden module state.  That keeps the operators
trivially testable and lets the engine own reproducibility.

Cut points are 0-based and inclusive on both ends, so ``cuts=(lo, hi)``
addresses the slice ``order[lo:hi+1]``; ``lo == hi`` is a legal
degenerate segment.

Crossovers return a pair of children and never alias their inputs.
Names used for dispatch throughout the package: ``uxo``, ``cx``,
``pmx``, ``upmx``, ``nwox``, ``ox`` (crossovers) and ``rsm`` (mutation).
"""

from __future__ import annotations

import numpy as np

CROSSOVER_NAMES = ("uxo", "cx", "pmx", "upmx", "nwox", "ox")
MUTATION_NAMES = ("rsm",)


def _as_perm(p) -> np.ndarray:
    return np.asarray(p, dtype=np.intp)


def _check_pair(p1, p2):
    p1, p2 = _as_perm(p1), _as_perm(p2)
    if p1.shape != p2.shape or p1.ndim != 1 or len(p1) < 1:
        raise ValueError(f"parents must be 1-D and the same length, got {p1.shape} and {p2.shape}")
    return p1, p2


def _check_cuts(cuts, n):
    lo, hi = int(cuts[0]), int(cuts[1])
    if not 0 <= lo <= hi < n:
        raise ValueError(f"cut points {cuts!r} invalid for length {n}")
    return lo, hi


# ---------------------------------------------------------------------------
# selection


def roulette_weights(fitnesses) -> np.ndarray:
    """Selection weights that favour SHORT tours.

    Member i gets (1 - f_i / sum(f)) / (N - 1); the weights always sum
    to 1 and are antitone in fitness, so the shortest tour is the most
    likely pick.  Needs N >= 2 and strictly positive fitnesses.
    """
    f = np.asarray(fitnesses, dtype=float)
    if f.ndim != 1 or len(f) < 2:
        raise ValueError("need at least two fitness values")
    if not np.all(f > 0):
        raise ValueError("fitness values must be strictly positive")
    s = f.sum()
    # single correctly-rounded division per weight, so hand-derived
    # fractions like (1,2,3) -> 5/12, 4/12, 3/12 match bit for bit
    return (s - f) / (s * (len(f) - 1))


def roulette_select(weights, u: float) -> int:
    """Index whose cumulative-weight interval [c_{k-1}, c_k) contains u."""
    w = np.asarray(weights, dtype=float)
    if not 0.0 <= u < 1.0:
        raise ValueError(f"u must lie in [0, 1), got {u}")
    if abs(w.sum() - 1.0) > 1e-9:
        raise ValueError("weights must sum to 1")
    k = int(np.searchsorted(np.cumsum(w), u, side="right"))
    return min(k, len(w) - 1)  # guard the u ~ 1.0 float edge


# ---------------------------------------------------------------------------
# crossovers


def cx_crossover(p1, p2):
    """Cycle crossover.

    Trace the gene cycle that starts at position 0 (hop to wherever
    p2's gene at the current position sits in p1 until it closes).
    Child 1 keeps p1's genes on the cycle and takes p2's elsewhere;
    child 2 is the mirror image.  No randomness is involved.
    """
    p1, p2 = _check_pair(p1, p2)
    n = len(p1)
    pos1 = np.empty(n, dtype=np.intp)
    pos1[p1] = np.arange(n)
    on_cycle = np.zeros(n, dtype=bool)
    i = 0
    while not on_cycle[i]:
        on_cycle[i] = True
        i = pos1[p2[i]]
    c1 = np.where(on_cycle, p1, p2)
    c2 = np.where(on_cycle, p2, p1)
    return c1, c2


def _place(child, pos, i, g):
    # put gene g at position i; the displaced gene moves to g's old slot
    j = pos[g]
    if j != i:
        child[j] = child[i]
        pos[child[i]] = j
        child[i] = g
        pos[g] = i


def _mapped_child(base, donor, positions):
    child = base.copy()
    pos = np.empty(len(base), dtype=np.intp)
    pos[child] = np.arange(len(base))
    for i in positions:
        _place(child, pos, i, donor[i])
    return child


def pmx_crossover(p1, p2, cuts):
    """Partially matched crossover.

    Child 1 receives p2's segment [lo, hi] at those positions; genes it
    displaces are moved into the slots freed by the incoming ones, so
    everything outside the segment keeps p1's gene unless the swap chain
    pushed it elsewhere.  Child 2 swaps the parent roles.
    """
    p1, p2 = _check_pair(p1, p2)
    lo, hi = _check_cuts(cuts, len(p1))
    span = range(lo, hi + 1)
    return _mapped_child(p1, p2, span), _mapped_child(p2, p1, span)


def upmx_crossover(p1, p2, swap_prob: float, decisions):
    """Uniform PMX: the PMX position exchange applied at scattered positions.

    Position i is exchanged when decisions[i] >= swap_prob, so a LARGER
    swap_prob means fewer exchanges.  ``decisions`` is one uniform draw
    per position.
    """
    p1, p2 = _check_pair(p1, p2)
    d = np.asarray(decisions, dtype=float)
    if d.shape != p1.shape:
        raise ValueError(f"need one decision per position, got shape {d.shape}")
    triggered = np.nonzero(d >= swap_prob)[0]
    return _mapped_child(p1, p2, triggered), _mapped_child(p2, p1, triggered)


def nwox_crossover(p1, p2, cuts):
    """Non-wrapping order crossover.

    Genes occurring in the other parent's segment are dropped from the
    base parent, the survivors are compacted without wrapping (first lo
    of them stay left of the window, the rest go right), and the other
    parent's segment is copied into the freed window.
    """
    p1, p2 = _check_pair(p1, p2)
    n = len(p1)
    lo, hi = _check_cuts(cuts, n)
    seg1, seg2 = p1[lo : hi + 1], p2[lo : hi + 1]
    in1 = np.zeros(n, dtype=bool)
    in1[seg1] = True
    in2 = np.zeros(n, dtype=bool)
    in2[seg2] = True
    surv1 = p1[~in2[p1]]
    surv2 = p2[~in1[p2]]
    c1 = np.concatenate([surv1[:lo], seg2, surv1[lo:]])
    c2 = np.concatenate([surv2[:lo], seg1, surv2[lo:]])
    return c1, c2


def ox_crossover(p1, p2, cuts):
    """Order crossover, section-preserving form.

    Child 1 keeps p1's genes outside [lo, hi] exactly where they are and
    fills the window with the remaining genes in the order p2 visits
    them.  (This is the variant that rewrites only the middle section,
    not the rotate-from-second-cut one.)
    """
    p1, p2 = _check_pair(p1, p2)
    n = len(p1)
    lo, hi = _check_cuts(cuts, n)
    in1 = np.zeros(n, dtype=bool)
    in1[p1[lo : hi + 1]] = True
    in2 = np.zeros(n, dtype=bool)
    in2[p2[lo : hi + 1]] = True
    c1 = p1.copy()
    c2 = p2.copy()
    c1[lo : hi + 1] = p2[in1[p2]]
    c2[lo : hi + 1] = p1[in2[p1]]
    return c1, c2


def uniform_crossover(p1, p2, mask):
    """Uniform crossover with order-based repair.

    Child 1 takes p1's gene wherever mask is True; the remaining
    positions are filled left to right with the genes child 1 is still
    missing, in the order they appear in p2.  Child 2 mirrors the roles.
    """
    p1, p2 = _check_pair(p1, p2)
    m = np.asarray(mask, dtype=bool)
    if m.shape != p1.shape:
        raise ValueError(f"mask shape {m.shape} does not match parents")
    n = len(p1)
    kept1 = np.zeros(n, dtype=bool)
    kept1[p1[m]] = True
    kept2 = np.zeros(n, dtype=bool)
    kept2[p2[m]] = True
    c1 = p1.copy()
    c2 = p2.copy()
    c1[~m] = p2[~kept1[p2]]
    c2[~m] = p1[~kept2[p1]]
    return c1, c2


# ---------------------------------------------------------------------------
# mutation


def rsm_mutation(order, cuts):
    """Reverse the segment [lo, hi] of the tour (a 2-opt style move)."""
    o = _as_perm(order)
    lo, hi = _check_cuts(cuts, len(o))
    child = o.copy()
    child[lo : hi + 1] = child[lo : hi + 1][::-1]
    return child
