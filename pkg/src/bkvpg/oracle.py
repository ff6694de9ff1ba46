"""Exact maximum-weight independent set for small graphs.

Used as ground truth in tests and by the ``exact`` CLI command. Weights are
handled as Fractions throughout. Among optimal sets the lexicographically
smallest sorted id tuple wins, so results are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .graph import IntersectionGraph

DEFAULT_CAP = 30
BITMASK_CAP = 20


class TooLarge(ValueError):
    def __init__(self, n, cap):
        super().__init__(f"graph has {n} vertices, exact solver cap is {cap}")
        self.n = n
        self.cap = cap


@dataclass(frozen=True)
class ExactResult:
    best_set: tuple[int, ...]
    best_weight: Fraction


def _better(w, s, best_w, best_s) -> bool:
    return best_s is None or w > best_w or (w == best_w and s < best_s)


def exact_mwis(graph: IntersectionGraph, weights: Mapping, cap: int = DEFAULT_CAP) -> ExactResult:
    """Branch and bound on the highest-degree remaining vertex.

    Only positive-weight vertices are considered. A vertex with no remaining
    neighbours is always taken, since every optimum contains it. The bound
    is the current weight plus the sum of all remaining weights; branches
    are cut only when that is strictly below the incumbent so that ties
    still reach the lexicographic comparison.
    """
    if graph.n > cap:
        raise TooLarge(graph.n, cap)
    w = {u: Fraction(weights[u]) for u in graph.nodes if Fraction(weights[u]) > 0}
    adj = {u: frozenset(v for v in graph.neighbors(u) if v in w) for u in w}

    best_w, best_s = Fraction(0), None

    def rec(cand: frozenset, taken: tuple, tw: Fraction):
        nonlocal best_w, best_s
        # free vertices (no neighbour left among candidates) are always taken
        free = [u for u in cand if not (adj[u] & cand)]
        if free:
            cand = cand.difference(free)
            taken = taken + tuple(free)
            tw = tw + sum((w[u] for u in free), Fraction(0))
        if not cand:
            s = tuple(sorted(taken))
            if _better(tw, s, best_w, best_s):
                best_w, best_s = tw, s
            return
        if tw + sum((w[u] for u in cand), Fraction(0)) < best_w:
            return
        v = max(cand, key=lambda u: (len(adj[u] & cand), -u))
        rec(cand - adj[v] - {v}, taken + (v,), tw + w[v])
        rec(cand - {v}, taken, tw)

    rec(frozenset(w), (), Fraction(0))
    return ExactResult(best_s or (), best_w)


def exhaustive_mwis(graph: IntersectionGraph, weights: Mapping,
                    cap: int = BITMASK_CAP) -> ExactResult:
    """Sweep every vertex subset as a bitmask; the oracle for :func:`exact_mwis`."""
    if graph.n > cap:
        raise TooLarge(graph.n, cap)
    nodes = [u for u in graph.nodes if Fraction(weights[u]) > 0]
    n = len(nodes)
    pos = {u: i for i, u in enumerate(nodes)}
    nbr = [sum(1 << pos[v] for v in graph.neighbors(u) if v in pos) for u in nodes]
    wt = [Fraction(weights[u]) for u in nodes]

    size = 1 << n
    total = [Fraction(0)] * size
    indep = [True] * size
    best_w, best_s = Fraction(0), ()
    for mask in range(1, size):
        low = (mask & -mask).bit_length() - 1
        rest = mask & (mask - 1)
        indep[mask] = indep[rest] and not (nbr[low] & rest)
        total[mask] = total[rest] + wt[low]
        if indep[mask] and total[mask] >= best_w:
            s = tuple(nodes[i] for i in range(n) if mask >> i & 1)
            if total[mask] > best_w or s < best_s:
                best_w, best_s = total[mask], s
    return ExactResult(best_s, best_w)
