"""Local-ratio rounding of an LP solution into an independent set.

The recursive rounding scheme is run as two passes over an explicit stack:

* forward: drop every path whose residual weight is non-positive, pick a
  pivot P among the survivors, subtract P's residual weight from every
  surviving member of N[P] (P included), push P;
* backward: pop the pivots in reverse and keep P unless something already
  kept is adjacent to it.

Any pivot choice works, because every path's closed-neighbourhood LP mass is
at most ck+c+1. The rounding never reads the LP values; they only enter the
weight certificate checked at the end.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .graph import IntersectionGraph, build_graph, build_point_index
from .grid import Instance, point_bound
from .lp import (
    DEFAULT_TOL,
    EXACT,
    LpProblem,
    LpSolution,
    NumericalFailure,
    build_lp,
    default_arith,
    solve_lp,
)

logger = logging.getLogger(__name__)

MIN_ID = "min-id"
MAX_WEIGHT = "max-weight"
PIVOT_RULES = (MIN_ID, MAX_WEIGHT)

# residual weights at or below this count as non-positive in float mode
FLOAT_ZERO = 1e-12


class EmptyActiveSet(ValueError):
    pass


class CertificationFailed(AssertionError):
    def __init__(self, report: "SolveReport"):
        super().__init__(
            f"weight {report.weight} * {report.bound} < LP objective {report.lp_objective}"
        )
        self.report = report


@dataclass(frozen=True)
class SolveReport:
    selected: tuple[int, ...]
    weight: Fraction
    lp_objective: Fraction | float | None
    bound: int
    certified: bool
    pivot_rule: str | None = MIN_ID
    pivots: tuple[int, ...] = ()
    arith: str = EXACT

    def to_dict(self) -> dict:
        lp = self.lp_objective
        return {
            "selected": list(self.selected),
            "weight": fmt_number(self.weight),
            "lp_objective": None if lp is None else fmt_number(lp),
            "bound": self.bound,
            "certified": self.certified,
            "pivot_rule": self.pivot_rule,
        }


def fmt_number(v) -> str:
    if isinstance(v, float):
        return repr(v)
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def select_pivot(active, residual_w: Mapping, rule: str = MIN_ID) -> int:
    """Pick the next pivot among ``active`` path ids.

    ``min-id`` takes the smallest id; ``max-weight`` the largest residual
    weight, ties going to the smaller id.
    """
    if not active:
        raise EmptyActiveSet("no active paths to pivot on")
    if rule == MIN_ID:
        return min(active)
    if rule == MAX_WEIGHT:
        return min(active, key=lambda u: (-residual_w[u], u))
    raise ValueError(f"unknown pivot rule {rule!r}")


def round_forward(graph: IntersectionGraph, weights: Mapping, rule: str = MIN_ID,
                  arith: str = EXACT) -> list[int]:
    """Forward pass: returns the pivot stack, first pivot first."""
    if arith == EXACT:
        residual = {u: Fraction(w) for u, w in weights.items()}
        zero = 0
    else:
        residual = {u: float(w) for u, w in weights.items()}
        zero = FLOAT_ZERO
    active = {u for u, w in residual.items() if w > zero}
    stack = []
    while active:
        p = select_pivot(active, residual, rule)
        wp = residual[p]
        for v in graph.closed_neighborhood(p):
            if v in active:
                residual[v] -= wp
        stack.append(p)
        active = {u for u in active if residual[u] > zero}
        # p's residual is now exactly zero, so every round shrinks the set
        assert p not in active
    return stack


def round_backward(graph: IntersectionGraph, stack) -> list[int]:
    chosen: set[int] = set()
    for p in reversed(stack):
        if not any(v in chosen for v in graph.neighbors(p)):
            chosen.add(p)
    return sorted(chosen)


def certify(weight: Fraction, lp_objective, bound: int, tol: float = DEFAULT_TOL) -> bool:
    """weight * bound >= lp_objective; exact for rationals, relative ``tol`` for floats."""
    if isinstance(lp_objective, float):
        lhs = float(weight) * bound
        return lhs >= lp_objective - tol * max(1.0, abs(lp_objective))
    return weight * bound >= lp_objective


def local_ratio_round(instance: Instance, graph: IntersectionGraph, x: LpSolution,
                      rule: str = MIN_ID, tol: float = DEFAULT_TOL,
                      strict: bool = True) -> SolveReport:
    """Round ``x`` into an independent set and certify its weight against w . x.

    The set's weight is measured in the instance's original weights. With
    ``strict`` (the default) a failed certificate raises
    :class:`CertificationFailed`, which signals a bug rather than bad input.
    """
    weights = instance.weights()
    stack = round_forward(graph, weights, rule, x.arith)
    selected = round_backward(graph, stack)

    if not graph.is_independent(selected):
        raise AssertionError(f"rounded set {selected} is not independent")
    chosen = set(selected)
    for p in stack:
        if not chosen.intersection(graph.closed_neighborhood(p)):
            raise AssertionError(f"pivot {p} has no kept path in its closed neighbourhood")

    weight = sum((weights[u] for u in selected), Fraction(0))
    lp_value = x.value(weights)
    bound = point_bound(instance.c, instance.k) if instance.paths else point_bound(1, instance.k)
    report = SolveReport(
        selected=tuple(selected),
        weight=weight,
        lp_objective=lp_value,
        bound=bound,
        certified=certify(weight, lp_value, bound, tol),
        pivot_rule=rule,
        pivots=tuple(stack),
        arith=x.arith,
    )
    if strict and not report.certified:
        raise CertificationFailed(report)
    return report


@dataclass(frozen=True)
class Pipeline:
    """Everything computed on the way to a report, kept for inspection."""

    graph: IntersectionGraph
    lp: LpProblem
    solution: LpSolution
    report: SolveReport


def solve(instance: Instance, rule: str = MIN_ID, arith: str | None = None,
          tol: float = DEFAULT_TOL, strict: bool = True) -> Pipeline:
    """validate -> point index -> graph -> LP -> rounding."""
    instance.check()
    arith = arith or default_arith(instance.n)
    index = build_point_index(instance)
    graph = build_graph(index)
    lp = build_lp(instance, index)
    try:
        solution = solve_lp(lp, arith, tol)
    except NumericalFailure as err:
        if arith == EXACT:
            raise
        logger.warning("float LP failed (%s); retrying in exact arithmetic", err)
        solution = solve_lp(lp, EXACT, tol)
    report = local_ratio_round(instance, graph, solution, rule, tol, strict)
    return Pipeline(graph, lp, solution, report)
