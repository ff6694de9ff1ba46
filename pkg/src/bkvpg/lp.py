"""Point-constraint LP relaxation of weighted independent set on grid paths.

The program is::

    maximize    sum_P w(P) x(P)
    subject to  sum_{P covers t} x(P) <= 1     for every grid point t
                x >= 0

Rows whose support is contained in another row's support are implied by
it and are dropped, so the default build keeps one row per maximal support
set. A path covering no shared point keeps its own ``x(P) <= 1`` row.

The solver is a primal simplex with Bland's rule on a sparse tableau. The
origin is feasible (all right-hand sides are 1), so no phase one is needed.
In exact mode every entry is a :class:`fractions.Fraction`; in float mode
entries are Python floats and comparisons use a tolerance.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from .graph import IntersectionGraph, PointIndex
from .grid import GridPoint, Instance

logger = logging.getLogger(__name__)

EXACT = "exact"
FLOAT = "float"
EXACT_MAX_N = 64
DEFAULT_TOL = 1e-9

OPTIMAL = "optimal"
FEASIBLE_WITH_GAP = "feasible-with-gap"


class Unbounded(ArithmeticError):
    pass


class NumericalFailure(ArithmeticError):
    """Float-mode solve lost feasibility or stalled; retry in exact mode."""


class BoundViolated(AssertionError):
    def __init__(self, path_id, value, bound):
        super().__init__(f"path {path_id}: closed-neighbourhood sum {value} exceeds {bound}")
        self.path_id = path_id
        self.value = value
        self.bound = bound


def default_arith(n: int) -> str:
    return EXACT if n <= EXACT_MAX_N else FLOAT


@dataclass(frozen=True)
class LpProblem:
    """Variables are path ids in ascending order; every row has right-hand side 1."""

    ids: tuple[int, ...]
    weights: tuple[Fraction, ...]
    rows: tuple[tuple[int, ...], ...]
    row_points: tuple[GridPoint, ...]

    @property
    def n_vars(self) -> int:
        return len(self.ids)

    @property
    def n_rows(self) -> int:
        return len(self.rows)


def _maximal(supports: Sequence[tuple[int, ...]]) -> list[tuple[int, ...]]:
    by_member: dict[int, list[frozenset[int]]] = {}
    sets = [frozenset(s) for s in supports]
    for s in sets:
        for u in s:
            by_member.setdefault(u, []).append(s)
    keep = []
    for sup, s in zip(supports, sets):
        first = sup[0]
        if not any(len(o) > len(s) and s < o for o in by_member[first]):
            keep.append(sup)
    return keep


def build_lp(instance: Instance, index: PointIndex, collapse: bool = True) -> LpProblem:
    """Assemble the point-constraint LP.

    With ``collapse=False`` every grid point contributes its own row,
    duplicates included; this is the uncompressed form and is only useful
    for cross-checking that collapsing leaves the optimum unchanged.
    """
    weights = instance.weights()
    ids = tuple(sorted(weights))
    if set(ids) != set(index.ids):
        raise ValueError("point index does not match instance")

    if collapse:
        first_point: dict[tuple[int, ...], GridPoint] = {}
        for t in index.points():
            first_point.setdefault(index[t], t)
        supports = _maximal(list(first_point))
        pairs = sorted((s, first_point[s]) for s in supports)
    else:
        pairs = [(index[t], t) for t in index.points()]

    return LpProblem(
        ids=ids,
        weights=tuple(weights[i] for i in ids),
        rows=tuple(s for s, _ in pairs),
        row_points=tuple(t for _, t in pairs),
    )


@dataclass(frozen=True)
class LpSolution:
    x: Mapping[int, Fraction | float]
    objective: Fraction | float
    status: str
    gap: Fraction | float
    arith: str
    duals: tuple = ()
    pivots: int = 0

    def value(self, weights: Mapping[int, Fraction]) -> Fraction | float:
        """w . x recomputed from scratch, independent of the solver's bookkeeping."""
        if self.arith == EXACT:
            return sum((weights[i] * self.x[i] for i in self.x), Fraction(0))
        return sum(float(weights[i]) * self.x[i] for i in sorted(self.x))


def _subtract(r: dict, f, items):
    """r -= f * row, keeping r sparse."""
    for j, v in items:
        nv = r.get(j, 0) - f * v
        if nv:
            r[j] = nv
        else:
            r.pop(j, None)


class _ExactTableau:
    """Sparse tableau over Fractions: each row is a dict of its non-zeros."""

    def __init__(self, lp: LpProblem):
        n, m = lp.n_vars, lp.n_rows
        col = {pid: j for j, pid in enumerate(lp.ids)}
        one = Fraction(1)
        self.n = n
        self.rows: list[dict[int, Fraction]] = []
        for i, sup in enumerate(lp.rows):
            r = {col[pid]: one for pid in sup}
            r[n + i] = one
            self.rows.append(r)
        self.rhs = [one] * m
        self.basis = [n + i for i in range(m)]
        # reduced costs c_j - z_j; optimal once none is positive
        self.cost = {j: Fraction(w) for j, w in enumerate(lp.weights) if w != 0}

    def entering(self):
        return min((j for j, v in self.cost.items() if v > 0), default=None)

    def leaving(self, e):
        best_i, best_ratio = None, None
        for i, r in enumerate(self.rows):
            a = r.get(e)
            if a is None or a <= 0:
                continue
            ratio = self.rhs[i] / a
            if (
                best_i is None
                or ratio < best_ratio
                or (ratio == best_ratio and self.basis[i] < self.basis[best_i])
            ):
                best_i, best_ratio = i, ratio
        return best_i

    def pivot(self, p: int, e: int):
        prow = self.rows[p]
        a = prow[e]
        if a != 1:
            for j in prow:
                prow[j] /= a
            self.rhs[p] /= a
        items = list(prow.items())
        bp = self.rhs[p]
        for i, r in enumerate(self.rows):
            if i != p and e in r:
                f = r[e]
                _subtract(r, f, items)
                self.rhs[i] -= f * bp
        if e in self.cost:
            _subtract(self.cost, self.cost[e], items)
        self.basis[p] = e

    def run(self, cap: int) -> int:
        pivots = 0
        while (e := self.entering()) is not None:
            p = self.leaving(e)
            if p is None:
                raise Unbounded(f"column {e} has no positive entry")
            self.pivot(p, e)
            pivots += 1
            if pivots > cap:
                raise NumericalFailure(f"no convergence after {pivots} pivots")
        return pivots

    def primal(self) -> list[Fraction]:
        xs = [Fraction(0)] * self.n
        for i, b in enumerate(self.basis):
            if b < self.n:
                xs[b] = self.rhs[i]
        return xs

    def duals(self, m: int) -> list[Fraction]:
        # dual of row i is minus the reduced cost of its slack
        return [-self.cost.get(self.n + i, Fraction(0)) for i in range(m)]


REINVERT_EVERY = 32
PIVOT_TOL = 1e-9


def _float_simplex(lp: LpProblem, tol: float, cap: int):
    """Dense float tableau, rebuilt from the original matrix every few pivots.

    Rebuilding from the current basis stops roundoff from compounding over
    the long degenerate pivot runs Bland's rule produces on these programs.
    Returns (x, duals, pivots).
    """
    n, m = lp.n_vars, lp.n_rows
    col = {pid: j for j, pid in enumerate(lp.ids)}
    A = np.zeros((m, n + m))
    for i, sup in enumerate(lp.rows):
        A[i, [col[pid] for pid in sup]] = 1.0
        A[i, n + i] = 1.0
    b = np.ones(m)
    c = np.zeros(n + m)
    c[:n] = [float(w) for w in lp.weights]
    cost_tol = tol * max(1.0, float(np.abs(c).max(initial=0.0)))
    basis = np.arange(n, n + m)

    def rebuild():
        B = A[:, basis]
        try:
            T = np.linalg.solve(B, A)
            rhs = np.linalg.solve(B, b)
            y = np.linalg.solve(B.T, c[basis])
        except np.linalg.LinAlgError as err:
            raise NumericalFailure(f"singular basis: {err}") from err
        if rhs.min(initial=0.0) < -tol:
            raise NumericalFailure(f"basis went infeasible (rhs {rhs.min()})")
        np.clip(rhs, 0.0, None, out=rhs)
        T[np.abs(T) < 1e-13] = 0.0
        return T, rhs, c - y @ A, y

    T, rhs, red, y = rebuild()
    pivots = since = 0
    while True:
        cand = np.flatnonzero(red > cost_tol)
        if cand.size == 0:
            if since:
                T, rhs, red, y = rebuild()
                since = 0
                if np.any(red > cost_tol):
                    continue
            break
        e = int(cand[0])
        colv = T[:, e]
        rows = np.flatnonzero(colv > PIVOT_TOL)
        if rows.size == 0:
            raise Unbounded(f"column {e} has no positive entry")
        ratios = rhs[rows] / colv[rows]
        ties = rows[ratios <= ratios.min() + 1e-12]
        p = int(ties[np.argmin(basis[ties])])

        piv = T[p, e]
        T[p] /= piv
        rhs[p] /= piv
        f = colv.copy()
        f[p] = 0.0
        T -= np.outer(f, T[p])
        rhs -= f * rhs[p]
        np.clip(rhs, 0.0, None, out=rhs)
        red = red - red[e] * T[p]
        basis[p] = e

        pivots += 1
        since += 1
        if pivots > cap:
            raise NumericalFailure(f"no convergence after {pivots} pivots")
        if since >= REINVERT_EVERY:
            T, rhs, red, y = rebuild()
            since = 0

    xs = np.zeros(n + m)
    xs[basis] = rhs
    return [float(v) for v in xs[:n]], [float(v) for v in y], pivots


def solve_lp(lp: LpProblem, arith: str = EXACT, tol: float = DEFAULT_TOL,
             max_pivots: int | None = None) -> LpSolution:
    """Solve to optimality with Bland's rule.

    Exact mode returns an exactly optimal vertex together with a dual
    solution of zero gap. Float mode checks primal feasibility to ``tol``
    afterwards and raises :class:`NumericalFailure` if it does not hold;
    the caller can then retry in exact mode.
    """
    if arith not in (EXACT, FLOAT):
        raise ValueError(f"unknown arithmetic mode {arith!r}")
    exact = arith == EXACT
    if any(not sup for sup in lp.rows):
        raise ValueError("empty constraint row")
    covered = {pid for sup in lp.rows for pid in sup}
    for pid, w in zip(lp.ids, lp.weights):
        if pid not in covered and w > 0:
            raise Unbounded(f"variable for path {pid} appears in no constraint")

    cap = max_pivots if max_pivots is not None else 50 * (lp.n_vars + lp.n_rows) + 100
    if exact:
        tab = _ExactTableau(lp)
        pivots = tab.run(cap)
        xs, duals = tab.primal(), tab.duals(lp.n_rows)
        zero, conv = Fraction(0), Fraction
    else:
        xs, duals, pivots = _float_simplex(lp, tol, cap)
        zero, conv = 0.0, float

    col = {pid: j for j, pid in enumerate(lp.ids)}
    for i, sup in enumerate(lp.rows):
        s = sum((xs[col[pid]] for pid in sup), zero)
        if s > 1 + (0 if exact else tol):
            raise NumericalFailure(f"row {i} violated: {s}")

    objective = sum((conv(w) * v for w, v in zip(lp.weights, xs)), zero)
    gap = sum(duals, zero) - objective
    if exact:
        status = OPTIMAL if gap == 0 else FEASIBLE_WITH_GAP
    else:
        status = OPTIMAL if abs(gap) <= tol * max(1.0, abs(objective)) else FEASIBLE_WITH_GAP
    logger.debug("LP %d vars x %d rows: %d pivots (%s)", lp.n_vars, lp.n_rows, pivots, arith)
    return LpSolution(dict(zip(lp.ids, xs)), objective, status, gap, arith, tuple(duals), pivots)


def neighborhood_sums(solution: LpSolution, graph: IntersectionGraph) -> dict:
    zero = Fraction(0) if solution.arith == EXACT else 0.0
    return {
        u: sum((solution.x[v] for v in graph.closed_neighborhood(u)), zero)
        for u in graph.nodes
    }


def check_neighborhood_bound(solution: LpSolution, graph: IntersectionGraph,
                             instance: Instance, tol: float = DEFAULT_TOL) -> dict:
    """Sum of x over each closed neighbourhood N[P], checked against ck+c+1.

    Returns the per-path sums. Raises :class:`BoundViolated` on the first
    path over the bound, which can only happen if ``solution`` is infeasible.
    """
    bound = instance.bound
    slack = 0 if solution.arith == EXACT else tol
    sums = neighborhood_sums(solution, graph)
    for u, s in sums.items():
        if s > bound + slack:
            raise BoundViolated(u, s, bound)
    return sums


def _num(v) -> str:
    v = Fraction(v)
    if v.denominator == 1:
        return str(v.numerator)
    return repr(float(v))


def lp_text(lp: LpProblem) -> str:
    """Render the problem in CPLEX LP text format."""
    def term(coef, pid, first):
        sign = "-" if coef < 0 else ("" if first else "+")
        mag = _num(abs(coef))
        body = f"x{pid}" if mag == "1" else f"{mag} x{pid}"
        return f"{sign} {body}".strip() if first else f"{sign} {body}"

    obj = " ".join(term(w, pid, i == 0) for i, (pid, w) in enumerate(zip(lp.ids, lp.weights)))
    lines = ["\\ point-constraint LP relaxation", "Maximize", f" obj: {obj or '0'}", "Subject To"]
    for i, (sup, t) in enumerate(zip(lp.rows, lp.row_points)):
        lhs = " + ".join(f"x{pid}" for pid in sup)
        lines.append(f" t{i}_{t[0]}_{t[1]}: {lhs} <= 1")
    lines.append("Bounds")
    lines.extend(f" x{pid} >= 0" for pid in lp.ids)
    lines.append("End")
    return "\n".join(lines) + "\n"
