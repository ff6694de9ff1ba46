"""Approximate maximum-weight independent sets of weighted grid paths with bounded bends."""

from .graph import IntersectionGraph, PointIndex, build_graph, build_point_index
from .grid import GridPath, Instance, derive_c, grid_points, load_instance, validate_path
from .instgen import GenParams, generate
from .localratio import SolveReport, local_ratio_round, select_pivot, solve
from .lp import LpProblem, LpSolution, build_lp, check_neighborhood_bound, solve_lp
from .oracle import ExactResult, exact_mwis

__version__ = "0.1.0"
