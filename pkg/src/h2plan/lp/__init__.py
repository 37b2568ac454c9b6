"""Sparse LP container, embedded simplex solver and MPS interchange."""

from .problem import (
    INF,
    LpBuilder,
    LpProblem,
    LpSolution,
    SolveOptions,
    SolveStatus,
    with_col_bounds,
)
from .simplex import dual_objective, solve
from .mps import export_standard, import_standard

__all__ = [
    "INF",
    "LpBuilder",
    "LpProblem",
    "LpSolution",
    "SolveOptions",
    "SolveStatus",
    "with_col_bounds",
    "solve",
    "dual_objective",
    "export_standard",
    "import_standard",
]
