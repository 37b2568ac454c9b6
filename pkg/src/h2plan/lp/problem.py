"""Canonical sparse LP container, incremental builder and solution types.

A problem is

    min (or max)  c'x + offset
    s.t.          row_lower <= A x <= row_upper
                  col_lower <=   x <= col_upper

with +/-inf allowed in all bound vectors.  Equality rows set both row
bounds to the same value.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Sequence

import numpy as np
import scipy.sparse as sp

INF = float("inf")


class SolveStatus(Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"
    ITERATION_LIMIT = "iteration_limit"
    NUMERICAL_FAILURE = "numerical_failure"


@dataclass(frozen=True)
class LpProblem:
    """Immutable sparse LP in triplet-built CSC form."""

    num_cols: int
    num_rows: int
    matrix: sp.csc_matrix          # num_rows x num_cols
    row_lower: np.ndarray
    row_upper: np.ndarray
    col_lower: np.ndarray
    col_upper: np.ndarray
    objective: np.ndarray
    minimize: bool = True
    objective_offset: float = 0.0  # constant added to c'x (e.g. sunk fixed O&M)
    row_names: tuple = ()
    col_names: tuple = ()

    def row_activity(self, x: np.ndarray) -> np.ndarray:
        return self.matrix @ x

    def objective_value(self, x: np.ndarray) -> float:
        return float(self.objective @ x) + self.objective_offset


@dataclass
class LpSolution:
    status: SolveStatus
    objective: float = float("nan")
    col_values: Optional[np.ndarray] = None
    row_duals: Optional[np.ndarray] = None
    reduced_costs: Optional[np.ndarray] = None
    iterations: int = 0
    message: str = ""

    @property
    def is_optimal(self) -> bool:
        return self.status is SolveStatus.OPTIMAL


@dataclass
class SolveOptions:
    """Numeric tolerances and limits, single source of truth."""

    feasibility_tol: float = 1e-7
    optimality_tol: float = 1e-7
    zero_pivot_tol: float = 1e-10
    max_iterations: int = 0        # 0 = automatic from problem size
    refactor_interval: int = 100
    degenerate_limit: int = 200    # consecutive degenerate pivots before Bland fallback

    def iteration_cap(self, num_rows: int, num_cols: int) -> int:
        if self.max_iterations > 0:
            return self.max_iterations
        return 50 * (num_rows + num_cols) + 10_000


class LpBuilder:
    """Accumulates columns, rows and objective terms, then emits an LpProblem.

    Column/row handles are dense integer indices assigned in call order,
    so identical build sequences give identical problems.
    """

    def __init__(self, minimize: bool = True):
        self.minimize = minimize
        self._col_lower: list[float] = []
        self._col_upper: list[float] = []
        self._obj: list[float] = []
        self._col_names: list[str] = []
        self._row_lower: list[float] = []
        self._row_upper: list[float] = []
        self._row_names: list[str] = []
        self._entries_row: list[int] = []
        self._entries_col: list[int] = []
        self._entries_val: list[float] = []
        self.objective_offset = 0.0

    # -- columns ---------------------------------------------------------

    @property
    def num_cols(self) -> int:
        return len(self._obj)

    @property
    def num_rows(self) -> int:
        return len(self._row_lower)

    def add_col(self, name: str, lower: float = 0.0, upper: float = INF,
                obj: float = 0.0) -> int:
        if lower > upper:
            raise ValueError(f"column {name!r}: lower {lower} > upper {upper}")
        if not np.isfinite(obj):
            raise ValueError(f"column {name!r}: non-finite objective {obj}")
        self._col_lower.append(float(lower))
        self._col_upper.append(float(upper))
        self._obj.append(float(obj))
        self._col_names.append(name)
        return len(self._obj) - 1

    def add_cols(self, names: Sequence[str], lower: float = 0.0,
                 upper: float = INF, obj: float = 0.0) -> list[int]:
        return [self.add_col(n, lower, upper, obj) for n in names]

    def set_col_bounds(self, col: int, lower: float, upper: float) -> None:
        if lower > upper:
            raise ValueError(f"column {col}: lower {lower} > upper {upper}")
        self._col_lower[col] = float(lower)
        self._col_upper[col] = float(upper)

    def add_obj(self, col: int, coef: float) -> None:
        if not np.isfinite(coef):
            raise ValueError(f"non-finite objective coefficient {coef}")
        self._obj[col] += float(coef)

    # -- rows ------------------------------------------------------------

    def add_row(self, name: str, coefs: Sequence[tuple[int, float]],
                lower: float = -INF, upper: float = INF) -> int:
        if lower > upper:
            raise ValueError(f"row {name!r}: lower {lower} > upper {upper}")
        row = len(self._row_lower)
        ncols = len(self._obj)
        for col, val in coefs:
            if not 0 <= col < ncols:
                raise ValueError(f"row {name!r}: column index {col} out of range")
            if not np.isfinite(val):
                raise ValueError(f"row {name!r}: non-finite coefficient {val}")
            if val != 0.0:
                self._entries_row.append(row)
                self._entries_col.append(col)
                self._entries_val.append(float(val))
        self._row_lower.append(float(lower))
        self._row_upper.append(float(upper))
        self._row_names.append(name)
        return row

    def add_eq_row(self, name: str, coefs: Sequence[tuple[int, float]],
                   rhs: float) -> int:
        return self.add_row(name, coefs, rhs, rhs)

    # -- emit --------------------------------------------------------------

    def build(self) -> LpProblem:
        n, m = self.num_cols, self.num_rows
        matrix = sp.coo_matrix(
            (np.asarray(self._entries_val, dtype=float),
             (np.asarray(self._entries_row, dtype=np.int32),
              np.asarray(self._entries_col, dtype=np.int32))),
            shape=(m, n),
        ).tocsc()
        matrix.sum_duplicates()
        return LpProblem(
            num_cols=n,
            num_rows=m,
            matrix=matrix,
            row_lower=np.asarray(self._row_lower, dtype=float),
            row_upper=np.asarray(self._row_upper, dtype=float),
            col_lower=np.asarray(self._col_lower, dtype=float),
            col_upper=np.asarray(self._col_upper, dtype=float),
            objective=np.asarray(self._obj, dtype=float),
            minimize=self.minimize,
            objective_offset=self.objective_offset,
            row_names=tuple(self._row_names),
            col_names=tuple(self._col_names),
        )


def with_col_bounds(problem: LpProblem, lower: np.ndarray,
                    upper: np.ndarray) -> LpProblem:
    """Copy of `problem` with replaced column bounds, sharing the matrix.

    Scenario variants are bound fixings on one model skeleton; this keeps
    rows, columns and coefficients bit-identical across variants.
    """
    if np.any(lower > upper):
        raise ValueError("inconsistent column bounds")
    return LpProblem(
        num_cols=problem.num_cols,
        num_rows=problem.num_rows,
        matrix=problem.matrix,
        row_lower=problem.row_lower,
        row_upper=problem.row_upper,
        col_lower=np.asarray(lower, dtype=float),
        col_upper=np.asarray(upper, dtype=float),
        objective=problem.objective,
        minimize=problem.minimize,
        objective_offset=problem.objective_offset,
        row_names=problem.row_names,
        col_names=problem.col_names,
    )
