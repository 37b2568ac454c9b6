"""Bounded-variable revised primal simplex.

Works on the computational form  [A | -I] x = 0  where the last m
entries of x are row-activity (logical) variables carrying the row
bounds.  Phase 1 drives the sum of bound violations of basic variables
to zero with the usual composite gradient; phase 2 prices the true
objective.  The basis is held as a scipy SuperLU factorization plus a
product-form eta file, refactorized periodically.

Determinism: entering variable chosen by a steepest-edge-like score
(squared reduced cost over a static column-norm weight) with ties and
the ratio test broken by lowest variable index; after a run of
degenerate pivots the pricing falls back to Bland's rule until progress
resumes, which also guarantees termination.
"""

from __future__ import annotations

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import splu

from .problem import INF, LpProblem, LpSolution, SolveOptions, SolveStatus

# nonbasic/basic variable states
BASIC = 0
AT_LOWER = 1
AT_UPPER = 2
FREE = 3   # nonbasic at value 0, both bounds infinite


class _Engine:
    def __init__(self, problem: LpProblem, options: SolveOptions):
        self.opts = options
        n, m = problem.num_cols, problem.num_rows

        # computational form [A | -I], logicals carry the row bounds
        eye = sp.identity(m, format="csc", dtype=float)
        self.A = sp.hstack([problem.matrix, -eye], format="csc")
        self.AT = self.A.T.tocsr()
        self.n_struct = n
        self.m = m
        self.ntot = n + m

        self.lower = np.concatenate([problem.col_lower, problem.row_lower])
        self.upper = np.concatenate([problem.col_upper, problem.row_upper])
        sign = 1.0 if problem.minimize else -1.0
        self.cost = sign * np.concatenate([problem.objective, np.zeros(m)])

        # static steepest-edge-like pricing weights
        sq = self.A.copy()
        sq.data **= 2
        self.gamma = 1.0 + np.asarray(sq.sum(axis=0)).ravel()

        self.fixed = self.lower == self.upper

        self.status = np.empty(self.ntot, dtype=np.int8)
        self.x = np.zeros(self.ntot)
        for j in range(self.ntot):
            lo, up = self.lower[j], self.upper[j]
            if lo > -INF:
                self.status[j] = AT_LOWER
                self.x[j] = lo
            elif up < INF:
                self.status[j] = AT_UPPER
                self.x[j] = up
            else:
                self.status[j] = FREE
                self.x[j] = 0.0
        self.basis = np.arange(n, n + m)
        self.status[self.basis] = BASIC
        # basic values and their bounds, kept in basis order to avoid
        # re-gathering every iteration
        self.xB = np.zeros(m)
        self.lB = self.lower[self.basis].copy()
        self.uB = self.upper[self.basis].copy()

        self._lu = None
        # eta file: (pivot row, nonzero indices of B^-1 a_q, values, pivot value)
        self._etas: list[tuple[int, np.ndarray, np.ndarray, float]] = []
        self.iterations = 0
        self._degenerate_run = 0
        self._bland = False

    # ---------------- factorization ----------------

    def refactorize(self) -> bool:
        basis_mat = self.A[:, self.basis].tocsc()
        try:
            self._lu = splu(basis_mat.sorted_indices(),
                            permc_spec="COLAMD",
                            options={"SymmetricMode": False})
        except RuntimeError:
            return False
        self._etas = []
        return True

    def ftran(self, b: np.ndarray) -> np.ndarray:
        y = self._lu.solve(b)
        for r, idx, vals, wr in self._etas:
            alpha = y[r] / wr
            if alpha != 0.0:
                y[idx] -= alpha * vals
            y[r] = alpha
        return y

    def btran(self, d: np.ndarray) -> np.ndarray:
        y = d.copy()
        for r, idx, vals, wr in reversed(self._etas):
            beta = (vals @ y[idx] - y[r]) / wr
            y[r] -= beta
        return self._lu.solve(y, trans="T")

    def column(self, j: int) -> np.ndarray:
        a = np.zeros(self.m)
        lo, hi = self.A.indptr[j], self.A.indptr[j + 1]
        a[self.A.indices[lo:hi]] = self.A.data[lo:hi]
        return a

    def recompute_basics(self) -> None:
        self.x[self.basis] = 0.0
        rhs = -(self.A @ self.x)
        self.xB = self.ftran(rhs)
        self.x[self.basis] = self.xB
        self.lB = self.lower[self.basis].copy()
        self.uB = self.upper[self.basis].copy()

    # ---------------- feasibility bookkeeping ----------------

    def _feas_tols(self, values: np.ndarray, bounds: np.ndarray) -> np.ndarray:
        return self.opts.feasibility_tol * (1.0 + np.abs(bounds))

    def basic_infeasibility(self):
        below = (self.lB - self.xB) > self._feas_tols(self.xB, self.lB)
        above = (self.xB - self.uB) > self._feas_tols(self.xB, self.uB)
        return below, above

    # ---------------- pricing ----------------

    def reduced_costs(self, cost_vec: np.ndarray) -> np.ndarray:
        cb = cost_vec[self.basis]
        y = self.btran(cb)
        d = cost_vec - self.AT @ y
        self._last_y = y
        return d

    def phase1_costs(self, below: np.ndarray, above: np.ndarray) -> np.ndarray:
        g = np.zeros(self.m)
        g[below] = -1.0
        g[above] = 1.0
        y = self.btran(g)
        self._last_y = y
        return -(self.AT @ y)

    def pick_entering(self, d: np.ndarray, tol: float) -> int:
        movable = ~self.fixed
        can_up = movable & (self.status == AT_LOWER) & (d < -tol)
        can_dn = movable & (self.status == AT_UPPER) & (d > tol)
        free = movable & (self.status == FREE) & (np.abs(d) > tol)
        eligible = can_up | can_dn | free
        if not eligible.any():
            return -1
        if self._bland:
            return int(np.nonzero(eligible)[0][0])
        score = np.where(eligible, d * d / self.gamma, -1.0)
        return int(np.argmax(score))

    # ---------------- ratio test ----------------

    def ratio_test(self, j: int, direction: float, v: np.ndarray,
                   phase1: bool):
        """Return (theta, leaving_pos, hit_upper_flag) or bound-flip/unbounded.

        leaving_pos == -1 encodes a bound flip of the entering variable,
        -2 an unbounded direction.
        """
        delta = -direction * v  # rate of change of basic values
        xb, lb, ub = self.xB, self.lB, self.uB
        tiny = 1e-12

        theta = np.full(self.m, INF)
        hits_upper = np.zeros(self.m, dtype=bool)

        if phase1:
            tol_l = self._feas_tols(xb, lb)
            tol_u = self._feas_tols(xb, ub)
            below = (lb - xb) > tol_l
            above = (xb - ub) > tol_u
            feas = ~(below | above)

            up = delta > tiny
            dn = delta < -tiny
            # feasible basics block at the bound they move toward
            mask = feas & up & (ub < INF)
            theta[mask] = (ub[mask] - xb[mask]) / delta[mask]
            hits_upper[mask] = True
            mask = feas & dn & (lb > -INF)
            theta[mask] = (lb[mask] - xb[mask]) / delta[mask]
            # infeasible basics block where they re-enter their bound
            mask = below & up
            theta[mask] = (lb[mask] - xb[mask]) / delta[mask]
            mask = above & dn
            theta[mask] = (ub[mask] - xb[mask]) / delta[mask]
            hits_upper[mask] = True
        else:
            up = delta > tiny
            dn = delta < -tiny
            mask = up & (ub < INF)
            theta[mask] = (ub[mask] - xb[mask]) / delta[mask]
            hits_upper[mask] = True
            mask = dn & (lb > -INF)
            theta[mask] = (lb[mask] - xb[mask]) / delta[mask]

        np.maximum(theta, 0.0, out=theta)

        flip_gap = INF
        if self.lower[j] > -INF and self.upper[j] < INF and not self.fixed[j]:
            flip_gap = self.upper[j] - self.lower[j]

        tmin = theta.min() if self.m else INF
        if flip_gap <= tmin:
            if flip_gap == INF:
                return INF, -2, False
            return flip_gap, -1, False
        if tmin == INF:
            return INF, -2, False

        tie = theta <= tmin + 1e-9 * (1.0 + tmin)
        usable = tie & (np.abs(v) >= self.opts.zero_pivot_tol)
        if not usable.any():
            return tmin, -3, False  # all tied pivots numerically zero
        pos = np.nonzero(usable)[0]
        leaving = pos[np.argmin(self.basis[pos])]  # lowest variable index
        return float(theta[leaving]), int(leaving), bool(hits_upper[leaving])

    # ---------------- pivoting ----------------

    def apply_step(self, j: int, direction: float, v: np.ndarray,
                   theta: float, leaving: int, hit_upper: bool) -> None:
        entering_value = self.x[j] + direction * theta
        if theta != 0.0:
            self.xB -= (direction * theta) * v
        if leaving == -1:  # bound flip
            self.status[j] = AT_UPPER if direction > 0 else AT_LOWER
            self.x[j] = self.upper[j] if direction > 0 else self.lower[j]
            return
        out = self.basis[leaving]
        self.status[out] = AT_UPPER if hit_upper else AT_LOWER
        self.x[out] = self.upper[out] if hit_upper else self.lower[out]
        self.basis[leaving] = j
        self.status[j] = BASIC
        self.xB[leaving] = entering_value
        self.lB[leaving] = self.lower[j]
        self.uB[leaving] = self.upper[j]
        idx = np.nonzero(v)[0]
        self._etas.append((leaving, idx, v[idx].copy(), v[leaving]))
        self._degenerate_run = self._degenerate_run + 1 if theta < 1e-10 else 0
        self._bland = self._degenerate_run > self.opts.degenerate_limit

    # ---------------- driver ----------------

    def iterate(self, phase1: bool, iter_cap: int):
        """Run one simplex phase; returns a SolveStatus or None when the
        phase finished normally (phase 1: feasible; phase 2: priced out)."""
        since_refactor = 0
        tol2 = self.opts.optimality_tol * (1.0 + np.abs(self.cost).max(initial=0.0))
        while True:
            if self.iterations >= iter_cap:
                return SolveStatus.ITERATION_LIMIT
            if since_refactor >= self.opts.refactor_interval:
                if not self.refactorize():
                    return SolveStatus.NUMERICAL_FAILURE
                self.recompute_basics()
                since_refactor = 0

            if phase1:
                below, above = self.basic_infeasibility()
                if not below.any() and not above.any():
                    return None
                d = self.phase1_costs(below, above)
                tol = self.opts.optimality_tol
            else:
                d = self.reduced_costs(self.cost)
                tol = tol2

            j = self.pick_entering(d, tol)
            if j < 0:
                return None if not phase1 else SolveStatus.INFEASIBLE

            if self.status[j] == AT_UPPER:
                direction = -1.0
            elif self.status[j] == AT_LOWER:
                direction = 1.0
            else:
                direction = 1.0 if d[j] < 0 else -1.0

            v = self.ftran(self.column(j))
            theta, leaving, hit_upper = self.ratio_test(j, direction, v, phase1)

            if leaving == -2:
                if phase1:
                    return SolveStatus.NUMERICAL_FAILURE
                return SolveStatus.UNBOUNDED
            if leaving == -3:
                if not self.refactorize():
                    return SolveStatus.NUMERICAL_FAILURE
                self.recompute_basics()
                since_refactor = 0
                continue

            self.apply_step(j, direction, v, theta, leaving, hit_upper)
            self.iterations += 1
            since_refactor += 1

    def certify(self):
        """Residuals of the current point: primal bound violation, dual sign
        violation, duality gap components."""
        if not self.refactorize():
            return None
        self.recompute_basics()
        d = self.reduced_costs(self.cost)
        y = self._last_y

        viol_lo = np.maximum(self.lower - self.x, 0.0)
        viol_hi = np.maximum(self.x - self.upper, 0.0)
        viol_lo[np.isinf(viol_lo)] = 0.0
        viol_hi[np.isinf(viol_hi)] = 0.0
        primal_res = float(max(viol_lo.max(initial=0.0), viol_hi.max(initial=0.0)))

        dual_res = 0.0
        movable = ~self.fixed
        at_lo = movable & (self.status == AT_LOWER)
        at_up = movable & (self.status == AT_UPPER)
        free = movable & (self.status == FREE)
        if at_lo.any():
            dual_res = max(dual_res, float(np.maximum(-d[at_lo], 0.0).max()))
        if at_up.any():
            dual_res = max(dual_res, float(np.maximum(d[at_up], 0.0).max()))
        if free.any():
            dual_res = max(dual_res, float(np.abs(d[free]).max()))

        # dual objective: bound multipliers at active nonbasic bounds
        nb = self.status != BASIC
        dual_obj = float(d[nb] @ self.x[nb])
        return primal_res, dual_res, dual_obj, d, y


def solve(problem: LpProblem, options: SolveOptions | None = None) -> LpSolution:
    """Solve an LpProblem with the embedded simplex.

    Deterministic: two solves of the same problem take the same pivots
    and return bit-identical results.
    """
    opts = options or SolveOptions()
    n, m = problem.num_cols, problem.num_rows

    if np.any(problem.col_lower > problem.col_upper) or np.any(
            problem.row_lower > problem.row_upper):
        return LpSolution(SolveStatus.INFEASIBLE,
                          message="inconsistent bounds")
    if m == 0:
        return _solve_boxed(problem)

    eng = _Engine(problem, opts)
    if not eng.refactorize():
        return LpSolution(SolveStatus.NUMERICAL_FAILURE,
                          message="initial basis singular")
    eng.recompute_basics()
    iter_cap = opts.iteration_cap(m, n)

    for attempt in range(4):
        status = eng.iterate(phase1=True, iter_cap=iter_cap)
        if status is not None:
            return LpSolution(status, iterations=eng.iterations,
                              message="phase 1 terminated")
        status = eng.iterate(phase1=False, iter_cap=iter_cap)
        if status is not None:
            return LpSolution(status, iterations=eng.iterations,
                              message="phase 2 terminated")
        cert = eng.certify()
        if cert is None:
            return LpSolution(SolveStatus.NUMERICAL_FAILURE,
                              iterations=eng.iterations,
                              message="basis singular at certification")
        primal_res, dual_res, dual_obj, d, y = cert
        scale = 1.0 + float(np.abs(eng.cost).max(initial=0.0))
        if primal_res <= 1e-6 and dual_res <= 1e-6 * scale:
            break
        # drift: residuals too large, redo both phases from the fresh basis
    else:
        return LpSolution(SolveStatus.NUMERICAL_FAILURE,
                          iterations=eng.iterations,
                          message=f"residuals not certified "
                                  f"(primal {primal_res:.2e}, dual {dual_res:.2e})")

    sign = 1.0 if problem.minimize else -1.0
    obj = float(problem.objective @ eng.x[:n]) + problem.objective_offset
    return LpSolution(
        status=SolveStatus.OPTIMAL,
        objective=obj,
        col_values=eng.x[:n].copy(),
        row_duals=sign * y,
        reduced_costs=sign * d[:n],
        iterations=eng.iterations,
        message="optimal",
    )


def dual_objective(problem: LpProblem, solution: LpSolution) -> float:
    """Dual objective of an optimal solution, for gap checks.

    Sums row duals times the row bound each dual presses against and
    reduced costs times the column bound each nonbasic variable sits at.
    """
    if not solution.is_optimal:
        raise ValueError("dual objective requires an optimal solution")
    y = solution.row_duals
    d = solution.reduced_costs
    total = problem.objective_offset
    act = problem.matrix @ solution.col_values
    for i in range(problem.num_rows):
        if y[i] > 0 and problem.row_lower[i] > -INF:
            total += y[i] * problem.row_lower[i]
        elif y[i] < 0 and problem.row_upper[i] < INF:
            total += y[i] * problem.row_upper[i]
        elif y[i] != 0.0:  # pressing against an infinite bound: use activity
            total += y[i] * act[i]
    for j in range(problem.num_cols):
        if d[j] > 0 and problem.col_lower[j] > -INF:
            total += d[j] * problem.col_lower[j]
        elif d[j] < 0 and problem.col_upper[j] < INF:
            total += d[j] * problem.col_upper[j]
    return float(total)


def _solve_boxed(problem: LpProblem) -> LpSolution:
    """Rowless problems: every column sits at its cheapest finite bound."""
    sign = 1.0 if problem.minimize else -1.0
    c = sign * problem.objective
    x = np.zeros(problem.num_cols)
    for j in range(problem.num_cols):
        lo, up = problem.col_lower[j], problem.col_upper[j]
        if c[j] > 0:
            if lo == -INF:
                return LpSolution(SolveStatus.UNBOUNDED)
            x[j] = lo
        elif c[j] < 0:
            if up == INF:
                return LpSolution(SolveStatus.UNBOUNDED)
            x[j] = up
        else:
            x[j] = lo if lo > -INF else (up if up < INF else 0.0)
    obj = float(problem.objective @ x) + problem.objective_offset
    return LpSolution(SolveStatus.OPTIMAL, objective=obj, col_values=x,
                      row_duals=np.zeros(0), reduced_costs=sign * c,
                      message="optimal")
