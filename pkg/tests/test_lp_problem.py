"""LpBuilder contract: bound checks, index checks, scenario bound copies."""

import numpy as np
import pytest

from h2plan.lp import INF, LpBuilder, with_col_bounds


def test_builder_rejects_inverted_bounds():
    b = LpBuilder()
    with pytest.raises(ValueError):
        b.add_col("x", 2.0, 1.0)
    x = b.add_col("x", 0.0, 1.0)
    with pytest.raises(ValueError):
        b.add_row("r", [(x, 1.0)], lower=5.0, upper=4.0)


def test_builder_rejects_bad_entries():
    b = LpBuilder()
    x = b.add_col("x")
    with pytest.raises(ValueError):
        b.add_row("r", [(x + 3, 1.0)], upper=1.0)
    with pytest.raises(ValueError):
        b.add_row("r", [(x, float("nan"))], upper=1.0)
    with pytest.raises(ValueError):
        b.add_col("bad", obj=float("inf"))


def test_duplicate_coefficients_summed():
    b = LpBuilder()
    x = b.add_col("x", 0.0, 10.0)
    b.add_row("r", [(x, 1.0), (x, 2.0)], upper=6.0)
    p = b.build()
    assert p.matrix.toarray().tolist() == [[3.0]]


def test_zero_coefficients_dropped():
    b = LpBuilder()
    x = b.add_col("x")
    y = b.add_col("y")
    b.add_row("r", [(x, 0.0), (y, 1.0)], upper=1.0)
    assert b.build().matrix.nnz == 1


def test_with_col_bounds_shares_structure():
    b = LpBuilder()
    x = b.add_col("x", 0.0, 5.0, 1.0)
    b.add_row("r", [(x, 1.0)], lower=1.0)
    p = b.build()
    lower = p.col_lower.copy()
    upper = p.col_upper.copy()
    upper[x] = 0.0
    lower[x] = 0.0
    q = with_col_bounds(p, lower, upper)
    assert q.matrix is p.matrix
    assert q.col_upper[x] == 0.0
    assert p.col_upper[x] == 5.0  # original untouched
    with pytest.raises(ValueError):
        with_col_bounds(p, np.array([1.0]), np.array([0.0]))


def test_objective_value_includes_offset():
    b = LpBuilder()
    x = b.add_col("x", 0.0, 2.0, 3.0)
    b.objective_offset = 7.0
    p = b.build()
    assert p.objective_value(np.array([2.0])) == pytest.approx(13.0)
