"""MPS interchange: golden files, round-trips and name mangling."""

from pathlib import Path

import pytest

from h2plan.lp import INF, LpBuilder, SolveStatus, export_standard, import_standard, solve
from h2plan.lp.mps import MpsParseError, mangle_names

from conftest import GOLDEN_DIR


def minx_problem():
    b = LpBuilder()
    x = b.add_col("x", -INF, INF, 1.0)
    b.add_row("floor", [(x, 1.0)], lower=3.0)
    return b.build()


def ranged_problem():
    b = LpBuilder()
    x = b.add_col("x", 0.0, 9.0, 2.0)
    y = b.add_col("y", -1.0, INF, -1.0)
    z = b.add_col("z", 0.5, 0.5, 0.0)      # fixed
    w = b.add_col("w", -INF, 4.0, 0.25)    # MI + UP
    b.add_row("eq", [(x, 1.0), (y, 2.0)], 4.0, 4.0)
    b.add_row("rng", [(x, 1.0), (w, -1.0)], -2.0, 5.0)
    b.add_row("ge", [(y, 3.0), (z, 1.0)], lower=0.25)
    b.objective_offset = 11.5
    return b.build()


def test_golden_minx(tmp_path):
    out = tmp_path / "minx.mps"
    export_standard(minx_problem(), out)
    golden = GOLDEN_DIR / "minx.mps"
    assert out.read_bytes() == golden.read_bytes()


def test_export_byte_stable(tmp_path):
    p = ranged_problem()
    a, b = tmp_path / "a.mps", tmp_path / "b.mps"
    export_standard(p, a)
    export_standard(p, b)
    assert a.read_bytes() == b.read_bytes()


@pytest.mark.parametrize("factory", [minx_problem, ranged_problem])
def test_round_trip_same_optimum(factory, tmp_path):
    p = factory()
    path = tmp_path / "p.mps"
    export_standard(p, path)
    q = import_standard(path)
    assert q.num_cols == p.num_cols
    assert q.num_rows == p.num_rows
    s_p, s_q = solve(p), solve(q)
    assert s_p.status == s_q.status
    if s_p.status is SolveStatus.OPTIMAL:
        assert s_q.objective == pytest.approx(s_p.objective, rel=1e-9)


def test_empty_problem_round_trip(tmp_path):
    b = LpBuilder()
    b.add_col("only", -INF, INF, 0.0)
    p = b.build()
    path = tmp_path / "empty.mps"
    export_standard(p, path)
    text = path.read_text()
    assert "ROWS" in text and "ENDATA" in text
    q = import_standard(path)
    assert q.num_rows == 0
    assert q.num_cols == 1
    assert solve(q).objective == pytest.approx(0.0)


def test_name_mangling_collisions_round_trip(tmp_path):
    b = LpBuilder()
    # long names colliding after 8-char truncation
    cols = [b.add_col(f"very_long_column_name_{k}", 0.0, float(k + 1), 1.0)
            for k in range(4)]
    b.add_row("another_long_row_name_a", [(cols[0], 1.0)], upper=1.0)
    b.add_row("another_long_row_name_b", [(cols[1], 1.0)], upper=1.0)
    p = b.build()
    path = tmp_path / "mangled.mps"
    export_standard(p, path)
    q = import_standard(path)
    assert q.num_cols == p.num_cols
    assert q.num_rows == p.num_rows
    assert solve(q).objective == pytest.approx(solve(p).objective, rel=1e-9)


def test_mangle_names_deterministic_and_unique():
    names = ["alpha", "alpha", "a very long name!", "a very long nam",
             "x" * 40, "x" * 40]
    first = mangle_names(names)
    second = mangle_names(names)
    assert first == second
    assert len(set(first)) == len(names)
    assert all(len(n) <= 8 for n in first)


def test_import_reports_line_context(tmp_path):
    bad = tmp_path / "bad.mps"
    bad.write_text("NAME  x\nROWS\n Q  bogus\nENDATA\n")
    with pytest.raises(MpsParseError) as err:
        import_standard(bad)
    assert "line 3" in str(err.value)


def test_import_unknown_row_reference(tmp_path):
    bad = tmp_path / "bad2.mps"
    bad.write_text(
        "NAME  x\nROWS\n N  OBJ\n L  r1\nCOLUMNS\n    c1  nosuch  1.0\nENDATA\n")
    with pytest.raises(MpsParseError):
        import_standard(bad)
