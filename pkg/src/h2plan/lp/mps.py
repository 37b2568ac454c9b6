"""Fixed-layout MPS writer and reader.

Layout follows the classic fixed columns: field 1 at chars 2-3, field 2
at 5-12, field 3 at 15-22, field 4 at 25-36, field 5 at 40-47, field 6
at 50-61.  Sections emitted: NAME, ROWS, COLUMNS, RHS, RANGES (only when
a row has two distinct finite bounds), BOUNDS, ENDATA.

Name mangling: row/column names are sanitized to [A-Za-z0-9_], then
truncated to 8 characters.  A name that is still unique keeps its
truncation; a collision keeps the first 4 characters and replaces the
tail with a 4-character base-36 sequence number assigned in declaration
order, so regeneration is byte-stable.

Row encoding: equality -> E with RHS; upper-only -> L; lower-only -> G;
two-sided -> L with RHS = upper and RANGES entry upper - lower; free ->
N (unconstrained).  A constant objective offset is written as an RHS
entry on the objective row with value -offset, the common convention.

Numbers are written with the shortest decimal representation that
round-trips to the same double whenever it fits the 12-character value
field, falling back to scientific notation with reduced precision
otherwise.
"""

from __future__ import annotations

import re
from pathlib import Path

from .problem import INF, LpBuilder, LpProblem

_OBJ = "OBJ"
_B36 = "0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZ"


def _base36(k: int, width: int = 4) -> str:
    out = []
    for _ in range(width):
        out.append(_B36[k % 36])
        k //= 36
    return "".join(reversed(out))


def mangle_names(names, reserved=()) -> list[str]:
    """Deterministic 8-character unique names (scheme in module docstring)."""
    used = set(reserved)
    out = []
    counter = 0
    for raw in names:
        name = re.sub(r"[^A-Za-z0-9_]", "_", raw) or "_"
        name = name[:8]
        if name in used:
            base = name[:4]
            while True:
                name = base + _base36(counter)
                counter += 1
                if name not in used:
                    break
        used.add(name)
        out.append(name)
    return out


def _fmt_value(x: float) -> str:
    if x == 0.0:
        return "0"
    if x == int(x) and abs(x) < 1e12:
        s = str(int(x))
        if len(s) <= 12:
            return s
    s = repr(float(x))
    if len(s) <= 12:
        return s
    for prec in (9, 8, 7, 6, 5):
        s = f"{x:.{prec}G}"
        if len(s) <= 12:
            return s
    return f"{x:.4G}"


def _data_line(f1: str, f2: str, f3: str = "", f4: str = "",
               f5: str = "", f6: str = "") -> str:
    line = f" {f1:<2} {f2:<8}"
    if f3 or f4:
        line = f"{line}  {f3:<8}  {f4:<12}"
    if f5 or f6:
        line = f"{line}   {f5:<8}  {f6:<12}"
    return line.rstrip()


def export_standard(problem: LpProblem, path) -> None:
    """Write `problem` to `path` in fixed MPS form, byte-stable per input."""
    rows = mangle_names(problem.row_names or
                        [f"R{i}" for i in range(problem.num_rows)],
                        reserved={_OBJ})
    cols = mangle_names(problem.col_names or
                        [f"C{j}" for j in range(problem.num_cols)])

    lines = ["NAME          H2PLAN"]
    if not problem.minimize:
        lines += ["OBJSENSE", "    MAX"]

    lines.append("ROWS")
    lines.append(_data_line("N", _OBJ))
    row_type = []
    for i in range(problem.num_rows):
        lo, up = problem.row_lower[i], problem.row_upper[i]
        if lo == up:
            t = "E"
        elif lo > -INF and up < INF:
            t = "L"  # RHS = upper, RANGES recovers the lower bound
        elif up < INF:
            t = "L"
        elif lo > -INF:
            t = "G"
        else:
            t = "N"
        row_type.append(t)
        lines.append(_data_line(t, rows[i]))

    lines.append("COLUMNS")
    csc = problem.matrix
    for j in range(problem.num_cols):
        empty = csc.indptr[j] == csc.indptr[j + 1]
        if problem.objective[j] != 0.0 or empty:
            # columns must appear in COLUMNS to exist; emit a zero
            # objective entry for columns with no matrix coefficients
            lines.append(_data_line("", cols[j], _OBJ,
                                    _fmt_value(problem.objective[j])))
        for k in range(csc.indptr[j], csc.indptr[j + 1]):
            lines.append(_data_line("", cols[j], rows[csc.indices[k]],
                                    _fmt_value(csc.data[k])))

    lines.append("RHS")
    if problem.objective_offset != 0.0:
        lines.append(_data_line("", "RHS", _OBJ,
                                _fmt_value(-problem.objective_offset)))
    for i in range(problem.num_rows):
        t = row_type[i]
        if t == "N":
            continue
        rhs = problem.row_upper[i] if t in ("E", "L") else problem.row_lower[i]
        if rhs != 0.0:
            lines.append(_data_line("", "RHS", rows[i], _fmt_value(rhs)))

    ranged = [i for i in range(problem.num_rows)
              if row_type[i] == "L" and problem.row_lower[i] > -INF
              and problem.row_lower[i] != problem.row_upper[i]]
    if ranged:
        lines.append("RANGES")
        for i in ranged:
            span = problem.row_upper[i] - problem.row_lower[i]
            lines.append(_data_line("", "RNG", rows[i], _fmt_value(span)))

    lines.append("BOUNDS")
    for j in range(problem.num_cols):
        lo, up = problem.col_lower[j], problem.col_upper[j]
        if lo == 0.0 and up == INF:
            continue  # MPS default
        if lo == up:
            lines.append(_data_line("FX", "BND", cols[j], _fmt_value(lo)))
            continue
        if lo == -INF and up == INF:
            lines.append(_data_line("FR", "BND", cols[j]))
            continue
        if lo == -INF:
            lines.append(_data_line("MI", "BND", cols[j]))
        elif lo != 0.0:
            lines.append(_data_line("LO", "BND", cols[j], _fmt_value(lo)))
        if up < INF:
            lines.append(_data_line("UP", "BND", cols[j], _fmt_value(up)))

    lines.append("ENDATA")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


class MpsParseError(ValueError):
    def __init__(self, message: str, line_no: int = 0, section: str = ""):
        where = f" (section {section}, line {line_no})" if line_no else ""
        super().__init__(message + where)
        self.line_no = line_no
        self.section = section


def import_standard(path) -> LpProblem:
    """Read a file written by export_standard (tolerates free spacing)."""
    text = Path(path).read_text(encoding="utf-8")
    section = ""
    minimize = True
    objective_name = None
    offset = 0.0
    row_index: dict[str, int] = {}
    row_type: dict[str, str] = {}
    order: list[str] = []
    col_index: dict[str, int] = {}
    entries: dict[str, list[tuple[str, float]]] = {}
    obj_coefs: dict[str, float] = {}
    rhs: dict[str, float] = {}
    ranges: dict[str, float] = {}
    bounds: dict[str, dict[str, float]] = {}
    expect_objsense = False

    for line_no, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip() or raw.lstrip().startswith("*"):
            continue
        head = raw[:1] != " "
        tokens = raw.split()
        if head:
            key = tokens[0].upper()
            if key == "ENDATA":
                break
            if key in ("ROWS", "COLUMNS", "RHS", "RANGES", "BOUNDS"):
                section = key
            elif key == "NAME":
                section = "NAME"
            elif key == "OBJSENSE":
                expect_objsense = True
                section = "OBJSENSE"
            else:
                raise MpsParseError(f"unknown section {tokens[0]!r}", line_no,
                                    section)
            continue
        if expect_objsense and section == "OBJSENSE":
            minimize = tokens[0].upper() != "MAX"
            expect_objsense = False
            continue
        try:
            if section == "ROWS":
                t, name = tokens[0].upper(), tokens[1]
                if t == "N":
                    if objective_name is None:
                        objective_name = name
                    continue
                if t not in ("E", "L", "G"):
                    raise MpsParseError(f"bad row type {t!r}", line_no, section)
                row_index[name] = len(order)
                row_type[name] = t
                order.append(name)
            elif section == "COLUMNS":
                col = tokens[0]
                if col not in col_index:
                    col_index[col] = len(col_index)
                    entries[col] = []
                pairs = tokens[1:]
                if len(pairs) % 2:
                    raise MpsParseError("odd token count", line_no, section)
                for rname, val in zip(pairs[::2], pairs[1::2]):
                    v = float(val)
                    if rname == objective_name:
                        obj_coefs[col] = obj_coefs.get(col, 0.0) + v
                    elif rname in row_index:
                        entries[col].append((rname, v))
                    else:
                        raise MpsParseError(f"unknown row {rname!r}", line_no,
                                            section)
            elif section == "RHS":
                pairs = tokens[1:]
                for rname, val in zip(pairs[::2], pairs[1::2]):
                    if rname == objective_name:
                        offset = -float(val)
                    else:
                        rhs[rname] = float(val)
            elif section == "RANGES":
                pairs = tokens[1:]
                for rname, val in zip(pairs[::2], pairs[1::2]):
                    ranges[rname] = float(val)
            elif section == "BOUNDS":
                btype = tokens[0].upper()
                col = tokens[2]
                val = float(tokens[3]) if len(tokens) > 3 else 0.0
                bounds.setdefault(col, {})[btype] = val
            elif section == "NAME":
                pass
            else:
                raise MpsParseError("data before any section", line_no, section)
        except (IndexError, ValueError) as exc:
            if isinstance(exc, MpsParseError):
                raise
            raise MpsParseError(f"malformed line: {raw!r}", line_no,
                                section) from exc

    builder = LpBuilder(minimize=minimize)
    builder.objective_offset = offset

    for col in col_index:
        lo, up = 0.0, INF
        b = bounds.get(col, {})
        if "FX" in b:
            lo = up = b["FX"]
        else:
            if "FR" in b:
                lo, up = -INF, INF
            if "MI" in b:
                lo = -INF
            if "LO" in b:
                lo = b["LO"]
            if "UP" in b:
                up = b["UP"]
            if "PL" in b:
                up = INF
        builder.add_col(col, lo, up, obj_coefs.get(col, 0.0))

    by_row: dict[str, list[tuple[int, float]]] = {name: [] for name in order}
    for col, lst in entries.items():
        j = col_index[col]
        for rname, v in lst:
            by_row[rname].append((j, v))

    for name in order:
        t = row_type[name]
        r = rhs.get(name, 0.0)
        span = ranges.get(name)
        if t == "E":
            lo, up = r, r
            if span is not None:
                lo, up = (r, r + span) if span >= 0 else (r + span, r)
        elif t == "L":
            up = r
            lo = r - abs(span) if span is not None else -INF
        else:  # G
            lo = r
            up = r + abs(span) if span is not None else INF
        builder.add_row(name, by_row[name], lo, up)

    return builder.build()
