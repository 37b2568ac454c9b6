"""LP fragments for two-stage repurposing of gas pipelines to hydrogen.

A pipeline with original gas rating G can be converted in two continuous
stages: the first stage turns withdrawn gas capacity into hydrogen
capacity at fraction eta1 of the gas energy rating; the second stage
adds compression on top of already-converted capacity, lifting the
attainable fraction to eta2.  New hydrogen capacity can also be built
outright where a corridor exists.  Everything stays linear, so the
fragments drop into any LP builder:

  * first-stage capacity r1 is bounded by eta1 * G (a plain column bound);
  * second-stage capacity r2 is tied to r1 by
        r2 <= (eta2 - eta1) / eta1 * r1,
    so extra compression is only available on converted capacity;
  * hydrogen flow per block is limited by the pre-existing hydrogen
    rating plus r1 + r2 + new build;
  * gas flow per block is limited by the gas rating minus the withdrawn
    capacity r1 / eta1 -- at full first-stage conversion the corridor
    carries no gas at all.

The second stage is priced incrementally: converting fully to the second
stage must cost exactly what a direct second-stage conversion would,
which fixes the incremental coefficient to
(eta2 * c2 - eta1 * c1) / (eta2 - eta1); see delta_capex.

Flows are split into two non-negative directional variables; capacity
limits bind the directional sum, one shared bidirectional rating.  Gas
flow is a single undirected total since no gas balance is modelled and
the variable exists only to expose the remaining gas rating.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core.types import Pipeline, TimeGrid
from .lp.problem import LpBuilder


def delta_capex(eta1: float, eta2: float, c1: float, c2: float) -> float:
    """Incremental annualized cost per MW of second-stage capacity.

    Chosen so that r1 = eta1*G, r2 = (eta2-eta1)*G (full conversion to
    the second stage) costs exactly eta2*G*c2.

    Raises ValueError unless 0 < eta1 < eta2.
    """
    if not 0.0 < eta1 < eta2:
        raise ValueError(
            f"stage fractions must satisfy 0 < eta1 < eta2, got "
            f"eta1={eta1}, eta2={eta2}")
    return (eta2 * c2 - eta1 * c1) / (eta2 - eta1)


@dataclass(frozen=True)
class RetrofitVars:
    """Column handles registered for one pipeline.

    cap_* are MW ratings; flow lists hold one column per hydrogen block,
    in MWh per block.
    """

    cap_retrofit1: int
    cap_retrofit2: int
    cap_new: int
    flow_h2_fwd: tuple[int, ...]
    flow_h2_rev: tuple[int, ...]
    flow_ch4: tuple[int, ...]
    flow_rows: tuple[int, ...]      # hydrogen flow limit row per block
    ch4_rows: tuple[int, ...]       # gas flow limit row per block
    coupling_row: int               # second stage tied to first stage


@dataclass(frozen=True)
class RetrofitCost:
    """Objective contribution of one pipeline's conversion investments."""

    delta_c2: float                          # EUR/MW/yr, incremental stage 2
    total_cost_expr: tuple[tuple[int, float], ...]  # (column, coefficient)

    def evaluate(self, values) -> float:
        return sum(coef * values[col] for col, coef in self.total_cost_expr)


def emit_retrofit_constraints(pipeline: Pipeline, grid: TimeGrid,
                              sink: LpBuilder) -> RetrofitVars:
    """Register conversion variables and capacity rows for one pipeline.

    The first-stage limit is a column bound (single-variable constraint);
    coupling and per-block flow limits are rows.  When the corridor does
    not admit new construction the new-build column is fixed to zero.
    """
    if not 0.0 < pipeline.eta1 < pipeline.eta2 <= 1.0:
        raise ValueError(
            f"pipeline {pipeline.key}: invalid stage fractions "
            f"eta1={pipeline.eta1}, eta2={pipeline.eta2}")
    if pipeline.cap_ch4_init < 0 or pipeline.cap_h2_init < 0:
        raise ValueError(f"pipeline {pipeline.key}: negative initial capacity")

    key = pipeline.key
    g = pipeline.cap_ch4_init
    r1 = sink.add_col(f"r1_{key}", 0.0, pipeline.eta1 * g)
    r2 = sink.add_col(f"r2_{key}", 0.0)
    new_ub = 0.0 if not pipeline.new_buildable else float("inf")
    rnew = sink.add_col(f"rnew_{key}", 0.0, new_ub)

    ratio = (pipeline.eta2 - pipeline.eta1) / pipeline.eta1
    coupling = sink.add_row(f"stage2_{key}", [(r2, 1.0), (r1, -ratio)],
                            upper=0.0)

    dt_block = grid.block_duration
    fwd, rev, ch4, flow_rows, ch4_rows = [], [], [], [], []
    for b in range(grid.num_blocks):
        jf = sink.add_col(f"h2f_{key}_b{b}", 0.0)
        jr = sink.add_col(f"h2r_{key}_b{b}", 0.0)
        jc = sink.add_col(f"ch4_{key}_b{b}", 0.0)
        fwd.append(jf)
        rev.append(jr)
        ch4.append(jc)
        flow_rows.append(sink.add_row(
            f"h2cap_{key}_b{b}",
            [(jf, 1.0), (jr, 1.0),
             (r1, -dt_block), (r2, -dt_block), (rnew, -dt_block)],
            upper=pipeline.cap_h2_init * dt_block))
        ch4_rows.append(sink.add_row(
            f"ch4cap_{key}_b{b}",
            [(jc, 1.0), (r1, dt_block / pipeline.eta1)],
            upper=g * dt_block))

    return RetrofitVars(
        cap_retrofit1=r1,
        cap_retrofit2=r2,
        cap_new=rnew,
        flow_h2_fwd=tuple(fwd),
        flow_h2_rev=tuple(rev),
        flow_ch4=tuple(ch4),
        flow_rows=tuple(flow_rows),
        ch4_rows=tuple(ch4_rows),
        coupling_row=coupling,
    )


def emit_retrofit_cost(pipeline: Pipeline, vars: RetrofitVars,
                       sink: LpBuilder) -> RetrofitCost:
    """Add the pipeline's conversion investment cost to the objective."""
    dc2 = delta_capex(pipeline.eta1, pipeline.eta2,
                      pipeline.capex_retrofit1, pipeline.capex_retrofit2)
    terms = (
        (vars.cap_retrofit1, pipeline.capex_retrofit1),
        (vars.cap_retrofit2, dc2),
        (vars.cap_new, pipeline.capex_new),
    )
    for col, coef in terms:
        sink.add_obj(col, coef)
    return RetrofitCost(delta_c2=dc2, total_cost_expr=terms)


def residual_gas_capacity(pipeline: Pipeline, cap_retrofit1: float) -> float:
    """Gas rating left after withdrawing first-stage converted capacity (MW)."""
    return pipeline.cap_ch4_init - cap_retrofit1 / pipeline.eta1
