"""Assembly of the full planning LP and extraction of named results.

One model skeleton carries every investment option; scenario variants
only tighten column bounds (see scenario module).  Time axes: all
technology output and electricity quantities are per electricity period,
hydrogen flows, storage and balances are per hydrogen block.

Balances are hard equalities (no value of lost load), storage cycles
(end level equals start level), and steam reformers at a node may cover
at most half of that node's annual hydrogen demand.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .core.types import INF, NetworkModel, PriceSet, Technology
from .core.validate import ValidationError, validate_network
from .lp.problem import LpBuilder, LpProblem, LpSolution, SolveOptions, SolveStatus
from .lp.simplex import solve as lp_solve
from .lp.problem import with_col_bounds
from .retrofit import (
    RetrofitVars,
    emit_retrofit_constraints,
    emit_retrofit_cost,
    residual_gas_capacity,
)
from .scenario import ScenarioConfig

SMR_FUEL = "gas"
SMR_DEMAND_SHARE = 0.5  # reformers may cover at most half a node's H2 demand


def is_electrolyser(tech: Technology) -> bool:
    return tech.carrier_in == "electricity" and tech.carrier_out == "hydrogen"


def is_smr_family(tech: Technology) -> bool:
    return tech.carrier_in == SMR_FUEL and tech.carrier_out == "hydrogen"


def variable_cost(tech: Technology, prices: PriceSet) -> float:
    """EUR per MWh of output: fuel, CO2 charge and other variable cost."""
    fuel = 0.0
    if tech.carrier_in not in ("electricity", "hydrogen", "none"):
        fuel = prices.fuel(tech.carrier_in) / tech.efficiency
    return (fuel + prices.co2_price * tech.emission_factor / 1000.0
            + tech.variable_cost_extra)


@dataclass
class ModelHandle:
    """Builder plus registries mapping model entities to column/row ids.

    Column ids for per-period families are stored as the first index of a
    contiguous run (one column per period/block).
    """

    builder: LpBuilder
    gen_start: dict[str, int] = field(default_factory=dict)
    new_capacity: dict[str, int] = field(default_factory=dict)
    stor_level_start: dict[str, int] = field(default_factory=dict)
    stor_charge_start: dict[str, int] = field(default_factory=dict)
    stor_discharge_start: dict[str, int] = field(default_factory=dict)
    stor_new_energy: dict[str, int] = field(default_factory=dict)
    stor_new_power: dict[str, int] = field(default_factory=dict)
    stor_steps: dict[str, int] = field(default_factory=dict)
    corr_fwd_start: dict[str, int] = field(default_factory=dict)
    corr_rev_start: dict[str, int] = field(default_factory=dict)
    corr_new_capacity: dict[str, int] = field(default_factory=dict)
    flex_start: dict[tuple[str, int], int] = field(default_factory=dict)
    retrofit: dict[str, RetrofitVars] = field(default_factory=dict)
    elec_balance_start: dict[str, int] = field(default_factory=dict)
    h2_balance_start: dict[str, int] = field(default_factory=dict)
    smr_cap_row: dict[str, int] = field(default_factory=dict)
    problem: Optional[LpProblem] = None


def build_handle(network: NetworkModel) -> ModelHandle:
    """Emit the full skeleton (all capabilities enabled) plus registries."""
    violations = validate_network(network)
    if violations:
        raise ValidationError(violations)

    grid = network.grid
    T, B = grid.horizon_steps, grid.num_blocks
    dt = grid.step_duration
    prices = network.prices
    b = LpBuilder(minimize=True)
    h = ModelHandle(builder=b)

    # technology output per period; upper bounds for non-investable techs,
    # capacity rows tying output to new capacity otherwise
    for tech in network.technologies:
        prof = tech.availability_profile
        vc = variable_cost(tech, prices)
        start = b.num_cols
        h.gen_start[tech.id] = start
        for t in range(T):
            avail = 1.0 if prof is None else float(prof[t])
            ub = INF if tech.max_new_capacity > 0 else tech.initial_capacity * avail * dt
            if avail == 0.0:
                ub = 0.0
            b.add_col(f"q_{tech.id}_t{t}", 0.0, ub, vc)
        if tech.max_new_capacity > 0:
            cap = b.add_col(f"new_{tech.id}", 0.0, tech.max_new_capacity,
                            tech.capex_annualized + tech.fixed_om)
            h.new_capacity[tech.id] = cap
            for t in range(T):
                avail = 1.0 if prof is None else float(prof[t])
                if avail == 0.0:
                    continue
                b.add_row(f"cap_{tech.id}_t{t}",
                          [(start + t, 1.0), (cap, -avail * dt)],
                          upper=tech.initial_capacity * avail * dt)
        b.objective_offset += tech.fixed_om * tech.initial_capacity

    # storage: level/charge/discharge on the carrier's own time axis
    for stor in network.storages:
        steps = T if stor.carrier == "electricity" else B
        step_hours = dt if stor.carrier == "electricity" else grid.block_duration
        h.stor_steps[stor.id] = steps
        lvl = b.num_cols
        h.stor_level_start[stor.id] = lvl
        level_ub = INF if stor.investable else stor.initial_energy_capacity
        for k in range(steps):
            b.add_col(f"lvl_{stor.id}_k{k}", 0.0, level_ub)
        chg = b.num_cols
        h.stor_charge_start[stor.id] = chg
        power_ub = INF if stor.investable else stor.initial_power_capacity * step_hours
        for k in range(steps):
            b.add_col(f"chg_{stor.id}_k{k}", 0.0, power_ub)
        dis = b.num_cols
        h.stor_discharge_start[stor.id] = dis
        for k in range(steps):
            b.add_col(f"dis_{stor.id}_k{k}", 0.0, power_ub)
        if stor.investable:
            je = b.add_col(f"newe_{stor.id}", 0.0, INF,
                           stor.energy_capex_annualized)
            jp = b.add_col(f"newp_{stor.id}", 0.0, INF,
                           stor.power_capex_annualized)
            h.stor_new_energy[stor.id] = je
            h.stor_new_power[stor.id] = jp
            for k in range(steps):
                b.add_row(f"ecap_{stor.id}_k{k}", [(lvl + k, 1.0), (je, -1.0)],
                          upper=stor.initial_energy_capacity)
                b.add_row(f"pcapc_{stor.id}_k{k}",
                          [(chg + k, 1.0), (jp, -step_hours)],
                          upper=stor.initial_power_capacity * step_hours)
                b.add_row(f"pcapd_{stor.id}_k{k}",
                          [(dis + k, 1.0), (jp, -step_hours)],
                          upper=stor.initial_power_capacity * step_hours)
        for k in range(steps):  # cyclic energy balance of the store
            prev = (k - 1) % steps
            b.add_eq_row(f"dyn_{stor.id}_k{k}",
                         [(lvl + k, 1.0), (lvl + prev, -1.0),
                          (chg + k, -stor.charge_eff),
                          (dis + k, 1.0 / stor.discharge_eff)], 0.0)

    # electricity corridors: two directions sharing one rating
    for corr in network.corridors:
        key = corr.key
        fwd = b.num_cols
        h.corr_fwd_start[key] = fwd
        for t in range(T):
            b.add_col(f"ef_{key}_t{t}", 0.0)
        rev = b.num_cols
        h.corr_rev_start[key] = rev
        for t in range(T):
            b.add_col(f"er_{key}_t{t}", 0.0)
        coefs_new = []
        if corr.expandable:
            jn = b.add_col(f"newc_{key}", 0.0, INF, corr.capex_annualized)
            h.corr_new_capacity[key] = jn
            coefs_new = [(jn, -dt)]
        for t in range(T):
            b.add_row(f"ecap_{key}_t{t}",
                      [(fwd + t, 1.0), (rev + t, 1.0)] + coefs_new,
                      upper=corr.initial_capacity * dt)

    # shiftable loads: fixed energy per window, bounded draw per period
    for node in network.nodes:
        for fi, flex in enumerate(node.flexible_demand_specs):
            start = b.num_cols
            h.flex_start[(node.id, fi)] = start
            for t in range(T):
                b.add_col(f"flex_{node.id}_{fi}_t{t}",
                          flex.min_draw * dt, flex.max_draw * dt)
            for w in range(T // flex.window_len):
                periods = range(w * flex.window_len, (w + 1) * flex.window_len)
                b.add_eq_row(f"flexw_{node.id}_{fi}_w{w}",
                             [(start + t, 1.0) for t in periods],
                             flex.total_energy_per_window)

    # pipeline conversion fragments and their investment costs
    for pipe in network.pipelines:
        rv = emit_retrofit_constraints(pipe, grid, b)
        emit_retrofit_cost(pipe, rv, b)
        h.retrofit[pipe.key] = rv

    # nodal balances
    for node in network.nodes:
        nid = node.id
        techs_here = [t for t in network.technologies if t.node == nid]
        stors_here = [s for s in network.storages if s.node == nid]

        h.elec_balance_start[nid] = b.num_rows
        for t in range(T):
            coefs = []
            for tech in techs_here:
                j = h.gen_start[tech.id] + t
                if tech.carrier_out == "electricity":
                    coefs.append((j, 1.0))
                if tech.carrier_in == "electricity":
                    coefs.append((j, -1.0 / tech.efficiency))
            for stor in stors_here:
                if stor.carrier != "electricity":
                    continue
                coefs.append((h.stor_discharge_start[stor.id] + t, 1.0))
                coefs.append((h.stor_charge_start[stor.id] + t, -1.0))
            for corr in network.corridors:
                if corr.to_node == nid:
                    coefs.append((h.corr_fwd_start[corr.key] + t, 1.0))
                    coefs.append((h.corr_rev_start[corr.key] + t, -1.0))
                elif corr.from_node == nid:
                    coefs.append((h.corr_fwd_start[corr.key] + t, -1.0))
                    coefs.append((h.corr_rev_start[corr.key] + t, 1.0))
            for fi in range(len(node.flexible_demand_specs)):
                coefs.append((h.flex_start[(nid, fi)] + t, -1.0))
            b.add_eq_row(f"ebal_{nid}_t{t}", coefs,
                         float(node.electricity_demand[t]))

        h.h2_balance_start[nid] = b.num_rows
        for blk in range(B):
            coefs = []
            for tech in techs_here:
                if tech.carrier_out == "hydrogen":
                    for t in grid.periods_of(blk):
                        coefs.append((h.gen_start[tech.id] + t, 1.0))
                if tech.carrier_in == "hydrogen":
                    for t in grid.periods_of(blk):
                        coefs.append((h.gen_start[tech.id] + t,
                                      -1.0 / tech.efficiency))
            for stor in stors_here:
                if stor.carrier != "hydrogen":
                    continue
                coefs.append((h.stor_discharge_start[stor.id] + blk, 1.0))
                coefs.append((h.stor_charge_start[stor.id] + blk, -1.0))
            for pipe in network.pipelines:
                rv = h.retrofit[pipe.key]
                if pipe.to_node == nid:
                    coefs.append((rv.flow_h2_fwd[blk], 1.0))
                    coefs.append((rv.flow_h2_rev[blk], -1.0))
                elif pipe.from_node == nid:
                    coefs.append((rv.flow_h2_fwd[blk], -1.0))
                    coefs.append((rv.flow_h2_rev[blk], 1.0))
            b.add_eq_row(f"h2bal_{nid}_b{blk}", coefs,
                         float(node.h2_demand[blk]))

        # reformer share of this node's annual hydrogen demand
        smr_here = [t for t in techs_here if is_smr_family(t)]
        if smr_here:
            coefs = [(h.gen_start[tech.id] + t, 1.0)
                     for tech in smr_here for t in range(T)]
            h.smr_cap_row[nid] = b.add_row(
                f"smrcap_{nid}", coefs,
                upper=SMR_DEMAND_SHARE * float(np.sum(node.h2_demand)))

    h.problem = b.build()
    return h


def scenario_fixings(handle: ModelHandle, network: NetworkModel,
                     scenario: ScenarioConfig) -> list[int]:
    """Columns the scenario fixes to zero."""
    cols: list[int] = []
    if not scenario.allow_p2h2:
        for tech in network.technologies:
            if is_electrolyser(tech) and tech.id in handle.new_capacity:
                cols.append(handle.new_capacity[tech.id])
    if not scenario.allow_h2_storage:
        for stor in network.storages:
            if stor.carrier == "hydrogen" and stor.id in handle.stor_new_energy:
                cols.append(handle.stor_new_energy[stor.id])
                cols.append(handle.stor_new_power[stor.id])
    if not scenario.allow_h2_transmission:
        for rv in handle.retrofit.values():
            cols.extend((rv.cap_retrofit1, rv.cap_retrofit2, rv.cap_new))
    if not scenario.allow_e_transmission_expansion:
        cols.extend(handle.corr_new_capacity.values())
    return cols


def apply_scenario(handle: ModelHandle, network: NetworkModel,
                   scenario: ScenarioConfig) -> LpProblem:
    """Scenario variant of the skeleton: bound fixings only."""
    problem = handle.problem
    lower = problem.col_lower.copy()
    upper = problem.col_upper.copy()
    # CO2-storage prohibitions are policy, not scenario: applied always
    banned = {n.id for n in network.nodes if not n.allows_co2_storage}
    for tech in network.technologies:
        if tech.has_ccs and tech.node in banned and tech.id in handle.new_capacity:
            j = handle.new_capacity[tech.id]
            lower[j] = upper[j] = 0.0
    for j in scenario_fixings(handle, network, scenario):
        lower[j] = upper[j] = 0.0
    return with_col_bounds(problem, lower, upper)


def build_model(network: NetworkModel, scenario: ScenarioConfig) -> LpProblem:
    """Validated network + scenario -> ready-to-solve LpProblem."""
    handle = build_handle(network)
    return apply_scenario(handle, network, scenario)


def solve_problem(problem: LpProblem,
                  options: SolveOptions | None = None) -> LpSolution:
    return lp_solve(problem, options)


class NotOptimalError(RuntimeError):
    """Extraction refused because the solve did not reach optimality."""

    def __init__(self, status: SolveStatus, message: str = ""):
        self.status = status
        super().__init__(f"solution status is {status.value}: {message}")


@dataclass
class PlanningResult:
    """Named quantities of one scenario solution."""

    scenario: str
    status: SolveStatus
    objective: float = float("nan")
    iterations: int = 0
    dispatch: dict[str, np.ndarray] = field(default_factory=dict)
    new_capacity: dict[str, float] = field(default_factory=dict)
    storage_level: dict[str, np.ndarray] = field(default_factory=dict)
    storage_charge: dict[str, np.ndarray] = field(default_factory=dict)
    storage_discharge: dict[str, np.ndarray] = field(default_factory=dict)
    storage_new_energy: dict[str, float] = field(default_factory=dict)
    storage_new_power: dict[str, float] = field(default_factory=dict)
    corridor_flow: dict[str, np.ndarray] = field(default_factory=dict)
    corridor_new_capacity: dict[str, float] = field(default_factory=dict)
    pipeline_retrofit1: dict[str, float] = field(default_factory=dict)
    pipeline_retrofit2: dict[str, float] = field(default_factory=dict)
    pipeline_new: dict[str, float] = field(default_factory=dict)
    pipeline_flow: dict[str, np.ndarray] = field(default_factory=dict)
    pipeline_gas_capacity_left: dict[str, float] = field(default_factory=dict)
    flexible_draw: dict[tuple[str, int], np.ndarray] = field(default_factory=dict)
    elec_price: dict[str, np.ndarray] = field(default_factory=dict)
    h2_price: dict[str, np.ndarray] = field(default_factory=dict)

    @property
    def is_optimal(self) -> bool:
        return self.status is SolveStatus.OPTIMAL


def extract_solution(problem: LpProblem, raw: LpSolution,
                     network: NetworkModel, scenario: ScenarioConfig,
                     handle: ModelHandle | None = None) -> PlanningResult:
    """Map raw column values and duals back to named planning quantities."""
    if not raw.is_optimal:
        raise NotOptimalError(raw.status, raw.message)
    if handle is None:
        handle = build_handle(network)

    grid = network.grid
    T, B = grid.horizon_steps, grid.num_blocks
    x = raw.col_values
    y = raw.row_duals
    res = PlanningResult(scenario=scenario.name, status=raw.status,
                         objective=raw.objective, iterations=raw.iterations)

    for tech in network.technologies:
        start = handle.gen_start[tech.id]
        res.dispatch[tech.id] = x[start:start + T].copy()
        j = handle.new_capacity.get(tech.id)
        res.new_capacity[tech.id] = float(x[j]) if j is not None else 0.0

    for stor in network.storages:
        steps = handle.stor_steps[stor.id]
        for label, table in (("level", res.storage_level),
                             ("charge", res.storage_charge),
                             ("discharge", res.storage_discharge)):
            start = {"level": handle.stor_level_start,
                     "charge": handle.stor_charge_start,
                     "discharge": handle.stor_discharge_start}[label][stor.id]
            table[stor.id] = x[start:start + steps].copy()
        je = handle.stor_new_energy.get(stor.id)
        jp = handle.stor_new_power.get(stor.id)
        res.storage_new_energy[stor.id] = float(x[je]) if je is not None else 0.0
        res.storage_new_power[stor.id] = float(x[jp]) if jp is not None else 0.0

    for corr in network.corridors:
        key = corr.key
        fwd = handle.corr_fwd_start[key]
        rev = handle.corr_rev_start[key]
        res.corridor_flow[key] = x[fwd:fwd + T] - x[rev:rev + T]
        j = handle.corr_new_capacity.get(key)
        res.corridor_new_capacity[key] = float(x[j]) if j is not None else 0.0

    for pipe in network.pipelines:
        rv = handle.retrofit[pipe.key]
        r1 = float(x[rv.cap_retrofit1])
        res.pipeline_retrofit1[pipe.key] = r1
        res.pipeline_retrofit2[pipe.key] = float(x[rv.cap_retrofit2])
        res.pipeline_new[pipe.key] = float(x[rv.cap_new])
        res.pipeline_flow[pipe.key] = np.array(
            [x[rv.flow_h2_fwd[blk]] - x[rv.flow_h2_rev[blk]] for blk in range(B)])
        res.pipeline_gas_capacity_left[pipe.key] = residual_gas_capacity(pipe, r1)

    for key, start in handle.flex_start.items():
        res.flexible_draw[key] = x[start:start + T].copy()

    for node in network.nodes:
        e0 = handle.elec_balance_start[node.id]
        res.elec_price[node.id] = y[e0:e0 + T].copy()
        h0 = handle.h2_balance_start[node.id]
        res.h2_price[node.id] = y[h0:h0 + B].copy()

    return res


def failed_result(scenario: ScenarioConfig, raw: LpSolution) -> PlanningResult:
    """Placeholder result for a variant that did not reach optimality."""
    return PlanningResult(scenario=scenario.name, status=raw.status,
                          iterations=raw.iterations)
