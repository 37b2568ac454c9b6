"""Structural validation of a planning instance.

Violations are data, not exceptions: validate_network returns the full
list so a caller can report everything at once.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .types import COUPLED_CARRIERS, INF, NO_CARRIER, NetworkModel


@dataclass(frozen=True)
class Violation:
    where: str     # "node:DE", "pipeline:DE-NL", "grid", ...
    message: str

    def __str__(self) -> str:
        return f"{self.where}: {self.message}"


def validate_network(model: NetworkModel) -> list[Violation]:
    """Check every instance invariant; empty list means the model is sound."""
    out: list[Violation] = []
    grid = model.grid

    if grid.horizon_steps < 1:
        out.append(Violation("grid", "horizon_steps must be >= 1"))
    if grid.step_duration <= 0:
        out.append(Violation("grid", "step_duration must be > 0"))
    if grid.h2_block_len < 1:
        out.append(Violation("grid", "h2_block_len must be >= 1"))
    elif grid.horizon_steps % grid.h2_block_len != 0:
        out.append(Violation(
            "grid", f"horizon_steps {grid.horizon_steps} is not a multiple "
                    f"of h2_block_len {grid.h2_block_len}"))

    node_ids = set()
    for node in model.nodes:
        where = f"node:{node.id}"
        if node.id in node_ids:
            out.append(Violation(where, "duplicate node id"))
        node_ids.add(node.id)
        if len(node.electricity_demand) != grid.horizon_steps:
            out.append(Violation(
                where, f"electricity demand has {len(node.electricity_demand)}"
                       f" periods, grid has {grid.horizon_steps}"))
        if grid.h2_block_len >= 1 and grid.horizon_steps % grid.h2_block_len == 0:
            if len(node.h2_demand) != grid.num_blocks:
                out.append(Violation(
                    where, f"h2 demand has {len(node.h2_demand)} blocks, "
                           f"grid has {grid.num_blocks}"))
        if np.any(np.asarray(node.electricity_demand) < 0):
            out.append(Violation(where, "negative electricity demand"))
        if np.any(np.asarray(node.h2_demand) < 0):
            out.append(Violation(where, "negative h2 demand"))
        for k, flex in enumerate(node.flexible_demand_specs):
            fwhere = f"{where}:flex{k}"
            if flex.window_len < 1:
                out.append(Violation(fwhere, "window_len must be >= 1"))
            elif grid.horizon_steps % flex.window_len != 0:
                out.append(Violation(
                    fwhere, f"window_len {flex.window_len} does not divide "
                            f"horizon_steps {grid.horizon_steps}"))
            if flex.min_draw > flex.max_draw:
                out.append(Violation(fwhere, "min_draw exceeds max_draw"))
            else:
                lo = flex.window_len * grid.step_duration * flex.min_draw
                hi = flex.window_len * grid.step_duration * flex.max_draw
                if not lo <= flex.total_energy_per_window <= hi:
                    out.append(Violation(
                        fwhere, f"window energy {flex.total_energy_per_window}"
                                f" outside feasible range [{lo}, {hi}]"))

    tech_ids = set()
    for tech in model.technologies:
        where = f"technology:{tech.id}"
        if tech.id in tech_ids:
            out.append(Violation(where, "duplicate technology id"))
        tech_ids.add(tech.id)
        if tech.node not in node_ids:
            out.append(Violation(where, f"unknown node {tech.node!r}"))
        if not 0.0 < tech.efficiency <= 1.0:
            out.append(Violation(where, f"efficiency {tech.efficiency} outside (0, 1]"))
        if tech.emission_factor < 0:
            out.append(Violation(where, "negative emission factor"))
        if tech.ccs_capture_factor < 0:
            out.append(Violation(where, "negative capture factor"))
        if tech.initial_capacity < 0:
            out.append(Violation(where, "negative initial capacity"))
        if tech.max_new_capacity < 0:
            out.append(Violation(where, "negative max new capacity"))
        if tech.capex_annualized < 0 or tech.fixed_om < 0:
            out.append(Violation(where, "negative cost coefficient"))
        if tech.carrier_out not in COUPLED_CARRIERS:
            out.append(Violation(
                where, f"carrier_out {tech.carrier_out!r} must be one of "
                       f"{COUPLED_CARRIERS}"))
        if (tech.carrier_in not in COUPLED_CARRIERS
                and tech.carrier_in != NO_CARRIER
                and tech.carrier_in not in model.prices.fuel_prices):
            out.append(Violation(
                where, f"fuel {tech.carrier_in!r} has no price entry"))
        if tech.availability_profile is not None:
            prof = np.asarray(tech.availability_profile)
            if len(prof) != grid.horizon_steps:
                out.append(Violation(
                    where, f"availability profile has {len(prof)} periods, "
                           f"grid has {grid.horizon_steps}"))
            if np.any(prof < 0) or np.any(prof > 1):
                out.append(Violation(where, "availability outside [0, 1]"))

    storage_ids = set()
    for stor in model.storages:
        where = f"storage:{stor.id}"
        if stor.id in storage_ids:
            out.append(Violation(where, "duplicate storage id"))
        storage_ids.add(stor.id)
        if stor.node not in node_ids:
            out.append(Violation(where, f"unknown node {stor.node!r}"))
        if stor.carrier not in COUPLED_CARRIERS:
            out.append(Violation(where, f"carrier {stor.carrier!r} must be one"
                                        f" of {COUPLED_CARRIERS}"))
        for label, eff in (("charge_eff", stor.charge_eff),
                           ("discharge_eff", stor.discharge_eff)):
            if not 0.0 < eff <= 1.0:
                out.append(Violation(where, f"{label} {eff} outside (0, 1]"))
        if min(stor.initial_energy_capacity, stor.initial_power_capacity,
               stor.energy_capex_annualized, stor.power_capex_annualized) < 0:
            out.append(Violation(where, "negative capacity or cost"))

    for pipe in model.pipelines:
        where = f"pipeline:{pipe.key}"
        for end in (pipe.from_node, pipe.to_node):
            if end not in node_ids:
                out.append(Violation(where, f"unknown node {end!r}"))
        if not 0.0 < pipe.eta1 < pipe.eta2 <= 1.0:
            out.append(Violation(
                where, f"retrofit fractions must satisfy 0 < eta1 < eta2 <= 1,"
                       f" got eta1={pipe.eta1}, eta2={pipe.eta2}"))
        if pipe.cap_ch4_init < 0 or pipe.cap_h2_init < 0:
            out.append(Violation(where, "negative initial capacity"))
        if min(pipe.capex_retrofit1, pipe.capex_retrofit2, pipe.capex_new) < 0:
            out.append(Violation(where, "negative cost coefficient"))

    for corr in model.corridors:
        where = f"corridor:{corr.key}"
        for end in (corr.from_node, corr.to_node):
            if end not in node_ids:
                out.append(Violation(where, f"unknown node {end!r}"))
        if corr.initial_capacity < 0:
            out.append(Violation(where, "negative initial capacity"))
        if corr.capex_annualized < 0:
            out.append(Violation(where, "negative cost coefficient"))

    for fuel, price in model.prices.fuel_prices.items():
        if price < 0:
            out.append(Violation(f"prices:{fuel}", "negative fuel price"))
    if model.prices.co2_price < 0:
        out.append(Violation("prices:co2", "negative co2 price"))

    return out


class ValidationError(ValueError):
    """Raised by loaders when an instance fails validation."""

    def __init__(self, violations: list[Violation]):
        self.violations = violations
        listing = "\n".join(f"  - {v}" for v in violations)
        super().__init__(f"instance has {len(violations)} violation(s):\n{listing}")
