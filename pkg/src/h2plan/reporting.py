"""Report assembly and CSV emission for solved scenarios.

Output schemas are documented in docs/outputs.md.  Emissions from
hydrogen production count toward the hydrogen sector, power plant
emissions toward the electricity sector.  All CSVs are UTF-8 with a
header row; floats are written with repr so re-running a scenario
reproduces files byte-for-byte.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .core.types import NetworkModel, Technology
from .expansion import (
    PlanningResult,
    SMR_FUEL,
    is_smr_family,
    variable_cost,
)
from .retrofit import delta_capex
from .scenario import ScenarioConfig


def technology_family(tech: Technology) -> str:
    """Reporting bucket for a technology.

    Hydrogen producers split into electrolysis, plain reforming and
    reforming with CCS labelled by its capture rate (captured share of
    process CO2, rounded to percent).  Electricity producers split into
    vre (profile-limited, no fuel), hydrogen-fired and conventional.
    """
    if tech.carrier_out == "hydrogen":
        if tech.carrier_in == "electricity":
            return "electrolysis"
        if tech.carrier_in == SMR_FUEL:
            if tech.ccs_capture_factor <= 0.0:
                return "smr"
            rate = tech.ccs_capture_factor / (
                tech.ccs_capture_factor + tech.emission_factor)
            return f"smr_ccs_{round(100 * rate)}"
        return "other_h2"
    if tech.is_vre:
        return "vre"
    if tech.carrier_in == "hydrogen":
        return "h2_power"
    return "conventional"


COST_CATEGORIES = (
    "capex_new_vre",
    "capex_new_other_gen",
    "capex_new_p2h2",
    "capex_new_smr",
    "capex_transmission",
    "capex_retrofit",
    "capex_storage",
    "fixed_om",
    "var_generation",
    "var_h2_fuel",
    "co2_cost",
)


@dataclass
class SystemReport:
    scenario: str
    objective: float
    h2_supply_by_tech: dict[str, float] = field(default_factory=dict)
    capacity_by_tech: dict[str, float] = field(default_factory=dict)
    co2_by_sector: dict[str, float] = field(default_factory=dict)
    cost_breakdown: dict[str, float] = field(default_factory=dict)
    node_order: list[str] = field(default_factory=list)
    trade_electricity: np.ndarray = field(default_factory=lambda: np.zeros((0, 0)))
    trade_h2: np.ndarray = field(default_factory=lambda: np.zeros((0, 0)))
    retrofit_share: float = 0.0
    gas_consumption: float = 0.0

    @property
    def total_co2(self) -> float:
        return float(sum(self.co2_by_sector.values()))


def build_report(result: PlanningResult, network: NetworkModel,
                 scenario: ScenarioConfig) -> SystemReport:
    """Aggregate a solved scenario into the report categories."""
    if not result.is_optimal:
        raise ValueError(
            f"cannot report on a non-optimal result (status {result.status.value})")

    prices = network.prices
    report = SystemReport(scenario=scenario.name, objective=result.objective,
                          node_order=network.node_ids())
    costs = {k: 0.0 for k in COST_CATEGORIES}
    co2 = {"electricity": 0.0, "hydrogen": 0.0}

    for tech in network.technologies:
        family = technology_family(tech)
        output = float(np.sum(result.dispatch[tech.id]))
        new_cap = result.new_capacity[tech.id]
        total_cap = tech.initial_capacity + new_cap

        report.capacity_by_tech[family] = (
            report.capacity_by_tech.get(family, 0.0) + total_cap)
        if tech.carrier_out == "hydrogen":
            report.h2_supply_by_tech[family] = (
                report.h2_supply_by_tech.get(family, 0.0) + output)
            sector = "hydrogen"
        else:
            sector = "electricity"
        co2[sector] += output * tech.emission_factor / 1000.0

        if family == "vre":
            costs["capex_new_vre"] += tech.capex_annualized * new_cap
        elif family == "electrolysis":
            costs["capex_new_p2h2"] += tech.capex_annualized * new_cap
        elif is_smr_family(tech):
            costs["capex_new_smr"] += tech.capex_annualized * new_cap
        else:
            costs["capex_new_other_gen"] += tech.capex_annualized * new_cap
        costs["fixed_om"] += tech.fixed_om * total_cap

        var_no_co2 = (variable_cost(tech, prices)
                      - prices.co2_price * tech.emission_factor / 1000.0)
        if tech.carrier_out == "hydrogen":
            costs["var_h2_fuel"] += var_no_co2 * output
        else:
            costs["var_generation"] += var_no_co2 * output

        if tech.carrier_in == SMR_FUEL:
            report.gas_consumption += output / tech.efficiency

    report.co2_by_sector = co2
    costs["co2_cost"] = prices.co2_price * (co2["electricity"] + co2["hydrogen"])

    for stor in network.storages:
        costs["capex_storage"] += (
            stor.energy_capex_annualized * result.storage_new_energy[stor.id]
            + stor.power_capex_annualized * result.storage_new_power[stor.id])

    for corr in network.corridors:
        costs["capex_transmission"] += (
            corr.capex_annualized * result.corridor_new_capacity[corr.key])

    gas_cap_total = 0.0
    withdrawn = 0.0
    for pipe in network.pipelines:
        r1 = result.pipeline_retrofit1[pipe.key]
        r2 = result.pipeline_retrofit2[pipe.key]
        rnew = result.pipeline_new[pipe.key]
        dc2 = delta_capex(pipe.eta1, pipe.eta2, pipe.capex_retrofit1,
                          pipe.capex_retrofit2)
        costs["capex_retrofit"] += (pipe.capex_retrofit1 * r1 + dc2 * r2
                                    + pipe.capex_new * rnew)
        gas_cap_total += pipe.cap_ch4_init
        withdrawn += r1 / pipe.eta1

    report.retrofit_share = withdrawn / gas_cap_total if gas_cap_total > 0 else 0.0
    report.cost_breakdown = costs

    ids = report.node_order
    pos = {nid: k for k, nid in enumerate(ids)}
    elec = np.zeros((len(ids), len(ids)))
    for corr in network.corridors:
        net_flow = float(np.sum(result.corridor_flow[corr.key]))
        i, j = pos[corr.from_node], pos[corr.to_node]
        elec[i, j] += net_flow
        elec[j, i] -= net_flow
    h2 = np.zeros((len(ids), len(ids)))
    for pipe in network.pipelines:
        net_flow = float(np.sum(result.pipeline_flow[pipe.key]))
        i, j = pos[pipe.from_node], pos[pipe.to_node]
        h2[i, j] += net_flow
        h2[j, i] -= net_flow
    report.trade_electricity = elec
    report.trade_h2 = h2
    return report


def _w(x: float) -> str:
    return repr(float(x))


def _write_csv(path: Path, header: list[str], rows) -> Path:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)
    return path


def _write_mapping(path: Path, key_name: str, value_name: str,
                   mapping: dict[str, float]) -> Path:
    return _write_csv(path, [key_name, value_name],
                      [[k, _w(v)] for k, v in sorted(mapping.items())])


def _write_matrix(path: Path, nodes: list[str], matrix: np.ndarray) -> Path:
    rows = [[nid] + [_w(matrix[i, j]) for j in range(len(nodes))]
            for i, nid in enumerate(nodes)]
    return _write_csv(path, ["node"] + nodes, rows)


def emit_csv(report: SystemReport, out_dir) -> list[Path]:
    """One CSV per report field plus a one-row summary.csv."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    files = [
        _write_mapping(out / "h2_supply_by_tech.csv", "family", "energy_mwh",
                       report.h2_supply_by_tech),
        _write_mapping(out / "capacity_by_tech.csv", "family", "capacity_mw",
                       report.capacity_by_tech),
        _write_mapping(out / "co2_by_sector.csv", "sector", "emissions_tons",
                       report.co2_by_sector),
        _write_csv(out / "cost_breakdown.csv", ["category", "cost_eur"],
                   [[k, _w(report.cost_breakdown.get(k, 0.0))]
                    for k in COST_CATEGORIES]),
        _write_matrix(out / "trade_electricity.csv", report.node_order,
                      report.trade_electricity),
        _write_matrix(out / "trade_h2.csv", report.node_order, report.trade_h2),
        _write_csv(out / "retrofit_share.csv", ["retrofit_share"],
                   [[_w(report.retrofit_share)]]),
        _write_csv(out / "gas_consumption.csv", ["gas_consumption_mwh"],
                   [[_w(report.gas_consumption)]]),
        write_summary([report], out / "summary.csv"),
    ]
    return files


def write_summary(reports, path) -> Path:
    """summary.csv rows in input order: scenario, objective, total CO2."""
    return _write_csv(Path(path),
                      ["scenario", "objective_eur", "total_co2_tons"],
                      [[r.scenario, _w(r.objective), _w(r.total_co2)]
                       for r in reports])


def emit_suite_csv(reports: dict[str, SystemReport], out_dir) -> list[Path]:
    """Per-scenario subdirectories plus a combined top-level summary."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    files: list[Path] = []
    for name, report in reports.items():
        files.extend(emit_csv(report, out / name))
    files.append(write_summary(list(reports.values()), out / "summary.csv"))
    return files
