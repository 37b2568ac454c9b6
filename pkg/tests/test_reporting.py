"""Report aggregation invariants and CSV emission round-trips."""

import csv

import numpy as np
import pytest

from h2plan.core.types import NetworkModel, Technology
from h2plan.expansion import build_model, extract_solution, solve_problem
from h2plan.reporting import (
    COST_CATEGORIES,
    build_report,
    emit_csv,
    emit_suite_csv,
    technology_family,
    write_summary,
)
from h2plan.scenario import PRESETS, preset, run_suite

from conftest import pipeline_pair, single_node_gas

R2050 = preset("R2050")


@pytest.fixture(scope="module")
def suite(two_node):
    results = run_suite(two_node, list(PRESETS))
    reports = {name: build_report(results[name], two_node, preset(name))
               for name in results}
    return results, reports


def test_family_labels():
    def tech(cin, cout, emis=0.0, ccs=0.0, profile=None):
        return Technology(id="t", node="A", carrier_in=cin, carrier_out=cout,
                          emission_factor=emis, ccs_capture_factor=ccs,
                          availability_profile=profile)

    assert technology_family(tech("electricity", "hydrogen")) == "electrolysis"
    assert technology_family(tech("gas", "hydrogen", 229.0)) == "smr"
    assert technology_family(tech("gas", "hydrogen", 105.0, 124.0)) == "smr_ccs_54"
    assert technology_family(tech("gas", "hydrogen", 26.0, 204.0)) == "smr_ccs_89"
    assert technology_family(tech("none", "electricity",
                                  profile=np.ones(2))) == "vre"
    assert technology_family(tech("hydrogen", "electricity")) == "h2_power"
    assert technology_family(tech("gas", "electricity", 330.0)) == "conventional"


def test_co2_totals_match_dispatch(two_node, suite):
    results, reports = suite
    for name, report in reports.items():
        expect = {"electricity": 0.0, "hydrogen": 0.0}
        for tech in two_node.technologies:
            sector = ("hydrogen" if tech.carrier_out == "hydrogen"
                      else "electricity")
            out = float(np.sum(results[name].dispatch[tech.id]))
            expect[sector] += out * tech.emission_factor / 1000.0
        assert report.co2_by_sector["electricity"] == pytest.approx(
            expect["electricity"], abs=1e-9)
        assert report.co2_by_sector["hydrogen"] == pytest.approx(
            expect["hydrogen"], abs=1e-9)


def test_co2_cost_component_exact(suite):
    _, reports = suite
    for report in reports.values():
        assert report.cost_breakdown["co2_cost"] == 250.0 * report.total_co2


def test_cost_breakdown_sums_to_objective(suite):
    _, reports = suite
    for report in reports.values():
        total = sum(report.cost_breakdown.values())
        assert total == pytest.approx(report.objective, rel=1e-8)


def test_trade_matrices_antisymmetric(suite):
    _, reports = suite
    for report in reports.values():
        assert np.allclose(report.trade_electricity,
                           -report.trade_electricity.T, atol=1e-9)
        assert np.allclose(report.trade_h2, -report.trade_h2.T, atol=1e-9)


def test_energy_accounting_per_node(two_node, suite):
    results, _ = suite
    res = results["R2050"]
    grid = two_node.grid
    for node in two_node.nodes:
        supplied = np.zeros(grid.horizon_steps)
        consumed = node.electricity_demand.astype(float).copy()
        for tech in two_node.technologies:
            if tech.node != node.id:
                continue
            if tech.carrier_out == "electricity":
                supplied += res.dispatch[tech.id]
            if tech.carrier_in == "electricity":
                consumed += res.dispatch[tech.id] / tech.efficiency
        for stor in two_node.storages:
            if stor.node == node.id and stor.carrier == "electricity":
                supplied += res.storage_discharge[stor.id]
                consumed += res.storage_charge[stor.id]
        for corr in two_node.corridors:
            if corr.to_node == node.id:
                supplied += res.corridor_flow[corr.key]
            elif corr.from_node == node.id:
                supplied -= res.corridor_flow[corr.key]
        for (nid, fi), draw in res.flexible_draw.items():
            if nid == node.id:
                consumed += draw
        assert np.abs(supplied - consumed).max() <= 1e-6 * max(
            1.0, float(np.abs(consumed).max()))


def test_all_electrolysis_means_zero_h2_sector_co2():
    # electrolyser-only hydrogen supply carries no process emissions
    net = pipeline_pair(h2_per_block=400.0)
    p = build_model(net, R2050)
    raw = solve_problem(p)
    res = extract_solution(p, raw, net, R2050)
    report = build_report(res, net, R2050)
    assert set(report.h2_supply_by_tech) == {"electrolysis"}
    assert report.co2_by_sector["hydrogen"] == 0.0
    assert report.co2_by_sector["electricity"] > 0.0  # gas-fired power


def test_fully_converted_pipeline_gives_full_share():
    net = pipeline_pair(h2_per_block=1500.0, eta1=0.5, eta2=0.75,
                        cap_gas=1000.0)
    p = build_model(net, R2050)
    raw = solve_problem(p)
    res = extract_solution(p, raw, net, R2050)
    report = build_report(res, net, R2050)
    assert report.retrofit_share == pytest.approx(1.0)


def test_zero_demand_report():
    net = single_node_gas(demand=0.0, fixed_om=10000.0)
    p = build_model(net, R2050)
    raw = solve_problem(p)
    res = extract_solution(p, raw, net, R2050)
    report = build_report(res, net, R2050)
    assert report.total_co2 == 0.0
    assert report.gas_consumption == 0.0
    assert sum(report.cost_breakdown.values()) == pytest.approx(5_000_000.0)
    assert report.cost_breakdown["fixed_om"] == pytest.approx(5_000_000.0)


def test_report_requires_optimal(two_node):
    from h2plan.expansion import failed_result
    from h2plan.lp.problem import LpSolution
    from h2plan.lp import SolveStatus
    stub = failed_result(R2050, LpSolution(SolveStatus.INFEASIBLE))
    with pytest.raises(ValueError, match="non-optimal"):
        build_report(stub, two_node, R2050)


def _read_csv(path):
    with open(path, newline="", encoding="utf-8") as fh:
        return list(csv.reader(fh))


def test_emit_csv_round_trip(two_node, suite, tmp_path):
    _, reports = suite
    report = reports["R2050"]
    files = emit_csv(report, tmp_path)
    names = {f.name for f in files}
    assert names == {"h2_supply_by_tech.csv", "capacity_by_tech.csv",
                     "co2_by_sector.csv", "cost_breakdown.csv",
                     "trade_electricity.csv", "trade_h2.csv",
                     "retrofit_share.csv", "gas_consumption.csv",
                     "summary.csv"}
    rows = _read_csv(tmp_path / "h2_supply_by_tech.csv")
    assert rows[0] == ["family", "energy_mwh"]
    parsed = {name: float(val) for name, val in rows[1:]}
    assert parsed == report.h2_supply_by_tech

    rows = _read_csv(tmp_path / "cost_breakdown.csv")
    assert [r[0] for r in rows[1:]] == list(COST_CATEGORIES)
    parsed = {name: float(val) for name, val in rows[1:]}
    assert parsed == report.cost_breakdown

    rows = _read_csv(tmp_path / "trade_h2.csv")
    assert rows[0] == ["node"] + report.node_order
    values = np.array([[float(v) for v in r[1:]] for r in rows[1:]])
    assert np.array_equal(values, report.trade_h2)

    rows = _read_csv(tmp_path / "retrofit_share.csv")
    assert float(rows[1][0]) == report.retrofit_share


def test_summary_rows_follow_input_order(suite, tmp_path):
    _, reports = suite
    ordered = [reports["NoP2H2"], reports["R2050"]]
    write_summary(ordered, tmp_path / "summary.csv")
    rows = _read_csv(tmp_path / "summary.csv")
    assert rows[0] == ["scenario", "objective_eur", "total_co2_tons"]
    assert [r[0] for r in rows[1:]] == ["NoP2H2", "R2050"]
    assert float(rows[1][1]) == reports["NoP2H2"].objective


def test_emit_suite_layout(suite, tmp_path):
    _, reports = suite
    emit_suite_csv(reports, tmp_path)
    assert (tmp_path / "summary.csv").exists()
    for name in reports:
        assert (tmp_path / name / "cost_breakdown.csv").exists()
    rows = _read_csv(tmp_path / "summary.csv")
    assert [r[0] for r in rows[1:]] == list(reports)


def test_empty_trade_matrix_header_only(tmp_path):
    net = single_node_gas()
    p = build_model(net, R2050)
    res = extract_solution(p, solve_problem(p), net, R2050)
    report = build_report(res, net, R2050)
    emit_csv(report, tmp_path)
    rows = _read_csv(tmp_path / "trade_electricity.csv")
    assert rows[0] == ["node", "A"]
    assert len(rows) == 2  # single node, zero row
