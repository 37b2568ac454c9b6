"""Instance types, validation, file round-trips and default datasets."""

import numpy as np
import pytest

from h2plan.core.defaults import (
    CCS_BANNED_COUNTRIES,
    CO2_PRICE_EUR_PER_TON,
    FUEL_PRICE_EUR_PER_GJ,
    H2_TECHNOLOGY_DATA,
    INITIAL_H2_CAPACITY_MW,
    RETROFIT_STAGE1_FRACTION,
    RETROFIT_STAGE2_FRACTION,
    default_prices,
    h2_technology,
)
from h2plan.core.io import (
    InstanceParseError,
    load_instance,
    models_equal,
    save_instance,
)
from h2plan.core.types import (
    FlexibleLoad,
    NetworkModel,
    Node,
    Pipeline,
    PriceSet,
    Technology,
    TimeGrid,
)
from h2plan.core.validate import ValidationError, validate_network

from conftest import TWO_NODE_DIR, pipeline_pair, single_node_gas


def test_well_formed_instance_has_no_violations(two_node):
    assert validate_network(two_node) == []


def test_validation_is_pure(two_node):
    first = validate_network(two_node)
    second = validate_network(two_node)
    assert first == second == []

    broken = pipeline_pair(eta1=0.8, eta2=0.6)
    assert validate_network(broken) == validate_network(broken)


def test_swapped_retrofit_fractions_flagged():
    model = pipeline_pair(eta1=0.8, eta2=0.6)
    violations = validate_network(model)
    assert len(violations) == 1
    assert "eta1" in violations[0].message and "eta2" in violations[0].message


def test_demand_length_mismatch_flagged():
    grid = TimeGrid(horizon_steps=4, step_duration=1.0, h2_block_len=1)
    node = Node(id="A", electricity_demand=np.zeros(5), h2_demand=np.zeros(4))
    model = NetworkModel(grid=grid, nodes=(node,))
    violations = validate_network(model)
    assert len(violations) == 1
    assert "5 periods" in violations[0].message


def test_unknown_node_reference_flagged():
    model = single_node_gas()
    bad = NetworkModel(
        grid=model.grid, nodes=model.nodes, technologies=model.technologies,
        pipelines=(Pipeline(from_node="A", to_node="NOWHERE",
                            cap_ch4_init=10.0),),
        prices=model.prices)
    assert any("NOWHERE" in v.message for v in validate_network(bad))


def test_flexible_load_window_checks():
    grid = TimeGrid(horizon_steps=6, step_duration=1.0, h2_block_len=1)
    node = Node(id="A", electricity_demand=np.zeros(6), h2_demand=np.zeros(6),
                flexible_demand_specs=(
                    FlexibleLoad(total_energy_per_window=100.0, window_len=4,
                                 max_draw=10.0),))
    violations = validate_network(NetworkModel(grid=grid, nodes=(node,)))
    # window does not divide the horizon, and the energy is infeasible anyway
    assert any("does not divide" in v.message for v in violations)
    assert any("outside feasible range" in v.message for v in violations)


def test_grid_divisibility_checked():
    grid = TimeGrid(horizon_steps=10, step_duration=1.0, h2_block_len=4)
    node = Node(id="A", electricity_demand=np.zeros(10), h2_demand=np.zeros(2))
    violations = validate_network(NetworkModel(grid=grid, nodes=(node,)))
    assert any("multiple" in v.message for v in violations)


def test_unpriced_fuel_flagged():
    model = single_node_gas()
    stripped = NetworkModel(grid=model.grid, nodes=model.nodes,
                            technologies=model.technologies,
                            prices=PriceSet({}, 250.0))
    assert any("no price entry" in v.message
               for v in validate_network(stripped))


def test_load_bundled_two_node(two_node):
    assert len(two_node.nodes) == 2
    assert len(two_node.pipelines) == 1
    assert two_node.grid.num_blocks == 4
    banned = [n for n in two_node.nodes if not n.allows_co2_storage]
    assert len(banned) == 1


def test_load_missing_directory(tmp_path):
    with pytest.raises(InstanceParseError):
        load_instance(tmp_path / "nope")


def test_load_empty_directory(tmp_path):
    with pytest.raises(InstanceParseError, match="missing instance files"):
        load_instance(tmp_path)


def test_load_rejects_unknown_node_reference(tmp_path, two_node):
    save_instance(two_node, tmp_path)
    pipelines = (tmp_path / "pipelines.csv").read_text()
    (tmp_path / "pipelines.csv").write_text(pipelines.replace("BAN", "XXX"))
    with pytest.raises(ValidationError, match="XXX"):
        load_instance(tmp_path)


def test_load_reports_bad_number_with_context(tmp_path, two_node):
    save_instance(two_node, tmp_path)
    text = (tmp_path / "pipelines.csv").read_text().splitlines()
    text[1] = text[1].replace("0.6", "zero.six", 1)
    (tmp_path / "pipelines.csv").write_text("\n".join(text) + "\n")
    with pytest.raises(InstanceParseError, match="pipelines.csv:2"):
        load_instance(tmp_path)


def test_save_load_round_trip(tmp_path, two_node):
    save_instance(two_node, tmp_path / "copy")
    again = load_instance(tmp_path / "copy")
    assert models_equal(two_node, again)
    # and byte-stable on second save
    save_instance(again, tmp_path / "copy2")
    for name in ("technologies.csv", "demand_electricity.csv", "prices.csv"):
        assert ((tmp_path / "copy" / name).read_bytes()
                == (tmp_path / "copy2" / name).read_bytes())


# -- default datasets, checked against the published study values --------

def test_h2_technology_table():
    # (fuel, capex EUR/kW, fixed O&M EUR/kW/yr, lifetime, eff, kg/MWh, captured)
    assert H2_TECHNOLOGY_DATA["smr"] == ("gas", 744.0, 27.0, 25, 0.76, 229.0, 0.0)
    assert H2_TECHNOLOGY_DATA["smr_ccs_54"] == ("gas", 881.0, 44.0, 25, 0.74, 105.0, 124.0)
    assert H2_TECHNOLOGY_DATA["smr_ccs_89"] == ("gas", 1330.0, 62.0, 25, 0.69, 26.0, 204.0)
    assert H2_TECHNOLOGY_DATA["electrolyser"] == ("electricity", 600.0, 20.0, 30, 0.68, 0.0, 0.0)


def test_h2_technology_builder_converts_units():
    tech = h2_technology("electrolyser", "NED", initial_capacity=3000.0)
    assert tech.carrier_in == "electricity"
    assert tech.capex_annualized == pytest.approx(600.0 / 30 * 1000.0)
    assert tech.fixed_om == pytest.approx(20.0 * 1000.0)
    assert tech.efficiency == 0.68
    assert tech.initial_capacity == 3000.0


def test_initial_capacities_table():
    assert INITIAL_H2_CAPACITY_MW["GER"] == {"electrolyser": 1000.0, "smr": 1900.0}
    assert INITIAL_H2_CAPACITY_MW["FRA"]["electrolyser"] == 6500.0
    assert INITIAL_H2_CAPACITY_MW["NED"]["smr"] == 1144.0
    assert INITIAL_H2_CAPACITY_MW["DEN"]["smr"] == 29.5
    assert INITIAL_H2_CAPACITY_MW["BLT"]["smr"] == 221.0
    assert sum(v["electrolyser"] for v in INITIAL_H2_CAPACITY_MW.values()) == 21500.0


def test_fuel_prices_and_co2():
    assert FUEL_PRICE_EUR_PER_GJ["gas"] == 7.54
    assert FUEL_PRICE_EUR_PER_GJ["coal"] == 2.25
    assert FUEL_PRICE_EUR_PER_GJ["nuclear"] == 0.78
    assert CO2_PRICE_EUR_PER_TON == 250.0
    prices = default_prices()
    assert prices.fuel("gas") == pytest.approx(7.54 * 3.6)
    assert prices.co2_price == 250.0


def test_ccs_ban_list_and_retrofit_fractions():
    assert CCS_BANNED_COUNTRIES == {"GER", "AUS", "BLT", "DEN", "DEW", "FIN", "IRE"}
    assert RETROFIT_STAGE1_FRACTION == 0.6
    assert RETROFIT_STAGE2_FRACTION == 0.8
