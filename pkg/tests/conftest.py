"""Shared fixtures: the bundled two-country instance and random generators."""

from pathlib import Path

import numpy as np
import pytest

from h2plan.core.defaults import default_prices, h2_technology
from h2plan.core.io import load_instance
from h2plan.core.types import (
    FlexibleLoad,
    NetworkModel,
    Node,
    Pipeline,
    PriceSet,
    Storage,
    Technology,
    TimeGrid,
    TransmissionCorridor,
)

REPO = Path(__file__).resolve().parents[1]
TWO_NODE_DIR = REPO / "instances" / "two_node"
GOLDEN_DIR = Path(__file__).resolve().parent / "golden"


@pytest.fixture(scope="session")
def two_node():
    return load_instance(TWO_NODE_DIR)


def single_node_gas(demand=100.0, periods=2, emission_factor=330.0,
                    fixed_om=10000.0, initial_capacity=500.0):
    """One node, one gas plant, flat electricity demand; no hydrogen."""
    grid = TimeGrid(horizon_steps=periods, step_duration=1.0, h2_block_len=1)
    node = Node(id="A", electricity_demand=np.full(periods, float(demand)),
                h2_demand=np.zeros(periods))
    plant = Technology(id="gas_a", node="A", carrier_in="gas",
                       carrier_out="electricity", efficiency=0.58,
                       emission_factor=emission_factor,
                       initial_capacity=initial_capacity,
                       max_new_capacity=0.0, fixed_om=fixed_om)
    return NetworkModel(grid=grid, nodes=(node,), technologies=(plant,),
                        prices=PriceSet({"gas": 7.54 * 3.6}, co2_price=250.0))


def pipeline_pair(h2_per_block=1400.0, periods=8, block_len=2,
                  eta1=0.5, eta2=0.75, cap_gas=1000.0, c1=30000.0,
                  c2=35000.0, cnew=50000.0, new_buildable=True):
    """Producer node A feeding consumer node B through one gas pipeline."""
    grid = TimeGrid(horizon_steps=periods, step_duration=1.0,
                    h2_block_len=block_len)
    blocks = grid.num_blocks
    node_a = Node(id="A", electricity_demand=np.zeros(periods),
                  h2_demand=np.zeros(blocks))
    node_b = Node(id="B", electricity_demand=np.zeros(periods),
                  h2_demand=np.full(blocks, float(h2_per_block)))
    gas = Technology(id="gas_a", node="A", carrier_in="gas",
                     carrier_out="electricity", efficiency=0.58,
                     emission_factor=330.0, initial_capacity=50000.0,
                     max_new_capacity=0.0)
    elz = Technology(id="elz_a", node="A", carrier_in="electricity",
                     carrier_out="hydrogen", efficiency=0.68,
                     capex_annualized=20000.0, fixed_om=20000.0)
    pipe = Pipeline(from_node="A", to_node="B", cap_ch4_init=cap_gas,
                    cap_h2_init=0.0, eta1=eta1, eta2=eta2,
                    capex_retrofit1=c1, capex_retrofit2=c2, capex_new=cnew,
                    new_buildable=new_buildable)
    return NetworkModel(grid=grid, nodes=(node_a, node_b),
                        technologies=(gas, elz), pipelines=(pipe,),
                        prices=PriceSet({"gas": 7.54 * 3.6}, 250.0))


def random_instance(rng, num_nodes=3, periods=24, block_len=6):
    """Random multi-node instance, feasible under every scenario variant.

    Each node gets enough initial electrolyser capacity to cover its own
    block-peak hydrogen demand (so fixing electrolyser or pipeline
    investment to zero never causes infeasibility), an investable gas
    plant, a plain reformer, and a wind profile.
    """
    grid = TimeGrid(horizon_steps=periods, step_duration=1.0,
                    h2_block_len=block_len)
    blocks = grid.num_blocks
    ids = [f"N{k}" for k in range(num_nodes)]

    nodes = []
    techs = []
    storages = []
    for k, nid in enumerate(ids):
        e_dem = rng.uniform(50.0, 400.0, periods).round(3)
        h_dem = rng.uniform(0.0, 900.0, blocks).round(3)
        flex = ()
        if rng.random() < 0.5:
            window = int(rng.choice([d for d in (6, 12, periods)
                                     if periods % d == 0]))
            max_draw = float(rng.uniform(20.0, 80.0))
            energy = float(rng.uniform(0.2, 0.9) * window * max_draw)
            flex = (FlexibleLoad(total_energy_per_window=round(energy, 3),
                                 window_len=window, max_draw=max_draw,
                                 min_draw=0.0),)
        nodes.append(Node(id=nid, allows_co2_storage=bool(rng.random() < 0.7),
                          electricity_demand=e_dem, h2_demand=h_dem,
                          flexible_demand_specs=flex))

        peak_rate = float(h_dem.max()) / grid.block_duration
        techs.append(Technology(
            id=f"gas_{nid}", node=nid, carrier_in="gas",
            carrier_out="electricity", efficiency=0.58, emission_factor=330.0,
            initial_capacity=float(rng.uniform(300.0, 800.0)),
            capex_annualized=float(rng.uniform(50.0, 200.0)),
            fixed_om=float(rng.uniform(20.0, 80.0))))
        techs.append(Technology(
            id=f"wind_{nid}", node=nid, carrier_in="none",
            carrier_out="electricity",
            availability_profile=rng.uniform(0.05, 1.0, periods).round(3),
            initial_capacity=float(rng.uniform(0.0, 200.0)),
            capex_annualized=float(rng.uniform(100.0, 400.0)),
            fixed_om=float(rng.uniform(20.0, 80.0))))
        techs.append(h2_technology(
            "electrolyser", nid, tech_id=f"elz_{nid}",
            initial_capacity=round(1.2 * peak_rate + 10.0, 3),
            capex_annualized=float(rng.uniform(40.0, 120.0)),
            fixed_om=float(rng.uniform(20.0, 80.0))))
        techs.append(h2_technology(
            "smr", nid, tech_id=f"smr_{nid}",
            initial_capacity=float(rng.uniform(0.0, 100.0)),
            capex_annualized=float(rng.uniform(60.0, 160.0)),
            fixed_om=float(rng.uniform(20.0, 80.0))))
        if rng.random() < 0.6:
            techs.append(h2_technology(
                "smr_ccs_89", nid, tech_id=f"smrccs_{nid}",
                capex_annualized=float(rng.uniform(120.0, 300.0)),
                fixed_om=float(rng.uniform(40.0, 160.0))))
        if rng.random() < 0.7:
            storages.append(Storage(
                id=f"h2s_{nid}", node=nid, carrier="hydrogen",
                charge_eff=0.95, discharge_eff=0.95,
                energy_capex_annualized=float(rng.uniform(1.0, 10.0)),
                power_capex_annualized=float(rng.uniform(2.0, 20.0)),
                investable=True))

    corridors = []
    pipelines = []
    for k in range(num_nodes):
        a, b = ids[k], ids[(k + 1) % num_nodes]
        if k == num_nodes - 1 and num_nodes == 2:
            break
        corridors.append(TransmissionCorridor(
            from_node=a, to_node=b,
            initial_capacity=float(rng.uniform(50.0, 300.0)),
            capex_annualized=float(rng.uniform(200.0, 600.0)),
            expandable=bool(rng.random() < 0.8)))
        eta1 = float(rng.uniform(0.3, 0.65))
        eta2 = float(rng.uniform(eta1 + 0.1, 1.0))
        pipelines.append(Pipeline(
            from_node=a, to_node=b,
            cap_ch4_init=float(rng.uniform(0.0, 2000.0)),
            cap_h2_init=float(rng.uniform(0.0, 100.0)),
            eta1=eta1, eta2=eta2,
            capex_retrofit1=float(rng.uniform(50.0, 120.0)),
            capex_retrofit2=float(rng.uniform(80.0, 200.0)),
            capex_new=float(rng.uniform(100.0, 300.0)),
            new_buildable=bool(rng.random() < 0.7)))

    prices = default_prices()
    return NetworkModel(grid=grid, nodes=tuple(nodes), technologies=tuple(techs),
                        storages=tuple(storages), pipelines=tuple(pipelines),
                        corridors=tuple(corridors), prices=prices)
