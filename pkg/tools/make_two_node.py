"""Generate the bundled instances/two_node fixture.

Two countries on a 24-hour grid with 6-hour hydrogen blocks:

  * VRE -- strong wind resource, initial electrolysers, can build
    reformers with high CCS capture (CO2 storage allowed);
  * BAN -- CO2 storage prohibited, gas-fired power, plain reforming,
    the larger hydrogen consumer.

Annualized investment costs are scaled by horizon/8760 so one simulated
day carries the same capex-versus-fuel tradeoff as a full year.
"""

import math
import sys
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from h2plan.core.defaults import default_prices, h2_technology
from h2plan.core.io import save_instance
from h2plan.core.types import (
    FlexibleLoad,
    NetworkModel,
    Node,
    Pipeline,
    Storage,
    Technology,
    TimeGrid,
    TransmissionCorridor,
)

HORIZON = 24
SCALE = HORIZON / 8760.0


def wind_profile():
    values = [0.5 + 0.4 * math.sin(2 * math.pi * (t + 2) / 24) for t in range(HORIZON)]
    return np.round(values, 3)


def build_model() -> NetworkModel:
    grid = TimeGrid(horizon_steps=HORIZON, step_duration=1.0, h2_block_len=6)

    vre = Node(
        id="VRE",
        allows_co2_storage=True,
        electricity_demand=np.full(HORIZON, 100.0),
        h2_demand=np.full(grid.num_blocks, 600.0),
    )
    ban = Node(
        id="BAN",
        allows_co2_storage=False,
        electricity_demand=np.full(HORIZON, 400.0),
        h2_demand=np.full(grid.num_blocks, 1200.0),
        flexible_demand_specs=(
            FlexibleLoad(total_energy_per_window=600.0, window_len=12,
                         max_draw=100.0, min_draw=0.0),
        ),
    )

    techs = (
        Technology(
            id="wind_vre", node="VRE", carrier_in="none",
            carrier_out="electricity",
            capex_annualized=65000.0 * SCALE, fixed_om=15000.0 * SCALE,
            initial_capacity=200.0, availability_profile=wind_profile(),
        ),
        Technology(
            id="nuclear_vre", node="VRE", carrier_in="nuclear",
            carrier_out="electricity",
            capex_annualized=125000.0 * SCALE, fixed_om=100000.0 * SCALE,
            efficiency=0.33, initial_capacity=100.0,
        ),
        h2_technology("electrolyser", "VRE", tech_id="elz_vre",
                      initial_capacity=250.0,
                      capex_annualized=20000.0 * SCALE,
                      fixed_om=20000.0 * SCALE),
        h2_technology("smr_ccs_89", "VRE", tech_id="smrccs_vre",
                      capex_annualized=53200.0 * SCALE,
                      fixed_om=62000.0 * SCALE),
        Technology(
            id="ccgt_ban", node="BAN", carrier_in="gas",
            carrier_out="electricity",
            capex_annualized=40000.0 * SCALE, fixed_om=20000.0 * SCALE,
            efficiency=0.58, emission_factor=330.0, initial_capacity=800.0,
        ),
        h2_technology("smr", "BAN", tech_id="smr_ban", initial_capacity=300.0,
                      capex_annualized=29760.0 * SCALE,
                      fixed_om=27000.0 * SCALE),
        h2_technology("electrolyser", "BAN", tech_id="elz_ban",
                      capex_annualized=20000.0 * SCALE,
                      fixed_om=20000.0 * SCALE),
    )

    storages = (
        Storage(id="h2store_vre", node="VRE", carrier="hydrogen",
                charge_eff=0.95, discharge_eff=0.95,
                energy_capex_annualized=500.0 * SCALE,
                power_capex_annualized=2000.0 * SCALE,
                investable=True),
    )

    pipelines = (
        Pipeline(from_node="VRE", to_node="BAN", cap_ch4_init=2000.0,
                 cap_h2_init=0.0, eta1=0.6, eta2=0.8,
                 capex_retrofit1=30000.0 * SCALE,
                 capex_retrofit2=35000.0 * SCALE,
                 capex_new=50000.0 * SCALE, new_buildable=True),
    )

    corridors = (
        TransmissionCorridor(from_node="VRE", to_node="BAN",
                             initial_capacity=300.0,
                             capex_annualized=80000.0 * SCALE,
                             expandable=True),
    )

    return NetworkModel(grid=grid, nodes=(vre, ban), technologies=techs,
                        storages=storages, pipelines=pipelines,
                        corridors=corridors, prices=default_prices())


if __name__ == "__main__":
    target = Path(__file__).resolve().parents[1] / "instances" / "two_node"
    save_instance(build_model(), target)
    print(f"wrote {target}")
