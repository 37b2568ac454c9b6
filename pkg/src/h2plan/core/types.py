"""Domain types for a planning instance.

All quantities are MW / MWh / EUR: capacities in MW, energy in MWh,
annualized investment costs in EUR/MW/yr (EUR/MWh/yr for storage energy),
fuel prices in EUR/MWh, CO2 price in EUR/ton.  Instances are immutable
after construction; arrays must be treated as read-only.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

INF = float("inf")

# carriers that couple a technology input to an energy balance rather
# than to a priced fuel
COUPLED_CARRIERS = ("electricity", "hydrogen")
NO_CARRIER = "none"


@dataclass(frozen=True)
class TimeGrid:
    """Hourly-style electricity grid with a coarser hydrogen block grid.

    `horizon_steps` electricity periods of `step_duration` hours each;
    hydrogen flow/balance decisions live on blocks of `h2_block_len`
    consecutive electricity periods.
    """

    horizon_steps: int
    step_duration: float = 1.0
    h2_block_len: int = 6

    @property
    def num_blocks(self) -> int:
        return self.horizon_steps // self.h2_block_len

    @property
    def block_duration(self) -> float:
        """Hours per hydrogen block."""
        return self.h2_block_len * self.step_duration

    def block_of(self, period: int) -> int:
        return period // self.h2_block_len

    def periods_of(self, block: int) -> range:
        return range(block * self.h2_block_len, (block + 1) * self.h2_block_len)


@dataclass(frozen=True)
class FlexibleLoad:
    """Shiftable electricity demand: fixed energy per window, bounded draw.

    `min_draw` may be negative to let the load feed energy back.
    """

    total_energy_per_window: float  # MWh
    window_len: int                 # electricity periods
    max_draw: float                 # MW
    min_draw: float = 0.0           # MW


@dataclass(frozen=True)
class Node:
    id: str
    allows_co2_storage: bool = True
    electricity_demand: np.ndarray = field(default_factory=lambda: np.zeros(0))
    h2_demand: np.ndarray = field(default_factory=lambda: np.zeros(0))
    flexible_demand_specs: tuple[FlexibleLoad, ...] = ()


@dataclass(frozen=True)
class Technology:
    """One conversion technology at one node.

    carrier_in "electricity"/"hydrogen" draws from that balance, "none"
    needs no input, anything else is a priced fuel key (e.g. "gas",
    "nuclear").  carrier_out is "electricity" or "hydrogen".  Capacity
    ratings and emission factors are on the output side.
    """

    id: str
    node: str
    carrier_in: str
    carrier_out: str
    capex_annualized: float = 0.0      # EUR/MW/yr on new capacity
    fixed_om: float = 0.0              # EUR/MW/yr on initial + new capacity
    efficiency: float = 1.0            # MWh out per MWh in
    emission_factor: float = 0.0       # kg CO2 per MWh out
    ccs_capture_factor: float = 0.0    # kg CO2 captured per MWh out
    initial_capacity: float = 0.0      # MW out
    max_new_capacity: float = INF      # MW out
    availability_profile: Optional[np.ndarray] = None  # per period, in [0,1]
    variable_cost_extra: float = 0.0   # EUR/MWh out

    @property
    def is_vre(self) -> bool:
        return self.carrier_in == NO_CARRIER and self.availability_profile is not None

    @property
    def has_ccs(self) -> bool:
        return self.ccs_capture_factor > 0.0


@dataclass(frozen=True)
class Storage:
    id: str
    node: str
    carrier: str                       # "electricity" or "hydrogen"
    charge_eff: float = 1.0
    discharge_eff: float = 1.0
    energy_capex_annualized: float = 0.0   # EUR/MWh/yr
    power_capex_annualized: float = 0.0    # EUR/MW/yr
    initial_energy_capacity: float = 0.0   # MWh
    initial_power_capacity: float = 0.0    # MW
    investable: bool = False


@dataclass(frozen=True)
class Pipeline:
    """A gas corridor that can be repurposed for hydrogen in two stages.

    `eta1` and `eta2` are the fractions of the original gas energy rating
    available as hydrogen after the first and second conversion stage
    (the second stage adds compression, so eta2 > eta1).  Costs are
    annualized EUR/MW/yr of hydrogen rating; `capex_retrofit2` prices the
    full second-stage conversion, from which the incremental cost of the
    second stage on top of the first is derived.
    """

    from_node: str
    to_node: str
    cap_ch4_init: float                # MW, original gas energy rating
    cap_h2_init: float = 0.0           # MW, pre-existing hydrogen rating
    eta1: float = 0.6
    eta2: float = 0.8
    capex_retrofit1: float = 0.0       # EUR/MW/yr
    capex_retrofit2: float = 0.0       # EUR/MW/yr
    capex_new: float = 0.0             # EUR/MW/yr for new-build hydrogen
    new_buildable: bool = True

    @property
    def key(self) -> str:
        return f"{self.from_node}-{self.to_node}"


@dataclass(frozen=True)
class TransmissionCorridor:
    """Cross-border electricity link; one shared rating for both directions."""

    from_node: str
    to_node: str
    initial_capacity: float            # MW
    capex_annualized: float = 0.0      # EUR/MW/yr
    expandable: bool = False

    @property
    def key(self) -> str:
        return f"{self.from_node}-{self.to_node}"


@dataclass(frozen=True)
class PriceSet:
    fuel_prices: dict[str, float] = field(default_factory=dict)  # EUR/MWh
    co2_price: float = 0.0                                       # EUR/ton

    def fuel(self, carrier: str) -> float:
        return self.fuel_prices.get(carrier, 0.0)


@dataclass(frozen=True)
class NetworkModel:
    """A complete planning instance."""

    grid: TimeGrid
    nodes: tuple[Node, ...]
    technologies: tuple[Technology, ...] = ()
    storages: tuple[Storage, ...] = ()
    pipelines: tuple[Pipeline, ...] = ()
    corridors: tuple[TransmissionCorridor, ...] = ()
    prices: PriceSet = field(default_factory=PriceSet)

    def node_ids(self) -> list[str]:
        return [n.id for n in self.nodes]

    def node(self, node_id: str) -> Node:
        for n in self.nodes:
            if n.id == node_id:
                return n
        raise KeyError(node_id)
