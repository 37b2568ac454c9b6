"""Default techno-economic datasets for 2050 European studies.

Source-table units differ from model units, so every conversion happens
here and nowhere else: overnight EUR/kW capex is annualized by dividing
by lifetime (no discounting) and scaled x1000 to EUR/MW/yr, fixed O&M
EUR/kW/yr is scaled x1000, and fuel prices in EUR/GJ are scaled x3.6 to
EUR/MWh.
"""

from __future__ import annotations

from .types import PriceSet, Technology

EUR_PER_GJ_TO_EUR_PER_MWH = 3.6
EUR_PER_KW_TO_EUR_PER_MW = 1000.0

# hydrogen production technologies:
# id -> (fuel, overnight capex EUR/kW, fixed O&M EUR/kW/yr, lifetime yr,
#        efficiency, emissions kg/MWh, captured kg/MWh)
H2_TECHNOLOGY_DATA = {
    "smr":         ("gas",        744.0, 27.0, 25, 0.76, 229.0,   0.0),
    "smr_ccs_54":  ("gas",        881.0, 44.0, 25, 0.74, 105.0, 124.0),
    "smr_ccs_89":  ("gas",       1330.0, 62.0, 25, 0.69,  26.0, 204.0),
    "electrolyser": ("electricity", 600.0, 20.0, 30, 0.68,   0.0,   0.0),
}

# initial hydrogen production output capacities, MW per country
INITIAL_H2_CAPACITY_MW = {
    "GER": {"electrolyser": 1000.0, "smr": 1900.0},
    "FRA": {"electrolyser": 6500.0, "smr": 530.0},
    "UKI": {"electrolyser": 5000.0, "smr": 144.0},
    "SPA": {"electrolyser": 4000.0, "smr": 554.0},
    "NED": {"electrolyser": 3000.0, "smr": 1144.0},
    "POR": {"electrolyser": 2000.0, "smr": 25.0},
    "AUS": {"electrolyser": 0.0, "smr": 90.0},
    "BEL": {"electrolyser": 0.0, "smr": 783.0},
    "SWI": {"electrolyser": 0.0, "smr": 28.0},
    "CZE": {"electrolyser": 0.0, "smr": 141.0},
    "DEN": {"electrolyser": 0.0, "smr": 29.5},
    "DEW": {"electrolyser": 0.0, "smr": 29.5},
    "FIN": {"electrolyser": 0.0, "smr": 413.0},
    "BLK": {"electrolyser": 0.0, "smr": 523.0},
    "IRE": {"electrolyser": 0.0, "smr": 0.0},
    "ITA": {"electrolyser": 0.0, "smr": 411.0},
    "NOR": {"electrolyser": 0.0, "smr": 0.0},
    "SWE": {"electrolyser": 0.0, "smr": 0.0},
    "SKO": {"electrolyser": 0.0, "smr": 115.0},
    "POL": {"electrolyser": 0.0, "smr": 0.0},
    "BLT": {"electrolyser": 0.0, "smr": 221.0},
}

# fuel prices for 2050, EUR/GJ
FUEL_PRICE_EUR_PER_GJ = {
    "oil": 10.63,
    "biomass": 9.00,
    "gas": 7.54,
    "coke_oven_gas": 7.54,
    "coal": 2.25,
    "lignite": 1.10,
    "nuclear": 0.78,
}

CO2_PRICE_EUR_PER_TON = 250.0

# countries where geological CO2 storage is prohibited; the Baltic states
# are grouped as BLT, Denmark appears as its two market zones
CCS_BANNED_COUNTRIES = frozenset(
    {"GER", "AUS", "BLT", "DEN", "DEW", "FIN", "IRE"}
)

# pipeline repurposing: share of the original gas energy rating available
# as hydrogen after each conversion stage
RETROFIT_STAGE1_FRACTION = 0.6
RETROFIT_STAGE2_FRACTION = 0.8

# hydrogen decisions use 6-hour blocks on an hourly electricity grid
DEFAULT_H2_BLOCK_LEN = 6


def default_prices() -> PriceSet:
    """2050 fuel prices in EUR/MWh plus the CO2 price."""
    fuels = {k: v * EUR_PER_GJ_TO_EUR_PER_MWH
             for k, v in FUEL_PRICE_EUR_PER_GJ.items()}
    return PriceSet(fuel_prices=fuels, co2_price=CO2_PRICE_EUR_PER_TON)


def h2_technology(kind: str, node: str, tech_id: str | None = None,
                  initial_capacity: float = 0.0, **overrides) -> Technology:
    """Build one of the default hydrogen production technologies at a node."""
    fuel, capex_kw, fom_kw, lifetime, eff, emis, captured = H2_TECHNOLOGY_DATA[kind]
    params = dict(
        id=tech_id or f"{kind}_{node}",
        node=node,
        carrier_in=fuel,
        carrier_out="hydrogen",
        capex_annualized=capex_kw / lifetime * EUR_PER_KW_TO_EUR_PER_MW,
        fixed_om=fom_kw * EUR_PER_KW_TO_EUR_PER_MW,
        efficiency=eff,
        emission_factor=emis,
        ccs_capture_factor=captured,
        initial_capacity=initial_capacity,
    )
    params.update(overrides)
    return Technology(**params)
