"""Load and save planning instances as a directory of CSV files.

Layout of an instance directory:

    grid.toml               key = value: horizon_steps, step_duration_hours,
                            h2_block_len
    nodes.csv               id, allows_co2_storage
    technologies.csv        id, node, carrier_in, carrier_out,
                            capex_eur_per_mw_yr, fixed_om_eur_per_mw_yr,
                            efficiency, emission_kg_per_mwh,
                            ccs_capture_kg_per_mwh, initial_capacity_mw,
                            max_new_capacity_mw (blank = unlimited),
                            variable_cost_extra_eur_per_mwh
    storages.csv            id, node, carrier, charge_eff, discharge_eff,
                            energy_capex_eur_per_mwh_yr,
                            power_capex_eur_per_mw_yr,
                            initial_energy_capacity_mwh,
                            initial_power_capacity_mw, investable
    pipelines.csv           from_node, to_node, cap_ch4_init_mw,
                            cap_h2_init_mw, eta1, eta2,
                            capex_retrofit1_eur_per_mw_yr,
                            capex_retrofit2_eur_per_mw_yr,
                            capex_new_eur_per_mw_yr, new_buildable
    corridors.csv           from_node, to_node, initial_capacity_mw,
                            capex_eur_per_mw_yr, expandable
    demand_electricity.csv  period, one column per node id (MWh per period)
    demand_h2.csv           block, one column per node id (MWh per block)
    profiles.csv            period, one column per technology id (optional
                            file; technologies absent from it have no profile)
    prices.csv              category (fuel|co2), name, value
    flexible_loads.csv      node, total_energy_per_window_mwh, window_len,
                            max_draw_mw, min_draw_mw (optional file)

All CSVs are UTF-8 with a header row, "." decimal separator and no
thousands separators.  Floats are written with repr so a save/load
round-trip reproduces every value bit-for-bit.
"""

from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

from .types import (
    INF,
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
from .validate import ValidationError, validate_network


class InstanceParseError(ValueError):
    def __init__(self, path, message, line=None):
        at = f"{path}" + (f":{line}" if line else "")
        super().__init__(f"{at}: {message}")


def _read_rows(path: Path) -> list[dict]:
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            reader = csv.DictReader(fh)
            if reader.fieldnames is None:
                raise InstanceParseError(path, "missing header row")
            return list(reader)
    except csv.Error as exc:
        raise InstanceParseError(path, f"csv error: {exc}") from exc


def _num(path, row_no, field, raw, default=None):
    raw = (raw or "").strip()
    if raw == "":
        if default is None:
            raise InstanceParseError(path, f"missing value for {field!r}",
                                     row_no)
        return default
    try:
        return float(raw)
    except ValueError as exc:
        raise InstanceParseError(
            path, f"bad number {raw!r} for {field!r}", row_no) from exc


def _flag(path, row_no, field, raw):
    val = (raw or "").strip().lower()
    if val in ("true", "1", "yes"):
        return True
    if val in ("false", "0", "no"):
        return False
    raise InstanceParseError(path, f"bad boolean {raw!r} for {field!r}", row_no)


def _parse_grid(path: Path) -> TimeGrid:
    values: dict[str, float] = {}
    for line_no, raw in enumerate(path.read_text(encoding="utf-8").splitlines(),
                                  start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InstanceParseError(path, f"expected key = value, got {raw!r}",
                                     line_no)
        key, val = (part.strip() for part in line.split("=", 1))
        try:
            values[key] = float(val)
        except ValueError as exc:
            raise InstanceParseError(path, f"bad number {val!r} for {key!r}",
                                     line_no) from exc
    try:
        return TimeGrid(
            horizon_steps=int(values["horizon_steps"]),
            step_duration=float(values.get("step_duration_hours", 1.0)),
            h2_block_len=int(values.get("h2_block_len", 6)),
        )
    except KeyError as exc:
        raise InstanceParseError(path, f"missing key {exc.args[0]!r}") from exc


def _read_series_table(path: Path, index_name: str) -> dict[str, np.ndarray]:
    """Wide CSV (index column + one column per entity) -> id -> array."""
    rows = _read_rows(path)
    if not rows:
        return {}
    columns = [c for c in rows[0].keys() if c != index_name]
    series = {c: np.empty(len(rows)) for c in columns}
    for k, row in enumerate(rows):
        for c in columns:
            series[c][k] = _num(path, k + 2, c, row.get(c))
    return series


def load_instance(path) -> NetworkModel:
    """Read, assemble and validate an instance directory.

    Raises InstanceParseError on malformed files and ValidationError when
    the assembled model violates any invariant.
    """
    base = Path(path)
    if not base.is_dir():
        raise InstanceParseError(base, "instance directory does not exist")
    required = ["grid.toml", "nodes.csv", "technologies.csv", "storages.csv",
                "pipelines.csv", "corridors.csv", "demand_electricity.csv",
                "demand_h2.csv", "prices.csv"]
    missing = [f for f in required if not (base / f).exists()]
    if missing:
        raise InstanceParseError(base, f"missing instance files: {missing}")

    grid = _parse_grid(base / "grid.toml")
    elec_demand = _read_series_table(base / "demand_electricity.csv", "period")
    h2_demand = _read_series_table(base / "demand_h2.csv", "block")
    profiles = {}
    if (base / "profiles.csv").exists():
        profiles = _read_series_table(base / "profiles.csv", "period")

    flex_by_node: dict[str, list[FlexibleLoad]] = {}
    flex_path = base / "flexible_loads.csv"
    if flex_path.exists():
        for k, row in enumerate(_read_rows(flex_path)):
            flex_by_node.setdefault(row["node"].strip(), []).append(FlexibleLoad(
                total_energy_per_window=_num(flex_path, k + 2,
                                             "total_energy_per_window_mwh",
                                             row.get("total_energy_per_window_mwh")),
                window_len=int(_num(flex_path, k + 2, "window_len",
                                    row.get("window_len"))),
                max_draw=_num(flex_path, k + 2, "max_draw_mw",
                              row.get("max_draw_mw")),
                min_draw=_num(flex_path, k + 2, "min_draw_mw",
                              row.get("min_draw_mw", "0"), 0.0),
            ))

    nodes_path = base / "nodes.csv"
    nodes = []
    for k, row in enumerate(_read_rows(nodes_path)):
        nid = row["id"].strip()
        nodes.append(Node(
            id=nid,
            allows_co2_storage=_flag(nodes_path, k + 2, "allows_co2_storage",
                                     row.get("allows_co2_storage", "true")),
            electricity_demand=elec_demand.get(nid, np.zeros(grid.horizon_steps)),
            h2_demand=h2_demand.get(nid, np.zeros(max(grid.num_blocks, 0))),
            flexible_demand_specs=tuple(flex_by_node.get(nid, ())),
        ))

    tech_path = base / "technologies.csv"
    technologies = []
    for k, row in enumerate(_read_rows(tech_path)):
        tid = row["id"].strip()
        prof = profiles.get(tid)
        technologies.append(Technology(
            id=tid,
            node=row["node"].strip(),
            carrier_in=row["carrier_in"].strip(),
            carrier_out=row["carrier_out"].strip(),
            capex_annualized=_num(tech_path, k + 2, "capex_eur_per_mw_yr",
                                  row.get("capex_eur_per_mw_yr"), 0.0),
            fixed_om=_num(tech_path, k + 2, "fixed_om_eur_per_mw_yr",
                          row.get("fixed_om_eur_per_mw_yr"), 0.0),
            efficiency=_num(tech_path, k + 2, "efficiency",
                            row.get("efficiency")),
            emission_factor=_num(tech_path, k + 2, "emission_kg_per_mwh",
                                 row.get("emission_kg_per_mwh"), 0.0),
            ccs_capture_factor=_num(tech_path, k + 2, "ccs_capture_kg_per_mwh",
                                    row.get("ccs_capture_kg_per_mwh"), 0.0),
            initial_capacity=_num(tech_path, k + 2, "initial_capacity_mw",
                                  row.get("initial_capacity_mw"), 0.0),
            max_new_capacity=_num(tech_path, k + 2, "max_new_capacity_mw",
                                  row.get("max_new_capacity_mw"), INF),
            availability_profile=prof,
            variable_cost_extra=_num(tech_path, k + 2,
                                     "variable_cost_extra_eur_per_mwh",
                                     row.get("variable_cost_extra_eur_per_mwh"),
                                     0.0),
        ))

    stor_path = base / "storages.csv"
    storages = []
    for k, row in enumerate(_read_rows(stor_path)):
        storages.append(Storage(
            id=row["id"].strip(),
            node=row["node"].strip(),
            carrier=row["carrier"].strip(),
            charge_eff=_num(stor_path, k + 2, "charge_eff",
                            row.get("charge_eff"), 1.0),
            discharge_eff=_num(stor_path, k + 2, "discharge_eff",
                               row.get("discharge_eff"), 1.0),
            energy_capex_annualized=_num(stor_path, k + 2,
                                         "energy_capex_eur_per_mwh_yr",
                                         row.get("energy_capex_eur_per_mwh_yr"),
                                         0.0),
            power_capex_annualized=_num(stor_path, k + 2,
                                        "power_capex_eur_per_mw_yr",
                                        row.get("power_capex_eur_per_mw_yr"),
                                        0.0),
            initial_energy_capacity=_num(stor_path, k + 2,
                                         "initial_energy_capacity_mwh",
                                         row.get("initial_energy_capacity_mwh"),
                                         0.0),
            initial_power_capacity=_num(stor_path, k + 2,
                                        "initial_power_capacity_mw",
                                        row.get("initial_power_capacity_mw"),
                                        0.0),
            investable=_flag(stor_path, k + 2, "investable",
                             row.get("investable", "false")),
        ))

    pipe_path = base / "pipelines.csv"
    pipelines = []
    for k, row in enumerate(_read_rows(pipe_path)):
        pipelines.append(Pipeline(
            from_node=row["from_node"].strip(),
            to_node=row["to_node"].strip(),
            cap_ch4_init=_num(pipe_path, k + 2, "cap_ch4_init_mw",
                              row.get("cap_ch4_init_mw")),
            cap_h2_init=_num(pipe_path, k + 2, "cap_h2_init_mw",
                             row.get("cap_h2_init_mw"), 0.0),
            eta1=_num(pipe_path, k + 2, "eta1", row.get("eta1")),
            eta2=_num(pipe_path, k + 2, "eta2", row.get("eta2")),
            capex_retrofit1=_num(pipe_path, k + 2,
                                 "capex_retrofit1_eur_per_mw_yr",
                                 row.get("capex_retrofit1_eur_per_mw_yr"), 0.0),
            capex_retrofit2=_num(pipe_path, k + 2,
                                 "capex_retrofit2_eur_per_mw_yr",
                                 row.get("capex_retrofit2_eur_per_mw_yr"), 0.0),
            capex_new=_num(pipe_path, k + 2, "capex_new_eur_per_mw_yr",
                           row.get("capex_new_eur_per_mw_yr"), 0.0),
            new_buildable=_flag(pipe_path, k + 2, "new_buildable",
                                row.get("new_buildable", "true")),
        ))

    corr_path = base / "corridors.csv"
    corridors = []
    for k, row in enumerate(_read_rows(corr_path)):
        corridors.append(TransmissionCorridor(
            from_node=row["from_node"].strip(),
            to_node=row["to_node"].strip(),
            initial_capacity=_num(corr_path, k + 2, "initial_capacity_mw",
                                  row.get("initial_capacity_mw")),
            capex_annualized=_num(corr_path, k + 2, "capex_eur_per_mw_yr",
                                  row.get("capex_eur_per_mw_yr"), 0.0),
            expandable=_flag(corr_path, k + 2, "expandable",
                             row.get("expandable", "false")),
        ))

    price_path = base / "prices.csv"
    fuel_prices: dict[str, float] = {}
    co2_price = 0.0
    for k, row in enumerate(_read_rows(price_path)):
        category = row["category"].strip().lower()
        value = _num(price_path, k + 2, "value", row.get("value"))
        if category == "fuel":
            fuel_prices[row["name"].strip()] = value
        elif category == "co2":
            co2_price = value
        else:
            raise InstanceParseError(price_path,
                                     f"unknown category {category!r}", k + 2)

    model = NetworkModel(
        grid=grid,
        nodes=tuple(nodes),
        technologies=tuple(technologies),
        storages=tuple(storages),
        pipelines=tuple(pipelines),
        corridors=tuple(corridors),
        prices=PriceSet(fuel_prices=fuel_prices, co2_price=co2_price),
    )
    violations = validate_network(model)
    if violations:
        raise ValidationError(violations)
    return model


def _w(x: float) -> str:
    return repr(float(x))


def save_instance(model: NetworkModel, path) -> None:
    """Write a model back out in the instance directory layout."""
    base = Path(path)
    base.mkdir(parents=True, exist_ok=True)
    grid = model.grid

    (base / "grid.toml").write_text(
        f"horizon_steps = {grid.horizon_steps}\n"
        f"step_duration_hours = {_w(grid.step_duration)}\n"
        f"h2_block_len = {grid.h2_block_len}\n", encoding="utf-8")

    def write_csv(name, header, rows):
        with open(base / name, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(header)
            writer.writerows(rows)

    write_csv("nodes.csv", ["id", "allows_co2_storage"],
              [[n.id, str(n.allows_co2_storage).lower()] for n in model.nodes])

    node_ids = model.node_ids()
    write_csv("demand_electricity.csv", ["period"] + node_ids,
              [[t] + [_w(n.electricity_demand[t]) for n in model.nodes]
               for t in range(grid.horizon_steps)])
    write_csv("demand_h2.csv", ["block"] + node_ids,
              [[b] + [_w(n.h2_demand[b]) for n in model.nodes]
               for b in range(grid.num_blocks)])

    write_csv("technologies.csv",
              ["id", "node", "carrier_in", "carrier_out",
               "capex_eur_per_mw_yr", "fixed_om_eur_per_mw_yr", "efficiency",
               "emission_kg_per_mwh", "ccs_capture_kg_per_mwh",
               "initial_capacity_mw", "max_new_capacity_mw",
               "variable_cost_extra_eur_per_mwh"],
              [[t.id, t.node, t.carrier_in, t.carrier_out,
                _w(t.capex_annualized), _w(t.fixed_om), _w(t.efficiency),
                _w(t.emission_factor), _w(t.ccs_capture_factor),
                _w(t.initial_capacity),
                "" if t.max_new_capacity == INF else _w(t.max_new_capacity),
                _w(t.variable_cost_extra)] for t in model.technologies])

    profiled = [t for t in model.technologies if t.availability_profile is not None]
    if profiled:
        write_csv("profiles.csv", ["period"] + [t.id for t in profiled],
                  [[k] + [_w(t.availability_profile[k]) for t in profiled]
                   for k in range(grid.horizon_steps)])

    write_csv("storages.csv",
              ["id", "node", "carrier", "charge_eff", "discharge_eff",
               "energy_capex_eur_per_mwh_yr", "power_capex_eur_per_mw_yr",
               "initial_energy_capacity_mwh", "initial_power_capacity_mw",
               "investable"],
              [[s.id, s.node, s.carrier, _w(s.charge_eff), _w(s.discharge_eff),
                _w(s.energy_capex_annualized), _w(s.power_capex_annualized),
                _w(s.initial_energy_capacity), _w(s.initial_power_capacity),
                str(s.investable).lower()] for s in model.storages])

    write_csv("pipelines.csv",
              ["from_node", "to_node", "cap_ch4_init_mw", "cap_h2_init_mw",
               "eta1", "eta2", "capex_retrofit1_eur_per_mw_yr",
               "capex_retrofit2_eur_per_mw_yr", "capex_new_eur_per_mw_yr",
               "new_buildable"],
              [[p.from_node, p.to_node, _w(p.cap_ch4_init), _w(p.cap_h2_init),
                _w(p.eta1), _w(p.eta2), _w(p.capex_retrofit1),
                _w(p.capex_retrofit2), _w(p.capex_new),
                str(p.new_buildable).lower()] for p in model.pipelines])

    write_csv("corridors.csv",
              ["from_node", "to_node", "initial_capacity_mw",
               "capex_eur_per_mw_yr", "expandable"],
              [[c.from_node, c.to_node, _w(c.initial_capacity),
                _w(c.capex_annualized), str(c.expandable).lower()]
               for c in model.corridors])

    price_rows = [["fuel", fuel, _w(price)]
                  for fuel, price in sorted(model.prices.fuel_prices.items())]
    price_rows.append(["co2", "co2", _w(model.prices.co2_price)])
    write_csv("prices.csv", ["category", "name", "value"], price_rows)

    flex_rows = []
    for n in model.nodes:
        for f in n.flexible_demand_specs:
            flex_rows.append([n.id, _w(f.total_energy_per_window),
                              f.window_len, _w(f.max_draw), _w(f.min_draw)])
    if flex_rows:
        write_csv("flexible_loads.csv",
                  ["node", "total_energy_per_window_mwh", "window_len",
                   "max_draw_mw", "min_draw_mw"], flex_rows)


def models_equal(a: NetworkModel, b: NetworkModel) -> bool:
    """Field-by-field equality, comparing demand/profile arrays exactly."""
    def arrays_equal(x, y):
        if x is None or y is None:
            return x is y
        return np.array_equal(np.asarray(x), np.asarray(y))

    if a.grid != b.grid or len(a.nodes) != len(b.nodes):
        return False
    for na, nb in zip(a.nodes, b.nodes):
        if (na.id != nb.id or na.allows_co2_storage != nb.allows_co2_storage
                or not arrays_equal(na.electricity_demand, nb.electricity_demand)
                or not arrays_equal(na.h2_demand, nb.h2_demand)
                or na.flexible_demand_specs != nb.flexible_demand_specs):
            return False
    if len(a.technologies) != len(b.technologies):
        return False
    for ta, tb in zip(a.technologies, b.technologies):
        if not arrays_equal(ta.availability_profile, tb.availability_profile):
            return False
        da = {k: v for k, v in ta.__dict__.items() if k != "availability_profile"}
        db = {k: v for k, v in tb.__dict__.items() if k != "availability_profile"}
        if da != db:
            return False
    return (a.storages == b.storages and a.pipelines == b.pipelines
            and a.corridors == b.corridors and a.prices == b.prices)
