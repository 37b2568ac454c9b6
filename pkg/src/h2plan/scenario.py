"""Scenario variants: capability switches applied as variable fixings.

The five named presets toggle one investment family each against the
reference; a variant never changes rows or coefficients, it only fixes
the disabled family's investment columns to zero.  Restricting a
minimization this way can only raise the optimum, so the reference
scenario is cheapest by construction.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from pathlib import Path


@dataclass(frozen=True)
class ScenarioConfig:
    name: str
    allow_p2h2: bool = True                     # new electrolyser capacity
    allow_h2_storage: bool = True               # hydrogen storage investment
    allow_h2_transmission: bool = True          # pipeline conversion + new build
    allow_e_transmission_expansion: bool = True  # corridor expansion

    def flags(self) -> tuple[bool, bool, bool, bool]:
        return (self.allow_p2h2, self.allow_h2_storage,
                self.allow_h2_transmission, self.allow_e_transmission_expansion)


PRESETS = {
    "R2050": ScenarioConfig("R2050", True, True, True, True),
    "NoP2H2": ScenarioConfig("NoP2H2", False, True, True, True),
    "NoH2Storage": ScenarioConfig("NoH2Storage", True, False, True, True),
    "NoH2Transmission": ScenarioConfig("NoH2Transmission", True, True, False, True),
    "NoETransmission": ScenarioConfig("NoETransmission", True, True, True, False),
}


def preset(name: str) -> ScenarioConfig:
    """Look up one of the five named variants."""
    try:
        return PRESETS[name]
    except KeyError:
        raise KeyError(
            f"unknown scenario {name!r}; known: {', '.join(PRESETS)}") from None


_FLAG_KEYS = {
    "allow_p2h2": "allow_p2h2",
    "allow_h2_storage": "allow_h2_storage",
    "allow_h2_transmission": "allow_h2_transmission",
    "allow_e_transmission_expansion": "allow_e_transmission_expansion",
}


def load_scenario_file(path) -> ScenarioConfig:
    """Parse a custom scenario from a plain key=value flag file."""
    path = Path(path)
    config = ScenarioConfig(name=path.stem)
    for line_no, raw in enumerate(path.read_text(encoding="utf-8").splitlines(),
                                  start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{line_no}: expected key = value")
        key, val = (part.strip() for part in line.split("=", 1))
        if key == "name":
            config = replace(config, name=val)
            continue
        if key not in _FLAG_KEYS:
            raise ValueError(f"{path}:{line_no}: unknown key {key!r}")
        flag = val.lower() in ("true", "1", "yes")
        config = replace(config, **{_FLAG_KEYS[key]: flag})
    return config


def resolve(spec: str) -> ScenarioConfig:
    """A preset name, or a path to a key=value scenario file."""
    if spec in PRESETS:
        return PRESETS[spec]
    if Path(spec).is_file():
        return load_scenario_file(spec)
    raise KeyError(f"unknown scenario {spec!r} (not a preset, not a file)")


def run_suite(network, presets, options=None):
    """Build the model skeleton once and solve every variant against it.

    Returns {scenario name: PlanningResult} in the given order; a variant
    that fails to solve carries its solver status instead of aborting the
    other variants.
    """
    from . import expansion  # deferred: expansion imports ScenarioConfig

    configs = [p if isinstance(p, ScenarioConfig) else resolve(p)
               for p in presets]
    results = {}
    if not configs:
        return results
    handle = expansion.build_handle(network)
    for config in configs:
        problem = expansion.apply_scenario(handle, network, config)
        raw = expansion.solve_problem(problem, options)
        if raw.is_optimal:
            results[config.name] = expansion.extract_solution(
                problem, raw, network, config, handle=handle)
        else:
            results[config.name] = expansion.failed_result(config, raw)
    return results
