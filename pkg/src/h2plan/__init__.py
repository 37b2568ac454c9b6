"""h2plan: joint electricity and hydrogen expansion planning.

Co-optimizes generation, storage and transmission investment with hourly
dispatch over one planning year, including continuous two-stage
conversion of gas pipelines to hydrogen service, on an embedded LP
solver.
"""

__version__ = "0.1.0"

from .core import NetworkModel, load_instance, save_instance, validate_network
from .expansion import PlanningResult, build_model, extract_solution
from .reporting import SystemReport, build_report, emit_csv
from .scenario import PRESETS, ScenarioConfig, preset, run_suite

__all__ = [
    "NetworkModel",
    "load_instance",
    "save_instance",
    "validate_network",
    "PlanningResult",
    "build_model",
    "extract_solution",
    "SystemReport",
    "build_report",
    "emit_csv",
    "PRESETS",
    "ScenarioConfig",
    "preset",
    "run_suite",
]
