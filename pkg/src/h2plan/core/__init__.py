"""Domain model: planning-instance types, validation, I/O and defaults."""

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
from .validate import ValidationError, Violation, validate_network
from .io import InstanceParseError, load_instance, models_equal, save_instance

__all__ = [
    "INF",
    "FlexibleLoad",
    "NetworkModel",
    "Node",
    "Pipeline",
    "PriceSet",
    "Storage",
    "Technology",
    "TimeGrid",
    "TransmissionCorridor",
    "ValidationError",
    "Violation",
    "validate_network",
    "InstanceParseError",
    "load_instance",
    "models_equal",
    "save_instance",
]
