"""Planning-problem generator with baseline planners and waypoint extraction."""

from ._edagepp import (
    ConfigError,
    CorruptRecord,
    DeadEnd,
    Error,
    StepLimit,
    extract_waypoints,
    gaussian_blur,
    generate_path_records,
    grid_oracle,
    path_cost,
    plan,
    validate_dataset,
    write_dataset,
)

__all__ = [
    "ConfigError",
    "CorruptRecord",
    "DeadEnd",
    "Error",
    "StepLimit",
    "extract_waypoints",
    "gaussian_blur",
    "generate_path_records",
    "grid_oracle",
    "path_cost",
    "plan",
    "validate_dataset",
    "write_dataset",
]
