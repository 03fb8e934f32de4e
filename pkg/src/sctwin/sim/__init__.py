from .params import SimParams, ScenarioSpec, SCENARIOS
from .engine import (
    DailyRecord,
    ReplicationTrace,
    FEATURE_NAMES,
    run_replication,
    sample_event_time,
    effective_rate,
    aggregate_day,
)
from .datasets import generate_scenario_dataset, write_dataset, read_dataset

__all__ = [
    "SimParams", "ScenarioSpec", "SCENARIOS",
    "DailyRecord", "ReplicationTrace", "FEATURE_NAMES",
    "run_replication", "sample_event_time", "effective_rate", "aggregate_day",
    "generate_scenario_dataset", "write_dataset", "read_dataset",
]
