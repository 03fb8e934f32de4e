"""Run configuration: plain-text key=value files, desk and paper profiles.

The desk profile (default) runs 50 replications per scenario and trains the
autoencoder for 200 epochs; the paper profile restores 300 replications and
1000 epochs. Unknown keys are rejected so typos cannot silently fall back
to defaults. Every pipeline command writes a resolved snapshot of the
configuration it actually used next to its outputs.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from pathlib import Path

from .sim.params import SimParams


@dataclass
class RunConfig:
    # simulation
    seed: int = 20240901
    reps_per_scenario: int = 50
    replication_length: int = 1095
    warmup: int = 180
    arrival_rate: float = 15.0
    order_qty: int = 1
    service_rate_1: float = 18.0
    service_rate_2: float = 19.0
    service_rate_3: float = 20.0
    buffer_cap_1: float = math.inf
    buffer_cap_2: float = 15.0
    buffer_cap_3: float = 10.0
    disruption_onset_min: int = 300
    disruption_onset_max: int = 600
    disruption_duration_min: int = 30
    disruption_duration_max: int = 60
    disrupted_arrival_rate: float = 30.0
    disrupted_service_rate: float = 0.0
    # preprocessing
    window_size: int = 14
    stride: int = 1
    split_train: float = 0.6
    split_validation: float = 0.2
    split_test: float = 0.2
    recovery_rule: str = "insystem-p95-3d"
    # autoencoder
    ae_epochs: int = 200
    ae_learning_rate: float = 1e-4
    ae_batch_size: int = 128
    # detector
    nu: float = 0.025
    gamma: float = 100.0
    ocsvm_fit_split: str = "test"    # or "validation"
    # classifier
    classifier_units: int = 16
    classifier_dropout: float = 0.1
    classifier_learning_rate: float = 1e-4
    classifier_batch_size: int = 32
    classifier_epochs: int = 20
    # ttr regressors
    ttr_units: int = 64
    ttr_dropout: float = 0.1
    ttr_l1: float = 1e-3
    ttr_learning_rate: float = 1e-4
    ttr_batch_size: int = 16
    ttr_epochs: int = 20
    ttr_features: str = "all"        # "all" or comma-separated indices 0..12

    def sim_params(self) -> SimParams:
        return SimParams(
            num_replications=self.reps_per_scenario,
            replication_length=self.replication_length,
            warmup=self.warmup,
            arrival_rate=self.arrival_rate,
            order_qty=self.order_qty,
            service_rates=(self.service_rate_1, self.service_rate_2, self.service_rate_3),
            buffer_caps=(self.buffer_cap_1, self.buffer_cap_2, self.buffer_cap_3),
            disruption_duration_range=(self.disruption_duration_min,
                                       self.disruption_duration_max),
            disruption_onset_range=(self.disruption_onset_min, self.disruption_onset_max),
            disrupted_arrival_rate=self.disrupted_arrival_rate,
            disrupted_service_rate=self.disrupted_service_rate,
            base_seed=self.seed,
        )

    def split_ratios(self) -> tuple:
        return (self.split_train, self.split_validation, self.split_test)

    def ttr_feature_subset(self) -> tuple | None:
        if self.ttr_features.strip() == "all":
            return None
        return tuple(int(p) for p in self.ttr_features.split(",") if p.strip())

    def to_text(self) -> str:
        lines = []
        for f in dataclasses.fields(self):
            value = getattr(self, f.name)
            if isinstance(value, float) and math.isinf(value):
                value = "inf"
            lines.append(f"{f.name} = {value}")
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        d = dataclasses.asdict(self)
        for k, v in d.items():
            if isinstance(v, float) and math.isinf(v):
                d[k] = "inf"
        return d


PAPER_PROFILE = {"reps_per_scenario": 300, "ae_epochs": 1000}


def apply_profile(config: RunConfig, profile: str) -> RunConfig:
    if profile == "desk":
        return config
    if profile == "paper":
        return dataclasses.replace(config, **PAPER_PROFILE)
    raise ValueError(f"unknown profile {profile!r}")


def load_config(path=None, overrides: dict | None = None) -> RunConfig:
    """Parse a key=value file; unknown keys raise. Overrides win."""
    values = {}
    if path is not None:
        values.update(parse_config_text(Path(path).read_text()))
    if overrides:
        values.update(overrides)
    fields = {f.name: f for f in dataclasses.fields(RunConfig)}
    unknown = set(values) - set(fields)
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    coerced = {}
    for key, raw in values.items():
        coerced[key] = _coerce(raw, fields[key].type, key)
    return RunConfig(**coerced)


def parse_config_text(text: str) -> dict:
    values = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ValueError(f"line {lineno}: expected KEY = VALUE, got {line!r}")
        key, _, raw = stripped.partition("=")
        values[key.strip()] = raw.strip()
    return values


def _coerce(raw, annotation, key):
    if not isinstance(raw, str):
        return raw
    if annotation == "int":
        return int(raw)
    if annotation == "float":
        return math.inf if raw == "inf" else float(raw)
    return raw
