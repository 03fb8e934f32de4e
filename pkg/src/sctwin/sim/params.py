"""Flow-line parameters and disruption scenarios.

The plant is a three-stage make-to-order line: supplier -> manufacturer ->
distributor, single server each, FCFS, exponential processing times,
Poisson order arrivals. Scenarios S1-S3 halt one echelon's service for a
random window; S4 doubles the arrival rate over the window; S0 is the
undisrupted baseline.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

SCENARIOS = ("S0", "S1", "S2", "S3", "S4")

# Scenario id -> disrupted echelon index (1-based), None for arrival surge.
DISRUPTED_STAGE = {"S1": 1, "S2": 2, "S3": 3}


@dataclass(frozen=True)
class SimParams:
    """Reference configuration of the virtual supply chain."""

    num_replications: int = 300
    replication_length: int = 1095        # days
    warmup: int = 180                     # first recorded day (1-based)
    arrival_rate: float = 15.0            # orders/day
    order_qty: int = 1
    service_rates: tuple = (18.0, 19.0, 20.0)   # units/day per stage
    buffer_caps: tuple = (math.inf, 15, 10)     # queue caps per stage
    server_caps: tuple = (1, 1, 1)
    disruption_duration_range: tuple = (30, 60)   # days, inclusive
    disruption_onset_range: tuple = (300, 600)    # day index, inclusive
    disrupted_arrival_rate: float = 30.0  # orders/day under S4
    disrupted_service_rate: float = 0.0   # units/day at the failed echelon
    base_seed: int = 20240901

    def __post_init__(self):
        if self.arrival_rate < 0 or self.disrupted_arrival_rate < 0:
            raise ValueError("arrival rates must be >= 0")
        if any(r < 0 for r in self.service_rates):
            raise ValueError("service rates must be >= 0")
        if self.disrupted_service_rate < 0:
            raise ValueError("disrupted service rate must be >= 0")
        if not 0 < self.warmup < self.replication_length:
            raise ValueError("warmup must fall inside the replication length")
        if any(not (c >= 0) for c in self.buffer_caps):
            raise ValueError("buffer caps must be >= 0 or infinite")
        if any(c < 1 for c in self.server_caps):
            raise ValueError("server caps must be >= 1")
        lo_d, hi_d = self.disruption_duration_range
        lo_t, hi_t = self.disruption_onset_range
        if lo_d > hi_d or lo_t > hi_t:
            raise ValueError("disruption ranges must be ordered")
        if hi_t + hi_d >= self.replication_length:
            raise ValueError("disruption window must end before the trace does")

    @property
    def num_recorded_days(self) -> int:
        # days warmup..replication_length inclusive
        return self.replication_length - self.warmup + 1


@dataclass(frozen=True)
class ScenarioSpec:
    """One scenario instance: id plus a sampled disruption window.

    Day indices are 1-based; day d spans continuous time [d-1, d). A window
    with onset o and duration d covers days o..o+d-1, i.e. continuous time
    [o-1, o-1+d).
    """

    scenario: str
    onset: int | None = None        # first disrupted day
    duration: int | None = None     # days

    def __post_init__(self):
        if self.scenario not in SCENARIOS:
            raise ValueError(f"unknown scenario {self.scenario!r}")
        if self.scenario == "S0":
            if self.onset is not None or self.duration is not None:
                raise ValueError("S0 carries no disruption window")
        else:
            if self.onset is None or self.duration is None:
                raise ValueError(f"{self.scenario} needs onset and duration")
            if self.onset < 1 or self.duration < 1:
                raise ValueError("onset and duration must be positive days")

    @property
    def is_disrupted(self) -> bool:
        return self.scenario != "S0"

    @property
    def window_start(self) -> float:
        """Continuous-time start of the disruption window."""
        return float(self.onset - 1)

    @property
    def window_end(self) -> float:
        return float(self.onset - 1 + self.duration)

    @property
    def end_day(self) -> int:
        """First day index after the disruption window."""
        return self.onset + self.duration

    def sampled(scenario: str, params: SimParams, rng) -> "ScenarioSpec":
        """Draw onset/duration uniformly (integer, inclusive) for S1-S4."""
        if scenario == "S0":
            return ScenarioSpec("S0")
        lo_t, hi_t = params.disruption_onset_range
        lo_d, hi_d = params.disruption_duration_range
        onset = int(rng.integers(lo_t, hi_t + 1))
        duration = int(rng.integers(lo_d, hi_d + 1))
        return ScenarioSpec(scenario, onset=onset, duration=duration)

    sampled = staticmethod(sampled)
