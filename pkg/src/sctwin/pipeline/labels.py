"""Class labels, anomaly flags, and time-to-recovery targets per day.

Label timeline of a disrupted replication:

    [trace start, onset)           Normal
    [onset, onset + duration)      scenario class (which echelon / surge)
    [onset + duration, recovery)   Recovery
    [recovery, trace end]          Normal

ttr counts the remaining days until recovery while the day lies in
[onset, recovery), and is 0 elsewhere. The recovery day itself is the
first Normal day again.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..sim.engine import FEATURE_NAMES, ReplicationTrace

CLASS_NAMES = ("Normal", "SurgeDemand", "SupplierLoss", "ManufacturerLoss",
               "DistributorLoss", "Recovery")
LABEL_NORMAL = 0
LABEL_RECOVERY = 5
SCENARIO_CLASS = {"S4": 1, "S1": 2, "S2": 3, "S3": 4}

_WIP = FEATURE_NAMES.index("wip")
_Q1 = FEATURE_NAMES.index("queue_1")


def in_system_percentile_rule(trace: ReplicationTrace, percentile: float = 95.0,
                              run_days: int = 3) -> tuple[int, bool]:
    """Recovery = orders in the whole system back inside the normal band.

    The monitored quantity is WIP plus the order backlog; the production
    line alone de-congests long before backlogged demand is worked off, so
    the backlog has to be part of the recovery signal. Recovery day is the
    first day at or after the disruption window whose in-system count stays
    at or below the pre-onset 95th percentile for `run_days` consecutive
    days. Returns (recovery_day, recovered); when the band is never
    re-entered, recovery_day is the day after the trace ends.
    """
    spec = trace.scenario
    if not spec.is_disrupted:
        raise ValueError("recovery is undefined for an undisrupted trace")
    days = trace.days
    total = trace.features[:, _WIP] + trace.features[:, _Q1]
    pre = total[days < spec.onset]
    if pre.size == 0:
        raise ValueError("no pre-onset days to calibrate the recovery band")
    threshold = np.percentile(pre, percentile)
    run = 0
    for i in range(len(days)):
        if days[i] < spec.end_day:
            continue
        if total[i] <= threshold:
            run += 1
            if run == run_days:
                return int(days[i]) - (run_days - 1), True
        else:
            run = 0
    return int(days[-1]) + 1, False


default_recovery_rule = in_system_percentile_rule

RECOVERY_RULES = {
    "insystem-p95-3d": in_system_percentile_rule,
}
DEFAULT_RECOVERY_RULE_ID = "insystem-p95-3d"


@dataclass
class LabelledTrace:
    """A replication trace plus per-day class, anomaly flag, and ttr target."""

    trace: ReplicationTrace
    classes: np.ndarray     # (n,) int, indices into CLASS_NAMES
    anomalous: np.ndarray   # (n,) bool
    ttr: np.ndarray         # (n,) float days
    recovery_day: int | None
    recovered: bool


def label_trace(trace: ReplicationTrace, recovery_rule=default_recovery_rule) -> LabelledTrace:
    days = trace.days
    n = len(days)
    classes = np.zeros(n, dtype=np.int64)
    ttr = np.zeros(n)
    spec = trace.scenario
    if not spec.is_disrupted:
        return LabelledTrace(trace, classes, classes.astype(bool), ttr, None, True)
    if trace.recovery_day is not None:
        recovery, recovered = trace.recovery_day, trace.recovered
    else:
        recovery, recovered = recovery_rule(trace)
    onset, end = spec.onset, spec.end_day
    in_window = (days >= onset) & (days < end)
    in_recovery = (days >= end) & (days < recovery)
    classes[in_window] = SCENARIO_CLASS[spec.scenario]
    classes[in_recovery] = LABEL_RECOVERY
    disrupted_span = (days >= onset) & (days < recovery)
    ttr[disrupted_span] = recovery - days[disrupted_span]
    return LabelledTrace(trace, classes, classes != LABEL_NORMAL, ttr,
                         recovery, recovered)
