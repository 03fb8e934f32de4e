"""Event-driven simulator of the three-stage flow line.

Mechanics: Poisson order arrivals feed an unbounded backlog queue at the
supplier; each stage is a single exponential server with a finite FCFS
buffer in front of it (backlog queue for the supplier) and
blocking-after-service: a finished unit stays in the server until the
downstream buffer has room, and chains of blocked servers release in
cascade when space frees up downstream.

Disruption windows change rates piecewise in time. Completion times are
drawn by inverting the integrated hazard of the piecewise-constant rate,
so a rate change never invalidates a scheduled event and a halted stage
(rate 0) simply resumes its interrupted job when the window closes.

Day d (1-based) covers continuous time [d-1, d). WIP and queue lengths
are recorded at 24 hourly snapshots per day; per-order times are recorded
on the day the order is fulfilled.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from heapq import heappush, heappop

import numpy as np

from ..rng import substream
from .params import SimParams, ScenarioSpec, DISRUPTED_STAGE

FEATURE_NAMES = (
    "interarrival",
    "proc_time_1", "proc_time_2", "proc_time_3",
    "queue_1", "queue_2", "queue_3",
    "wip",
    "lead_time", "flow_time", "wait_time", "proc_total",
    "output",
)
N_FEATURES = len(FEATURE_NAMES)

# indices of the per-order time features within a DailyRecord row
_ORDER_FEATURES = (0, 1, 2, 3, 8, 9, 10, 11)


@dataclass
class DailyRecord:
    """One simulated day's thirteen features."""

    day: int
    interarrival: float
    proc_time_1: float
    proc_time_2: float
    proc_time_3: float
    queue_1: float
    queue_2: float
    queue_3: float
    wip: float
    lead_time: float
    flow_time: float
    wait_time: float
    proc_total: float
    output: int

    def to_row(self) -> list:
        return [getattr(self, name) for name in FEATURE_NAMES]


@dataclass
class ReplicationTrace:
    """Post-warmup daily records of one replication plus run metadata."""

    scenario: ScenarioSpec
    rep_index: int
    base_seed: int
    days: np.ndarray            # (n,) 1-based day indices, strictly increasing
    features: np.ndarray        # (n, 13) in FEATURE_NAMES order
    max_queue: tuple            # observed snapshot maxima per stage
    window_completions: tuple   # per-stage service completions inside the window
    boundaries: np.ndarray      # (n_days, 4): cum arrivals, cum fulfilled, wip, backlog
    recovery_day: int | None = None
    recovered: bool = True

    def feature(self, name: str) -> np.ndarray:
        return self.features[:, FEATURE_NAMES.index(name)]


def sample_event_time(rate: float, rng) -> float:
    """Exponential waiting time with mean 1/rate; rate 0 means 'never'."""
    if rate < 0:
        raise ValueError(f"rate must be >= 0, got {rate}")
    if rate == 0.0:
        return math.inf
    return rng.exponential() / rate


def effective_rate(base: float, scenario: ScenarioSpec, t: float, role,
                   params: SimParams) -> float:
    """Instantaneous rate for `role` ('arrival' or a stage index 1..3)."""
    if not scenario.is_disrupted:
        return base
    if not (scenario.window_start <= t < scenario.window_end):
        return base
    if role == "arrival":
        return params.disrupted_arrival_rate if scenario.scenario == "S4" else base
    if DISRUPTED_STAGE.get(scenario.scenario) == role:
        return params.disrupted_service_rate
    return base


class RateProfile:
    """Piecewise-constant rate: `alt` inside [w_start, w_end), `base` elsewhere."""

    __slots__ = ("base", "alt", "w_start", "w_end")

    def __init__(self, base, alt=None, w_start=None, w_end=None):
        self.base = float(base)
        if alt is None:
            self.alt, self.w_start, self.w_end = self.base, 0.0, 0.0
        else:
            self.alt, self.w_start, self.w_end = float(alt), float(w_start), float(w_end)

    def invert(self, t0: float, e: float) -> float:
        """First time t >= t0 with integrated rate over [t0, t] equal to e."""
        for lo, hi, rate in ((t0, self.w_start, self.base),
                             (max(t0, self.w_start), self.w_end, self.alt)):
            if hi <= lo:
                continue
            cap = rate * (hi - lo)
            if e <= cap:
                return lo + e / rate
            e -= cap
        lo = max(t0, self.w_end)
        if self.base == 0.0:
            return math.inf
        return lo + e / self.base


class _Order:
    __slots__ = ("arrival", "gap", "line_entry", "svc_start", "tp", "sn")

    def __init__(self, arrival, gap, sn):
        self.arrival = arrival
        self.gap = gap
        self.sn = sn
        self.line_entry = 0.0
        self.svc_start = 0.0
        self.tp = [0.0, 0.0, 0.0]


_ARRIVAL = 0
_COMPLETE = 1


class FlowLineSim:
    """One replication of the flow line; strictly sequential, fully seeded."""

    def __init__(self, params: SimParams, scenario: ScenarioSpec, rep_index: int,
                 saturated: bool = False, horizon: float | None = None,
                 track_orders: bool = False):
        self.params = params
        self.scenario = scenario
        self.rep_index = rep_index
        self.saturated = saturated
        self.horizon = float(horizon if horizon is not None else params.replication_length)
        self.track_orders = track_orders

        key = (scenario.scenario, rep_index)
        self.arr_rng = substream(params.base_seed, *key, "arrivals")
        self.stage_rng = [substream(params.base_seed, *key, f"stage{i}")
                          for i in (1, 2, 3)]

        self.arrival_profile = RateProfile(
            params.arrival_rate,
            *( (params.disrupted_arrival_rate, scenario.window_start, scenario.window_end)
               if scenario.scenario == "S4" else (None, None, None) ))
        self.svc_profiles = []
        hit = DISRUPTED_STAGE.get(scenario.scenario)
        for i, mu in enumerate(params.service_rates, start=1):
            if hit == i:
                self.svc_profiles.append(RateProfile(
                    mu, params.disrupted_service_rate,
                    scenario.window_start, scenario.window_end))
            else:
                self.svc_profiles.append(RateProfile(mu))

        self.t = 0.0
        self.queues = [deque(), deque(), deque()]
        self.servers = [None, None, None]
        self.blocked = [False, False, False]
        self.caps = list(params.buffer_caps)
        self.heap = []
        self._seq = 0
        self._last_arrival = 0.0
        self._arrival_count = 0
        self._fulfil_count = 0
        self.fulfilled_sns = [] if track_orders else None

        n_days = int(math.ceil(self.horizon))
        self.n_days = n_days
        self._snap_wip = np.zeros((n_days, 24))
        self._snap_q = np.zeros((n_days, 24, 3))
        self._next_hour = 0
        self._total_hours = n_days * 24
        self._day_orders = [[] for _ in range(n_days)]
        self._boundaries = np.zeros((n_days, 4), dtype=np.int64)
        self._max_queue = [0, 0, 0]
        self._window_completions = [0, 0, 0]

    # -- event scheduling ---------------------------------------------------

    def _push(self, time, kind, stage):
        if math.isinf(time):
            return
        heappush(self.heap, (time, self._seq, kind, stage))
        self._seq += 1

    def _schedule_arrival(self):
        e = self.arr_rng.exponential()
        self._push(self.arrival_profile.invert(self.t, e), _ARRIVAL, 0)

    # -- line mechanics -----------------------------------------------------

    def _begin_service(self, stage, order):
        self.servers[stage] = order
        self.blocked[stage] = False
        order.svc_start = self.t
        if stage == 0:
            order.line_entry = self.t
        e = self.stage_rng[stage].exponential()
        self._push(self.svc_profiles[stage].invert(self.t, e), _COMPLETE, stage)

    def _acquire_next(self, stage):
        """Idle server at `stage` fetches its next unit, if one is available."""
        q = self.queues[stage]
        if q:
            order = q.popleft()
            self._begin_service(stage, order)
            self._refill_queue(stage)
        elif stage > 0 and self.blocked[stage - 1]:
            self._begin_service(stage, self._release_blocked(stage - 1))
        elif stage == 0 and self.saturated:
            self._arrival_count += 1
            self._begin_service(0, _Order(self.t, 0.0, self._arrival_count))

    def _refill_queue(self, stage):
        if stage > 0 and self.blocked[stage - 1] and len(self.queues[stage]) < self.caps[stage]:
            self.queues[stage].append(self._release_blocked(stage - 1))

    def _release_blocked(self, up):
        order = self.servers[up]
        self.servers[up] = None
        self.blocked[up] = False
        self._acquire_next(up)
        return order

    def _complete(self, stage):
        order = self.servers[stage]
        order.tp[stage] = self.t - order.svc_start
        sc = self.scenario
        if sc.is_disrupted and sc.window_start <= self.t < sc.window_end:
            self._window_completions[stage] += 1
        if stage == 2:
            self._fulfil(order)
            self.servers[2] = None
            self._acquire_next(2)
            return
        nxt = stage + 1
        if self.servers[nxt] is None and not self.queues[nxt]:
            self.servers[stage] = None
            self._begin_service(nxt, order)
            self._acquire_next(stage)
        elif len(self.queues[nxt]) < self.caps[nxt]:
            self.servers[stage] = None
            self.queues[nxt].append(order)
            self._acquire_next(stage)
        else:
            self.blocked[stage] = True

    def _arrive(self):
        self._arrival_count += 1
        order = _Order(self.t, self.t - self._last_arrival, self._arrival_count)
        self._last_arrival = self.t
        self.queues[0].append(order)
        if self.servers[0] is None:
            self._acquire_next(0)
        self._schedule_arrival()

    def _fulfil(self, order):
        self._fulfil_count += 1
        day = int(self.t)            # 0-based bucket for day index int(t)+1
        lt = self.t - order.arrival
        ft = self.t - order.line_entry
        tp1, tp2, tp3 = order.tp
        self._day_orders[day].append(
            (order.gap, tp1, tp2, tp3, lt, ft, lt - ft, tp1 + tp2 + tp3))
        if self.fulfilled_sns is not None:
            self.fulfilled_sns.append(order.sn)

    # -- recording ----------------------------------------------------------

    def _snapshot_upto(self, t_event):
        while self._next_hour < self._total_hours and self._next_hour / 24.0 <= t_event:
            h = self._next_hour
            day, hour = divmod(h, 24)
            wip = sum(1 for s in self.servers if s is not None)
            wip += len(self.queues[1]) + len(self.queues[2])
            self._snap_wip[day, hour] = wip
            for i in range(3):
                L = len(self.queues[i])
                self._snap_q[day, hour, i] = L
                if L > self._max_queue[i]:
                    self._max_queue[i] = L
            if hour == 0:
                self._boundaries[day] = (self._arrival_count, self._fulfil_count,
                                         wip, len(self.queues[0]))
            self._next_hour += 1

    # -- main loop ----------------------------------------------------------

    def run(self):
        if self.saturated:
            self._acquire_next(0)
        else:
            self._schedule_arrival()
        heap = self.heap
        while heap:
            te, _, kind, stage = heappop(heap)
            if te >= self.horizon:
                break
            self._snapshot_upto(te)
            self.t = te
            if kind == _ARRIVAL:
                self._arrive()
            else:
                self._complete(stage)
        self._snapshot_upto(self.horizon)

    def daily_output(self) -> np.ndarray:
        return np.array([len(rows) for rows in self._day_orders], dtype=np.int64)

    def build_trace(self) -> ReplicationTrace:
        params = self.params
        records = []
        prev = None
        for day0 in range(self.n_days):
            rec = aggregate_day(self._snap_wip[day0], self._snap_q[day0],
                                self._day_orders[day0], day0 + 1, prev)
            records.append(rec)
            prev = rec
        keep = [r for r in records if r.day >= params.warmup]
        days = np.array([r.day for r in keep], dtype=np.int64)
        features = np.array([r.to_row() for r in keep], dtype=float)
        return ReplicationTrace(
            scenario=self.scenario,
            rep_index=self.rep_index,
            base_seed=params.base_seed,
            days=days,
            features=features,
            max_queue=tuple(self._max_queue),
            window_completions=tuple(self._window_completions),
            boundaries=self._boundaries,
        )


def aggregate_day(hourly_wip, hourly_queues, fulfilled, day: int,
                  previous: DailyRecord | None) -> DailyRecord:
    """Collapse one day of event data into a DailyRecord.

    WIP and queue lengths are means of the hourly snapshots; per-order time
    features are means over the orders fulfilled that day, carried forward
    from the previous record when nothing was fulfilled.
    """
    hourly_wip = np.asarray(hourly_wip, dtype=float)
    hourly_queues = np.asarray(hourly_queues, dtype=float)
    q_mean = hourly_queues.mean(axis=0)
    row = np.zeros(N_FEATURES)
    row[4:7] = q_mean
    row[7] = hourly_wip.mean()
    row[12] = len(fulfilled)
    if fulfilled:
        order_means = np.asarray(fulfilled, dtype=float).mean(axis=0)
        row[list(_ORDER_FEATURES)] = order_means
    elif previous is not None:
        prev_row = previous.to_row()
        for j in _ORDER_FEATURES:
            row[j] = prev_row[j]
    return DailyRecord(day, *row[:12], int(row[12]))


def run_replication(params: SimParams, scenario: ScenarioSpec,
                    rep_index: int, track_orders: bool = False) -> ReplicationTrace:
    """Simulate one replication and return its post-warmup trace."""
    if rep_index < 0:
        raise ValueError("rep_index must be >= 0")
    sim = FlowLineSim(params, scenario, rep_index, track_orders=track_orders)
    sim.run()
    trace = sim.build_trace()
    if track_orders:
        trace.fulfilled_sns = sim.fulfilled_sns  # ad-hoc attribute for tests
    return trace
