"""Scenario dataset generation and on-disk format.

A dataset directory holds one CSV per replication (header: day,f1..f13)
plus manifest.json recording parameters, seeds, and each replication's
disruption window and computed recovery day.
"""

from __future__ import annotations

import dataclasses
import json
import math
from pathlib import Path

import numpy as np

from .. import FORMAT_VERSION
from ..rng import substream
from .engine import FEATURE_NAMES, ReplicationTrace, run_replication
from .params import SimParams, ScenarioSpec

_CSV_HEADER = "day," + ",".join(f"f{i}" for i in range(1, 14))


def generate_scenario_dataset(params: SimParams, scenario_id: str, n_reps: int,
                              recovery_rule=None) -> list[ReplicationTrace]:
    """Simulate n_reps replications of one scenario.

    For S1-S4 each replication samples its own onset and duration from a
    dedicated RNG substream. Recovery days are computed with
    `recovery_rule` (default: the WIP-percentile rule).
    """
    if n_reps < 1:
        raise ValueError("n_reps must be >= 1")
    if recovery_rule is None:
        from ..pipeline.labels import default_recovery_rule
        recovery_rule = default_recovery_rule
    traces = []
    for rep in range(n_reps):
        window_rng = substream(params.base_seed, scenario_id, rep, "window")
        spec = ScenarioSpec.sampled(scenario_id, params, window_rng)
        trace = run_replication(params, spec, rep)
        if spec.is_disrupted:
            trace.recovery_day, trace.recovered = recovery_rule(trace)
        traces.append(trace)
    return traces


def write_dataset(out_dir, traces: list[ReplicationTrace], params: SimParams) -> Path:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    reps = []
    for trace in traces:
        name = f"rep_{trace.rep_index:04d}.csv"
        data = np.column_stack([trace.days, trace.features])
        _write_csv(out_dir / name, data)
        reps.append({
            "rep": trace.rep_index,
            "file": name,
            "onset": trace.scenario.onset,
            "duration": trace.scenario.duration,
            "recovery_day": trace.recovery_day,
            "recovered": trace.recovered,
            "max_queue": list(trace.max_queue),
        })
    manifest = {
        "format_version": FORMAT_VERSION,
        "kind": "scenario-dataset",
        "scenario": traces[0].scenario.scenario,
        "n_replications": len(traces),
        "params": params_to_dict(params),
        "features": list(FEATURE_NAMES),
        "replications": reps,
    }
    (out_dir / "manifest.json").write_text(json.dumps(manifest, indent=2))
    return out_dir


def read_dataset(dataset_dir) -> tuple[SimParams, list[ReplicationTrace]]:
    dataset_dir = Path(dataset_dir)
    manifest = json.loads((dataset_dir / "manifest.json").read_text())
    params = params_from_dict(manifest["params"])
    scenario_id = manifest["scenario"]
    traces = []
    for entry in manifest["replications"]:
        data = np.loadtxt(dataset_dir / entry["file"], delimiter=",", skiprows=1, ndmin=2)
        spec = ScenarioSpec(scenario_id, onset=entry["onset"], duration=entry["duration"])
        trace = ReplicationTrace(
            scenario=spec,
            rep_index=entry["rep"],
            base_seed=params.base_seed,
            days=data[:, 0].astype(np.int64),
            features=data[:, 1:],
            max_queue=tuple(entry.get("max_queue", ())),
            window_completions=(),
            boundaries=np.zeros((0, 4), dtype=np.int64),
            recovery_day=entry["recovery_day"],
            recovered=entry["recovered"],
        )
        traces.append(trace)
    return params, traces


def params_to_dict(params: SimParams) -> dict:
    d = dataclasses.asdict(params)
    d["buffer_caps"] = ["inf" if math.isinf(c) else c for c in params.buffer_caps]
    for key in ("service_rates", "server_caps", "disruption_duration_range",
                "disruption_onset_range"):
        d[key] = list(d[key])
    return d


def params_from_dict(d: dict) -> SimParams:
    d = dict(d)
    d["buffer_caps"] = tuple(math.inf if c == "inf" else c for c in d["buffer_caps"])
    for key in ("service_rates", "server_caps", "disruption_duration_range",
                "disruption_onset_range"):
        d[key] = tuple(d[key])
    return SimParams(**d)


def _write_csv(path: Path, data: np.ndarray):
    # %.17g keeps float64 values exact for byte-identical reruns
    with open(path, "w", newline="") as fh:
        fh.write(_CSV_HEADER + "\n")
        np.savetxt(fh, data, fmt=["%d"] + ["%.17g"] * 13, delimiter=",")
