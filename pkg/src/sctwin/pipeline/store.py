"""Windowed train/validation/test sets and their on-disk format.

One directory per scenario: {train,validation,test}.csv with a flattened
window per row (182 values, then class, anomaly, ttr, rep, end_day) and
manifest.json holding the normalization stats, split assignment, recovery
rule id, and seeds.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .. import FORMAT_VERSION
from ..sim.engine import ReplicationTrace
from .labels import DEFAULT_RECOVERY_RULE_ID, RECOVERY_RULES, label_trace
from .scaling import NormalizationStats, apply_minmax, fit_minmax
from .windows import WINDOW_SIZE, WindowSet, make_windows, split_dataset

SPLITS = ("train", "validation", "test")


def prepare_scenario(traces: list[ReplicationTrace], seed: int,
                     recovery_rule_id: str = DEFAULT_RECOVERY_RULE_ID,
                     window_size: int = WINDOW_SIZE, stride: int = 1) -> dict:
    """Label, split, normalize, and window one scenario's replications.

    Normalization stats are fit on the training replications' records only
    and applied to every split (out-of-range values clamp).
    """
    scenario = traces[0].scenario.scenario
    rule = RECOVERY_RULES[recovery_rule_id]
    labelled = {t.rep_index: label_trace(t, rule) for t in traces}
    split = split_dataset([t.rep_index for t in traces], seed=seed, label=scenario)
    train_records = np.concatenate(
        [labelled[r].trace.features for r in split["train"]])
    stats = fit_minmax(train_records)
    sets = {}
    for name in SPLITS:
        parts = []
        for rep in split[name]:
            lab = labelled[rep]
            normalized = apply_minmax(stats, lab.trace.features)
            parts.append(make_windows(normalized, lab, size=window_size, stride=stride))
        sets[name] = WindowSet.concat(parts)
    unrecovered = sorted(r for r, lab in labelled.items() if not lab.recovered)
    onsets = {t.rep_index: t.scenario.onset for t in traces}
    recoveries = {r: labelled[r].recovery_day for r in labelled}
    return {
        "scenario": scenario,
        "sets": sets,
        "stats": stats,
        "split": split,
        "seed": seed,
        "recovery_rule": recovery_rule_id,
        "window_size": window_size,
        "stride": stride,
        "unrecovered": unrecovered,
        "onsets": onsets,
        "recoveries": recoveries,
    }


def write_window_set(out_dir, prepared: dict) -> Path:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    k = prepared["window_size"] * prepared["sets"]["train"].windows.shape[2]
    header = ",".join([f"v{i}" for i in range(1, k + 1)]
                      + ["class", "anomaly", "ttr", "rep", "end_day"])
    for name in SPLITS:
        ws = prepared["sets"][name]
        table = np.column_stack([
            ws.flat, ws.classes, ws.anomalous.astype(np.int64),
            ws.ttr, ws.rep_ids, ws.end_days,
        ])
        with open(out_dir / f"{name}.csv", "w", newline="") as fh:
            fh.write(header + "\n")
            np.savetxt(fh, table,
                       fmt=["%.17g"] * k + ["%d", "%d", "%.17g", "%d", "%d"],
                       delimiter=",")
    manifest = {
        "format_version": FORMAT_VERSION,
        "kind": "window-set",
        "scenario": prepared["scenario"],
        "window_size": prepared["window_size"],
        "stride": prepared["stride"],
        "seed": prepared["seed"],
        "recovery_rule": prepared["recovery_rule"],
        "stats": prepared["stats"].to_dict(),
        "split": prepared["split"],
        "unrecovered": prepared["unrecovered"],
        "onsets": {str(k_): v for k_, v in prepared["onsets"].items()},
        "recoveries": {str(k_): v for k_, v in prepared["recoveries"].items()},
    }
    (out_dir / "manifest.json").write_text(json.dumps(manifest, indent=2))
    return out_dir


def read_window_set(set_dir, splits=SPLITS) -> dict:
    set_dir = Path(set_dir)
    manifest = json.loads((set_dir / "manifest.json").read_text())
    size = manifest["window_size"]
    out = {
        "manifest": manifest,
        "stats": NormalizationStats.from_dict(manifest["stats"]),
        "sets": {},
    }
    for name in splits:
        data = np.loadtxt(set_dir / f"{name}.csv", delimiter=",", skiprows=1, ndmin=2)
        k = data.shape[1] - 5
        out["sets"][name] = WindowSet(
            windows=data[:, :k].reshape(len(data), size, k // size),
            classes=data[:, k].astype(np.int64),
            anomalous=data[:, k + 1].astype(bool),
            ttr=data[:, k + 2],
            rep_ids=data[:, k + 3].astype(np.int64),
            end_days=data[:, k + 4].astype(np.int64),
        )
    return out
