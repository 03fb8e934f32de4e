"""Hyperparameter grid search over the one-class SVM boundary.

Each cell fits on the same normal-regime score vector and is evaluated on
held-out disrupted replications: detection accuracy and F1 (normal as the
positive class), lag statistics, and the pre-onset false-alarm percentage.
Cell failures are recorded and the sweep continues.
"""

from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

from ..metrics import BinaryCounts, binary_report
from .ocsvm import flag_anomalous, ocsvm_fit

GRID_NUS = (0.01, 0.025, 0.05, 0.075, 0.1, 0.2, 0.3, 0.4, 0.5)
GRID_GAMMAS = (0.01, 0.1, 1.0, 10.0, 100.0, 1000.0)

GRID_FIELDS = ("nu", "gamma", "accuracy", "f1", "mean_lag", "max_lag",
               "false_alarm_pct", "status")


def grid_search(train_scores, eval_reps, nus=GRID_NUS, gammas=GRID_GAMMAS,
                tol: float = 1e-6) -> list[dict]:
    """Sweep (nu, gamma); returns one row per cell.

    `eval_reps` holds per-replication dicts with keys: scores (window PC
    scores in end-day order), anomalous (bool labels), end_days, onset.
    """
    if len(nus) == 0 or len(gammas) == 0 or len(eval_reps) == 0:
        raise ValueError("grids and evaluation set must be non-empty")
    rows = []
    for nu in nus:
        for gamma in gammas:
            row = {"nu": nu, "gamma": gamma, "status": "ok"}
            try:
                model = ocsvm_fit(train_scores, nu=nu, gamma=gamma, tol=tol)
                row.update(_evaluate_cell(model, eval_reps))
            except Exception as exc:  # record and continue the sweep
                row["status"] = f"error: {exc}"
                row.update({k: float("nan") for k in
                            ("accuracy", "f1", "mean_lag", "max_lag",
                             "false_alarm_pct")})
            rows.append(row)
    return rows


def _evaluate_cell(model, eval_reps) -> dict:
    tp = fp = fn = tn = 0
    lags = []
    pre_flags = 0
    pre_total = 0
    for rep in eval_reps:
        flags = flag_anomalous(model, rep["scores"])
        actual_anom = np.asarray(rep["anomalous"], dtype=bool)
        tp += int(np.sum(~actual_anom & ~flags))
        fn += int(np.sum(~actual_anom & flags))
        fp += int(np.sum(actual_anom & ~flags))
        tn += int(np.sum(actual_anom & flags))
        end_days = np.asarray(rep["end_days"])
        onset = rep["onset"]
        pre = end_days < onset
        pre_flags += int(flags[pre].sum())
        pre_total += int(pre.sum())
        post = np.nonzero(flags & (end_days >= onset))[0]
        if post.size:
            lags.append(int(end_days[post[0]] - onset))
    report = binary_report(BinaryCounts(tp, fp, fn, tn))
    return {
        "accuracy": report["accuracy"],
        "f1": report["f1"],
        "mean_lag": float(np.mean(lags)) if lags else float("nan"),
        "max_lag": float(np.max(lags)) if lags else float("nan"),
        "false_alarm_pct": 100.0 * pre_flags / pre_total if pre_total else float("nan"),
    }


def write_grid_csv(path, rows) -> Path:
    path = Path(path)
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=GRID_FIELDS)
        writer.writeheader()
        for row in rows:
            writer.writerow({k: row.get(k) for k in GRID_FIELDS})
    return path
