"""Closed-form evaluation metrics shared by all models.

Convention: for the binary detection metrics the *normal* class is the
positive class. TP therefore counts normal windows identified as normal,
and a false alarm (normal flagged anomalous) is a false negative. This
inverts the usual anomaly-detection convention; callers beware.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class UndefinedMetricError(ValueError):
    """A metric denominator is zero for the given counts."""


@dataclass(frozen=True)
class BinaryCounts:
    tp: int
    fp: int
    fn: int
    tn: int

    def __post_init__(self):
        if min(self.tp, self.fp, self.fn, self.tn) < 0:
            raise ValueError("counts must be non-negative")

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.fn + self.tn


def accuracy(c: BinaryCounts) -> float:
    if c.total == 0:
        raise UndefinedMetricError("accuracy undefined: no observations")
    return (c.tp + c.tn) / c.total


def precision(c: BinaryCounts) -> float:
    if c.tp + c.fp == 0:
        raise UndefinedMetricError("precision undefined: no predicted positives")
    return c.tp / (c.tp + c.fp)


def recall(c: BinaryCounts) -> float:
    if c.tp + c.fn == 0:
        raise UndefinedMetricError("recall undefined: no actual positives")
    return c.tp / (c.tp + c.fn)


def f1_score(c: BinaryCounts) -> float:
    p, r = precision(c), recall(c)
    if p + r == 0:
        raise UndefinedMetricError("f1 undefined: precision + recall is zero")
    return 2 * p * r / (p + r)


def binary_report(c: BinaryCounts) -> dict:
    """All four detection metrics; undefined entries are reported as None."""
    out = {}
    for name, fn in (("accuracy", accuracy), ("precision", precision),
                     ("recall", recall), ("f1", f1_score)):
        try:
            out[name] = fn(c)
        except UndefinedMetricError:
            out[name] = None
    return out


def mae(actual, predicted) -> float:
    y, yhat = _paired(actual, predicted)
    return float(np.mean(np.abs(y - yhat)))


def mse(actual, predicted) -> float:
    y, yhat = _paired(actual, predicted)
    return float(np.mean((y - yhat) ** 2))


def rmse(actual, predicted) -> float:
    return float(np.sqrt(mse(actual, predicted)))


def mape(actual, predicted) -> tuple[float, int]:
    """Mean absolute percentage error.

    Elements with actual == 0 are skipped; returns (value, skipped_count).
    """
    y, yhat = _paired(actual, predicted)
    keep = y != 0
    skipped = int(np.sum(~keep))
    if not np.any(keep):
        raise UndefinedMetricError("mape undefined: every actual value is zero")
    value = float(np.mean(np.abs(y[keep] - yhat[keep]) / np.abs(y[keep])))
    return value, skipped


def regression_report(actual, predicted) -> dict:
    mape_value, skipped = mape(actual, predicted)
    return {
        "mae": mae(actual, predicted),
        "mse": mse(actual, predicted),
        "rmse": rmse(actual, predicted),
        "mape": mape_value,
        "mape_skipped": skipped,
        "n": int(np.asarray(actual).size),
    }


def _paired(actual, predicted):
    y = np.asarray(actual, dtype=float)
    yhat = np.asarray(predicted, dtype=float)
    if y.shape != yhat.shape:
        raise ValueError(f"shape mismatch: {y.shape} vs {yhat.shape}")
    if y.size == 0:
        raise ValueError("empty vectors")
    return y, yhat


def lag_stats(lags, undetected: int = 0) -> dict:
    """Summary of per-replication detection delays.

    `lags` holds delays for replications where the disruption was detected;
    `undetected` counts replications with no flag at or after onset.
    """
    lags = np.asarray(list(lags), dtype=float)
    if lags.size == 0:
        raise ValueError("lag_stats needs at least one detected replication")
    values, counts = np.unique(lags, return_counts=True)
    return {
        "mean": float(np.mean(lags)),
        "median": float(np.median(lags)),
        "max": float(np.max(lags)),
        "n_detected": int(lags.size),
        "n_undetected": int(undetected),
        "histogram": {float(v): int(c) for v, c in zip(values, counts)},
    }
