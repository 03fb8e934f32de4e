"""Per-feature min-max normalization, fit on training data only.

x_norm = (x - min) / (max - min), clamped to [0, 1] so that test-time
values outside the training range saturate instead of escaping the unit
interval. A constant feature maps to 0 (with a warning at fit time).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np


@dataclass
class NormalizationStats:
    minimum: np.ndarray
    maximum: np.ndarray

    def __post_init__(self):
        self.minimum = np.asarray(self.minimum, dtype=float)
        self.maximum = np.asarray(self.maximum, dtype=float)
        if self.minimum.shape != self.maximum.shape:
            raise ValueError("min/max shape mismatch")
        if np.any(self.maximum < self.minimum):
            raise ValueError("max must be >= min for every feature")

    @property
    def span(self) -> np.ndarray:
        return self.maximum - self.minimum

    def to_dict(self) -> dict:
        return {"min": self.minimum.tolist(), "max": self.maximum.tolist()}

    @classmethod
    def from_dict(cls, d: dict) -> "NormalizationStats":
        return cls(np.array(d["min"]), np.array(d["max"]))


def fit_minmax(records: np.ndarray) -> NormalizationStats:
    """Fit per-feature min/max on (n, k) training records."""
    records = np.asarray(records, dtype=float)
    if records.ndim != 2 or records.shape[0] < 2:
        raise ValueError("need at least two records to fit")
    lo = records.min(axis=0)
    hi = records.max(axis=0)
    constant = hi == lo
    if np.any(constant):
        warnings.warn(f"constant features at indices {np.nonzero(constant)[0].tolist()}; "
                      "they will map to 0", stacklevel=2)
    return NormalizationStats(lo, hi)


def apply_minmax(stats: NormalizationStats, values: np.ndarray) -> np.ndarray:
    """Normalize along the last axis; out-of-range values clamp to [0, 1]."""
    values = np.asarray(values, dtype=float)
    span = stats.span.copy()
    degenerate = span == 0
    span[degenerate] = 1.0
    out = (values - stats.minimum) / span
    out[..., degenerate] = 0.0
    return np.clip(out, 0.0, 1.0)


def invert_minmax(stats: NormalizationStats, values: np.ndarray) -> np.ndarray:
    """Map normalized values back to the original scale (in-range values only)."""
    return np.asarray(values, dtype=float) * stats.span + stats.minimum
