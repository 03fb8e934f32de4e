"""Sliding windows over labelled traces and replication-level splits."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from ..rng import substream
from .labels import CLASS_NAMES, LabelledTrace

WINDOW_SIZE = 14
N_CLASSES = len(CLASS_NAMES)


@dataclass
class WindowSet:
    """Stacked windows with the labels of each window's final timestep."""

    windows: np.ndarray      # (n, size, k)
    classes: np.ndarray      # (n,) int
    anomalous: np.ndarray    # (n,) bool
    ttr: np.ndarray          # (n,) float
    rep_ids: np.ndarray      # (n,) int provenance
    end_days: np.ndarray     # (n,) int provenance

    def __len__(self) -> int:
        return len(self.windows)

    @property
    def flat(self) -> np.ndarray:
        """Windows flattened row-major by timestep: (n, size * k)."""
        n = len(self.windows)
        return self.windows.reshape(n, -1)

    def subset(self, mask_or_index) -> "WindowSet":
        return WindowSet(self.windows[mask_or_index], self.classes[mask_or_index],
                         self.anomalous[mask_or_index], self.ttr[mask_or_index],
                         self.rep_ids[mask_or_index], self.end_days[mask_or_index])

    def for_reps(self, rep_ids) -> "WindowSet":
        return self.subset(np.isin(self.rep_ids, list(rep_ids)))

    @staticmethod
    def concat(sets: list["WindowSet"]) -> "WindowSet":
        return WindowSet(*[np.concatenate([getattr(s, f) for s in sets])
                           for f in ("windows", "classes", "anomalous", "ttr",
                                     "rep_ids", "end_days")])


def make_windows(values: np.ndarray, labelled: LabelledTrace | None = None,
                 size: int = WINDOW_SIZE, stride: int = 1,
                 rep_id: int = 0, days: np.ndarray | None = None) -> WindowSet:
    """Slide a window of `size` days over a (n, k) series.

    Each window is labelled by its final timestep. A series shorter than
    the window yields an empty set with a warning.
    """
    values = np.asarray(values, dtype=float)
    n = len(values)
    if labelled is not None:
        classes, anomalous, ttr = labelled.classes, labelled.anomalous, labelled.ttr
        days = labelled.trace.days
        rep_id = labelled.trace.rep_index
    else:
        classes = np.zeros(n, dtype=np.int64)
        anomalous = np.zeros(n, dtype=bool)
        ttr = np.zeros(n)
        if days is None:
            days = np.arange(1, n + 1)
    if n < size:
        warnings.warn(f"series of length {n} is shorter than window size {size}",
                      stacklevel=2)
        empty = np.zeros(0, dtype=np.int64)
        return WindowSet(np.zeros((0, size, values.shape[1] if values.ndim > 1 else 1)),
                         empty, empty.astype(bool), empty.astype(float), empty, empty)
    ends = np.arange(size - 1, n, stride)
    stacked = np.stack([values[e - size + 1:e + 1] for e in ends])
    return WindowSet(
        windows=stacked,
        classes=classes[ends].copy(),
        anomalous=anomalous[ends].copy(),
        ttr=ttr[ends].copy(),
        rep_ids=np.full(len(ends), rep_id, dtype=np.int64),
        end_days=np.asarray(days)[ends].copy(),
    )


def split_dataset(rep_ids, ratios=(0.6, 0.2, 0.2), seed: int = 0,
                  label: str = "split") -> dict:
    """Assign whole replications to train/validation/test at the given ratios.

    Sizes are floored for validation and test; the remainder goes to train.
    Deterministic under (seed, label).
    """
    rep_ids = list(rep_ids)
    n = len(rep_ids)
    if n < 5:
        raise ValueError("need at least 5 replications to split")
    if abs(sum(ratios) - 1.0) > 1e-9:
        raise ValueError("ratios must sum to 1")
    n_val = int(n * ratios[1])
    n_test = int(n * ratios[2])
    n_train = n - n_val - n_test
    order = substream(seed, label, "split").permutation(n)
    shuffled = [rep_ids[i] for i in order]
    return {
        "train": sorted(shuffled[:n_train]),
        "validation": sorted(shuffled[n_train:n_train + n_val]),
        "test": sorted(shuffled[n_train + n_val:]),
    }


def one_hot(class_index: int) -> np.ndarray:
    if not 0 <= class_index < N_CLASSES:
        raise ValueError(f"unknown class index {class_index}")
    v = np.zeros(N_CLASSES)
    v[class_index] = 1.0
    return v


def one_hot_inverse(vector) -> int:
    vector = np.asarray(vector)
    if vector.shape != (N_CLASSES,):
        raise ValueError(f"expected a {N_CLASSES}-vector")
    return int(np.argmax(vector))


def one_hot_matrix(classes: np.ndarray) -> np.ndarray:
    classes = np.asarray(classes, dtype=np.int64)
    out = np.zeros((len(classes), N_CLASSES))
    out[np.arange(len(classes)), classes] = 1.0
    return out
