"""Recurrent classifier that names the disrupted echelon (or phase).

Consumes the same normalized 14-day windows as the detector; the label is
the class of the window's final day. Class order is fixed: Normal,
SurgeDemand, SupplierLoss, ManufacturerLoss, DistributorLoss, Recovery.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np

from ..nn import LSTM, Dense, Dropout, Sequential, TrainConfig, train
from ..pipeline.labels import CLASS_NAMES
from ..pipeline.windows import WindowSet, one_hot_matrix
from ..rng import substream

N_CLASSES = len(CLASS_NAMES)


@dataclass(frozen=True)
class ClassifierSpec:
    n_features: int = 13
    units: int = 16
    dropout: float = 0.1
    learning_rate: float = 1e-4
    batch_size: int = 32
    epochs: int = 20


def build_classifier(spec: ClassifierSpec = ClassifierSpec(), seed: int = 0) -> Sequential:
    rng = substream(seed, "classifier-init")
    return Sequential([
        LSTM(spec.n_features, spec.units, return_sequences=True, rng=rng),
        Dropout(spec.dropout),
        LSTM(spec.units, spec.units, return_sequences=False, rng=rng),
        Dropout(spec.dropout),
        Dense(spec.units, N_CLASSES, "softmax", rng=rng),
    ])


def train_classifier(train_set: WindowSet, val_set: WindowSet,
                     spec: ClassifierSpec = ClassifierSpec(), seed: int = 0):
    """Returns (model, learning_curve). Every class must appear in training."""
    census = Counter(train_set.classes.tolist())
    missing = [CLASS_NAMES[k] for k in range(N_CLASSES) if census.get(k, 0) == 0]
    if missing:
        counts = {CLASS_NAMES[k]: census.get(k, 0) for k in range(N_CLASSES)}
        raise ValueError(f"classes absent from training data: {missing}; census {counts}")
    model = build_classifier(spec, seed)
    config = TrainConfig(learning_rate=spec.learning_rate, batch_size=spec.batch_size,
                         epochs=spec.epochs, loss="cce", seed=seed)
    curve = train(model, train_set.windows, one_hot_matrix(train_set.classes),
                  val_set.windows, one_hot_matrix(val_set.classes), config)
    return model, curve


def classify_windows(model: Sequential, windows: np.ndarray):
    """Predicted class indices and probability rows (argmax, lowest index wins ties)."""
    windows = np.asarray(windows, dtype=float)
    single = windows.ndim == 2
    if single:
        windows = windows[None]
    probs = model.predict(windows)
    classes = np.argmax(probs, axis=1)
    if single:
        return int(classes[0]), probs[0]
    return classes, probs


@dataclass
class ConfusionMatrix:
    counts: np.ndarray  # (6, 6), rows actual, columns predicted

    def per_class(self) -> dict:
        out = {}
        for k, name in enumerate(CLASS_NAMES):
            tp = self.counts[k, k]
            actual = self.counts[k].sum()
            predicted = self.counts[:, k].sum()
            prec = float(tp / predicted) if predicted else None
            rec = float(tp / actual) if actual else None
            if prec and rec and prec + rec > 0:
                f1 = 2 * prec * rec / (prec + rec)
            elif prec is not None and rec is not None:
                f1 = 0.0
            else:
                f1 = None
            out[name] = {"precision": prec, "recall": rec, "f1": f1,
                         "support": int(actual)}
        return out

    def to_dict(self) -> dict:
        return {"classes": list(CLASS_NAMES), "counts": self.counts.tolist(),
                "per_class": self.per_class()}


def confusion(actual, predicted) -> ConfusionMatrix:
    actual = np.asarray(actual, dtype=np.int64)
    predicted = np.asarray(predicted, dtype=np.int64)
    if actual.shape != predicted.shape:
        raise ValueError("actual and predicted lengths differ")
    counts = np.zeros((N_CLASSES, N_CLASSES), dtype=np.int64)
    np.add.at(counts, (actual, predicted), 1)
    return ConfusionMatrix(counts)
