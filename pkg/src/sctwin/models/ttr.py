"""Per-scenario time-to-recovery regressors.

One model per disruption scenario, trained only on windows whose final day
still has a positive time-to-recovery (the disrupted and recovering spans;
regressing the zero target everywhere else would dominate the loss).
Targets are min-max scaled on the training split so the quoted small
learning rate can reach them within twenty epochs; predictions are mapped
back to days and clamped at zero.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..nn import (LSTM, Dense, Dropout, Sequential, TrainConfig,
                  model_from_dict, model_to_dict, train)
from ..pipeline.windows import WindowSet
from ..rng import substream


@dataclass(frozen=True)
class TTRSpec:
    n_features: int = 13
    units: int = 64
    dropout: float = 0.1
    l1_factor: float = 1e-3
    learning_rate: float = 1e-4
    batch_size: int = 16
    epochs: int = 20
    feature_subset: tuple | None = None   # indices into the 13 features


@dataclass
class TTRModel:
    scenario: str
    model: Sequential
    ttr_min: float
    ttr_max: float
    feature_subset: tuple | None

    def save(self, path) -> Path:
        path = Path(path)
        payload = model_to_dict(self.model)
        payload["extra"] = {
            "scenario": self.scenario,
            "ttr_min": self.ttr_min,
            "ttr_max": self.ttr_max,
            "feature_subset": list(self.feature_subset) if self.feature_subset else None,
        }
        path.write_text(json.dumps(payload))
        return path

    @classmethod
    def load(cls, path) -> "TTRModel":
        payload = json.loads(Path(path).read_text())
        extra = payload["extra"]
        subset = extra.get("feature_subset")
        return cls(scenario=extra["scenario"], model=model_from_dict(payload),
                   ttr_min=extra["ttr_min"], ttr_max=extra["ttr_max"],
                   feature_subset=tuple(subset) if subset else None)


def _select_features(windows: np.ndarray, subset) -> np.ndarray:
    if subset is None:
        return windows
    return windows[..., list(subset)]


def build_ttr_model(spec: TTRSpec = TTRSpec(), seed: int = 0) -> Sequential:
    n_in = len(spec.feature_subset) if spec.feature_subset else spec.n_features
    rng = substream(seed, "ttr-init")
    return Sequential([
        LSTM(n_in, spec.units, return_sequences=True, rng=rng, l1=spec.l1_factor),
        Dropout(spec.dropout),
        LSTM(spec.units, spec.units, return_sequences=False, rng=rng),
        Dropout(spec.dropout),
        Dense(spec.units, 1, "linear", rng=rng),
    ])


def train_ttr(scenario: str, train_set: WindowSet, val_set: WindowSet,
              spec: TTRSpec = TTRSpec(), seed: int = 0):
    """Returns (TTRModel, learning_curve)."""
    train_keep = train_set.subset(train_set.ttr > 0)
    val_keep = val_set.subset(val_set.ttr > 0)
    if len(train_keep) == 0 or len(val_keep) == 0:
        raise ValueError(f"no positive-ttr windows for scenario {scenario}")
    lo = float(train_keep.ttr.min())
    hi = float(train_keep.ttr.max())
    if hi <= lo:
        raise ValueError("degenerate ttr target range")
    span = hi - lo

    def scale(t):
        return ((t - lo) / span)[:, None]

    model = build_ttr_model(spec, seed)
    config = TrainConfig(learning_rate=spec.learning_rate, batch_size=spec.batch_size,
                         epochs=spec.epochs, loss="mae", seed=seed)
    curve = train(model,
                  _select_features(train_keep.windows, spec.feature_subset),
                  scale(train_keep.ttr),
                  _select_features(val_keep.windows, spec.feature_subset),
                  scale(val_keep.ttr),
                  config)
    return TTRModel(scenario=scenario, model=model, ttr_min=lo, ttr_max=hi,
                    feature_subset=spec.feature_subset), curve


def predict_ttr(ttr_model: TTRModel, windows: np.ndarray) -> np.ndarray:
    """Predicted days to recovery, non-negative."""
    windows = np.asarray(windows, dtype=float)
    single = windows.ndim == 2
    if single:
        windows = windows[None]
    scaled = ttr_model.model.predict(
        _select_features(windows, ttr_model.feature_subset)).ravel()
    days = scaled * (ttr_model.ttr_max - ttr_model.ttr_min) + ttr_model.ttr_min
    days = np.maximum(days, 0.0)
    return float(days[0]) if single else days
