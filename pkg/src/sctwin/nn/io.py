"""Exact JSON round-trip for trained models.

Weights are serialized as base64-encoded little-endian float64 bytes, so
save/load reproduces the model bit for bit.
"""

from __future__ import annotations

import base64
import json
from pathlib import Path

import numpy as np

from .layers import LSTM, Dense, Dropout, Sequential

MODEL_FORMAT = "sctwin-model"
MODEL_VERSION = 1


def _encode(arr: np.ndarray) -> dict:
    arr = np.ascontiguousarray(arr, dtype="<f8")
    return {"shape": list(arr.shape),
            "data": base64.b64encode(arr.tobytes()).decode("ascii")}


def _decode(d: dict) -> np.ndarray:
    raw = base64.b64decode(d["data"])
    return np.frombuffer(raw, dtype="<f8").reshape(d["shape"]).copy()


def model_to_dict(model: Sequential) -> dict:
    layers = []
    for layer in model.layers:
        entry = layer.to_dict()
        entry["weights"] = [_encode(p) for p in layer.params()]
        layers.append(entry)
    return {"format": MODEL_FORMAT, "version": MODEL_VERSION, "layers": layers}


def model_from_dict(d: dict) -> Sequential:
    if d.get("format") != MODEL_FORMAT:
        raise ValueError("not a model file")
    if d.get("version") != MODEL_VERSION:
        raise ValueError(f"unsupported model version {d.get('version')}")
    layers = []
    for entry in d["layers"]:
        kind = entry["type"]
        if kind == "dense":
            layer = Dense(entry["n_in"], entry["n_out"], entry["activation"],
                          l1=entry.get("l1", 0.0))
            layer.W, layer.b = (_decode(w) for w in entry["weights"])
            layer.gW = np.zeros_like(layer.W)
            layer.gb = np.zeros_like(layer.b)
        elif kind == "lstm":
            layer = LSTM(entry["n_in"], entry["units"],
                         return_sequences=entry["return_sequences"],
                         l1=entry.get("l1", 0.0))
            layer.Wx, layer.Wh, layer.b = (_decode(w) for w in entry["weights"])
            layer.gWx = np.zeros_like(layer.Wx)
            layer.gWh = np.zeros_like(layer.Wh)
            layer.gb = np.zeros_like(layer.b)
        elif kind == "dropout":
            layer = Dropout(entry["rate"])
        else:
            raise ValueError(f"unknown layer type {kind!r}")
        layers.append(layer)
    return Sequential(layers)


def save_model(path, model: Sequential, extra: dict | None = None) -> Path:
    path = Path(path)
    payload = model_to_dict(model)
    if extra:
        payload["extra"] = extra
    path.write_text(json.dumps(payload))
    return path


def load_model(path) -> tuple[Sequential, dict]:
    payload = json.loads(Path(path).read_text())
    return model_from_dict(payload), payload.get("extra", {})
