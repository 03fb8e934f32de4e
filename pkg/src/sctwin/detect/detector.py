"""The assembled detector: autoencoder -> error PCA -> one-class SVM.

A fitted bundle is immutable; scoring walks a replication's windows in
end-day order, flags each one, and summarizes the detection delay (lag)
and the false alarms raised before onset.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .. import FORMAT_VERSION
from ..nn import Sequential, model_from_dict, model_to_dict
from .autoencoder import reconstruction_error
from .ocsvm import OCSVMModel, flag_anomalous, ocsvm_fit
from .pca import PCAModel, fit_pca1, project


@dataclass
class DetectorBundle:
    ae: Sequential
    pca: PCAModel
    ocsvm: OCSVMModel
    window_size: int = 14

    def save(self, path) -> Path:
        path = Path(path)
        payload = {
            "format_version": FORMAT_VERSION,
            "kind": "detector-bundle",
            "window_size": self.window_size,
            "ae": model_to_dict(self.ae),
            "pca": self.pca.to_dict(),
            "ocsvm": self.ocsvm.to_dict(),
        }
        path.write_text(json.dumps(payload))
        return path

    @classmethod
    def load(cls, path) -> "DetectorBundle":
        d = json.loads(Path(path).read_text())
        if d.get("kind") != "detector-bundle":
            raise ValueError("not a detector bundle")
        return cls(
            ae=model_from_dict(d["ae"]),
            pca=PCAModel.from_dict(d["pca"]),
            ocsvm=OCSVMModel.from_dict(d["ocsvm"]),
            window_size=d["window_size"],
        )


@dataclass
class DetectionOutcome:
    flags: np.ndarray        # (n,) bool, True = anomalous
    end_days: np.ndarray
    lag: int | None          # days from onset to first flag at/after onset
    false_alarms: int        # anomalous flags strictly before onset
    n_pre_onset: int


def fit_detector(ae: Sequential, fit_windows_flat: np.ndarray, nu: float,
                 gamma: float, window_size: int = 14) -> DetectorBundle:
    """Fit the error PCA and the one-class boundary on normal-regime windows."""
    errors = reconstruction_error(ae, fit_windows_flat, window_size)
    pca = fit_pca1(errors)
    scores = project(pca, errors)
    ocsvm = ocsvm_fit(scores, nu=nu, gamma=gamma)
    return DetectorBundle(ae=ae, pca=pca, ocsvm=ocsvm, window_size=window_size)


def score_windows(bundle: DetectorBundle, windows_flat: np.ndarray) -> np.ndarray:
    """Principal-component score of each window's reconstruction error."""
    errors = reconstruction_error(bundle.ae, windows_flat, bundle.window_size)
    return project(bundle.pca, errors)


def detect_replication(bundle: DetectorBundle, windows_flat: np.ndarray,
                       end_days: np.ndarray, onset: int | None) -> DetectionOutcome:
    scores = score_windows(bundle, windows_flat)
    flags = flag_anomalous(bundle.ocsvm, scores)
    end_days = np.asarray(end_days)
    if onset is None:
        return DetectionOutcome(flags, end_days, None, int(flags.sum()), len(flags))
    pre = end_days < onset
    false_alarms = int(flags[pre].sum())
    post = np.nonzero(flags & (end_days >= onset))[0]
    lag = int(end_days[post[0]] - onset) if post.size else None
    return DetectionOutcome(flags, end_days, lag, false_alarms, int(pre.sum()))
