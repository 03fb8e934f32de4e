from .classifier import (
    ClassifierSpec, build_classifier, train_classifier, classify_windows,
    ConfusionMatrix, confusion,
)
from .ttr import TTRSpec, TTRModel, train_ttr, predict_ttr

__all__ = [
    "ClassifierSpec", "build_classifier", "train_classifier", "classify_windows",
    "ConfusionMatrix", "confusion",
    "TTRSpec", "TTRModel", "train_ttr", "predict_ttr",
]
