"""First principal component of the reconstruction-error vectors.

Fit by power iteration on the covariance matrix. The axis sign is fixed
deterministically: the component with the largest magnitude is made
positive, which for non-negative error data orients high-error vectors
toward positive scores.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class DegenerateDataError(ValueError):
    """Covariance carries no variance to decompose."""


@dataclass
class PCAModel:
    mean: np.ndarray
    axis: np.ndarray
    explained_ratio: float

    def to_dict(self) -> dict:
        return {"mean": self.mean.tolist(), "axis": self.axis.tolist(),
                "explained_ratio": self.explained_ratio}

    @classmethod
    def from_dict(cls, d: dict) -> "PCAModel":
        return cls(np.array(d["mean"]), np.array(d["axis"]), d["explained_ratio"])


def power_iteration_top(cov: np.ndarray, tol: float = 1e-13,
                        max_iter: int = 10000) -> tuple[float, np.ndarray]:
    """Dominant eigenpair of a symmetric PSD matrix."""
    k = cov.shape[0]
    v = np.ones(k) / np.sqrt(k)
    eigval = 0.0
    for _ in range(max_iter):
        w = cov @ v
        norm = np.linalg.norm(w)
        if norm == 0.0:
            raise DegenerateDataError("zero covariance")
        w /= norm
        # sign-insensitive convergence test
        if min(np.linalg.norm(w - v), np.linalg.norm(w + v)) < tol:
            v = w
            break
        v = w
    eigval = float(v @ cov @ v)
    return eigval, v


def fit_pca1(vectors: np.ndarray) -> PCAModel:
    vectors = np.asarray(vectors, dtype=float)
    if vectors.ndim != 2 or vectors.shape[0] < 2:
        raise ValueError("need at least two vectors")
    mean = vectors.mean(axis=0)
    centered = vectors - mean
    cov = centered.T @ centered / (len(vectors) - 1)
    if not np.any(cov):
        raise DegenerateDataError("all vectors identical: zero covariance")
    eigval, axis = power_iteration_top(cov)
    pivot = int(np.argmax(np.abs(axis)))
    if axis[pivot] < 0:
        axis = -axis
    ratio = float(eigval / np.trace(cov))
    return PCAModel(mean=mean, axis=axis, explained_ratio=ratio)


def project(model: PCAModel, vectors: np.ndarray) -> np.ndarray:
    """Scalar score(s) along the principal axis."""
    vectors = np.asarray(vectors, dtype=float)
    return (vectors - model.mean) @ model.axis
