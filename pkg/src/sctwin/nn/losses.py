"""Training losses and the L1 weight penalty.

Each loss returns (value, gradient-wrt-predictions). Cross-entropy floors
probabilities at 1e-12 so a confident wrong prediction never produces an
infinite loss.
"""

from __future__ import annotations

import numpy as np

_EPS = 1e-12


def mae_loss(pred, target):
    pred = np.asarray(pred, dtype=float)
    target = np.asarray(target, dtype=float)
    if pred.shape != target.shape:
        raise ValueError(f"shape mismatch: {pred.shape} vs {target.shape}")
    diff = pred - target
    loss = float(np.mean(np.abs(diff)))
    grad = np.sign(diff) / diff.size
    return loss, grad


def cce_loss(probs, onehot):
    """Categorical cross-entropy, summed over classes, averaged over batch."""
    probs = np.asarray(probs, dtype=float)
    onehot = np.asarray(onehot, dtype=float)
    if probs.shape != onehot.shape:
        raise ValueError(f"shape mismatch: {probs.shape} vs {onehot.shape}")
    p = np.clip(probs, _EPS, None)
    batch = probs.shape[0]
    loss = float(-np.sum(onehot * np.log(p)) / batch)
    grad = -(onehot / p) / batch
    return loss, grad


LOSSES = {"mae": mae_loss, "cce": cce_loss}


def l1_penalty(weights, factor: float):
    """factor * sum |w| over the given arrays, with sign subgradients."""
    if factor < 0:
        raise ValueError("l1 factor must be >= 0")
    value = factor * sum(float(np.sum(np.abs(w))) for w in weights)
    subgrads = [factor * np.sign(w) for w in weights]
    return value, subgrads
