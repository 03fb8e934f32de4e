"""Mini-batch training loop with seeded shuffling and dropout.

The recorded train loss is the running mean over batches of the optimized
objective (data loss plus any L1 penalties); the validation loss is the
plain data loss in inference mode at the end of each epoch. Divergence
(loss above 1e6, or a non-finite gradient) aborts and returns the curve
accumulated so far with `diverged` set.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..rng import substream
from .adam import Adam
from .layers import Sequential
from .losses import LOSSES, l1_penalty

_DIVERGENCE_LIMIT = 1e6


@dataclass
class TrainConfig:
    learning_rate: float
    batch_size: int
    epochs: int
    loss: str = "mae"
    seed: int = 0
    shuffle: bool = True

    def __post_init__(self):
        if self.learning_rate <= 0:
            raise ValueError("learning rate must be > 0")
        if self.batch_size < 1:
            raise ValueError("batch size must be >= 1")
        if self.loss not in LOSSES:
            raise ValueError(f"unknown loss {self.loss!r}")


@dataclass
class LearningCurve:
    train_loss: list = field(default_factory=list)
    val_loss: list = field(default_factory=list)
    diverged: bool = False
    message: str = ""

    def to_rows(self):
        return [(e + 1, t, v) for e, (t, v)
                in enumerate(zip(self.train_loss, self.val_loss))]


def evaluate_loss(model: Sequential, x, y, loss_name: str,
                  batch_size: int = 512) -> float:
    loss_fn = LOSSES[loss_name]
    total, n = 0.0, 0
    for s in range(0, len(x), batch_size):
        xb, yb = x[s:s + batch_size], y[s:s + batch_size]
        value, _ = loss_fn(model.forward(xb), yb)
        total += value * len(xb)
        n += len(xb)
    return total / n


def train(model: Sequential, train_x, train_y, val_x, val_y,
          config: TrainConfig) -> LearningCurve:
    if len(train_x) == 0 or len(val_x) == 0:
        raise ValueError("training and validation sets must be non-empty")
    loss_fn = LOSSES[config.loss]
    l1_layers = [ly for ly in model.layers if getattr(ly, "l1", 0.0) > 0.0]
    opt = Adam(model.params(), lr=config.learning_rate)
    rng = substream(config.seed, "train-loop")
    curve = LearningCurve()
    n = len(train_x)
    for epoch in range(config.epochs):
        order = rng.permutation(n) if config.shuffle else np.arange(n)
        epoch_loss, seen = 0.0, 0
        for s in range(0, n, config.batch_size):
            idx = order[s:s + config.batch_size]
            xb, yb = train_x[idx], train_y[idx]
            out = model.forward(xb, train=True, rng=rng)
            loss, dout = loss_fn(out, yb)
            model.zero_grads()
            model.backward(dout)
            for layer in l1_layers:
                weights = layer.weight_arrays()
                value, subgrads = l1_penalty(weights, layer.l1)
                loss += value
                for g, sg in zip(layer.grads(), subgrads):
                    g += sg
            if not np.isfinite(loss) or loss > _DIVERGENCE_LIMIT:
                curve.diverged = True
                curve.message = f"loss {loss} at epoch {epoch + 1}"
                return curve
            try:
                opt.step(model.grads())
            except FloatingPointError as exc:
                curve.diverged = True
                curve.message = f"{exc} at epoch {epoch + 1}"
                return curve
            epoch_loss += loss * len(idx)
            seen += len(idx)
        curve.train_loss.append(epoch_loss / seen)
        curve.val_loss.append(evaluate_loss(model, val_x, val_y, config.loss))
    return curve
