"""Deep autoencoder over flattened windows and its reconstruction error."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..nn import Dense, Sequential
from ..rng import substream


@dataclass(frozen=True)
class AutoencoderSpec:
    n_in: int = 182
    widths: tuple = (256, 128, 64, 32)
    learning_rate: float = 1e-4
    batch_size: int = 128
    epochs: int = 1000
    loss: str = "mae"


def build_autoencoder(spec: AutoencoderSpec = AutoencoderSpec(), seed: int = 0) -> Sequential:
    """Symmetric encoder/decoder with relu hidden layers.

    The output layer is sigmoid because inputs are min-max normalized
    to [0, 1].
    """
    rng = substream(seed, "autoencoder-init")
    sizes = [spec.n_in, *spec.widths]
    layers = []
    for a, b in zip(sizes, sizes[1:]):
        layers.append(Dense(a, b, "relu", rng=rng))
    decoder = sizes[::-1]
    for a, b in zip(decoder, decoder[1:-1]):
        layers.append(Dense(a, b, "relu", rng=rng))
    layers.append(Dense(decoder[-2], decoder[-1], "sigmoid", rng=rng))
    return Sequential(layers)


def reconstruction_error(model: Sequential, flat_windows: np.ndarray,
                         window_size: int = 14) -> np.ndarray:
    """Per-feature absolute reconstruction error, averaged over timesteps.

    Input rows are flattened (window_size x k) windows; the result is
    (n, k). Summing a row gives the scalar error of the whole window up to
    the timestep averaging.
    """
    flat_windows = np.asarray(flat_windows, dtype=float)
    if flat_windows.ndim != 2:
        raise ValueError("expected (n, window_size * k) input")
    n, width = flat_windows.shape
    if width % window_size != 0:
        raise ValueError(f"row width {width} is not a multiple of window size {window_size}")
    recon = model.predict(flat_windows)
    err = np.abs(flat_windows - recon)
    return err.reshape(n, window_size, width // window_size).mean(axis=1)
