"""Dense and recurrent layers with exact reverse-mode gradients.

Everything runs in float64 on plain numpy arrays. Batches are
(batch, features) for dense layers and (batch, time, features) for
recurrent ones. Weights are initialized with fan-based uniform scaling
from a seeded generator, so identical seeds give identical models.
"""

from __future__ import annotations

import math

import numpy as np

ACTIVATIONS = ("relu", "sigmoid", "linear", "softmax")


class NonFiniteError(FloatingPointError):
    """A layer produced NaN or Inf."""


def _sigmoid(z):
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def _glorot(rng, fan_in, fan_out, shape):
    limit = math.sqrt(6.0 / (fan_in + fan_out))
    return rng.uniform(-limit, limit, size=shape)


class Dense:
    """Fully connected layer: activation(x @ W + b)."""

    def __init__(self, n_in: int, n_out: int, activation: str = "linear",
                 rng=None, l1: float = 0.0):
        if activation not in ACTIVATIONS:
            raise ValueError(f"unknown activation {activation!r}")
        rng = rng or np.random.default_rng(0)
        self.n_in, self.n_out = n_in, n_out
        self.activation = activation
        self.l1 = l1
        self.W = _glorot(rng, n_in, n_out, (n_in, n_out))
        self.b = np.zeros(n_out)
        self.gW = np.zeros_like(self.W)
        self.gb = np.zeros_like(self.b)
        self._cache = None

    def params(self):
        return [self.W, self.b]

    def grads(self):
        return [self.gW, self.gb]

    def weight_arrays(self):
        return [self.W]

    def forward(self, x, train=False, rng=None):
        z = x @ self.W + self.b
        if self.activation == "relu":
            a = np.maximum(z, 0.0)
        elif self.activation == "sigmoid":
            a = _sigmoid(z)
        elif self.activation == "softmax":
            zs = z - z.max(axis=-1, keepdims=True)
            ez = np.exp(zs)
            a = ez / ez.sum(axis=-1, keepdims=True)
        else:
            a = z
        self._cache = (x, z, a)
        return a

    def backward(self, da):
        x, z, a = self._cache
        if self.activation == "relu":
            dz = da * (z > 0)
        elif self.activation == "sigmoid":
            dz = da * a * (1.0 - a)
        elif self.activation == "softmax":
            dz = a * (da - np.sum(da * a, axis=-1, keepdims=True))
        else:
            dz = da
        self.gW += x.T @ dz
        self.gb += dz.sum(axis=0)
        return dz @ self.W.T

    def to_dict(self):
        return {"type": "dense", "n_in": self.n_in, "n_out": self.n_out,
                "activation": self.activation, "l1": self.l1}


class LSTM:
    """Single LSTM layer over (batch, time, features).

    Gate order in the packed weight matrices is input, forget, cell, output.
    The forget-gate bias starts at 1 so early training retains state.
    """

    def __init__(self, n_in: int, units: int, return_sequences: bool = False,
                 rng=None, l1: float = 0.0):
        rng = rng or np.random.default_rng(0)
        self.n_in, self.units = n_in, units
        self.return_sequences = return_sequences
        self.l1 = l1
        u = units
        self.Wx = _glorot(rng, n_in, 4 * u, (n_in, 4 * u))
        self.Wh = _glorot(rng, u, 4 * u, (u, 4 * u))
        self.b = np.zeros(4 * u)
        self.b[u:2 * u] = 1.0
        self.gWx = np.zeros_like(self.Wx)
        self.gWh = np.zeros_like(self.Wh)
        self.gb = np.zeros_like(self.b)
        self._cache = None

    def params(self):
        return [self.Wx, self.Wh, self.b]

    def grads(self):
        return [self.gWx, self.gWh, self.gb]

    def weight_arrays(self):
        return [self.Wx, self.Wh]

    def forward(self, x, train=False, rng=None):
        B, T, _ = x.shape
        u = self.units
        xp = x.reshape(B * T, -1) @ self.Wx
        xp = xp.reshape(B, T, 4 * u)
        h = np.zeros((B, u))
        c = np.zeros((B, u))
        steps = []
        hs = np.empty((B, T, u)) if self.return_sequences else None
        for t in range(T):
            s = xp[:, t] + h @ self.Wh + self.b
            i = _sigmoid(s[:, :u])
            f = _sigmoid(s[:, u:2 * u])
            g = np.tanh(s[:, 2 * u:3 * u])
            o = _sigmoid(s[:, 3 * u:])
            c_prev, h_prev = c, h
            c = f * c_prev + i * g
            tc = np.tanh(c)
            h = o * tc
            steps.append((i, f, g, o, c_prev, h_prev, tc))
            if hs is not None:
                hs[:, t] = h
        self._cache = (x, steps)
        return hs if self.return_sequences else h

    def backward(self, dout):
        x, steps = self._cache
        B, T, _ = x.shape
        u = self.units
        dxp = np.zeros((B, T, 4 * u))
        dh = np.zeros((B, u))
        dc = np.zeros((B, u))
        for t in range(T - 1, -1, -1):
            i, f, g, o, c_prev, h_prev, tc = steps[t]
            if self.return_sequences:
                dh = dh + dout[:, t]
            elif t == T - 1:
                dh = dh + dout
            do = dh * tc
            dc = dc + dh * o * (1.0 - tc * tc)
            di = dc * g
            dg = dc * i
            df = dc * c_prev
            dc = dc * f
            ds = np.concatenate([
                di * i * (1.0 - i),
                df * f * (1.0 - f),
                dg * (1.0 - g * g),
                do * o * (1.0 - o),
            ], axis=1)
            dxp[:, t] = ds
            self.gWh += h_prev.T @ ds
            self.gb += ds.sum(axis=0)
            dh = ds @ self.Wh.T
        flat = dxp.reshape(B * T, 4 * u)
        self.gWx += x.reshape(B * T, -1).T @ flat
        return (flat @ self.Wx.T).reshape(B, T, -1)

    def to_dict(self):
        return {"type": "lstm", "n_in": self.n_in, "units": self.units,
                "return_sequences": self.return_sequences, "l1": self.l1}


class Dropout:
    """Inverted dropout; active only while training, identity in inference."""

    def __init__(self, rate: float):
        if not 0.0 <= rate < 1.0:
            raise ValueError("dropout rate must be in [0, 1)")
        self.rate = rate
        self._mask = None

    def params(self):
        return []

    def grads(self):
        return []

    def weight_arrays(self):
        return []

    def forward(self, x, train=False, rng=None):
        if not train or self.rate == 0.0:
            self._mask = None
            return x
        if rng is None:
            raise ValueError("training-mode dropout needs an rng")
        self._mask = (rng.random(x.shape) >= self.rate) / (1.0 - self.rate)
        return x * self._mask

    def backward(self, dout):
        if self._mask is None:
            return dout
        return dout * self._mask

    def to_dict(self):
        return {"type": "dropout", "rate": self.rate}


class Sequential:
    """A stack of layers applied in order."""

    def __init__(self, layers):
        self.layers = list(layers)

    def params(self):
        return [p for layer in self.layers for p in layer.params()]

    def grads(self):
        return [g for layer in self.layers for g in layer.grads()]

    def zero_grads(self):
        for g in self.grads():
            g[:] = 0.0

    def forward(self, x, train=False, rng=None):
        x = np.asarray(x, dtype=float)
        if not np.all(np.isfinite(x)):
            raise NonFiniteError("non-finite values in model input")
        for idx, layer in enumerate(self.layers):
            x = layer.forward(x, train=train, rng=rng)
            if not np.all(np.isfinite(x)):
                raise NonFiniteError(f"non-finite activation after layer {idx} "
                                     f"({type(layer).__name__})")
        return x

    def backward(self, dout):
        for layer in reversed(self.layers):
            dout = layer.backward(dout)
        return dout

    def predict(self, x, batch_size: int = 512):
        """Inference-mode forward in batches."""
        x = np.asarray(x, dtype=float)
        outs = [self.forward(x[s:s + batch_size])
                for s in range(0, len(x), batch_size)]
        return np.concatenate(outs) if len(outs) > 1 else outs[0]
