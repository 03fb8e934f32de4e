"""One-class SVM on scalar scores, solved by pairwise (SMO-style) updates.

Dual problem with RBF kernel K(x, y) = exp(-gamma (x - y)^2):

    minimize   1/2 sum_ij alpha_i alpha_j K(x_i, x_j)
    subject to 0 <= alpha_i <= 1/(nu n),  sum_i alpha_i = 1

Each step picks the maximal violating pair (ties broken by lowest index),
moves mass between the two coordinates, and updates the dual gradient with
two kernel columns. A point is flagged normal iff the decision value
sum_i alpha_i K(sv_i, x) - rho is non-negative.

Free (in-bound) support vectors sit exactly on the boundary at the true
optimum, so their computed decision values land within the solver
tolerance of zero with arbitrary sign. `flag_anomalous` therefore treats
values above -decision_tol as normal; otherwise a solver-noise coin flip
over every margin support vector would inflate the flagged fraction far
beyond nu on dense data.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np


@dataclass
class OCSVMModel:
    nu: float
    gamma: float
    support_vectors: np.ndarray
    dual_coefs: np.ndarray
    rho: float
    n_train: int
    converged: bool = True
    gap: float = 0.0
    iterations: int = 0
    decision_tol: float = 1e-6

    def to_dict(self) -> dict:
        return {
            "nu": self.nu, "gamma": self.gamma,
            "support_vectors": self.support_vectors.tolist(),
            "dual_coefs": self.dual_coefs.tolist(),
            "rho": self.rho, "n_train": self.n_train,
            "converged": self.converged, "gap": self.gap,
            "iterations": self.iterations, "decision_tol": self.decision_tol,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "OCSVMModel":
        return cls(d["nu"], d["gamma"], np.array(d["support_vectors"]),
                   np.array(d["dual_coefs"]), d["rho"], d["n_train"],
                   d.get("converged", True), d.get("gap", 0.0),
                   d.get("iterations", 0), d.get("decision_tol", 1e-6))


def _kernel_column(x: np.ndarray, gamma: float, i: int) -> np.ndarray:
    d = x - x[i]
    return np.exp(-gamma * d * d)


def ocsvm_fit(scores, nu: float, gamma: float, tol: float = 1e-6,
              max_iter: int | None = None) -> OCSVMModel:
    x = np.asarray(scores, dtype=float).ravel()
    n = x.size
    if n < 2:
        raise ValueError("need at least two training points")
    if not 0.0 < nu <= 1.0:
        raise ValueError("nu must be in (0, 1]")
    if gamma <= 0.0:
        raise ValueError("gamma must be > 0")
    if max_iter is None:
        max_iter = int(min(1e5 * n, 2e9))
    C = 1.0 / (nu * n)

    # start on the constraint boundary: the first floor(nu*n) points at the
    # upper bound, the fractional remainder on the next point
    alpha = np.zeros(n)
    m = int(nu * n)
    alpha[:m] = C
    if m < n:
        alpha[m] = 1.0 - m * C

    cache: dict[int, np.ndarray] = {}

    def col(i):
        got = cache.get(i)
        if got is None:
            if len(cache) > 1024:
                cache.clear()
            got = cache[i] = _kernel_column(x, gamma, i)
        return got

    G = np.zeros(n)
    for j in np.nonzero(alpha)[0]:
        G += alpha[j] * col(int(j))

    up_eps = C * 1e-12
    gap = np.inf
    it = 0
    for it in range(1, max_iter + 1):
        G_up = np.where(alpha < C - up_eps, G, np.inf)
        G_low = np.where(alpha > 0.0, G, -np.inf)
        i = int(np.argmin(G_up))
        j = int(np.argmax(G_low))
        gap = G_low[j] - G_up[i]
        if gap <= tol:
            break
        ki, kj = col(i), col(j)
        eta = ki[i] + kj[j] - 2.0 * ki[j]
        delta = gap / eta if eta > 1e-15 else np.inf
        delta = min(delta, C - alpha[i], alpha[j])
        alpha[i] += delta
        alpha[j] -= delta
        if alpha[j] < up_eps:
            alpha[j] = 0.0
        G += delta * (ki - kj)
    converged = gap <= tol
    if not converged:
        warnings.warn(f"one-class SVM did not converge: gap {gap:.3e} after "
                      f"{it} iterations", stacklevel=2)

    free = (alpha > up_eps) & (alpha < C - up_eps)
    if np.any(free):
        rho = float(G[free].mean())
    else:
        lo = G[alpha < C - up_eps].min() if np.any(alpha < C - up_eps) else G.max()
        hi = G[alpha > 0.0].max() if np.any(alpha > 0.0) else G.min()
        rho = float((lo + hi) / 2.0)

    sv = alpha > 0.0
    return OCSVMModel(
        nu=nu, gamma=gamma,
        support_vectors=x[sv].copy(),
        dual_coefs=alpha[sv].copy(),
        rho=rho, n_train=n,
        converged=converged, gap=float(max(gap, 0.0)), iterations=it,
        decision_tol=tol,
    )


def decision_values(model: OCSVMModel, scores, chunk: int = 4096) -> np.ndarray:
    """f(x) = sum_i alpha_i K(sv_i, x) - rho; normal iff f(x) >= 0."""
    x = np.asarray(scores, dtype=float).ravel()
    out = np.empty(x.size)
    sv = model.support_vectors
    for s in range(0, x.size, chunk):
        d = x[s:s + chunk, None] - sv[None, :]
        out[s:s + chunk] = np.exp(-model.gamma * d * d) @ model.dual_coefs
    return out - model.rho


def flag_anomalous(model: OCSVMModel, scores) -> np.ndarray:
    """Anomalous iff f(x) falls below zero by more than the solver tolerance."""
    return decision_values(model, scores) < -model.decision_tol


def kkt_violation(model: OCSVMModel, train_scores) -> float:
    """Worst complementary-slackness violation over the training set."""
    x = np.asarray(train_scores, dtype=float).ravel()
    C = 1.0 / (model.nu * model.n_train)
    alpha = np.zeros(x.size)
    sv_pos = {float(v): a for v, a in zip(model.support_vectors, model.dual_coefs)}
    # reconstruct alpha by value match; exact because SVs are copies of inputs
    used = np.zeros(x.size, dtype=bool)
    for v, a in zip(model.support_vectors, model.dual_coefs):
        idx = np.nonzero((x == v) & ~used)[0][0]
        alpha[idx] = a
        used[idx] = True
    G = decision_values(model, x) + model.rho
    worst = 0.0
    free = (alpha > 1e-12 * C) & (alpha < C * (1 - 1e-12))
    if np.any(free):
        worst = max(worst, float(np.abs(G[free] - model.rho).max()))
    at_zero = alpha == 0.0
    if np.any(at_zero):
        worst = max(worst, float(np.maximum(model.rho - G[at_zero], 0.0).max()))
    at_c = ~at_zero & ~free
    if np.any(at_c):
        worst = max(worst, float(np.maximum(G[at_c] - model.rho, 0.0).max()))
    return worst
