"""Independent closed-form oracle and statistical check for the simulator.

The reference configuration saturates the supplier (unlimited pending
orders) and removes both intermediate buffers. Its exact stationary output
rate follows from a small continuous-time Markov chain over the stage
statuses, which the simulated estimate must match under a two-sided Z-test.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass

import numpy as np
from scipy.stats import norm

from .rng import substream
from .sim.engine import FlowLineSim
from .sim.params import ScenarioSpec, SimParams

# Stage statuses: W working, B blocked (finished unit held), S starved.
# Stage 1 never starves (saturated input); stage 3 never blocks.
# Infeasible combinations: a blocked stage in front of a starved one would
# hand its unit over instantly.
_STATES = [
    (s1, s2, s3)
    for s1 in "WB" for s2 in "WBS" for s3 in "WS"
    if not (s1 == "B" and s2 == "S") and not (s2 == "B" and s3 == "S")
]
_INDEX = {s: i for i, s in enumerate(_STATES)}


def _transitions(state, mu1, mu2, mu3):
    s1, s2, s3 = state
    out = []
    if s1 == "W":
        out.append((("W", "W", s3), mu1) if s2 == "S" else (("B", s2, s3), mu1))
    if s2 == "W":
        if s3 == "S":
            # finished unit passes straight to stage 3; stage 2 pulls from a
            # blocked stage 1 or starves
            out.append((("W", "W", "W"), mu2) if s1 == "B" else (("W", "S", "W"), mu2))
        else:
            out.append(((s1, "B", s3), mu2))
    if s3 == "W":
        if s2 == "B":
            out.append((("W", "W", "W"), mu3) if s1 == "B" else (("W", "S", "W"), mu3))
        else:
            out.append(((s1, s2, "S"), mu3))
    return out


def ctmc_throughput(mu1: float, mu2: float, mu3: float) -> float:
    """Stationary output rate of the saturated zero-buffer three-stage line."""
    if min(mu1, mu2, mu3) <= 0:
        raise ValueError("all service rates must be > 0")
    n = len(_STATES)
    Q = np.zeros((n, n))
    for state in _STATES:
        i = _INDEX[state]
        for target, rate in _transitions(state, mu1, mu2, mu3):
            Q[i, _INDEX[target]] += rate
            Q[i, i] -= rate
    A = Q.T.copy()
    A[-1, :] = 1.0
    b = np.zeros(n)
    b[-1] = 1.0
    try:
        pi = np.linalg.solve(A, b)
    except np.linalg.LinAlgError as exc:
        raise ArithmeticError("singular balance system") from exc
    busy3 = sum(pi[_INDEX[s]] for s in _STATES if s[2] == "W")
    return float(mu3 * busy3)


def z_test(sample_mean: float, sample_sd: float, n: int, mu0: float,
           alpha: float = 0.01) -> dict:
    """Two-sided Z-test of H0: mean == mu0."""
    if n <= 30:
        raise ValueError("z_test needs n > 30")
    if sample_sd <= 0:
        raise ValueError("degenerate sample: sd must be > 0")
    z = (sample_mean - mu0) / (sample_sd / math.sqrt(n))
    z_crit = float(norm.isf(alpha / 2))
    return {"z": float(z), "z_crit": z_crit, "reject": bool(abs(z) > z_crit)}


@dataclass
class ValidationReport:
    oracle_rate: float
    sim_mean: float
    sim_sd: float
    half_width: float       # at the stated confidence level
    ci_low: float
    ci_high: float
    z: float
    reject: bool
    alpha: float
    n_replications: int
    warmup_days: float

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)


def validate_simulator(params: SimParams, n_reps: int = 916, alpha: float = 0.01,
                       warmup_days: int = 1) -> ValidationReport:
    """Compare single-day saturated-run output rates against the oracle.

    Each replication runs the saturated zero-buffer line independently and
    contributes one day's output count. The first `warmup_days` days are
    discarded: started empty, the line's day-one expected output sits about
    one unit below stationary (exact transient calculation), while from day
    two onward the bias is under 1e-6 units, so one warmup day makes the
    samples stationary.
    """
    mu1, mu2, mu3 = params.service_rates
    oracle = ctmc_throughput(mu1, mu2, mu3)
    sat_params = dataclasses.replace(
        params,
        replication_length=warmup_days + 1,
        warmup=warmup_days,
        buffer_caps=(math.inf, 0, 0),
        num_replications=n_reps,
        disruption_onset_range=(0, 0),
        disruption_duration_range=(0, 0),
    )
    scenario = ScenarioSpec("S0")
    outputs = np.empty(n_reps)
    for rep in range(n_reps):
        sim = FlowLineSim(sat_params, scenario, rep, saturated=True,
                          horizon=warmup_days + 1)
        sim.run()
        outputs[rep] = sim.daily_output()[warmup_days]
    mean = float(outputs.mean())
    sd = float(outputs.std(ddof=1))
    result = z_test(mean, sd, n_reps, oracle, alpha)
    hw = result["z_crit"] * sd / math.sqrt(n_reps)
    return ValidationReport(
        oracle_rate=oracle,
        sim_mean=mean,
        sim_sd=sd,
        half_width=hw,
        ci_low=mean - hw,
        ci_high=mean + hw,
        z=result["z"],
        reject=result["reject"],
        alpha=alpha,
        n_replications=n_reps,
        warmup_days=warmup_days,
    )
