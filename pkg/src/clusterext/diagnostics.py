"""Empirical weak-dependence diagnostics.

Weak dependence bounds covariances of bounded Lipschitz functions of past
and future coordinates by a coefficient decaying in the gap.  A full check
over the function class is not computable, so this module measures the decay
for specific declared test pairs and compares it against a theoretical
envelope fitted at the smallest lag (a necessary-condition check only).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

__all__ = ["DecayReport", "clipped_identity", "covariance_decay"]


def clipped_identity(x: np.ndarray) -> np.ndarray:
    """Identity clipped to [0, 1]; bounded by 1 with Lipschitz constant 1."""
    return np.clip(x, 0.0, 1.0)


@dataclass(frozen=True)
class DecayReport:
    lags: tuple[int, ...]
    measured: np.ndarray  # |cov| per lag, averaged over replicates
    std_error: np.ndarray  # MC standard error of the measured value per lag
    bound: np.ndarray  # fitted envelope C * envelope(l)
    passed: np.ndarray  # measured <= bound + 3 * std_error per lag

    def to_rows(self) -> list[dict]:
        return [
            {
                "lag": int(l),
                "measured": float(m),
                "std_error": float(s),
                "bound": float(b),
                "pass": bool(p),
            }
            for l, m, s, b, p in zip(self.lags, self.measured, self.std_error, self.bound, self.passed)
        ]


def covariance_decay(
    replicates: Sequence[np.ndarray],
    lags: Sequence[int],
    envelope: Callable[[int], float],
    f: Callable[[np.ndarray], np.ndarray] = clipped_identity,
    g: Callable[[np.ndarray], np.ndarray] | None = None,
) -> DecayReport:
    """Measure |Cov(f(X_0), g(X_l))| per lag against a fitted decay envelope.

    Each replicate contributes one covariance estimate per lag; the report
    carries the cross-replicate mean, its standard error, and the envelope
    C * envelope(l) with C fitted so the bound is tight at the smallest lag.
    """
    if g is None:
        g = f
    lags = tuple(int(l) for l in lags)
    if len(lags) == 0 or min(lags) < 1:
        raise ValueError("lags must be positive integers")
    per_rep = np.empty((len(replicates), len(lags)))
    for k, series in enumerate(replicates):
        x = np.asarray(getattr(series, "values", series), dtype=np.float64)
        fx = f(x)
        gx = g(x)
        for j, l in enumerate(lags):
            if l >= len(x):
                raise ValueError(f"lag {l} too large for series of length {len(x)}")
            per_rep[k, j] = np.cov(fx[:-l], gx[l:], ddof=1)[0, 1]
    measured = np.abs(per_rep.mean(axis=0))
    if len(replicates) > 1:
        std_error = per_rep.std(axis=0, ddof=1) / np.sqrt(len(replicates))
    else:
        std_error = np.zeros(len(lags))
    env = np.array([envelope(l) for l in lags], dtype=np.float64)
    c_fit = measured[0] / env[0] if env[0] > 0 else 1.0
    bound = c_fit * env
    passed = measured <= bound + 3.0 * std_error
    return DecayReport(lags=lags, measured=measured, std_error=std_error, bound=bound, passed=passed)
