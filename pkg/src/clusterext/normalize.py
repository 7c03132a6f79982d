"""Threshold normalization: map a raw series to its triangular-array row.

Two normalizations are provided.  The peaks-over-threshold form keeps the
scaled excess max{(X_i - u_n)/a_n, 0}; the hard-threshold form keeps the
scaled value X_i/u_n whenever ||X_i|| > u_n and zeroes it otherwise.  In both
cases non-extreme observations become exact zeros, which is what the cluster
machinery relies on.

Ties X_i == u_n count as non-exceedances (strict inequality).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "InvalidScaleError",
    "InvalidThresholdError",
    "NormalizedSeries",
    "normalize_pot",
    "normalize_hard_threshold",
    "exceedance_rate",
]


class InvalidScaleError(ValueError):
    pass


class InvalidThresholdError(ValueError):
    pass


@dataclass(frozen=True)
class NormalizedSeries:
    """Triangular-array row with its threshold metadata.

    v_n is the marginal probability that an entry is nonzero; its source
    records whether it was supplied analytically or computed from the sample.
    """

    values: np.ndarray
    u_n: float
    v_n: float
    v_n_source: str  # "analytic" | "empirical"
    a_n: float | None = None

    def __len__(self) -> int:
        return len(self.values)

    @property
    def support(self) -> np.ndarray:
        """Boolean mask of nonzero entries."""
        v = self.values
        if v.ndim == 1:
            return v != 0.0
        return np.any(v != 0.0, axis=1)


def _finish(values: np.ndarray, u_n: float, v_n: float | None, a_n: float | None) -> NormalizedSeries:
    if v_n is None:
        nonzero = values != 0.0 if values.ndim == 1 else np.any(values != 0.0, axis=1)
        return NormalizedSeries(
            values=values,
            u_n=u_n,
            v_n=float(np.count_nonzero(nonzero)) / len(nonzero),
            v_n_source="empirical",
            a_n=a_n,
        )
    return NormalizedSeries(values=values, u_n=u_n, v_n=float(v_n), v_n_source="analytic", a_n=a_n)


def normalize_pot(series, u_n: float, a_n: float, v_n: float | None = None) -> NormalizedSeries:
    """Peaks-over-threshold row: entry i = max{(X_i - u_n)/a_n, 0}.

    v_n, when given, is carried as the analytic exceedance probability;
    otherwise the empirical nonzero fraction is recorded.
    """
    if a_n <= 0:
        raise InvalidScaleError(f"a_n must be positive, got {a_n}")
    x = np.asarray(getattr(series, "values", series), dtype=np.float64)
    values = np.maximum((x - u_n) / a_n, 0.0)
    return _finish(values, u_n, v_n, a_n)


def normalize_hard_threshold(series, u_n: float, v_n: float | None = None) -> NormalizedSeries:
    """Hard-threshold row: entry i = X_i/u_n if ||X_i|| > u_n, else 0.

    For scalar series the norm is the absolute value.  Nonzero entries
    therefore always have norm strictly greater than 1.
    """
    if u_n <= 0:
        raise InvalidThresholdError(f"u_n must be positive, got {u_n}")
    x = np.asarray(getattr(series, "values", series), dtype=np.float64)
    if x.ndim == 1:
        exceed = np.abs(x) > u_n
        values = np.where(exceed, x / u_n, 0.0)
    else:
        exceed = np.linalg.norm(x, axis=1) > u_n
        values = np.where(exceed[:, None], x / u_n, 0.0)
    return _finish(values, u_n, v_n, None)


def exceedance_rate(ns: NormalizedSeries) -> float:
    """Fraction of nonzero entries in the row."""
    if len(ns) < 1:
        raise ValueError("empty series")
    return float(np.count_nonzero(ns.support)) / len(ns)
