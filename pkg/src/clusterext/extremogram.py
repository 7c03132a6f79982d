"""Extremogram estimation and its closed forms for the base-b AR(1) model.

The estimator is the ratio of lag-h joint exceedance counts to marginal
exceedance counts on the normalized row.  Its numerator splits exactly into
within-block pair counts, block-boundary windows of width h, and a trailing
remainder; `decompose_pair_counts` returns that partition and the identity
block + delta + remainder = total holds in integer arithmetic.

For the base-b AR(1) process with A = B = (1, inf) the limiting extremogram
is b**-h and the finite-threshold (pre-asymptotic) extremogram has a closed
form as an average over the b**h innovation tuples; `pa_extremogram_ar1`
evaluates it by exact enumeration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .clusters import SetSpec, make_extremogram_functional
from .empirical import BlockScheme
from .normalize import NormalizedSeries

__all__ = [
    "InvalidLagError",
    "InfeasibleLagError",
    "NoExceedancesError",
    "ExtremogramConfig",
    "ExtremogramEstimate",
    "PairCountDecomposition",
    "estimate_extremogram",
    "decompose_pair_counts",
    "theoretical_extremogram_ar1",
    "pa_extremogram_ar1",
    "asymptotic_error_vector",
    "covariance_matrix_estimate",
]

ENUMERATION_GUARD = 10**7
_CHUNK = 1 << 20


class InvalidLagError(ValueError):
    pass


class InfeasibleLagError(ValueError):
    pass


class NoExceedancesError(ValueError):
    def __init__(self, count: int):
        super().__init__(f"denominator exceedance count is {count}; extremogram undefined")
        self.count = count


@dataclass(frozen=True)
class ExtremogramConfig:
    A: SetSpec
    B: SetSpec
    lags: tuple[int, ...]
    u_n: float
    v_n: float
    scheme: BlockScheme

    def __post_init__(self) -> None:
        if len(self.lags) == 0 or min(self.lags) < 0:
            raise InvalidLagError("lags must be a nonempty sequence of nonnegative integers")
        if max(self.lags) >= self.scheme.r_n:
            raise InvalidLagError(
                f"max lag {max(self.lags)} must be < block length r_n={self.scheme.r_n}"
            )


@dataclass(frozen=True)
class PairCountDecomposition:
    h: int
    block_sum: int
    delta_sum: int
    remainder: int

    @property
    def total(self) -> int:
        return self.block_sum + self.delta_sum + self.remainder


@dataclass(frozen=True)
class ExtremogramEstimate:
    lags: tuple[int, ...]
    rho_hat: np.ndarray
    numerators: np.ndarray  # integer pair counts per lag
    denominator: int
    decompositions: tuple[PairCountDecomposition, ...]


def _membership(ns: NormalizedSeries, cfg: ExtremogramConfig) -> tuple[np.ndarray, np.ndarray]:
    return cfg.A.contains(ns.values), cfg.B.contains(ns.values)


def _pair_indicator(in_a: np.ndarray, in_b: np.ndarray, h: int) -> np.ndarray:
    n = len(in_a)
    if h == 0:
        return in_a & in_b
    return in_a[: n - h] & in_b[h:]


def decompose_pair_counts(ns: NormalizedSeries, cfg: ExtremogramConfig, h: int) -> PairCountDecomposition:
    """Exact split of the lag-h pair count into block, boundary and remainder parts.

    Pairs whose second index runs past the series contribute nothing (the
    indicator is zero off the sample), which keeps the identity exact also
    when the boundary window of the last block overruns n - h.
    """
    scheme = cfg.scheme
    if h >= scheme.r_n:
        raise InvalidLagError(f"lag {h} must be < block length r_n={scheme.r_n}")
    if scheme.n != len(ns):
        raise InvalidLagError(f"scheme.n={scheme.n} does not match series length {len(ns)}")
    in_a, in_b = _membership(ns, cfg)
    ind = _pair_indicator(in_a, in_b, h)  # ind[i-1] = 1{X_i in A, X_{i+h} in B}, i = 1..n-h
    n, r, m = scheme.n, scheme.r_n, scheme.m_n
    limit = n - h
    block_sum = 0
    delta_sum = 0
    for j in range(1, m + 1):
        block_sum += int(np.count_nonzero(ind[(j - 1) * r : min(j * r - h, limit)]))
        if h > 0:
            delta_sum += int(np.count_nonzero(ind[j * r - h : min(j * r, limit)]))
    remainder = int(np.count_nonzero(ind[m * r : limit]))
    return PairCountDecomposition(h=h, block_sum=block_sum, delta_sum=delta_sum, remainder=remainder)


def estimate_extremogram(ns: NormalizedSeries, cfg: ExtremogramConfig) -> ExtremogramEstimate:
    """Ratio estimator rho_hat(h) = pair count at lag h / marginal count in A."""
    in_a, in_b = _membership(ns, cfg)
    denominator = int(np.count_nonzero(in_a))
    if denominator == 0:
        raise NoExceedancesError(0)
    numerators = np.array(
        [int(np.count_nonzero(_pair_indicator(in_a, in_b, h))) for h in cfg.lags], dtype=np.int64
    )
    decomps = tuple(decompose_pair_counts(ns, cfg, h) for h in cfg.lags)
    return ExtremogramEstimate(
        lags=cfg.lags,
        rho_hat=numerators / denominator,
        numerators=numerators,
        denominator=denominator,
        decompositions=decomps,
    )


def theoretical_extremogram_ar1(b: int, h: int) -> float:
    """Limiting extremogram b**-h of the base-b AR(1) model, A = B = (1, inf)."""
    if b < 2:
        raise ValueError(f"b must be >= 2, got {b}")
    if h < 0:
        raise ValueError(f"h must be >= 0, got {h}")
    return float(b) ** (-h)


def pa_extremogram_ar1(b: int, h: int, v_n: float) -> float:
    """Finite-threshold extremogram of the base-b AR(1) model at exceedance rate v_n.

    Averages min{1, (1/v_n) * (1 - (1-v_n) b**h + S)_+} over the b**h
    innovation tuples, where S is the tuple's weighted digit sum; the digit
    sums enumerate the integers 0 .. b**h - 1 exactly once, so the tuples are
    enumerated through that integer index.  The positive part is taken before
    dividing by v_n and the accumulation is compensated.

    Equals b**-h exactly whenever v_n <= b**-h, and exceeds it otherwise.
    """
    if b < 2:
        raise ValueError(f"b must be >= 2, got {b}")
    if h < 0:
        raise ValueError(f"h must be >= 0, got {h}")
    if not 0.0 < v_n < 1.0:
        raise ValueError(f"v_n must be in (0, 1), got {v_n}")
    if h == 0:
        return 1.0
    count = b**h
    if count > ENUMERATION_GUARD:
        raise InfeasibleLagError(
            f"b**h = {count} tuples exceeds the exact-enumeration guard {ENUMERATION_GUARD}"
        )
    c = 1.0 - (1.0 - v_n) * count
    partials: list[float] = []
    for start in range(0, count, _CHUNK):
        s = np.arange(start, min(start + _CHUNK, count), dtype=np.float64)
        terms = np.minimum(np.maximum(c + s, 0.0) / v_n, 1.0)
        partials.append(math.fsum(terms.tolist()))
    return math.fsum(partials) / count


def asymptotic_error_vector(
    estimate: ExtremogramEstimate, pa: np.ndarray, n: int, v_n: float
) -> np.ndarray:
    """Scaled estimation errors sqrt(n v_n) * (rho_hat(h) - rho_n(h)) per lag."""
    pa = np.asarray(pa, dtype=np.float64)
    if pa.shape != estimate.rho_hat.shape:
        raise ValueError("pa vector must align with the estimated lags")
    return math.sqrt(n * v_n) * (estimate.rho_hat - pa)


def covariance_matrix_estimate(
    blocks,
    cfg: ExtremogramConfig,
    rho: np.ndarray,
    lags: tuple[int, ...] | None = None,
) -> np.ndarray:
    """Estimated limiting covariance matrix of the scaled extremogram errors.

    The two covariance kernels are estimated by pooled within-block moments:
    sigma(h, h') as mean[f_h(Y) f_h'(Y)] / (r_n v_n) and sigma'(h) as
    mean[f_h(Y) f_0(Y)] / (r_n v_n), with f_h the lag-h pair-count functional
    and f_0 the marginal count.  They are assembled with the per-lag
    extremogram values `rho` (theoretical/pre-asymptotic when the model
    admits them, otherwise pass the mean estimate).
    """
    lags = cfg.lags if lags is None else tuple(lags)
    blocks = list(blocks)
    if len(blocks) < 2:
        raise ValueError("need at least 2 blocks")
    r_n, v_n = cfg.scheme.r_n, cfg.v_n
    f0 = make_extremogram_functional(cfg.A, cfg.A, 0)
    fs = [make_extremogram_functional(cfg.A, cfg.B, h) for h in lags]
    f0y = np.array([f0(b) for b in blocks])
    fy = np.array([[f(b) for b in blocks] for f in fs])  # (lags, blocks)
    scale = r_n * v_n
    sigma = (fy @ fy.T) / len(blocks) / scale
    sigma_prime = (fy @ f0y) / len(blocks) / scale
    sigma_prime_00 = float(f0y @ f0y) / len(blocks) / scale
    rho = np.asarray(rho, dtype=np.float64)
    if rho.shape != (len(lags),):
        raise ValueError("rho must supply one extremogram value per lag")
    cov = (
        sigma
        - np.outer(sigma_prime, rho)
        - np.outer(rho, sigma_prime)
        + np.outer(rho, rho) * sigma_prime_00
    )
    return cov
