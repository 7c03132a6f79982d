"""Replicated extremogram experiments with confidence bands and CLT diagnostics.

A run draws N independent series from the configured model (replicate r uses
the seed derived from (base_seed, r)), hard-threshold normalizes each at
u_n = 1 - v_n (uniform-marginal default, overridable), estimates the
extremogram over the configured lags, and compares it to the model's
finite-threshold extremogram.  Aggregates are the per-lag mean estimate,
95% bands symmetric about the mean (mean +/- 1.96 * replicate SD, with an
empirical-quantile alternative), the scaled errors sqrt(n v_n) * (rho_hat -
rho_n), and an Anderson-Darling normality diagnostic of those errors.

The normality diagnostic is a finite-sample surrogate for the limiting
Gaussian law of the scaled errors; output labels it as such.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from statsmodels.stats.diagnostic import normal_ad

from .clusters import SetSpec, half_line
from .empirical import BlockScheme, InsufficientDataError, partition_blocks
from .extremogram import (
    ExtremogramConfig,
    NoExceedancesError,
    covariance_matrix_estimate,
    estimate_extremogram,
    pa_extremogram_ar1,
    theoretical_extremogram_ar1,
)
from .normalize import normalize_hard_threshold
from .processes import ModelSpec, generate

__all__ = [
    "ExperimentFailedError",
    "ExperimentSpec",
    "MCResult",
    "derive_replicate_seed",
    "run_experiment",
    "normality_diagnostic",
    "coverage_check",
]

SCHEMA_VERSION = 1


class ExperimentFailedError(RuntimeError):
    pass


def derive_replicate_seed(base_seed: int, replicate: int) -> int:
    """Deterministic 64-bit stream split: replicate r gets hash(base_seed, r)."""
    ss = np.random.SeedSequence((int(base_seed), int(replicate)))
    return int(ss.generate_state(1, np.uint64)[0])


@dataclass(frozen=True)
class ExperimentSpec:
    model: ModelSpec
    n: int
    N: int
    v_n: float
    lags: tuple[int, ...]
    scheme: BlockScheme
    base_seed: int
    u_n: float | None = None  # defaults to 1 - v_n (uniform marginals)
    A: SetSpec = field(default_factory=lambda: half_line(1.0))
    B: SetSpec = field(default_factory=lambda: half_line(1.0))
    band_method: str = "normal"  # "normal" | "quantile"

    def __post_init__(self) -> None:
        if self.N < 2:
            raise ValueError(f"need N >= 2 replicates, got {self.N}")
        if not 0.0 < self.v_n < 1.0:
            raise ValueError(f"v_n must be in (0, 1), got {self.v_n}")
        if max(self.lags) >= self.scheme.r_n:
            raise ValueError("max lag must be < r_n")
        if self.band_method not in ("normal", "quantile"):
            raise ValueError(f"unknown band method {self.band_method!r}")

    @property
    def threshold(self) -> float:
        return 1.0 - self.v_n if self.u_n is None else self.u_n

    def pa_values(self) -> np.ndarray:
        """Finite-threshold extremogram per lag (closed form for base-b AR(1))."""
        if self.model.kind != "base_b_ar1":
            raise ValueError("closed-form finite-threshold extremogram requires the base-b AR(1) model")
        return np.array([pa_extremogram_ar1(self.model.b, h, self.v_n) for h in self.lags])

    def theoretical_values(self) -> np.ndarray:
        if self.model.kind != "base_b_ar1":
            raise ValueError("closed-form extremogram requires the base-b AR(1) model")
        return np.array([theoretical_extremogram_ar1(self.model.b, h) for h in self.lags])

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "model": self.model.to_dict(),
            "n": self.n,
            "N": self.N,
            "v_n": self.v_n,
            "lags": list(self.lags),
            "scheme": {"r_n": self.scheme.r_n, "l_n": self.scheme.l_n},
            "base_seed": self.base_seed,
            "u_n": self.u_n,
            "A": self.A.to_dict(),
            "B": self.B.to_dict(),
            "band_method": self.band_method,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentSpec":
        version = d.get("schema_version")
        if version != SCHEMA_VERSION:
            raise ValueError(f"unsupported schema_version {version!r} (expected {SCHEMA_VERSION})")
        n = int(d["n"])
        v_n = float(d["v_n"]) if d.get("v_n") is not None else 1.0 / math.sqrt(n)
        lags = d["lags"]
        if isinstance(lags, int):
            lags = list(range(lags + 1))
        scheme_d = d["scheme"]
        return cls(
            model=ModelSpec.from_dict(d["model"]),
            n=n,
            N=int(d["N"]),
            v_n=v_n,
            lags=tuple(int(h) for h in lags),
            scheme=BlockScheme(n=n, r_n=int(scheme_d["r_n"]), l_n=int(scheme_d["l_n"])),
            base_seed=int(d["base_seed"]),
            u_n=float(d["u_n"]) if d.get("u_n") is not None else None,
            A=SetSpec.from_dict(d["A"]) if "A" in d else half_line(1.0),
            B=SetSpec.from_dict(d["B"]) if "B" in d else half_line(1.0),
            band_method=d.get("band_method", "normal"),
        )


@dataclass(frozen=True)
class MCResult:
    spec: ExperimentSpec
    lags: tuple[int, ...]
    rho_hat: np.ndarray  # (N_kept, L)
    pa: np.ndarray  # (L,)
    mean_rho_hat: np.ndarray
    band_lo: np.ndarray
    band_hi: np.ndarray
    errors: np.ndarray  # rho_hat - pa, (N_kept, L)
    scaled_errors: np.ndarray  # sqrt(n v_n) * errors
    err_band_lo: np.ndarray
    err_band_hi: np.ndarray
    normality: tuple[tuple[float, float], ...] | None  # (statistic, p-value) per lag
    replicate_ids: tuple[int, ...]
    excluded: tuple[int, ...]
    sigma_hat: np.ndarray | None = None


def normality_diagnostic(errors) -> tuple[float, float]:
    """Anderson-Darling normality statistic and p-value for one lag's errors.

    Degenerate (constant) inputs are flagged with statistic=inf, p-value=0.
    Requires at least 20 replicates.
    """
    x = np.asarray(errors, dtype=np.float64)
    if x.ndim != 1 or len(x) < 20:
        raise InsufficientDataError(f"need >= 20 replicates, got {x.shape}")
    if np.ptp(x) == 0.0:
        return math.inf, 0.0
    stat, pval = normal_ad(x)
    return float(stat), float(pval)


def _replicate_estimate(spec: ExperimentSpec, r: int) -> np.ndarray | None:
    seed = derive_replicate_seed(spec.base_seed, r)
    series = generate(spec.model, spec.n, seed)
    ns = normalize_hard_threshold(series, spec.threshold, v_n=spec.v_n)
    cfg = ExtremogramConfig(
        A=spec.A, B=spec.B, lags=spec.lags, u_n=spec.threshold, v_n=spec.v_n, scheme=spec.scheme
    )
    try:
        est = estimate_extremogram(ns, cfg)
    except NoExceedancesError:
        return None
    return est.rho_hat


def _collect_blocks(spec: ExperimentSpec, kept: tuple[int, ...]) -> list[np.ndarray]:
    blocks: list[np.ndarray] = []
    for r in kept:
        seed = derive_replicate_seed(spec.base_seed, r)
        series = generate(spec.model, spec.n, seed)
        ns = normalize_hard_threshold(series, spec.threshold, v_n=spec.v_n)
        bs, _ = partition_blocks(ns, spec.scheme)
        blocks.extend(bs)
    return blocks


def run_experiment(
    spec: ExperimentSpec,
    threads: int = 1,
    normality: bool = True,
    estimate_covariance: bool = False,
) -> MCResult:
    """Run all replicates and aggregate; deterministic given spec.base_seed.

    Replicates run in parallel worker threads but are always reassembled in
    replicate order, so thread count never changes the output.  Replicates
    with zero exceedances are excluded with a warning entry; the run fails if
    more than 10% are excluded.
    """
    if threads < 1:
        raise ValueError("threads must be >= 1")
    if threads == 1:
        raw = [_replicate_estimate(spec, r) for r in range(spec.N)]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            raw = list(pool.map(lambda r: _replicate_estimate(spec, r), range(spec.N)))
    kept = tuple(r for r in range(spec.N) if raw[r] is not None)
    excluded = tuple(r for r in range(spec.N) if raw[r] is None)
    if len(excluded) > 0.1 * spec.N:
        raise ExperimentFailedError(
            f"{len(excluded)} of {spec.N} replicates had zero exceedances"
        )
    rho_hat = np.vstack([raw[r] for r in kept])
    pa = spec.pa_values()
    errors = rho_hat - pa
    scale = math.sqrt(spec.n * spec.v_n)
    scaled_errors = scale * errors
    mean_rho = rho_hat.mean(axis=0)
    sd = rho_hat.std(axis=0, ddof=1)
    if spec.band_method == "normal":
        band_lo = mean_rho - 1.96 * sd
        band_hi = mean_rho + 1.96 * sd
        err_band_lo = errors.mean(axis=0) - 1.96 * sd
        err_band_hi = errors.mean(axis=0) + 1.96 * sd
    else:
        band_lo = np.quantile(rho_hat, 0.025, axis=0)
        band_hi = np.quantile(rho_hat, 0.975, axis=0)
        err_band_lo = np.quantile(errors, 0.025, axis=0)
        err_band_hi = np.quantile(errors, 0.975, axis=0)
    norm: tuple[tuple[float, float], ...] | None = None
    if normality and len(kept) >= 20:
        norm = tuple(normality_diagnostic(scaled_errors[:, j]) for j in range(len(spec.lags)))
    sigma_hat = None
    if estimate_covariance:
        cfg = ExtremogramConfig(
            A=spec.A, B=spec.B, lags=spec.lags, u_n=spec.threshold, v_n=spec.v_n, scheme=spec.scheme
        )
        blocks = _collect_blocks(spec, kept)
        sigma_hat = covariance_matrix_estimate(blocks, cfg, rho=pa)
    return MCResult(
        spec=spec,
        lags=spec.lags,
        rho_hat=rho_hat,
        pa=pa,
        mean_rho_hat=mean_rho,
        band_lo=band_lo,
        band_hi=band_hi,
        errors=errors,
        scaled_errors=scaled_errors,
        err_band_lo=err_band_lo,
        err_band_hi=err_band_hi,
        normality=norm,
        replicate_ids=kept,
        excluded=excluded,
        sigma_hat=sigma_hat,
    )


def coverage_check(result: MCResult, nominal: float = 0.95) -> np.ndarray:
    """Per-lag fraction of replicates whose estimate falls inside the bands."""
    inside = (result.rho_hat >= result.band_lo) & (result.rho_hat <= result.band_hi)
    return inside.mean(axis=0)
