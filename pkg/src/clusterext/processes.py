"""Seeded generators for weakly dependent time-series models.

Three model families are supported:

* ``base_b_ar1``  -- the non-mixing AR(1) recursion X_k = (X_{k-1} + xi_k)/b
  with integer b >= 2 and xi_k uniform on {0, ..., b-1}.  X_0 is drawn from
  the exact Uniform[0,1) stationary law, and the whole path is computed in an
  exact base-b digit representation, so the digit-shift structure of the
  recursion holds on every generated path.
* ``causal_linear`` -- truncated causal linear filters X_i = sum_j a_j xi_{i-j}.
* ``gaussian_ar1``  -- the Gaussian AR(1) with |phi| < 1, stationary start.

GARCH/ARCH(infinity), associated and general Gaussian processes are other
weakly dependent families; they are documented here as out of scope and no
generator is provided for them.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

__all__ = [
    "InvalidSpecError",
    "ModelSpec",
    "TimeSeries",
    "derive_seed_sequence",
    "generate_ar1_base_b",
    "generate_causal_linear",
    "generate_gaussian_ar1",
    "generate",
]

# Truncation length for linear filters; the coefficient tail beyond this is
# dropped with a warning if its l1 mass exceeds LINEAR_TAIL_TOL.
DEFAULT_TRUNCATION = 64
LINEAR_TAIL_TOL = 1e-8


class InvalidSpecError(ValueError):
    """Raised when a model specification violates its parameter constraints."""


@dataclass(frozen=True)
class ModelSpec:
    """Parameters identifying one of the supported models.

    kind is one of "base_b_ar1", "causal_linear", "gaussian_ar1"; only the
    fields relevant to that kind are consulted.
    """

    kind: str
    b: int | None = None
    coeffs: tuple[float, ...] | None = None
    innovation: str = "std_normal"
    phi: float | None = None

    def __post_init__(self) -> None:
        if self.kind == "base_b_ar1":
            if self.b is None or self.b < 2:
                raise InvalidSpecError(f"base_b_ar1 requires integer b >= 2, got {self.b!r}")
        elif self.kind == "causal_linear":
            if not self.coeffs:
                raise InvalidSpecError("causal_linear requires a nonempty coefficient list")
            tail = sum(abs(c) for c in self.coeffs[DEFAULT_TRUNCATION:])
            if tail > LINEAR_TAIL_TOL:
                warnings.warn(
                    f"linear filter tail mass {tail:.3e} beyond {DEFAULT_TRUNCATION} taps "
                    "is dropped",
                    stacklevel=2,
                )
        elif self.kind == "gaussian_ar1":
            if self.phi is None or not abs(self.phi) < 1:
                raise InvalidSpecError(f"gaussian_ar1 requires |phi| < 1, got {self.phi!r}")
        else:
            raise InvalidSpecError(f"unknown model kind {self.kind!r}")

    def to_dict(self) -> dict:
        d: dict = {"kind": self.kind}
        if self.kind == "base_b_ar1":
            d["b"] = self.b
        elif self.kind == "causal_linear":
            d["coeffs"] = list(self.coeffs or ())
            d["innovation"] = self.innovation
        elif self.kind == "gaussian_ar1":
            d["phi"] = self.phi
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "ModelSpec":
        kind = d.get("kind")
        if kind == "base_b_ar1":
            return cls(kind=kind, b=int(d["b"]))
        if kind == "causal_linear":
            return cls(
                kind=kind,
                coeffs=tuple(float(c) for c in d["coeffs"]),
                innovation=d.get("innovation", "std_normal"),
            )
        if kind == "gaussian_ar1":
            return cls(kind=kind, phi=float(d["phi"]))
        raise InvalidSpecError(f"unknown model kind {kind!r}")


@dataclass(frozen=True)
class TimeSeries:
    """A finite realization with its generating spec and seed."""

    values: np.ndarray
    spec: ModelSpec
    seed: int

    def __len__(self) -> int:
        return len(self.values)


def derive_seed_sequence(base_seed: int, replicate: int | None = None) -> np.random.SeedSequence:
    """Seed-sequence for a replicate stream.

    Replicate r of a run with base seed s uses SeedSequence((s, r)); the base
    run itself uses SeedSequence(s).  This is the single stream-splitting rule
    used everywhere, so parallel replicates are reproducible.
    """
    if replicate is None:
        return np.random.SeedSequence(base_seed)
    return np.random.SeedSequence((base_seed, replicate))


def _digit_precision(b: int) -> int:
    # Largest P with b**P <= 2**53, so digit words convert to float64 exactly
    # and every output is strictly below 1.
    return int(math.floor(53 * math.log(2) / math.log(b)))


def generate_ar1_base_b(b: int, n: int, seed: int, precision: int | None = None) -> TimeSeries:
    """Exact path of X_k = (X_{k-1} + xi_k)/b with stationary Uniform[0,1) start.

    The state is kept as P base-b digits (P chosen so b**P <= 2**53 by
    default); each step shifts the digits and prepends xi_k, so the recursion
    b*X_k - X_{k-1} = xi_k holds exactly up to the dropped digit b**-P.

    Parameters
    ----------
    b : integer base, >= 2.
    n : path length, >= 1.
    seed : RNG seed.
    precision : number of retained digits; defaults to floor(53 / log2(b)).
    """
    if b < 2:
        raise InvalidSpecError(f"b must be >= 2, got {b}")
    if n < 1:
        raise InvalidSpecError(f"n must be >= 1, got {n}")
    P = _digit_precision(b) if precision is None else int(precision)
    if P < 1 or float(b) ** P > 2.0**53:
        raise InvalidSpecError(f"precision {P} invalid for base {b} (need 1 <= P, b**P <= 2**53)")
    rng = np.random.default_rng(derive_seed_sequence(seed))
    # Digit stream: P digits of X_0 (least significant first) followed by the
    # innovations xi_1..xi_{n-1}.  X_k = sum_{t=1}^{P} s[P+k-t] * b**-t, i.e.
    # a sliding dot product against the weights b**(P-t).
    stream = rng.integers(0, b, size=P + n - 1, dtype=np.int64)
    weights = np.array([b ** (P - t) for t in range(1, P + 1)], dtype=np.int64)
    if n == 1:
        words = np.array([int(stream[::-1] @ weights)], dtype=np.int64)
    else:
        words = np.correlate(stream, weights[::-1].astype(np.int64))
    values = words.astype(np.float64) / float(b) ** P
    spec = ModelSpec(kind="base_b_ar1", b=b)
    return TimeSeries(values=values, spec=spec, seed=seed)


def _draw_innovations(rng: np.random.Generator, kind: str, size: int) -> np.ndarray:
    if kind == "std_normal":
        return rng.standard_normal(size)
    if kind == "uniform01":
        return rng.random(size)
    if kind.startswith("uniform_digits_"):
        b = int(kind.rsplit("_", 1)[1])
        return rng.integers(0, b, size=size).astype(np.float64)
    raise InvalidSpecError(f"unknown innovation kind {kind!r}")


def generate_causal_linear(
    coeffs: Sequence[float],
    innovation: str,
    n: int,
    seed: int,
    truncation: int = DEFAULT_TRUNCATION,
) -> TimeSeries:
    """Truncated causal linear process X_i = sum_{j<J} a_j xi_{i-j}.

    A burn-in of J = min(len(coeffs), truncation) innovations precedes the
    first emitted value, so the output is (truncated-)stationary from index 0.
    """
    if n < 1:
        raise InvalidSpecError(f"n must be >= 1, got {n}")
    if len(coeffs) == 0:
        raise InvalidSpecError("coefficient list must be nonempty")
    spec = ModelSpec(kind="causal_linear", coeffs=tuple(float(c) for c in coeffs), innovation=innovation)
    a = np.asarray(coeffs, dtype=np.float64)[:truncation]
    J = len(a)
    rng = np.random.default_rng(derive_seed_sequence(seed))
    xi = _draw_innovations(rng, innovation, n + J - 1)
    # X_i = sum_j a_j * xi_{i-j}: correlate the innovation stream with the
    # reversed filter; index 0 consumes the burn-in block.
    values = np.correlate(xi, a[::-1]) if J > 1 else a[0] * xi
    return TimeSeries(values=values, spec=spec, seed=seed)


def generate_gaussian_ar1(phi: float, n: int, seed: int) -> TimeSeries:
    """Gaussian AR(1) with stationary start X_0 ~ N(0, 1/(1-phi^2))."""
    if not abs(phi) < 1:
        raise InvalidSpecError(f"|phi| must be < 1, got {phi}")
    if n < 1:
        raise InvalidSpecError(f"n must be >= 1, got {n}")
    rng = np.random.default_rng(derive_seed_sequence(seed))
    eps = rng.standard_normal(n)
    values = np.empty(n)
    values[0] = eps[0] / math.sqrt(1.0 - phi * phi)
    for i in range(1, n):
        values[i] = phi * values[i - 1] + eps[i]
    spec = ModelSpec(kind="gaussian_ar1", phi=phi)
    return TimeSeries(values=values, spec=spec, seed=seed)


def generate(spec: ModelSpec, n: int, seed: int) -> TimeSeries:
    """Dispatch on spec.kind."""
    if spec.kind == "base_b_ar1":
        return generate_ar1_base_b(spec.b, n, seed)  # type: ignore[arg-type]
    if spec.kind == "causal_linear":
        return generate_causal_linear(spec.coeffs, spec.innovation, n, seed)  # type: ignore[arg-type]
    if spec.kind == "gaussian_ar1":
        return generate_gaussian_ar1(spec.phi, n, seed)  # type: ignore[arg-type]
    raise InvalidSpecError(f"unknown model kind {spec.kind!r}")
