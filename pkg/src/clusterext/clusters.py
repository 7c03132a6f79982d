"""Finite blocks, the core operator and cluster functionals.

A block is a finite sequence of reals (or d-vectors).  Its core is the
smallest contiguous sub-block spanning the first through last nonzero entry,
interior zeros included; the core of an all-zero block is the length-1 zero
block.  A cluster functional f maps blocks to reals with f(x) = f(core(x))
and f(all-zero) = 0; the constructors below produce the built-in families
(entrywise sums, componentwise maximum, lag-pair counts).

Membership sets for the pair-count functional must be bounded away from
zero, so thresholds are required to be strictly positive.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

__all__ = [
    "ContractViolationError",
    "DomainError",
    "InvalidSetError",
    "Block",
    "SetSpec",
    "half_line",
    "norm_ball_complement",
    "ClusterFunctional",
    "core",
    "make_sum_functional",
    "make_max_functional",
    "make_extremogram_functional",
]


class ContractViolationError(ValueError):
    pass


class DomainError(ValueError):
    pass


class InvalidSetError(ValueError):
    pass


Block = np.ndarray  # shape (r,) for scalar entries, (r, d) for vector entries


def as_block(x) -> Block:
    b = np.asarray(x, dtype=np.float64)
    if b.ndim not in (1, 2) or b.shape[0] < 1:
        raise ValueError(f"block must be a nonempty 1-d or 2-d array, got shape {b.shape}")
    return b


def _nonzero_mask(b: Block) -> np.ndarray:
    return b != 0.0 if b.ndim == 1 else np.any(b != 0.0, axis=1)


def core(x) -> Block:
    """Sub-block from the first to the last nonzero entry.

    An all-zero block maps to the length-1 zero block (with the same entry
    dimension), on which every cluster functional vanishes.
    """
    b = as_block(x)
    idx = np.flatnonzero(_nonzero_mask(b))
    if idx.size == 0:
        return b[:1] * 0.0
    return b[idx[0] : idx[-1] + 1]


@dataclass(frozen=True)
class SetSpec:
    """Membership predicate bounded away from zero.

    kind "half_line" is the open interval (c, inf); kind "norm_gt" is
    {x : ||x|| > c} (absolute value for scalars).  c must be > 0 so the set
    stays bounded away from zero.
    """

    kind: str
    c: float

    def __post_init__(self) -> None:
        if self.kind not in ("half_line", "norm_gt"):
            raise InvalidSetError(f"unknown set kind {self.kind!r}")
        if not self.c > 0:
            raise InvalidSetError(f"set threshold must be > 0 (bounded away from zero), got {self.c}")

    def contains(self, entries: np.ndarray) -> np.ndarray:
        """Vectorized membership over block entries."""
        if self.kind == "half_line":
            if entries.ndim != 1:
                raise DomainError("half-line sets apply to scalar entries only")
            return entries > self.c
        mag = np.abs(entries) if entries.ndim == 1 else np.linalg.norm(entries, axis=1)
        return mag > self.c

    def to_dict(self) -> dict:
        return {"kind": self.kind, "c": self.c}

    @classmethod
    def from_dict(cls, d: dict) -> "SetSpec":
        return cls(kind=d["kind"], c=float(d["c"]))


def half_line(c: float) -> SetSpec:
    return SetSpec(kind="half_line", c=c)


def norm_ball_complement(c: float) -> SetSpec:
    return SetSpec(kind="norm_gt", c=c)


@dataclass(frozen=True)
class ClusterFunctional:
    """Named map from blocks to reals, invariant under the core operator."""

    name: str
    eval: Callable[[Block], float]

    def __call__(self, x) -> float:
        return float(self.eval(as_block(x)))


def make_sum_functional(phi: Callable[[float], float], name: str = "sum_phi") -> ClusterFunctional:
    """Entrywise sum f(x) = sum_i phi(x_i), requiring phi(0) = 0."""
    if phi(0.0) != 0.0:
        raise ContractViolationError("phi(0) must be 0 for a sum functional")

    def _eval(b: Block) -> float:
        if b.ndim != 1:
            raise DomainError("sum functionals apply to scalar entries only")
        return float(sum(phi(v) for v in b.tolist()))

    return ClusterFunctional(name=name, eval=_eval)


def make_max_functional(name: str = "max") -> ClusterFunctional:
    """Componentwise maximum over the block; entries must be nonnegative."""

    def _eval(b: Block) -> float:
        if np.any(b < 0):
            raise DomainError("max functional requires nonnegative entries")
        if b.ndim != 1:
            raise DomainError("max functional applies to scalar entries only")
        return float(np.max(b))

    return ClusterFunctional(name=name, eval=_eval)


def make_extremogram_functional(A: SetSpec, B: SetSpec, h: int) -> ClusterFunctional:
    """Lag-h pair count f(x_1..x_r) = #{i <= r-h : x_i in A, x_{i+h} in B}.

    With h >= r the sum is empty and the value is 0.  h = 0 counts single
    entries lying in both A and B.
    """
    if h < 0:
        raise ValueError(f"lag must be >= 0, got {h}")

    def _eval(b: Block) -> float:
        r = b.shape[0]
        if h >= r:
            return 0.0 if h > 0 else float(np.count_nonzero(A.contains(b) & B.contains(b)))
        if h == 0:
            return float(np.count_nonzero(A.contains(b) & B.contains(b)))
        in_a = A.contains(b[: r - h])
        in_b = B.contains(b[h:])
        return float(np.count_nonzero(in_a & in_b))

    return ClusterFunctional(name=f"pair_count[A={A.kind}>{A.c},B={B.kind}>{B.c},h={h}]", eval=_eval)
