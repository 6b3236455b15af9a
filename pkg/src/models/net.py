#!/usr/bin/env python3
"""
Models for the correspondence between FIN_k and nets of the positive
sphere of c_0.
"""

from typing import Any, Dict, List, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class NetParams(BaseModel):
    """
    The triple (k, delta, eps) with eps = 1/(1+delta).

    The grid levels are delta_i = eps^(k-i) for i = 0..k; a coordinate
    with grid value eps^(k-i) corresponds to the coefficient i.
    """
    model_config = ConfigDict(frozen=True)

    k: int = Field(..., ge=1)
    delta: float = Field(..., gt=0.0, le=1.0)
    tolerance: float = 1e-12

    @model_validator(mode="after")
    def _check_least_k(self) -> "NetParams":
        if self.eps ** (self.k - 1) > self.delta + self.tolerance:
            raise ValueError(f"eps^(k-1) = {self.eps ** (self.k - 1)} exceeds delta = {self.delta}")
        if self.k >= 2 and self.eps ** (self.k - 2) <= self.delta - self.tolerance:
            raise ValueError(f"k = {self.k} is not the least level for delta = {self.delta}")
        return self

    @property
    def eps(self) -> float:
        return 1.0 / (1.0 + self.delta)

    @property
    def levels(self) -> Tuple[float, ...]:
        return tuple(self.eps ** (self.k - i) for i in range(self.k + 1))

    def grid(self) -> np.ndarray:
        """Admissible coordinate values: 0 and eps^(k-1), ..., eps, 1."""
        return np.array([0.0] + [self.eps ** (self.k - i) for i in range(1, self.k + 1)])

    def to_json(self) -> Dict[str, Any]:
        return {"k": self.k, "delta": self.delta, "eps": self.eps}


class PositiveVector(BaseModel):
    """
    A finite-dimensional vector with nonnegative real entries.
    """
    model_config = ConfigDict(frozen=True)

    entries: Tuple[float, ...]

    @field_validator("entries", mode="before")
    @classmethod
    def _as_floats(cls, value: Any) -> Tuple[float, ...]:
        return tuple(float(x) for x in np.asarray(value, dtype=float).ravel())

    @field_validator("entries")
    @classmethod
    def _check_nonnegative(cls, value: Tuple[float, ...]) -> Tuple[float, ...]:
        for index, x in enumerate(value):
            if x < 0.0:
                raise ValueError(f"entry {index} is negative: {x}")
        return value

    @property
    def dim(self) -> int:
        return len(self.entries)

    @property
    def norm(self) -> float:
        """Sup norm; 0 for the empty vector."""
        return max(self.entries, default=0.0)

    def on_sphere(self, tolerance: float = 1e-9) -> bool:
        return abs(self.norm - 1.0) <= tolerance

    def as_array(self) -> np.ndarray:
        return np.array(self.entries, dtype=float)

    def support(self) -> Tuple[int, ...]:
        return tuple(n for n, x in enumerate(self.entries) if x != 0.0)

    def to_json(self) -> List[float]:
        return list(self.entries)


class LevelIntervals(BaseModel):
    """
    Cut points gamma_0 = 0 < gamma_1 < ... < gamma_k < gamma_{k+1} = 1.
    I_i = [gamma_i, gamma_{i+1}) for i < k and I_k = [gamma_k, 1].
    """
    model_config = ConfigDict(frozen=True)

    k: int = Field(..., ge=1)
    gammas: Tuple[float, ...]

    @model_validator(mode="after")
    def _check_cuts(self) -> "LevelIntervals":
        if len(self.gammas) != self.k + 2:
            raise ValueError(f"expected {self.k + 2} cut points, got {len(self.gammas)}")
        if self.gammas[0] != 0.0 or self.gammas[-1] != 1.0:
            raise ValueError("cut points must start at 0 and end at 1")
        if any(a >= b for a, b in zip(self.gammas, self.gammas[1:])):
            raise ValueError("cut points must increase strictly")
        return self

    def interval(self, i: int) -> Tuple[float, float]:
        return self.gammas[i], self.gammas[i + 1]

    def contains(self, i: int, value: float) -> bool:
        low, high = self.interval(i)
        if i == self.k:
            return low <= value <= high
        return low <= value < high

    def index(self, values: np.ndarray) -> np.ndarray:
        """Interval index of every entry of values, which must lie in [0, 1]."""
        return np.searchsorted(np.array(self.gammas[1:self.k + 1]), values, side="right")


class NetReport(BaseModel):
    """
    Result of a Monte-Carlo net check.
    """
    k: int
    delta: float
    eps: float
    gammas: List[float]
    dim: int
    samples: int
    seed: int = 0
    max_distance: float
    within_delta: bool

    def to_json(self) -> Dict[str, Any]:
        return {
            "k": self.k,
            "delta": self.delta,
            "eps": self.eps,
            "gammas": self.gammas,
            "dim": self.dim,
            "samples": self.samples,
            "seed": self.seed,
            "max_distance": self.max_distance,
            "within_delta": self.within_delta,
        }
