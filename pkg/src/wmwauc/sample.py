"""Validated two-sample data and pooled mid-ranks."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.stats import rankdata

from .errors import EmptySample, NonFiniteValue, TooSmall


def _frozen_array(values: Sequence[float], name: str) -> np.ndarray:
    arr = np.array(values, dtype=np.float64).ravel()
    if arr.size == 0:
        raise EmptySample(name)
    bad = np.flatnonzero(~np.isfinite(arr))
    if bad.size:
        i = int(bad[0])
        raise NonFiniteValue(name, i, float(arr[i]))
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class TwoSampleData:
    """Two independent samples ``x`` and ``y``, in input order.

    Build instances through :func:`validate`; the arrays are read-only.
    """

    x: np.ndarray
    y: np.ndarray
    n1: int = field(init=False)
    n2: int = field(init=False)
    m: int = field(init=False)
    lambda_n: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "n1", int(self.x.size))
        object.__setattr__(self, "n2", int(self.y.size))
        object.__setattr__(self, "m", self.n1 * self.n2)
        object.__setattr__(self, "lambda_n", self.n1 / (self.n1 + self.n2))

    @property
    def n(self) -> int:
        return self.n1 + self.n2

    def require(self, min_n1: int = 2, min_n2: int = 2) -> None:
        """Raise :class:`TooSmall` unless ``n1 >= min_n1`` and ``n2 >= min_n2``."""
        if self.n1 < min_n1 or self.n2 < min_n2:
            raise TooSmall(
                f"need n1 >= {min_n1} and n2 >= {min_n2}, got n1={self.n1}, n2={self.n2}"
            )

    def swapped(self) -> "TwoSampleData":
        return TwoSampleData(self.y, self.x)

    def shifted(self, dx: float = 0.0, dy: float = 0.0) -> "TwoSampleData":
        return validate(self.x + dx, self.y + dy)


def validate(raw_x: Sequence[float], raw_y: Sequence[float]) -> TwoSampleData:
    """Check both samples are non-empty and finite.

    Size requirements for variance estimation are enforced by the variance
    routines themselves, so ``validate([1, 2], [3])`` succeeds.
    """
    x = _frozen_array(raw_x, "x")
    y = _frozen_array(raw_y, "y")
    return TwoSampleData(x, y)


@dataclass(frozen=True, eq=False)
class MidRankTable:
    combined_ranks_y: np.ndarray
    tie_group_sizes: np.ndarray
    combined_ranks_x: np.ndarray


def midranks(data: TwoSampleData) -> MidRankTable:
    """Mid-ranks of both samples within the pooled sample.

    Ties are detected by exact equality of the recorded values.
    """
    pooled = np.concatenate([data.x, data.y])
    ranks = rankdata(pooled, method="average")
    _, sizes = np.unique(pooled, return_counts=True)
    return MidRankTable(
        combined_ranks_y=ranks[data.n1:],
        tie_group_sizes=sizes,
        combined_ranks_x=ranks[: data.n1],
    )
