"""Empirical AUC, placement values and kernel-matrix summaries.

The mid-rank kernel is ``h(x, y) = 1{x < y} + 0.5 * 1{x == y}``. Production
paths never materialise the ``n1 x n2`` kernel matrix; they count strict and
tied pairs over the sorted samples. The ``*_bruteforce`` functions walk the
full matrix and exist as reference implementations.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._backend import kernels, moments_from_counts
from .sample import TwoSampleData, midranks


@dataclass(frozen=True)
class AucEstimate:
    a_hat: float
    has_cross_ties: bool
    m: int


@dataclass(frozen=True, eq=False)
class Placements:
    g_at_x: np.ndarray  # fraction of y at or below each x
    f_at_y: np.ndarray  # fraction of x at or below each y


@dataclass(frozen=True, eq=False)
class KernelSummaries:
    a_hat: float
    row_means: np.ndarray
    col_means: np.ndarray
    v_hat: float
    zeta1_hat_sq: float
    zeta2_hat_sq: float
    n_equal: int

    @property
    def has_cross_ties(self) -> bool:
        return self.n_equal > 0


def auc_bruteforce(data: TwoSampleData) -> AucEstimate:
    total = 0.0
    ties = False
    ys = data.y.tolist()
    for xi in data.x.tolist():
        for yj in ys:
            if xi < yj:
                total += 1.0
            elif xi == yj:
                total += 0.5
                ties = True
    return AucEstimate(total / data.m, ties, data.m)


def auc_fast(data: TwoSampleData) -> AucEstimate:
    """Empirical AUC from the pooled mid-rank sum of ``y``."""
    table = midranks(data)
    n2 = data.n2
    u = float(np.sum(table.combined_ranks_y)) - n2 * (n2 + 1) / 2.0
    ties = bool(np.intersect1d(data.x, data.y).size)
    return AucEstimate(u / data.m, ties, data.m)


def placements(data: TwoSampleData) -> Placements:
    xs = np.sort(data.x)
    ys = np.sort(data.y)
    g = np.searchsorted(ys, data.x, side="right") / data.n2
    f = np.searchsorted(xs, data.y, side="right") / data.n1
    return Placements(g, f)


def _sorted_counts(data: TwoSampleData):
    ox = np.argsort(data.x, kind="stable")
    oy = np.argsort(data.y, kind="stable")
    xs = np.ascontiguousarray(data.x[ox])
    ys = np.ascontiguousarray(data.y[oy])
    row_s, col_s, n_less, n_equal = kernels.kernel_counts(xs, ys)
    row = np.empty_like(row_s)
    col = np.empty_like(col_s)
    row[ox] = row_s
    col[oy] = col_s
    return row, col, n_less, n_equal


def kernel_summaries(data: TwoSampleData) -> KernelSummaries:
    """Row/column means of the kernel matrix and their sample variances.

    All three variances are centred at the empirical AUC; ``v_hat`` uses
    divisor ``M - 1``, the row and column variances ``n1 - 1`` and ``n2 - 1``.
    """
    data.require(2, 2)
    row, col, n_less, n_equal = _sorted_counts(data)
    a_hat, z1, z2, v = moments_from_counts(row, col, n_less, n_equal)
    return KernelSummaries(
        a_hat=a_hat,
        row_means=row / (2.0 * data.n2),
        col_means=col / (2.0 * data.n1),
        v_hat=v,
        zeta1_hat_sq=z1,
        zeta2_hat_sq=z2,
        n_equal=n_equal,
    )


def kernel_matrix(data: TwoSampleData) -> np.ndarray:
    x = data.x[:, None]
    y = data.y[None, :]
    return (x < y) + 0.5 * (x == y)


def kernel_summaries_bruteforce(data: TwoSampleData) -> KernelSummaries:
    """Direct definitions over the materialised kernel matrix."""
    data.require(2, 2)
    h = kernel_matrix(data)
    a = h.mean()
    rows = h.mean(axis=1)
    cols = h.mean(axis=0)
    return KernelSummaries(
        a_hat=float(a),
        row_means=rows,
        col_means=cols,
        v_hat=float(((h - a) ** 2).sum() / (data.m - 1)),
        zeta1_hat_sq=float(((rows - a) ** 2).sum() / (data.n1 - 1)),
        zeta2_hat_sq=float(((cols - a) ** 2).sum() / (data.n2 - 1)),
        n_equal=int((h == 0.5).sum()),
    )
