"""NumPy implementation of the counting kernels.

Used when the compiled extension is unavailable or ``WMWAUC_PURE_PYTHON``
is set. Must stay numerically interchangeable with ``_ckernels.pyx``: the
integer outputs are identical, the float outputs agree to rounding.
"""

from __future__ import annotations

import numpy as np

BACKEND = "python"


def kernel_counts(xs: np.ndarray, ys: np.ndarray):
    """Mid-rank kernel sums for sorted ``xs`` and ``ys``.

    Returns ``(row_twice, col_twice, n_less, n_equal)`` where
    ``row_twice[i] = 2*#{y > xs[i]} + #{y == xs[i]}``,
    ``col_twice[j] = 2*#{x < ys[j]} + #{x == ys[j]}``, and the two scalars
    count strict and tied cross-sample pairs.
    """
    n2 = ys.size
    y_lo = np.searchsorted(ys, xs, side="left")
    y_hi = np.searchsorted(ys, xs, side="right")
    x_lo = np.searchsorted(xs, ys, side="left")
    x_hi = np.searchsorted(xs, ys, side="right")
    row_twice = 2 * n2 - y_lo - y_hi
    col_twice = x_lo + x_hi
    n_less = int(x_lo.sum())
    n_equal = int((x_hi - x_lo).sum())
    return row_twice.astype(np.int64), col_twice.astype(np.int64), n_less, n_equal


def moments_from_counts(row_twice, col_twice, n_less, n_equal):
    """``(a_hat, zeta1_sq, zeta2_sq, v_hat)`` from the integer kernel sums."""
    n1 = row_twice.size
    n2 = col_twice.size
    m = n1 * n2
    s1 = 2 * n_less + n_equal
    a_hat = s1 / (2.0 * m)
    if n1 > 1:
        d = (n1 * row_twice - s1).astype(np.float64)
        z1 = float(d @ d) / (4.0 * m * m * (n1 - 1))
    else:
        z1 = float("nan")
    if n2 > 1:
        d = (n2 * col_twice - s1).astype(np.float64)
        z2 = float(d @ d) / (4.0 * m * m * (n2 - 1))
    else:
        z2 = float("nan")
    if m > 1:
        # 2*h takes values 0, 1, 2; summing per class avoids cancellation
        mu = s1 / m
        n_zero = m - n_less - n_equal
        ss = n_zero * mu * mu + n_equal * (1.0 - mu) ** 2 + n_less * (2.0 - mu) ** 2
        v = ss / (4.0 * (m - 1))
    else:
        v = float("nan")
    return a_hat, z1, z2, v


def shift_grid(xs: np.ndarray, ys: np.ndarray, shifts: np.ndarray):
    """Kernel moments of ``(xs, ys + t)`` for every ``t`` in ``shifts``."""
    k = shifts.size
    out = np.empty((4, k), dtype=np.float64)
    for i in range(k):
        counts = kernel_counts(xs, ys + shifts[i])
        out[:, i] = moments_from_counts(*counts)
    return out[0], out[1], out[2], out[3]
