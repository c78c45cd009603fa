"""Bias-corrected variance for continuous (tie-free) data.

Placement-based estimates of the two projection variances, centred at the
hypothesised AUC, each inflated by the plug-in estimate of its first-order
downward bias. They are combined Welch-style with Satterthwaite degrees of
freedom, and the combination is shrunk by ``1 - 1/n1 - 1/n2``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import TiesPresent
from .kernel import placements
from .sample import TwoSampleData


@dataclass(frozen=True)
class BcVariance:
    zeta1_hat_sq: float
    zeta2_hat_sq: float
    zeta1_star_sq: float
    zeta2_star_sq: float
    omega1: float
    omega2: float
    sigma_adj_sq: float
    sigma_final_sq: float
    df: float
    correction_applied: bool
    degenerate: bool
    warnings: tuple[str, ...] = field(default=())


def _require_tie_free(data: TwoSampleData) -> None:
    if np.intersect1d(data.x, data.y).size:
        raise TiesPresent("ties present: BC requires continuous data")


def bc_components(data: TwoSampleData, a0: float):
    """Return ``(zeta1_hat_sq, zeta2_hat_sq, omega1, omega2)``."""
    data.require(2, 2)
    _require_tie_free(data)
    p = placements(data)
    g, f = p.g_at_x, p.f_at_y
    z1 = float(np.sum((g - (1.0 - a0)) ** 2) / (data.n1 - 1))
    z2 = float(np.sum((f - a0) ** 2) / (data.n2 - 1))
    w1 = float(np.mean(g * (1.0 - g)))
    w2 = float(np.mean(f * (1.0 - f)))
    return z1, z2, w1, w2


def bc_variance(data: TwoSampleData, a0: float) -> BcVariance:
    z1, z2, w1, w2 = bc_components(data, a0)
    n1, n2, lam = data.n1, data.n2, data.lambda_n
    z1s = z1 + w1 / n2
    z2s = z2 + w2 / n1
    t1 = z1s / lam
    t2 = z2s / (1.0 - lam)
    sigma_adj = t1 + t2
    warnings: list[str] = []

    denom = t1 * t1 / (n1 - 1) + t2 * t2 / (n2 - 1)
    degenerate = sigma_adj <= 0.0
    if denom > 0.0:
        df = sigma_adj * sigma_adj / denom
    else:
        df = float(n1 + n2 - 2)
    if degenerate:
        warnings.append("degenerate variance: all placement values constant")

    factor = 1.0 - 1.0 / n1 - 1.0 / n2
    if factor > 0.0:
        sigma_final = factor * sigma_adj
        applied = True
    else:
        sigma_final = sigma_adj
        applied = False
        warnings.append(
            "higher-order correction skipped: 1 - 1/n1 - 1/n2 <= 0"
        )
    return BcVariance(
        zeta1_hat_sq=z1,
        zeta2_hat_sq=z2,
        zeta1_star_sq=z1s,
        zeta2_star_sq=z2s,
        omega1=w1,
        omega2=w2,
        sigma_adj_sq=sigma_adj,
        sigma_final_sq=sigma_final,
        df=df,
        correction_applied=applied,
        degenerate=degenerate,
        warnings=tuple(warnings),
    )
