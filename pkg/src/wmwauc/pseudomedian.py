"""Hodges-Lehmann pseudomedian and its confidence interval by test inversion.

A candidate shift ``theta0`` is accepted when the EU test of
``AUC(x, y + theta0) = 0.5`` does not reject at level ``alpha``. Candidates
are scanned on an equally spaced grid over ``theta_hat +/- 3s`` with
``s = 2 * MAD`` of the pairwise differences; the outermost accepted grid
points are then refined by bisection on the p-value crossing.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

import numpy as np

from ._backend import kernels
from .inference import TestConfig, eu_pvalues_from_moments
from .sample import TwoSampleData

ZERO_SCALE = "ZeroScale: pairwise differences have zero MAD; interval is degenerate"
EMPTY_ACCEPTANCE = "EmptyAcceptance: no grid point accepted; interval is degenerate"


@dataclass(frozen=True)
class PseudomedianResult:
    theta_hat: float
    ci_lo: float
    ci_hi: float
    alpha: float
    scale: float
    grid_k: int
    search_lo: float
    search_hi: float
    n_accepted: int
    refined: bool
    warnings: tuple[str, ...] = field(default=())

    def to_dict(self) -> dict:
        d = asdict(self)
        d["warnings"] = list(self.warnings)
        return d


def pairwise_differences(data: TwoSampleData) -> np.ndarray:
    return (data.x[:, None] - data.y[None, :]).ravel()


def pseudomedian_estimate(data: TwoSampleData) -> float:
    """Median of all ``n1*n2`` differences ``x_i - y_j``."""
    return float(np.median(pairwise_differences(data)))


def mad_scale(data: TwoSampleData) -> float:
    """Twice the raw (unscaled) MAD of the pairwise differences."""
    d = pairwise_differences(data)
    return 2.0 * float(np.median(np.abs(d - np.median(d))))


class _Inverter:
    def __init__(self, data: TwoSampleData, cfg: TestConfig):
        self.xs = np.ascontiguousarray(np.sort(data.x))
        self.ys = np.ascontiguousarray(np.sort(data.y))
        self.n1, self.n2 = data.n1, data.n2
        self.coefficients = cfg.eu_coefficients

    def pvalues(self, shifts: np.ndarray) -> np.ndarray:
        moments = kernels.shift_grid(self.xs, self.ys, np.ascontiguousarray(shifts, dtype=np.float64))
        return eu_pvalues_from_moments(*moments, self.n1, self.n2, 0.5, self.coefficients)

    def pvalue(self, shift: float) -> float:
        return float(self.pvalues(np.array([shift]))[0])

    def crossing(self, inside: float, outside: float, alpha: float, tol: float) -> float:
        # keeps `inside` accepted and `outside` rejected
        while abs(outside - inside) > tol:
            mid = 0.5 * (inside + outside)
            if mid == inside or mid == outside:
                break
            if self.pvalue(mid) >= alpha:
                inside = mid
            else:
                outside = mid
        return inside


def pseudomedian_ci(
    data: TwoSampleData, cfg: TestConfig | None = None, grid_k: int = 512
) -> PseudomedianResult:
    """Confidence interval for the pseudomedian at level ``1 - cfg.alpha``.

    Only ``alpha`` and ``eu_coefficients`` are read from ``cfg``; the inner
    test is always the two-sided EU test of AUC = 0.5, because shifting can
    create exact ties.
    """
    cfg = cfg or TestConfig()
    data.require(3, 3)
    if grid_k < 3:
        raise ValueError(f"grid_k must be at least 3, got {grid_k}")
    theta = pseudomedian_estimate(data)
    s = mad_scale(data)
    lo_s, hi_s = theta - 3.0 * s, theta + 3.0 * s

    def degenerate(note, n_acc=0):
        return PseudomedianResult(theta, theta, theta, cfg.alpha, s, grid_k, lo_s, hi_s,
                                  n_acc, False, (note,))

    if s == 0.0:
        return degenerate(ZERO_SCALE)

    inv = _Inverter(data, cfg)
    grid = np.linspace(lo_s, hi_s, grid_k)
    p = inv.pvalues(grid)
    accepted = np.flatnonzero(p >= cfg.alpha)
    if accepted.size == 0:
        return degenerate(EMPTY_ACCEPTANCE)

    i_lo, i_hi = int(accepted[0]), int(accepted[-1])
    tol = max(1e-6 * s, 1e-12)
    warnings = []
    refined = False
    ci_lo, ci_hi = float(grid[i_lo]), float(grid[i_hi])
    if i_lo > 0:
        ci_lo = inv.crossing(ci_lo, float(grid[i_lo - 1]), cfg.alpha, tol)
        refined = True
    else:
        warnings.append("acceptance region reaches the lower end of the search range")
    if i_hi < grid_k - 1:
        ci_hi = inv.crossing(ci_hi, float(grid[i_hi + 1]), cfg.alpha, tol)
        refined = True
    else:
        warnings.append("acceptance region reaches the upper end of the search range")
    if np.any(p[i_lo:i_hi + 1] < cfg.alpha):
        warnings.append("acceptance region has interior gaps; reporting its outer hull")
    return PseudomedianResult(theta, ci_lo, ci_hi, cfg.alpha, s, grid_k, lo_s, hi_s,
                              int(accepted.size), refined, tuple(warnings))
