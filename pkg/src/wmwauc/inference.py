"""Tests of H0: AUC = A0 and confidence intervals for the AUC.

Three variance routes are available:

``eu``        exact unbiased variance from the mid-rank kernel (any data;
              the default, also selected by ``auto``)
``bc``        bias-corrected placement variance (tie-free data only)
``plugin-z``  asymptotic plug-in variance with normal quantiles
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import TiesPresent
from .kernel import kernel_summaries
from .sample import TwoSampleData, validate
from .tdist import pvalue, t_quantile
from .variance_bc import bc_variance
from .variance_eu import COEFFICIENTS, eu_coefficients, eu_variance

METHODS = ("auto", "eu", "bc", "plugin-z")
ALTERNATIVES = ("two-sided", "less", "greater")

DEGENERATE = "degenerate variance: standard error is zero"


@dataclass(frozen=True)
class TestConfig:
    a0: float = 0.5
    alpha: float = 0.05
    method: str = "auto"
    alternative: str = "two-sided"
    eu_coefficients: str = "exact"

    __test__ = False  # not a pytest class

    def __post_init__(self):
        if not 0.0 <= self.a0 <= 1.0:
            raise ValueError(f"a0 must lie in [0, 1], got {self.a0}")
        if not 0.0 < self.alpha < 1.0:
            raise ValueError(f"alpha must lie in (0, 1), got {self.alpha}")
        if self.method not in METHODS:
            raise ValueError(f"method must be one of {METHODS}, got {self.method!r}")
        if self.alternative not in ALTERNATIVES:
            raise ValueError(f"alternative must be one of {ALTERNATIVES}, got {self.alternative!r}")
        if self.eu_coefficients not in COEFFICIENTS:
            raise ValueError(f"eu_coefficients must be one of {COEFFICIENTS}")


@dataclass(frozen=True)
class TestResult:
    a_hat: float
    se: float
    df: Optional[float]  # None: standard normal reference
    statistic: float
    p_value: float
    ci_lo: float
    ci_hi: float
    method: str
    a0: float
    alpha: float
    alternative: str
    n1: int
    n2: int
    has_cross_ties: bool
    warnings: tuple[str, ...] = field(default=())

    __test__ = False

    @property
    def ci(self) -> tuple[float, float]:
        return self.ci_lo, self.ci_hi

    def to_dict(self) -> dict:
        d = asdict(self)
        d["warnings"] = list(self.warnings)
        return d


def _finish(a_hat, se, df, cfg: TestConfig, method, data, ties, warnings) -> TestResult:
    warnings = list(warnings)
    if se > 0.0:
        stat = (a_hat - cfg.a0) / se
        p = float(pvalue(stat, df, cfg.alternative))
        q = t_quantile(1.0 - cfg.alpha / 2.0, df)
        lo, hi = a_hat - q * se, a_hat + q * se
    else:
        # limit of the t statistic as se -> 0
        diff = a_hat - cfg.a0
        stat = 0.0 if diff == 0 else math.copysign(math.inf, diff)
        if diff == 0:
            p = 1.0
        elif cfg.alternative == "two-sided":
            p = 0.0
        else:
            p = float(pvalue(stat, None, cfg.alternative))
        lo = hi = a_hat
        warnings.append(DEGENERATE)
    if lo < 0.0 or hi > 1.0:
        warnings.append(f"confidence interval clamped to [0, 1] from [{lo:.17g}, {hi:.17g}]")
        lo, hi = max(lo, 0.0), min(hi, 1.0)
    return TestResult(
        a_hat=a_hat,
        se=se,
        df=df,
        statistic=stat,
        p_value=min(max(p, 0.0), 1.0),
        ci_lo=lo,
        ci_hi=hi,
        method=method,
        a0=cfg.a0,
        alpha=cfg.alpha,
        alternative=cfg.alternative,
        n1=data.n1,
        n2=data.n2,
        has_cross_ties=ties,
        warnings=tuple(warnings),
    )


def wmw_test(data: TwoSampleData, cfg: TestConfig | None = None, **overrides) -> TestResult:
    """Test H0: AUC = a0 for ``P(X < Y) + P(X = Y)/2``.

    Keyword overrides are applied on top of ``cfg`` (or the defaults), e.g.
    ``wmw_test(data, a0=0.6, method="bc")``.
    """
    cfg = cfg or TestConfig()
    if overrides:
        cfg = TestConfig(**{**asdict(cfg), **overrides})
    data.require(2, 2)
    method = "eu" if cfg.method == "auto" else cfg.method
    s = kernel_summaries(data)
    ties = s.has_cross_ties

    if method == "eu":
        ev = eu_variance(s, data, cfg.eu_coefficients)
        return _finish(s.a_hat, math.sqrt(ev.var_final), ev.nu, cfg, "eu", data, ties, ev.warnings)

    if method == "bc":
        if ties:
            raise TiesPresent("ties present: BC requires continuous data")
        bv = bc_variance(data, cfg.a0)
        se = math.sqrt(bv.sigma_final_sq / data.n)
        return _finish(s.a_hat, se, bv.df, cfg, "bc", data, ties, bv.warnings)

    lam = data.lambda_n
    sigma_sq = s.zeta1_hat_sq / lam + s.zeta2_hat_sq / (1.0 - lam)
    se = math.sqrt(sigma_sq / data.n)
    return _finish(s.a_hat, se, None, cfg, "plugin-z", data, ties, ())


def wmw_pvalue(x: Sequence[float], y: Sequence[float], a0: float = 0.5, **kw) -> float:
    """P-value from the bias-corrected method; continuous data only."""
    return wmw_test(validate(x, y), TestConfig(a0=a0, method="bc", **kw)).p_value


def wmw_pvalue_ties(x: Sequence[float], y: Sequence[float], a0: float = 0.5, **kw) -> float:
    """P-value from the exact unbiased method; any data."""
    return wmw_test(validate(x, y), TestConfig(a0=a0, method="eu", **kw)).p_value


def eu_pvalues_from_moments(a_hat, z1, z2, v, n1: int, n2: int, a0: float = 0.5,
                            coefficients: str = "exact"):
    """Vectorised two-sided EU p-values from kernel moments.

    Mirrors ``wmw_test(..., method="eu")`` element-wise, including the
    degenerate-variance rule and the ``n1 + n2 - 2`` fallback for the
    degrees of freedom.
    """
    a_hat, z1, z2, v = (np.asarray(t, dtype=np.float64) for t in (a_hat, z1, z2, v))
    m = n1 * n2
    a, b, c = eu_coefficients(n1, n2, coefficients)
    raw = a * v + b * z1 + c * z2
    factor = 1.0 - 1.0 / n1 - 1.0 / n2
    var = np.maximum(raw, 0.0) * (factor if factor > 0.0 else 1.0)
    fallback = float(n1 + n2 - 2)
    if n1 >= 3 and n2 >= 3:
        t1, t2, t3 = b * z1, c * z2, -a * v
        denom = t1 * t1 / (n1 - 2) + t2 * t2 / (n2 - 2) + t3 * t3 / (m - 3)
        ok = (denom > 0.0) & (raw > 0.0)
        with np.errstate(divide="ignore", invalid="ignore"):
            nu = np.where(ok, raw * raw / np.where(ok, denom, 1.0), fallback)
    else:
        nu = np.full_like(raw, fallback)
    se = np.sqrt(var)
    diff = a_hat - a0
    with np.errstate(divide="ignore", invalid="ignore"):
        stat = np.where(se > 0.0, diff / np.where(se > 0.0, se, 1.0), 0.0)
    p = np.asarray(pvalue(stat, nu, "two-sided"), dtype=np.float64)
    return np.where(se > 0.0, p, np.where(diff == 0.0, 1.0, 0.0))
