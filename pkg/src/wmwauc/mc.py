"""Deterministic Monte Carlo studies.

Replication ``r`` of a run seeded with ``seed`` draws from its own stream,
``SeedSequence(seed, spawn_key=(r,))``, so results do not depend on the
number of worker threads or on execution order. Per-replication outcomes are
stored by index and reduced with ``math.fsum``.

Normal variates come from NumPy's ``Generator.normal`` (ziggurat) on a PCG64
bit generator.
"""

from __future__ import annotations

import math
import os
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from typing import Optional

import numpy as np

from .inference import TestConfig, wmw_test
from .kernel import auc_fast
from .pseudomedian import pseudomedian_ci
from .sample import TwoSampleData, validate
from .tdist import pvalue

ESTIMANDS = ("auc-mean-sd", "type1-rate", "ci-coverage", "pseudomedian-coverage")


@dataclass(frozen=True)
class Dist:
    """Sampling distribution: normal, discretized-normal, uniform or point-mass."""

    kind: str
    params: tuple[float, ...]

    _ARITY = {"normal": 2, "discretized-normal": 3, "uniform": 2, "point-mass": 1}

    def __post_init__(self):
        if self.kind not in self._ARITY:
            raise ValueError(f"unknown distribution {self.kind!r}")
        if len(self.params) != self._ARITY[self.kind]:
            raise ValueError(f"{self.kind} takes {self._ARITY[self.kind]} parameters")
        if self.kind in ("normal", "discretized-normal") and not self.params[1] > 0:
            raise ValueError("sigma must be positive")
        if self.kind == "discretized-normal" and not self.params[2] > 0:
            raise ValueError("step must be positive")
        if self.kind == "uniform" and not self.params[0] < self.params[1]:
            raise ValueError("uniform needs lo < hi")

    @classmethod
    def parse(cls, text: str) -> "Dist":
        """Parse ``"normal(0, 0.1)"``-style specifications."""
        match = re.fullmatch(r"\s*([a-z-]+)\s*\(([^)]*)\)\s*", text)
        if not match:
            raise ValueError(f"cannot parse distribution {text!r}")
        params = tuple(float(p) for p in match.group(2).split(",") if p.strip())
        return cls(match.group(1), params)

    def __str__(self) -> str:
        return f"{self.kind}({', '.join(format(p, 'g') for p in self.params)})"

    @property
    def center(self) -> float:
        """Centre of symmetry; the true pseudomedian of a difference is the
        difference of centres when both generators are symmetric."""
        if self.kind == "uniform":
            return 0.5 * (self.params[0] + self.params[1])
        return self.params[0]

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        k, p = self.kind, self.params
        if k == "normal":
            return rng.normal(p[0], p[1], n)
        if k == "discretized-normal":
            return np.round(rng.normal(p[0], p[1], n) / p[2]) * p[2]
        if k == "uniform":
            return rng.uniform(p[0], p[1], n)
        return np.full(n, p[0])


@dataclass(frozen=True)
class SimConfig:
    n1: int
    n2: int
    reps: int
    seed: int
    gen_x: Dist
    gen_y: Dist
    estimand: str = "auc-mean-sd"
    compare_traditional: bool = False
    grid_k: int = 512

    def __post_init__(self):
        if self.reps < 1:
            raise ValueError("reps must be at least 1")
        if self.n1 < 1 or self.n2 < 1:
            raise ValueError("sample sizes must be positive")
        if self.estimand not in ESTIMANDS:
            raise ValueError(f"estimand must be one of {ESTIMANDS}")


@dataclass(frozen=True)
class SimSummary:
    estimand: str
    reps_done: int
    mean_a_hat: float
    sd_a_hat: float
    rate: Optional[float]  # rejection rate or coverage
    mc_standard_error: float
    comparison_rate: Optional[float] = None  # traditional F=G z-test, non-normative
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)


def gaussian_scale_variance(sigma1: float, sigma2: float) -> float:
    """Limit of ``n * Var(A_hat)`` for N(0, sigma1^2) vs N(0, sigma2^2), n1 = n2 = n.

    ``(arcsin(r1) + arcsin(r2)) / (2 pi)`` with ``r_i = sigma_i^2 / (sigma1^2 + sigma2^2)``;
    each arcsin term is the variance of one placement variable.
    """
    if not (sigma1 > 0 and sigma2 > 0):
        raise ValueError("sigmas must be positive")
    total = sigma1 * sigma1 + sigma2 * sigma2
    r1, r2 = sigma1 * sigma1 / total, sigma2 * sigma2 / total
    return (math.asin(r1) + math.asin(r2)) / (2.0 * math.pi)


def traditional_pvalue(data: TwoSampleData, a0: float = 0.5, alternative: str = "two-sided") -> float:
    """Normal approximation with the F = G variance ``(n1+n2+1)/(12 n1 n2)``.

    Comparison arm only: calibrated for F = G, not for AUC = a0 in general.
    """
    se = math.sqrt((data.n1 + data.n2 + 1) / (12.0 * data.m))
    return float(pvalue((auc_fast(data).a_hat - a0) / se, None, alternative))


def replication_rng(seed: int, r: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(r,)))


def _threads(threads: Optional[int]) -> int:
    if threads is None:
        threads = int(os.environ.get("WMW_THREADS", "0") or 0) or (os.cpu_count() or 1)
    return max(1, int(threads))


def _run(cfg: SimConfig, test_cfg: TestConfig, threads: Optional[int]):
    a_hat = np.empty(cfg.reps)
    hit = np.zeros(cfg.reps, dtype=bool)
    trad = np.zeros(cfg.reps, dtype=bool)
    width = np.full(cfg.reps, np.nan)
    truth_theta = cfg.gen_x.center - cfg.gen_y.center

    def one(r: int) -> None:
        rng = replication_rng(cfg.seed, r)
        d = validate(cfg.gen_x.sample(rng, cfg.n1), cfg.gen_y.sample(rng, cfg.n2))
        est = cfg.estimand
        if est == "auc-mean-sd":
            a_hat[r] = auc_fast(d).a_hat
            return
        if est == "pseudomedian-coverage":
            pm = pseudomedian_ci(d, test_cfg, cfg.grid_k)
            a_hat[r] = auc_fast(d).a_hat
            hit[r] = pm.ci_lo <= truth_theta <= pm.ci_hi
            width[r] = pm.ci_hi - pm.ci_lo
            return
        res = wmw_test(d, test_cfg)
        a_hat[r] = res.a_hat
        if est == "type1-rate":
            hit[r] = res.p_value < test_cfg.alpha
        else:
            hit[r] = res.ci_lo <= test_cfg.a0 <= res.ci_hi
            width[r] = res.ci_hi - res.ci_lo
        if cfg.compare_traditional:
            trad[r] = traditional_pvalue(d, test_cfg.a0, test_cfg.alternative) < test_cfg.alpha

    def block(bounds) -> None:
        for r in range(*bounds):
            one(r)

    k = min(_threads(threads), cfg.reps)
    edges = np.linspace(0, cfg.reps, k + 1).astype(int)
    blocks = list(zip(edges[:-1], edges[1:]))
    if k == 1:
        block(blocks[0])
    else:
        with ThreadPoolExecutor(max_workers=k) as pool:
            list(pool.map(block, blocks))
    return a_hat, hit, trad, width


def run_simulation(
    cfg: SimConfig, test_cfg: TestConfig | None = None, threads: Optional[int] = None
) -> SimSummary:
    """Run ``cfg.reps`` replications and summarise them.

    ``threads`` defaults to ``$WMW_THREADS`` or the CPU count; the summary is
    bit-identical for any value.
    """
    test_cfg = test_cfg or TestConfig()
    a_hat, hit, trad, width = _run(cfg, test_cfg, threads)
    reps = cfg.reps
    mean = math.fsum(a_hat) / reps
    sd = math.sqrt(math.fsum((a_hat - mean) ** 2) / (reps - 1)) if reps > 1 else 0.0
    extra = {}
    if cfg.estimand == "auc-mean-sd":
        rate = None
        mcse = sd / math.sqrt(reps)
    else:
        rate = int(hit.sum()) / reps
        mcse = math.sqrt(rate * (1.0 - rate) / reps)
        if cfg.estimand != "type1-rate":
            extra["mean_ci_width"] = math.fsum(width) / reps
    return SimSummary(
        estimand=cfg.estimand,
        reps_done=reps,
        mean_a_hat=mean,
        sd_a_hat=sd,
        rate=rate,
        mc_standard_error=mcse,
        comparison_rate=int(trad.sum()) / reps if cfg.compare_traditional else None,
        extra=extra,
    )


def coverage_study(
    cfg: SimConfig, test_cfg: TestConfig | None = None, threads: Optional[int] = None
) -> SimSummary:
    """Type-I error or coverage study; ``cfg.estimand`` picks which.

    For ``ci-coverage`` the target is ``test_cfg.a0``, which must be the true
    AUC of the generators. For ``pseudomedian-coverage`` it is the difference
    of the generators' centres, valid for symmetric generators.
    """
    if cfg.estimand == "auc-mean-sd":
        raise ValueError("coverage_study needs a rate estimand")
    return run_simulation(cfg, test_cfg, threads)


PRESETS: dict[str, SimConfig] = {
    "paper-s2": SimConfig(
        1000, 1000, 10_000, 20_251_019,
        Dist("normal", (0.0, 0.1)), Dist("normal", (0.0, 3.0)), "auc-mean-sd",
    ),
    "equal-normals": SimConfig(
        50, 50, 5_000, 20_251_019,
        Dist("normal", (0.0, 1.0)), Dist("normal", (0.0, 1.0)), "type1-rate",
    ),
    "unequal-scales": SimConfig(
        100, 100, 5_000, 20_251_019,
        Dist("normal", (0.0, 0.1)), Dist("normal", (0.0, 3.0)), "type1-rate",
        compare_traditional=True,
    ),
    "tied-normals": SimConfig(
        50, 50, 5_000, 20_251_019,
        Dist("discretized-normal", (0.0, 1.0, 0.5)), Dist("discretized-normal", (0.0, 1.0, 0.5)),
        "type1-rate",
    ),
    "shifted-normals": SimConfig(
        100, 100, 1_000, 20_251_019,
        Dist("normal", (1.0, 1.0)), Dist("normal", (0.0, 1.0)), "pseudomedian-coverage",
    ),
}


def preset(name: str, **overrides) -> SimConfig:
    try:
        base = PRESETS[name]
    except KeyError:
        raise KeyError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None
    overrides = {k: v for k, v in overrides.items() if v is not None}
    return replace(base, **overrides) if overrides else base
