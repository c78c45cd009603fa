"""Wilcoxon-Mann-Whitney inference for H0: AUC = A0.

The empirical AUC ``P(X < Y) + P(X = Y)/2`` is tested against a hypothesised
value with a tie-robust exact unbiased variance (default) or a bias-corrected
variance for continuous data. Also provides pseudomedian confidence intervals
by test inversion and a deterministic Monte Carlo laboratory.
"""

__version__ = "0.1.0"

from ._backend import BACKEND
from .errors import (
    DataError,
    EmptySample,
    NonFiniteValue,
    TiesPresent,
    TooLarge,
    TooSmall,
    WmwError,
)
from .inference import TestConfig, TestResult, wmw_pvalue, wmw_pvalue_ties, wmw_test
from .kernel import (
    AucEstimate,
    KernelSummaries,
    Placements,
    auc_bruteforce,
    auc_fast,
    kernel_summaries,
    placements,
)
from .mc import SimConfig, SimSummary, coverage_study, gaussian_scale_variance, run_simulation
from .pseudomedian import PseudomedianResult, mad_scale, pseudomedian_ci, pseudomedian_estimate
from .sample import MidRankTable, TwoSampleData, midranks, validate
from .tdist import pvalue, t_cdf, t_quantile
from .variance_bc import BcVariance, bc_components, bc_variance
from .variance_eu import EuVariance, eu_df, eu_variance

__all__ = [
    "BACKEND",
    "AucEstimate",
    "BcVariance",
    "DataError",
    "EmptySample",
    "EuVariance",
    "KernelSummaries",
    "MidRankTable",
    "NonFiniteValue",
    "Placements",
    "PseudomedianResult",
    "SimConfig",
    "SimSummary",
    "TestConfig",
    "TestResult",
    "TiesPresent",
    "TooLarge",
    "TooSmall",
    "TwoSampleData",
    "WmwError",
    "auc_bruteforce",
    "auc_fast",
    "bc_components",
    "bc_variance",
    "coverage_study",
    "eu_df",
    "eu_variance",
    "gaussian_scale_variance",
    "kernel_summaries",
    "mad_scale",
    "midranks",
    "placements",
    "pseudomedian_ci",
    "pseudomedian_estimate",
    "pvalue",
    "run_simulation",
    "t_cdf",
    "t_quantile",
    "validate",
    "wmw_pvalue",
    "wmw_pvalue_ties",
    "wmw_test",
]
