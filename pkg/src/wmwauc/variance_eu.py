"""Exact finite-sample unbiased variance of the empirical AUC.

Valid for any tie pattern. With ``M = n1*n2`` the estimator is

    var_tilde = a*v_hat + b*zeta1_hat_sq + c*zeta2_hat_sq

where the three summaries come from :func:`wmwauc.kernel.kernel_summaries`.
The default ``"exact"`` coefficients

    a = -(M-1)/(M(n1-1)(n2-1)),  b = n2/(n1(n2-1)),  c = n1/(n2(n1-1))

solve the unbiasedness system given

    E[zeta1_hat_sq] = zeta1_sq + var_psi/n2
    E[zeta2_hat_sq] = zeta2_sq + var_psi/n1
    E[v_hat]        = v - ((n2-1) zeta1_sq + (n1-1) zeta2_sq)/(M-1)

The ``"m-plus-one"`` coefficients ``a = -(M-1)/(M(M+1)), b = n2/(M+1),
c = n1/(M+1)`` agree to leading order only; they are kept for comparison
with existing software.

The module also carries exact-enumeration helpers for finite discrete
distributions, used by the test-suite to check unbiasedness.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import TooLarge
from .kernel import KernelSummaries, kernel_summaries_bruteforce
from .sample import TwoSampleData, validate


@dataclass(frozen=True)
class EuVariance:
    var_tilde: float
    a_coef: float
    b_coef: float
    c_coef: float
    var_final: float
    nu: float
    clamped: bool
    correction_applied: bool
    coefficients: str = "exact"
    warnings: tuple[str, ...] = field(default=())

    @property
    def degenerate(self) -> bool:
        return not self.var_final > 0.0


COEFFICIENTS = ("exact", "m-plus-one")


def eu_coefficients(n1: int, n2: int, coefficients: str = "exact") -> tuple[float, float, float]:
    """Return ``(a, b, c)`` for the kernel, row-mean and column-mean variances."""
    m = n1 * n2
    if coefficients == "exact":
        return (
            -(m - 1) / (m * (n1 - 1) * (n2 - 1)),
            n2 / (n1 * (n2 - 1)),
            n1 / (n2 * (n1 - 1)),
        )
    if coefficients == "m-plus-one":
        return -(m - 1) / (m * (m + 1)), n2 / (m + 1), n1 / (m + 1)
    raise ValueError(f"unknown coefficient set {coefficients!r}; expected one of {COEFFICIENTS}")


def _eu_nu(var: float, s: KernelSummaries, n1: int, n2: int, coefficients: str):
    m = n1 * n2
    fallback = float(n1 + n2 - 2)
    if n1 < 3 or n2 < 3:
        return fallback, f"n1, n2 >= 3 needed for EU degrees of freedom; using df = {fallback:g}"
    a, b, c = eu_coefficients(n1, n2, coefficients)
    t1, t2, t3 = b * s.zeta1_hat_sq, c * s.zeta2_hat_sq, -a * s.v_hat
    denom = t1 * t1 / (n1 - 2) + t2 * t2 / (n2 - 2) + t3 * t3 / (m - 3)
    if not denom > 0.0 or not var > 0.0:
        return fallback, f"degrees of freedom undefined; using df = {fallback:g}"
    return var * var / denom, None


def eu_df(ev: EuVariance, summaries: KernelSummaries, data: TwoSampleData) -> float:
    """Satterthwaite degrees of freedom with denominators n1-2, n2-2, M-3.

    The three components are ``b*zeta1_hat_sq``, ``c*zeta2_hat_sq`` and
    ``|a|*v_hat``. Scaling the variance and every component by one constant
    leaves the result unchanged, so it does not matter whether the corrected
    or the raw variance is plugged in. Falls back to ``n1 + n2 - 2`` when
    undefined.
    """
    return _eu_nu(ev.var_tilde, summaries, data.n1, data.n2, ev.coefficients)[0]


def eu_variance(
    summaries: KernelSummaries, data: TwoSampleData, coefficients: str = "exact"
) -> EuVariance:
    data.require(2, 2)
    n1, n2 = data.n1, data.n2
    a, b, c = eu_coefficients(n1, n2, coefficients)
    raw = a * summaries.v_hat + b * summaries.zeta1_hat_sq + c * summaries.zeta2_hat_sq
    warnings: list[str] = []
    clamped = raw < 0.0
    floored = 0.0 if clamped else raw
    if clamped:
        warnings.append(f"negative unbiased variance {raw:.6g} floored at 0")

    factor = 1.0 - 1.0 / n1 - 1.0 / n2
    if factor > 0.0:
        final = factor * floored
        applied = True
    else:
        final = floored
        applied = False
        warnings.append("second-order correction skipped: 1 - 1/n1 - 1/n2 <= 0")

    nu, note = _eu_nu(raw, summaries, n1, n2, coefficients)
    if note:
        warnings.append(note)
    return EuVariance(
        var_tilde=raw,
        a_coef=a,
        b_coef=b,
        c_coef=c,
        var_final=final,
        nu=nu,
        clamped=clamped,
        correction_applied=applied,
        coefficients=coefficients,
        warnings=tuple(warnings),
    )


# -- exact enumeration over finite discrete distributions -------------------


@dataclass(frozen=True)
class DiscreteDist:
    values: tuple[float, ...]
    probs: tuple[float, ...]

    def __post_init__(self):
        if len(self.values) != len(self.probs) or not self.values:
            raise ValueError("values and probs must be non-empty and equally long")
        if any(p < 0 for p in self.probs) or not math.isclose(math.fsum(self.probs), 1.0):
            raise ValueError("probs must be non-negative and sum to 1")

    @classmethod
    def uniform(cls, values: Sequence[float]) -> "DiscreteDist":
        k = len(values)
        return cls(tuple(float(v) for v in values), (1.0 / k,) * k)

    @classmethod
    def point(cls, value: float) -> "DiscreteDist":
        return cls((float(value),), (1.0,))


@dataclass(frozen=True)
class PopulationComponents:
    auc: float
    zeta1_sq: float
    zeta2_sq: float
    v: float
    var_psi: float

    def var_auc(self, n1: int, n2: int) -> float:
        """Finite-sample variance of the empirical AUC."""
        return (self.v + (n2 - 1) * self.zeta1_sq + (n1 - 1) * self.zeta2_sq) / (n1 * n2)


def population_components(dx: DiscreteDist, dy: DiscreteDist) -> PopulationComponents:
    """Hoeffding decomposition of the mid-rank kernel under ``(dx, dy)``."""
    xv = np.array(dx.values)[:, None]
    yv = np.array(dy.values)[None, :]
    px = np.array(dx.probs)
    py = np.array(dy.probs)
    h = (xv < yv) + 0.5 * (xv == yv)
    w = px[:, None] * py[None, :]
    auc = float((w * h).sum())
    phi1 = h @ py - auc
    phi2 = px @ h - auc
    psi = h - auc - phi1[:, None] - phi2[None, :]
    return PopulationComponents(
        auc=auc,
        zeta1_sq=float(px @ phi1**2),
        zeta2_sq=float(py @ phi2**2),
        v=float((w * (h - auc) ** 2).sum()),
        var_psi=float((w * psi**2).sum()),
    )


@dataclass(frozen=True)
class ExactMoments:
    var_auc: float
    mean_var_tilde: float
    mean_zeta1_hat_sq: float
    mean_zeta2_hat_sq: float
    mean_v_hat: float
    outcomes: int


def exact_variance_enumerator(
    dx: DiscreteDist,
    dy: DiscreteDist,
    n1: int,
    n2: int,
    coefficients: str = "exact",
    max_outcomes: int = 10**7,
) -> ExactMoments:
    """Exact moments by weighted enumeration of every ordered sample pair.

    Summaries are taken from the materialised kernel matrix, independently of
    the counting kernels used in production.
    """
    kx, ky = len(dx.values), len(dy.values)
    outcomes = kx**n1 * ky**n2
    if outcomes > max_outcomes:
        raise TooLarge(f"{outcomes} outcomes exceed the budget of {max_outcomes}")
    xs = list(itertools.product(range(kx), repeat=n1))
    ys = list(itertools.product(range(ky), repeat=n2))
    wx = [math.prod(dx.probs[i] for i in ix) for ix in xs]
    wy = [math.prod(dy.probs[j] for j in jy) for jy in ys]

    weights, a_hats, tildes, z1s, z2s, vs = [], [], [], [], [], []
    for ix, px in zip(xs, wx):
        if px == 0.0:
            continue
        xvals = [dx.values[i] for i in ix]
        for jy, py in zip(ys, wy):
            if py == 0.0:
                continue
            d = validate(xvals, [dy.values[j] for j in jy])
            s = kernel_summaries_bruteforce(d)
            weights.append(px * py)
            a_hats.append(s.a_hat)
            z1s.append(s.zeta1_hat_sq)
            z2s.append(s.zeta2_hat_sq)
            vs.append(s.v_hat)
            tildes.append(eu_variance(s, d, coefficients).var_tilde)

    def expect(vals):
        return math.fsum(w * v for w, v in zip(weights, vals))

    mean_a = expect(a_hats)
    return ExactMoments(
        var_auc=expect([(v - mean_a) ** 2 for v in a_hats]),
        mean_var_tilde=expect(tildes),
        mean_zeta1_hat_sq=expect(z1s),
        mean_zeta2_hat_sq=expect(z2s),
        mean_v_hat=expect(vs),
        outcomes=outcomes,
    )
