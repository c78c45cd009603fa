"""Student t and normal distribution functions used for p-values and CIs."""

from __future__ import annotations

import math

import numpy as np
from scipy.optimize import brentq
from scipy.special import betainc, ndtr, ndtri

NORMAL = None  # df value meaning "use the standard normal"


def t_cdf(t, df):
    """Student t CDF for real ``df > 0`` via the regularized incomplete beta.

    Accepts scalars or arrays. ``df=None`` or ``df=inf`` gives the normal CDF.
    """
    if df is NORMAL or np.all(np.isinf(df)):
        out = ndtr(t)
        return float(out) if np.ndim(out) == 0 else out
    t = np.asarray(t, dtype=np.float64)
    df = np.asarray(df, dtype=np.float64)
    t2 = t * t
    with np.errstate(divide="ignore", invalid="ignore"):
        # P(T > |t|) = I_{df/(df+t^2)}(df/2, 1/2) / 2, small when t^2 >= df
        tail = 0.5 * betainc(0.5 * df, 0.5, df / (df + t2))
        # P(0 < T < |t|) = I_{t^2/(df+t^2)}(1/2, df/2) / 2, accurate near zero
        body = 0.5 * betainc(0.5, 0.5 * df, t2 / (df + t2))
    near = t2 < df
    lower = np.where(near, 0.5 - body, tail)
    upper = np.where(near, 0.5 + body, 1.0 - tail)
    out = np.where(t >= 0, upper, lower)
    out = np.where(np.isposinf(t), 1.0, np.where(np.isneginf(t), 0.0, out))
    return float(out) if out.ndim == 0 else out


def t_sf(t, df):
    """Upper tail ``1 - t_cdf(t, df)`` without cancellation."""
    return t_cdf(-np.asarray(t, dtype=np.float64), df)


def t_quantile(p: float, df) -> float:
    """Inverse of :func:`t_cdf` by bracketed root finding."""
    if not 0.0 < p < 1.0:
        raise ValueError(f"p must lie in (0, 1), got {p}")
    if p == 0.5:
        return 0.0
    if df is NORMAL or math.isinf(df):
        return float(ndtri(p))
    if p < 0.5:
        return -t_quantile(1.0 - p, df)
    hi = max(1.0, float(ndtri(p)))
    while t_cdf(hi, df) < p:
        hi *= 2.0
    return brentq(lambda t: t_cdf(t, df) - p, 0.0, hi, xtol=1e-14, rtol=1e-15, maxiter=500)


def pvalue(statistic, df, alternative: str = "two-sided"):
    """P-value of a t (or normal, ``df=None``) statistic.

    ``alternative="greater"`` rejects for large statistics, ``"less"`` for
    small ones.
    """
    if alternative == "two-sided":
        p = 2.0 * t_sf(np.abs(statistic), df)
        return np.minimum(p, 1.0) if np.ndim(p) else min(float(p), 1.0)
    if alternative == "greater":
        return t_sf(statistic, df)
    if alternative == "less":
        return t_cdf(statistic, df)
    raise ValueError(f"unknown alternative {alternative!r}")
