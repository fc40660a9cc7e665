"""Quantile conditional correlation toolkit.

Estimation of correlation conditioned on quantile rectangles, conditional
correlograms, model samplers, and Monte-Carlo / bootstrap serial-dependence
tests. All randomized entry points are deterministic in their seed.
"""

from ._core import (
    Error,
    StatisticFailure,
    acf,
    acf_at,
    bootstrap_test,
    cacf,
    cacf_at,
    cond_moments,
    mc_test,
    qcc_hat,
    sample_ar1,
    sample_garch11_iid,
    sample_garch11_path,
    sample_gaussian,
    sample_ma1,
    sample_sas,
)

__all__ = [
    "Error",
    "StatisticFailure",
    "acf",
    "acf_at",
    "bootstrap_test",
    "cacf",
    "cacf_at",
    "cond_moments",
    "mc_test",
    "qcc_hat",
    "sample_ar1",
    "sample_garch11_iid",
    "sample_garch11_path",
    "sample_gaussian",
    "sample_ma1",
    "sample_sas",
]
