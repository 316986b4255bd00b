"""Sample-autocovariance unit-root test with a KPSS baseline.

The heavy lifting lives in the compiled ``_core`` extension; this package
re-exports it and adds a couple of conveniences.
"""

from ._core import (
    DegenerateInputError,
    DegenerateScaleError,
    InputError,
    acvf,
    acvf_diff,
    acvf_split,
    difference,
    kpss_test,
    long_run_variance,
    normal_cdf,
    normal_quantile,
    ratio_r,
    reproduce_table1_csv,
    run_cli,
    run_test,
    sample_mean,
    simulate,
)

UNTRUNCATED = float("inf")


def run_test_sweep(y, k0_values=range(5), **kwargs):
    """run_test for each K0 in k0_values, as a list of result dicts."""
    return [run_test(y, k0=k, **kwargs) for k in k0_values]


__all__ = [
    "DegenerateInputError",
    "DegenerateScaleError",
    "InputError",
    "UNTRUNCATED",
    "acvf",
    "acvf_diff",
    "acvf_split",
    "difference",
    "kpss_test",
    "long_run_variance",
    "normal_cdf",
    "normal_quantile",
    "ratio_r",
    "reproduce_table1_csv",
    "run_cli",
    "run_test",
    "run_test_sweep",
    "sample_mean",
    "simulate",
]
