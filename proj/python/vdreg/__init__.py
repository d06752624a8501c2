"""Regression and clustering with variable-dimension covariates."""

from ._vdreg import (
    Model,
    VdregError,
    __version__,
    cli,
    exact_prior,
    log_sim_continuous,
    mse,
    mspe,
    pct_correct,
    simulate,
    tjur_r2,
)


def fit(x, y, config=None, kinds=(), n_levels=(), stream=0):
    """Run the sampler on covariates `x` (NaN = missing) and responses `y`."""
    return Model(x, y, config, list(kinds), list(n_levels), stream)


__all__ = [
    "Model",
    "VdregError",
    "__version__",
    "cli",
    "exact_prior",
    "fit",
    "log_sim_continuous",
    "mse",
    "mspe",
    "pct_correct",
    "simulate",
    "tjur_r2",
]
