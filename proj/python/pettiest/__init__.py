"""Minimal-volume box search with pettiest components (PRIM and fastPRIM)."""

import json

from ._pettiest import (
    PettiestError,
    __version__,
    beta_schedule,
    central_quantile_box,
    covariance,
    eigh,
    fastprim_box,
    fastprim_cover,
    fastprim_levels,
    normal_cdf,
    normal_quantile,
    paper_sigma,
    prim_cover,
    prim_peel,
    sample_mvn,
    select_components,
    subset_volume_scan,
)
from . import _pettiest


def simulate(**kwargs):
    """Run the simulation study; returns the JSON report as a dict."""
    kwargs.pop("format", None)
    return json.loads(_pettiest.simulate_json(format="json", **kwargs))


def analyze(data, columns=None, **kwargs):
    """Run one method on an (n, p) array; returns the analysis as a dict."""
    return json.loads(_pettiest.analyze_json(data, columns, **kwargs))


def theorem_check(sigma, beta=0.1, p_prime=2, n_mc=100000, seed=20210):
    """Check that the pettiest components give the smallest box for N(0, sigma)."""
    return json.loads(_pettiest.theorem_check_json(sigma, beta, p_prime, n_mc, seed))


__all__ = [
    "PettiestError",
    "__version__",
    "analyze",
    "beta_schedule",
    "central_quantile_box",
    "covariance",
    "eigh",
    "fastprim_box",
    "fastprim_cover",
    "fastprim_levels",
    "normal_cdf",
    "normal_quantile",
    "paper_sigma",
    "prim_cover",
    "prim_peel",
    "sample_mvn",
    "select_components",
    "simulate",
    "subset_volume_scan",
    "theorem_check",
]
