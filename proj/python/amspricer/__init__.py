"""Rare-event pricing for binary options.

Adaptive multilevel splitting drives the exercise probability estimate for
deep out-of-the-money digital, Asian, barrier, and multi-asset contracts;
crude, antithetic, and multilevel Monte Carlo estimators serve as
baselines.  Dynamics: exact-step geometric Brownian motion, Heston
stochastic volatility (quadratic-exponential, Euler, or Milstein
stepping), and correlated multi-asset GBM.
"""

from ._core import (
    BsModel,
    Contract,
    HestonModel,
    MultiGbmModel,
    bs_digital_closed_form,
    make_bs_model,
    make_contract,
    make_equicorrelated_model,
    make_heston_model,
    make_multi_gbm_model,
    norm_cdf,
    norm_inv,
    price_from_prob,
    relative_accuracy,
    required_mc_samples,
    run_ams,
    run_antithetic_mc,
    run_crude_mc,
    run_mlmc,
    simulate_path,
)

__version__ = "0.1.0"

__all__ = [
    "BsModel",
    "Contract",
    "HestonModel",
    "MultiGbmModel",
    "bs_digital_closed_form",
    "make_bs_model",
    "make_contract",
    "make_equicorrelated_model",
    "make_heston_model",
    "make_multi_gbm_model",
    "norm_cdf",
    "norm_inv",
    "price_from_prob",
    "relative_accuracy",
    "required_mc_samples",
    "run_ams",
    "run_antithetic_mc",
    "run_crude_mc",
    "run_mlmc",
    "simulate_path",
]
