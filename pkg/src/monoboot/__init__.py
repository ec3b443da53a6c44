"""Smoothed-bootstrap confidence intervals for monotone regression."""

from .bandwidth import BandwidthSelection, mise_hat, mse_hat_point, select_c
from .bootstrap import (
    BootstrapConfig,
    ConfidenceBand,
    ResidualSet,
    bootstrap_diffs,
    confidence_band,
    draw_bootstrap_sample,
    make_residuals,
    percentile_ci,
    sigma_hall_kay,
    sigma_residual,
)
from .estimators import (
    SlseFit,
    nw_at,
    nw_beta_sq,
    slse_at,
    slse_boundary,
    slse_curve,
    slse_deriv_at,
    slse_second_deriv_at,
)
from .io import load_csv, mendota_transform
from .isotonic import RegressionSample, StepFunction, eval_step, fit_lse, jumps
from .kernel import (
    BandwidthPlan,
    boundary_nw_kernel,
    ik,
    ikh,
    kh,
    kh_prime,
    triweight,
    triweight_prime,
)
from .rng import substream
from .simulation import CoverageReport, ScenarioSpec, coverage_experiment, gen_sample

__version__ = "0.1.0"
