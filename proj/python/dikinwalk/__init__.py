"""Gaussian Dikin walk sampling on polytopes {x : A x >= b}."""

from ._core import (
    DikinError,
    Polytope,
    VerifyReport,
    analytic_center,
    barrier_gradient,
    barrier_hessian,
    barrier_value,
    check_sigma_local,
    cross_ratio,
    default_radius,
    find_interior_point,
    isserlis_mixed_fourth,
    isserlis_mixed_third,
    kl_gaussians,
    leverage_scores,
    local_norm,
    log_accept_ratio,
    log_gaussian_density,
    mixing_steps,
    radius_conditions,
    reference_point,
    run_suite,
    sample,
    suite_check_names,
)

__all__ = [
    "DikinError",
    "Polytope",
    "VerifyReport",
    "analytic_center",
    "barrier_gradient",
    "barrier_hessian",
    "barrier_value",
    "check_sigma_local",
    "cross_ratio",
    "default_radius",
    "find_interior_point",
    "isserlis_mixed_fourth",
    "isserlis_mixed_third",
    "kl_gaussians",
    "leverage_scores",
    "local_norm",
    "log_accept_ratio",
    "log_gaussian_density",
    "mixing_steps",
    "radius_conditions",
    "reference_point",
    "run_suite",
    "sample",
    "suite_check_names",
]

__version__ = "0.1.0"
