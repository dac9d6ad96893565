"""Optimal binary and M-ary quantum hypothesis testing with certificates."""

from ._core import (
    ConvergenceError,
    DimensionMismatch,
    Error,
    ValidationError,
    alpha_beta,
    hayashi_nagaoka,
    helstrom,
    lemma2_lower_bound,
    meta_converse,
    pe_of_code,
    random_density,
    solve_min_error,
    theorem1_value,
    theorem2_objective,
    verify_theorems,
    wang_renner_bound,
)

__all__ = [
    "ConvergenceError",
    "DimensionMismatch",
    "Error",
    "ValidationError",
    "alpha_beta",
    "hayashi_nagaoka",
    "helstrom",
    "lemma2_lower_bound",
    "meta_converse",
    "pe_of_code",
    "random_density",
    "solve_min_error",
    "theorem1_value",
    "theorem2_objective",
    "verify_theorems",
    "wang_renner_bound",
]
