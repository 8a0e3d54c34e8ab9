"""Kernel k-means clustering with sparse selection-matrix distance updates."""

from ._core import (
    CsrMatrix,
    DimensionError,
    LabelError,
    NumericError,
    ParseError,
    apply_kernel,
    augmented_distance_oracle,
    compute_gram,
    compute_objective,
    init_assignments,
    intensity_distances,
    intensity_kernel_matrix,
    kernel_cost_model,
    load_dataset,
    row_argmin,
    run_baseline,
    run_lloyd,
    run_popcorn,
    select_gram_algorithm,
    selection_matrix,
    spmm_neg2_kvt,
    spmv_scaled,
)

__all__ = [
    "CsrMatrix",
    "DimensionError",
    "LabelError",
    "NumericError",
    "ParseError",
    "apply_kernel",
    "augmented_distance_oracle",
    "compute_gram",
    "compute_objective",
    "init_assignments",
    "intensity_distances",
    "intensity_kernel_matrix",
    "kernel_cost_model",
    "load_dataset",
    "row_argmin",
    "run_baseline",
    "run_lloyd",
    "run_popcorn",
    "select_gram_algorithm",
    "selection_matrix",
    "spmm_neg2_kvt",
    "spmv_scaled",
]
