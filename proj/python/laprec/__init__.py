"""Stable Laplace transform inversion from noisy real-axis samples."""

from laprec._core import (
    BenchRow,
    ExpTerm,
    InversionConfig,
    InversionReport,
    IterationRecord,
    KernelMatrix,
    Reconstruction,
    RegularizedSolve,
    SampledTransform,
    SimpsonGrid,
    StopReason,
    build_grid,
    build_kernel,
    choose_m,
    exact_function,
    exact_transform,
    integrate_sampled,
    invert_callable,
    invert_example,
    invert_tabulated,
    load_transform,
    mae,
    mae_grid,
    run_benchmark,
    run_example13,
    solve_regularized,
    wm_norm,
)

__all__ = [
    "BenchRow",
    "ExpTerm",
    "InversionConfig",
    "InversionReport",
    "IterationRecord",
    "KernelMatrix",
    "Reconstruction",
    "RegularizedSolve",
    "SampledTransform",
    "SimpsonGrid",
    "StopReason",
    "build_grid",
    "build_kernel",
    "choose_m",
    "exact_function",
    "exact_transform",
    "integrate_sampled",
    "invert_callable",
    "invert_example",
    "invert_tabulated",
    "load_transform",
    "mae",
    "mae_grid",
    "run_benchmark",
    "run_example13",
    "solve_regularized",
    "wm_norm",
]

__version__ = "0.1.0"
