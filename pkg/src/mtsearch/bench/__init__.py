"""Benchmark runner, oracle verification harness, and their CLI."""

from .experiments import (
    ExperimentSpec,
    OrderingBucket,
    RelativeRow,
    ResultRow,
    SweepPoint,
    VerifyReport,
    first_guess_sweep,
    ordering_report,
    relative_rows,
    run_matrix,
    self_play_position,
    verify_suite,
    write_csv,
)
from .suite import small_tree_configs, suite_tree_configs

__all__ = [
    "ExperimentSpec",
    "OrderingBucket",
    "RelativeRow",
    "ResultRow",
    "SweepPoint",
    "VerifyReport",
    "first_guess_sweep",
    "ordering_report",
    "relative_rows",
    "run_matrix",
    "self_play_position",
    "verify_suite",
    "write_csv",
    "small_tree_configs",
    "suite_tree_configs",
]
