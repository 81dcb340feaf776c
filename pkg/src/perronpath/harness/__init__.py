"""Tensor files, example generators, experiment runner and reports."""

from .config import ExperimentConfigError, ExperimentSpec, HarnessError, harness_threads
from .examples import cpz_tensor, gen_example, lgl_tensor, random_tensor
from .experiment import ReportRow, bench_suite, check_agreement, run_batch, run_experiment
from .report import ReportError, emit_report
from .tensor_io import TensorFile, TensorFileError, parse_tensor_file, write_tensor_file

__all__ = [
    "ExperimentConfigError",
    "ExperimentSpec",
    "HarnessError",
    "ReportError",
    "ReportRow",
    "TensorFile",
    "TensorFileError",
    "bench_suite",
    "check_agreement",
    "cpz_tensor",
    "emit_report",
    "gen_example",
    "harness_threads",
    "lgl_tensor",
    "parse_tensor_file",
    "random_tensor",
    "run_batch",
    "run_experiment",
    "write_tensor_file",
]
