"""Reproduction of the benchmark tables at desk scale.

Iteration counts are checked against windows around the published counts;
wall times are not checked.
"""

from __future__ import annotations

import math
from typing import Dict, List

import numpy as np
import pytest

from perronpath.core.linalg import residual
from perronpath.core.models import EigenPair
from perronpath.core.tensor import identity_tensor, preprocess
from perronpath.harness.config import ExperimentSpec
from perronpath.harness.examples import cpz_tensor, lgl_tensor
from perronpath.harness.experiment import ReportRow, bench_suite, run_batch, run_experiment
from perronpath.solvers.homotopy import solve_perron
from perronpath.solvers.nqz import NqzConfig, nqz_solve

NQZ_TABLE1 = {0.0: 29, 10.0: 157, 1e2: 1195}


@pytest.fixture(scope="module")
def table1_rows() -> Dict[float, List[ReportRow]]:
    """Run the table1 suite once for all tests in this module."""
    specs = bench_suite("table1")
    rows = run_batch(specs)
    return {spec.gamma: rows[2 * i : 2 * i + 2] for i, spec in enumerate(specs)}


def _manual_residual(tensor: np.ndarray, lam: float, x: np.ndarray) -> float:
    """Stacked eigen-residual computed with einsum, independent of the package kernels."""
    y = np.einsum("ijk,j,k->i", tensor, x, x)
    return float(np.linalg.norm(np.append(y - lam * x**2, x @ x - 1.0)))


# ---------------------------------------------------------------------------
# Irreducible, non-primitive example
# ---------------------------------------------------------------------------


def test_cpz_homotopy_matches_closed_form() -> None:
    report = solve_perron(cpz_tensor())

    assert report.converged
    assert abs(report.pair.value - math.sqrt(11.0)) <= 1e-9
    assert report.wall_time < 1.0


def test_cpz_baseline_contrast() -> None:
    rows = run_experiment(ExperimentSpec("cpz", methods=("homotopy", "nqz", "nqz-shift")))
    by_method = {row.method: row for row in rows}

    assert by_method["nqz"].termination == "step_limit"
    assert by_method["nqz"].iters == 10000
    assert by_method["nqz-shift"].converged
    assert by_method["nqz-shift"].lam == pytest.approx(by_method["homotopy"].lam, abs=1e-9)


# ---------------------------------------------------------------------------
# Fixed positive tensor over five shifts
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("gamma", [0.0, 10.0, 1e2, 1e3, 1e4])
def test_table1_homotopy_counts(table1_rows: Dict[float, List[ReportRow]], gamma: float) -> None:
    homotopy = table1_rows[gamma][0]

    assert homotopy.method == "homotopy"
    assert homotopy.converged
    assert 3 <= homotopy.iters <= 8
    assert homotopy.newton_iters is not None
    assert 8 <= homotopy.newton_iters <= 20


def test_table1_newton_total_without_shift(table1_rows: Dict[float, List[ReportRow]]) -> None:
    # the start iterate of every correction is counted
    homotopy = table1_rows[0.0][0]

    assert homotopy.newton_iters is not None
    assert abs(homotopy.newton_iters - 15) <= 3


@pytest.mark.parametrize("gamma", sorted(NQZ_TABLE1))
def test_table1_nqz_converges_for_small_shifts(
    table1_rows: Dict[float, List[ReportRow]], gamma: float
) -> None:
    homotopy, nqz = table1_rows[gamma]
    expected = NQZ_TABLE1[gamma]

    assert nqz.converged
    assert 0.8 * expected <= nqz.iters <= 1.2 * expected
    assert nqz.lam == pytest.approx(homotopy.lam, rel=1e-8)


@pytest.mark.parametrize("gamma", [1e3, 1e4])
def test_table1_nqz_fails_for_large_shifts(
    table1_rows: Dict[float, List[ReportRow]], gamma: float
) -> None:
    nqz = table1_rows[gamma][1]

    assert nqz.termination == "step_limit"
    assert nqz.iters == 10000


# ---------------------------------------------------------------------------
# Random tensors
# ---------------------------------------------------------------------------


def test_table2_trend_for_m3_n20() -> None:
    specs = [
        ExperimentSpec("random", m=3, n=20, gamma=gamma, seed=20170) for gamma in (1e2, 1e4, 1e6)
    ]
    rows = run_batch(specs)
    homotopy = rows[0::2]
    nqz = rows[1::2]

    assert all(row.converged for row in homotopy)
    steps = [row.iters for row in homotopy]
    assert max(steps) - min(steps) <= 3
    assert nqz[0].converged
    assert nqz[2].termination == "step_limit" or nqz[2].iters >= 10 * nqz[0].iters


# ---------------------------------------------------------------------------
# Residual contract, checked without the package kernels
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("gamma", [0.0, 10.0, 1e4])
def test_homotopy_residual_contract(gamma: float) -> None:
    tensor = lgl_tensor(gamma)
    report = solve_perron(tensor)
    scaled, tau = preprocess(tensor)

    lam = report.pair.value / tau
    assert _manual_residual(scaled.data, lam, report.pair.vector) <= 1e-12


@pytest.mark.parametrize("shift", [0.0, 1.0])
def test_nqz_residual_contract(shift: float) -> None:
    tensor = lgl_tensor(0.0)
    report = nqz_solve(tensor, cfg=NqzConfig(shift=shift))
    scaled, tau = preprocess(tensor)
    shifted = scaled + identity_tensor(3, 3).scaled(shift)

    lam = report.pair.value / tau + shift
    assert report.converged
    assert _manual_residual(shifted.data, lam, report.pair.vector) <= 1e-12
    assert residual(shifted, EigenPair(lam, report.pair.vector)) <= 1e-12
