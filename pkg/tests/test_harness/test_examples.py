"""Tests for perronpath.harness.examples and experiment specifications."""

from __future__ import annotations

import numpy as np
import pytest

from perronpath.harness.config import ExperimentConfigError, ExperimentSpec
from perronpath.harness.examples import (
    cpz_tensor,
    example_comment,
    gen_example,
    lgl_tensor,
    random_tensor,
)


def test_cpz_entries() -> None:
    tensor = gen_example(ExperimentSpec("cpz"))

    assert tensor == cpz_tensor()
    assert tensor.data[1, 0, 0] == 3.0
    assert tensor.data[2, 0, 0] == 4.0
    assert tensor.nnz() == 4


def test_lgl_entries_and_shift() -> None:
    base = lgl_tensor()
    shifted = gen_example(ExperimentSpec("lgl", gamma=10.0))

    assert base.data[0, 0, 0] == 0.9
    assert base.data[0, 1, 2] == 0.0945
    assert base.data[2, 2, 2] == 0.851
    assert base.nnz() == 27
    assert shifted.data[0, 0, 0] == pytest.approx(10.9)
    assert shifted.data[1, 1, 1] == pytest.approx(0.831 + 10.0)
    assert shifted.data[0, 1, 0] == base.data[0, 1, 0]


def test_random_is_deterministic() -> None:
    spec = ExperimentSpec("random", m=3, n=4, gamma=0.0, seed=42)

    first = gen_example(spec)
    second = gen_example(spec)

    assert first == second
    assert first != random_tensor(3, 4, seed=43)
    assert (first.data >= 0.0).all() and (first.data < 1.0).all()


def test_random_uses_pcg64_stream_in_lexicographic_order() -> None:
    expected = np.random.Generator(np.random.PCG64(7)).random(8)

    np.testing.assert_array_equal(random_tensor(3, 2, seed=7).entries, expected)


def test_random_gamma_adds_identity() -> None:
    base = random_tensor(3, 3, seed=5)
    shifted = random_tensor(3, 3, seed=5, gamma=100.0)
    diff = shifted.data - base.data

    np.testing.assert_allclose(np.diag(diff.reshape(3, -1)[:, ::4]), 100.0)
    assert np.count_nonzero(diff) == 3


@pytest.mark.parametrize(
    "kwargs",
    [
        {"example": "hilbert"},
        {"example": "random", "m": 3, "n": 4},
        {"example": "random", "m": 1, "n": 4, "seed": 1},
        {"example": "random", "m": 3, "n": 4, "seed": -1},
        {"example": "random", "m": 3, "n": 4, "seed": 2**64},
        {"example": "lgl", "m": 4},
        {"example": "cpz", "n": 5},
        {"example": "cpz", "gamma": 1.0},
        {"example": "lgl", "gamma": -1.0},
        {"example": "lgl", "methods": ()},
        {"example": "lgl", "methods": ("homotopy", "power")},
        {"example": "lgl", "methods": ("nqz", "nqz")},
    ],
)
def test_spec_rejects_invalid_combinations(kwargs: dict) -> None:
    with pytest.raises(ExperimentConfigError):
        ExperimentSpec(**kwargs)


def test_fixed_examples_fill_in_size() -> None:
    spec = ExperimentSpec("lgl", m=3)

    assert (spec.m, spec.n) == (3, 3)
    assert spec.label == "lgl gamma=0"


def test_example_comment_names_generator() -> None:
    spec = ExperimentSpec("random", m=3, n=4, gamma=1e4, seed=9)

    comment = example_comment(spec)

    assert "random m=3 n=4 gamma=10000" in comment
    assert "numpy.random.PCG64 seed=9" in comment
