"""Generators for the benchmark tensors.

- ``cpz``: a fixed 3x3x3 tensor that is irreducible but not primitive; its
  Perron value is ``sqrt(11)``. The plain NQZ iteration oscillates on it.
- ``lgl``: a fixed positive 3x3x3 tensor ``P`` plus ``gamma * I``. Large
  ``gamma`` pushes the second eigenvalue towards the Perron value and slows
  power-type methods down.
- ``random``: i.i.d. uniform ``[0, 1)`` entries from a seeded PCG64
  generator plus ``gamma * I``.
"""

from __future__ import annotations

import numpy as np

from perronpath.core.constants import CPZ_ENTRIES, LGL_SLICES, RANDOM_GENERATOR_NAME
from perronpath.core.tensor import DenseTensor, identity_tensor
from perronpath.harness.config import ExperimentConfigError, ExperimentSpec


def cpz_tensor() -> DenseTensor:
    return DenseTensor.from_entries(3, 3, CPZ_ENTRIES)


def lgl_tensor(gamma: float = 0.0) -> DenseTensor:
    base = DenseTensor(np.array(LGL_SLICES, dtype=np.float64))
    return base + identity_tensor(3, 3).scaled(gamma) if gamma else base


def random_tensor(m: int, n: int, seed: int, gamma: float = 0.0) -> DenseTensor:
    """Return a seeded uniform random tensor plus ``gamma * I``.

    The ``n**m`` entries are drawn in lexicographic order from
    ``numpy.random.Generator(PCG64(seed)).random``, which builds each double
    from the top 53 bits of a 64-bit output, so the tensor depends only on
    ``(m, n, seed, gamma)``.
    """
    rng = np.random.Generator(np.random.PCG64(seed))
    base = DenseTensor.from_flat(m, n, rng.random(n**m))
    return base + identity_tensor(m, n).scaled(gamma) if gamma else base


def gen_example(spec: ExperimentSpec) -> DenseTensor:
    """Build the tensor described by ``spec``.

    Raises:
        ExperimentConfigError: If ``spec`` names an unknown example.
    """
    if spec.example == "cpz":
        return cpz_tensor()
    if spec.example == "lgl":
        return lgl_tensor(spec.gamma)
    if spec.example == "random":
        assert spec.m is not None and spec.n is not None and spec.seed is not None
        return random_tensor(spec.m, spec.n, spec.seed, spec.gamma)
    raise ExperimentConfigError(f"Unknown example '{spec.example}'.")


def example_comment(spec: ExperimentSpec) -> str:
    """Return the provenance lines written at the top of a generated tensor file."""
    lines = [f"perronpath example: {spec.label}"]
    if spec.example == "random":
        lines.append(f"generator: {RANDOM_GENERATOR_NAME} seed={spec.seed}")
    return "\n".join(lines)
