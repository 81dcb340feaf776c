"""Core constants for the perronpath package.

This module contains all shared defaults and fixed data used across the
package: solver tunables, numerical thresholds, file-format settings and
the entries of the fixed example tensors.
"""

# Path following (homotopy) defaults
DEFAULT_DT0 = 0.1
DEFAULT_EPS1 = 1e-5  # interior corrector tolerance
DEFAULT_EPS2 = 1e-12  # tolerance at t = 1
DEFAULT_DT_MIN = 1e-6
DEFAULT_DT_MAX = 0.5
DEFAULT_NEWTON_BUDGET = 10
DEFAULT_MAX_STEPS = 10000
DEFAULT_CUT_THRESHOLD = 3  # more Newton iterations than this halves the step
STEP_SHRINK = 0.5
STEP_GROW = 2.0

# NQZ baseline defaults
DEFAULT_NQZ_TOL = 1e-12
DEFAULT_NQZ_MAX_ITERS = 10000
DEFAULT_NQZ_SHIFT = 1.0  # shift used by the "nqz-shift" method

# Linear algebra
SINGULAR_PIVOT_RATIO = 1e-14

# Experiment cross-check
AGREEMENT_REL_TOL = 1e-8

# Harness parallelism
THREADS_ENV_VAR = "PERRON_THREADS"
DEFAULT_THREADS = 1

# Tensor files
MAX_FILE_SIZE_MB = 64
MAX_FILE_SIZE_BYTES = MAX_FILE_SIZE_MB * 1024 * 1024
TENSOR_FILE_MAGIC = "tensor"
TENSOR_FILE_COMMENT = "#"
VALUE_FORMAT = ".17g"
RANDOM_GENERATOR_NAME = "numpy.random.PCG64"

# Report columns (order is part of the CSV schema)
REPORT_COLUMNS = [
    "method",
    "lambda",
    "residual",
    "iters",
    "newton_iters",
    "time_ms",
    "termination",
]
SUPPORTED_REPORT_FORMATS = ["csv", "json", "xlsx"]

METHODS = ("homotopy", "nqz", "nqz-shift")
EXAMPLE_IDS = ("cpz", "lgl", "random")

# Header styling for Excel reports
HEADER_STYLE = {
    "fill_color": "4472C4",
    "font_color": "FFFFFF",
    "font_size": 11,
    "bold": True,
}

# Irreducible, non-primitive 3x3x3 tensor: (index tuple, value), 1-based.
CPZ_ENTRIES = (
    ((1, 2, 2), 1.0),
    ((1, 3, 3), 2.0),
    ((2, 1, 1), 3.0),
    ((3, 1, 1), 4.0),
)

# Positive 3x3x3 tensor P; LGL_SLICES[i][j][k] is P_{i+1, j+1, k+1}.
LGL_SLICES = (
    (
        (0.9000, 0.6700, 0.6604),
        (0.3340, 0.1040, 0.0945),
        (0.3106, 0.0805, 0.0710),
    ),
    (
        (0.0690, 0.2892, 0.0716),
        (0.6108, 0.8310, 0.6133),
        (0.0754, 0.2956, 0.0780),
    ),
    (
        (0.0310, 0.0408, 0.2680),
        (0.0552, 0.0650, 0.2922),
        (0.6140, 0.6239, 0.8510),
    ),
)

# Benchmark grids: (m, n, gamma values)
TABLE1_GAMMAS = (0.0, 10.0, 1e2, 1e3, 1e4)
TABLE2_SMALL_GRID = (
    (3, 20, (1e2, 1e4, 1e6)),
    (4, 10, (1e2, 1e4, 1e6)),
)
TABLE2_FULL_GRID = (
    (3, 20, (1e2, 1e4, 1e6)),
    (3, 100, (1e2, 1e4, 1e6)),
    (3, 200, (1e2, 1e4, 1e6, 1e7)),
    (4, 10, (1e2, 1e4, 1e6)),
    (4, 50, (1e2, 1e4, 1e6, 1e7)),
    (4, 100, (1e2, 1e4, 1e6, 1e8)),
)
DEFAULT_BENCH_SEED = 20170
