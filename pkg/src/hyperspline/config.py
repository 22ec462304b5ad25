# src\hyperspline\config.py

"""
Tolerances, search bounds and switches shared by the geometry, the spline
solver and the command line.

Modules that must follow runtime changes (tests, the `-v` flag) read
`config.STRICT_MODE` and `config.VERBOSE_OUTPUT` through the module at call
time; the numeric constants are plain imports.
"""

# === Runtime Modes ===
STRICT_MODE: bool = True
"""Promote near-zero denominators and residual blowups to errors instead of warnings."""

VERBOSE_OUTPUT: bool = False
"""Print one line per partition check before the basis command solves."""

# === Numerical Tolerances ===
EPSILON: float = 1e-12
"""Threshold for treating geometric denominators as zero."""

BOUNDARY_TOL: float = 1e-10
"""Signed-distance tolerance for octagon and cell membership."""

PAIRING_TOL: float = 1e-10
"""Endpoint tolerance when discovering side pairings of the octagon."""

LOAD_PAIRING_TOL: float = 1e-8
"""Endpoint tolerance for boundary pairs read from partition documents."""

SOLVER_TOL: float = 1e-10
"""Relative singular-value cutoff used by solve_basis."""

RESIDUAL_TOL: float = 1e-9
"""Maximum accepted residual of a basis spline on a normalized constraint row."""

CONFORMALITY_RANK_TOL: float = 1e-8
"""Relative singular-value cutoff of the conformality nullspace oracle."""

CONCURRENCY_TOL: float = 1e-10
"""Maximum residual for lines declared concurrent at a vertex."""

COFACTOR_TOL: float = 1e-10
"""Magnitude below which rotated low-order coefficients count as zero."""

FLOAT_HASH_RESOLUTION: float = 1e-9
"""Grid spacing of the float-hash deduplication of group elements."""

# === Search Bounds ===
MAX_TILE_DEPTH: int = 5
"""Largest tiling depth accepted by the tile command."""

MAX_WORD_LENGTH: int = 6
"""Largest word length accepted by enumerate_elements."""

# === Command-line Defaults ===
DEFAULT_DEGREE: int = 1
DEFAULT_SMOOTHNESS: int = 0
DEFAULT_DEPTH: int = 2
DEFAULT_MODEL: str = "klein"
DEFAULT_SEED: int = 0
SEED_ENV_VAR: str = "HYPERSPLINE_SEED"
"""Environment variable consulted when --seed is not given."""

# === Report Settings ===
REPORT_FLOAT_PRECISION: int = 12
"""Number of significant digits used in plain text reports."""

SVG_VIEW_LIMIT: float = 1.05
"""Half-width of the square SVG view box around the unit disk."""

ARC_SAMPLES: int = 48
"""Points per side when drawing Poincaré geodesic arcs."""
