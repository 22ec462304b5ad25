"""
spline/__init__.py

Local spline conditions: smoothing cofactors across an edge, the
conformality equation around a vertex with its dimension formula, and the
per-edge constraint rows (interior continuity and periodic pullback) that
space.assemble stacks into the global system.
"""

from .conformality import (
    cofactor_check,
    conformality_dim_formula,
    conformality_nullspace,
    conformality_residual,
    random_concurrent_lines,
)
from .constraints import (
    RowBlock,
    RowTag,
    interior_constraint_rows,
    periodic_constraint_rows,
    pullback,
)

__all__ = [
    "cofactor_check",
    "conformality_dim_formula",
    "conformality_nullspace",
    "conformality_residual",
    "random_concurrent_lines",
    "RowBlock",
    "RowTag",
    "interior_constraint_rows",
    "periodic_constraint_rows",
    "pullback",
]
