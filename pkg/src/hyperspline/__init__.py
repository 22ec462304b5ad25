# src\hyperspline\__init__.py

"""
Hyperspline

This package builds multiply periodic spline spaces on the Klein disk: piecewise
polynomials over a partition of the fundamental octagon of the Bolza surface
that join with prescribed smoothness across interior edges and across the
sides identified by the surface's Fuchsian group.
"""

import logging

__version__ = "0.1.0"

from .exceptions import HyperSplineError
from .field import AlgebraicNumber, FieldComplex, field_arith, to_float
from .models import (
    Collineation,
    DiskModel,
    DiskPoint,
    MobiusMap,
    collineation_apply,
    klein_reflection,
    klein_to_poincare,
    mobius_apply,
    poincare_geodesic,
    poincare_to_klein,
    su11_to_klein,
)
from .fuchsian import (
    FuchsianGroup,
    GroupElement,
    bolza_generator,
    bolza_group,
    canonicalize,
    contains,
    enumerate_elements,
    group_inv,
    group_mul,
    tile,
)
from .partition import Partition, default_triangulation, load_partition, locate_cell, refine
from .validation import validate_partition
from .polynomials import BivariatePolynomial, LineForm, poly_eval
from .spline import (
    cofactor_check,
    conformality_dim_formula,
    conformality_nullspace,
    interior_constraint_rows,
    periodic_constraint_rows,
    pullback,
)
from .space import (
    ConstraintSystem,
    PeriodicSpline,
    SplineBasis,
    SplineSpaceSpec,
    assemble,
    solve_basis,
    spline_eval,
)

logging.getLogger(__name__).addHandler(logging.NullHandler())

__all__ = [
    "HyperSplineError",
    "AlgebraicNumber",
    "FieldComplex",
    "field_arith",
    "to_float",
    "Collineation",
    "DiskModel",
    "DiskPoint",
    "MobiusMap",
    "collineation_apply",
    "klein_reflection",
    "klein_to_poincare",
    "mobius_apply",
    "poincare_geodesic",
    "poincare_to_klein",
    "su11_to_klein",
    "FuchsianGroup",
    "GroupElement",
    "bolza_generator",
    "bolza_group",
    "canonicalize",
    "contains",
    "enumerate_elements",
    "group_inv",
    "group_mul",
    "tile",
    "Partition",
    "default_triangulation",
    "load_partition",
    "locate_cell",
    "refine",
    "validate_partition",
    "BivariatePolynomial",
    "LineForm",
    "poly_eval",
    "cofactor_check",
    "conformality_dim_formula",
    "conformality_nullspace",
    "interior_constraint_rows",
    "periodic_constraint_rows",
    "pullback",
    "ConstraintSystem",
    "PeriodicSpline",
    "SplineBasis",
    "SplineSpaceSpec",
    "assemble",
    "solve_basis",
    "spline_eval",
]
