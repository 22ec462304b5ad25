# src\hyperspline\space.py

"""
Multiply periodic spline spaces S_n^r on a partition of the fundamental octagon.

A spline is one polynomial per cell. Interior edges carry continuity rows,
paired boundary edges carry periodic pullback rows; the basis of the space
is the numerical nullspace of the stacked rows.
"""

import logging
import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
import scipy.sparse
from pydantic import BaseModel, ConfigDict, Field, model_validator

from . import config
from .config import RESIDUAL_TOL, SOLVER_TOL
from .exceptions import NumericalAgreementError, SplineSpaceError
from .fuchsian import bolza_group
from .models import DiskModel, DiskPoint, poincare_to_klein
from .numerics import normalize_rows, null_space_basis, numerical_rank_qr
from .partition import Partition, locate_cell
from .polynomials import BivariatePolynomial, monomial_count, poly_eval
from .spline import (
    RowBlock,
    RowTag,
    cofactor_check,
    conformality_residual,
    interior_constraint_rows,
    periodic_constraint_rows,
)

logger = logging.getLogger(__name__)


class SplineSpaceSpec(BaseModel):
    """
    The space S_n^r of multiply periodic splines on a partition.

    Attributes
    ----------
    partition : Partition
        Validated partition of the fundamental octagon.
    degree : int
        Polynomial degree n >= 0.
    smoothness : int
        Smoothness order r >= -1; r = -1 imposes no continuity at all.
    """
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    partition: Partition
    degree: int = Field(..., ge=0, description="Polynomial degree n")
    smoothness: int = Field(..., ge=-1, description="Smoothness order r")

    @model_validator(mode="after")
    def warn_on_trivial_smoothness(self) -> "SplineSpaceSpec":
        if self.smoothness >= self.degree and self.degree > 0:
            warnings.warn(
                f"Smoothness r={self.smoothness} >= degree n={self.degree}: expect only global polynomials.",
                UserWarning,
            )
        return self

    @property
    def coeffs_per_cell(self) -> int:
        return monomial_count(self.degree)

    @property
    def column_count(self) -> int:
        return self.partition.cell_count * self.coeffs_per_cell

    def cell_slice(self, i: int) -> slice:
        k = self.coeffs_per_cell
        return slice(i * k, (i + 1) * k)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "degree": self.degree,
            "smoothness": self.smoothness,
            "cells": self.partition.cell_count,
            "partition": self.partition.to_dict(),
        }


@dataclass(frozen=True, eq=False)
class ConstraintSystem:
    """
    Stacked constraint rows over the concatenated cell coefficients.

    Attributes
    ----------
    spec : SplineSpaceSpec
        Space the rows describe.
    matrix : scipy.sparse.csr_matrix
        Unit-norm rows; columns are cells in index order, graded-lex within a cell.
    tags : tuple of RowTag
        Provenance of each row.
    """
    spec: SplineSpaceSpec
    matrix: scipy.sparse.csr_matrix
    tags: Tuple[RowTag, ...]

    @property
    def row_count(self) -> int:
        return self.matrix.shape[0]

    @property
    def column_count(self) -> int:
        return self.matrix.shape[1]

    def dense(self) -> np.ndarray:
        return self.matrix.toarray()

    def residuals(self, coeffs: np.ndarray) -> np.ndarray:
        return np.abs(self.matrix @ coeffs)

    def counts(self) -> Dict[str, int]:
        out = {"interior": 0, "periodic": 0}
        for t in self.tags:
            out[t.kind] += 1
        return out


def assemble(spec: SplineSpaceSpec, max_workers: int = 1) -> ConstraintSystem:
    """
    Stack all interior and periodic rows of a spline space.

    Rows are generated per interior edge (in index order) and then per
    boundary pair (in document order), normalized to unit length, and
    numerically zero rows are dropped.

    Parameters
    ----------
    spec : SplineSpaceSpec
        The space.
    max_workers : int, optional
        Threads used to generate edge blocks; results keep edge order.

    Returns
    -------
    ConstraintSystem
    """
    part, n, r = spec.partition, spec.degree, spec.smoothness
    jobs = [("interior", e) for e in part.interior_edges] + [("periodic", bp) for bp in part.boundary_pairs]

    def build(job) -> RowBlock:
        kind, item = job
        if kind == "interior":
            return interior_constraint_rows(part, n, r, item)
        return periodic_constraint_rows(part, n, r, item)

    if max_workers > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            blocks = list(pool.map(build, jobs))
    else:
        blocks = [build(job) for job in jobs]

    k = spec.coeffs_per_cell
    rows, cols, vals, tags = [], [], [], []
    offset = 0
    for block in blocks:
        if block.row_count == 0:
            continue
        cells = sorted(block.blocks)
        local, keep = normalize_rows(np.hstack([block.blocks[c] for c in cells]))
        kept_tags = [t for t, kp in zip(block.tags, keep) if kp]
        for pos, c in enumerate(cells):
            sub = local[:, pos * k:(pos + 1) * k]
            ri, ci = np.nonzero(sub)
            rows.append(ri + offset)
            cols.append(ci + c * k)
            vals.append(sub[ri, ci])
        tags += kept_tags
        offset += len(kept_tags)

    if rows:
        matrix = scipy.sparse.coo_matrix(
            (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
            shape=(offset, spec.column_count),
        ).tocsr()
    else:
        matrix = scipy.sparse.csr_matrix((0, spec.column_count))
    system = ConstraintSystem(spec, matrix, tuple(tags))
    logger.debug("Assembled %d rows x %d columns %s", system.row_count, system.column_count, system.counts())
    return system


# ==============================
# Splines and bases
# ==============================


@dataclass(frozen=True, eq=False)
class PeriodicSpline:
    """
    One polynomial per cell, given by the concatenated coefficient vector.
    """
    spec: SplineSpaceSpec
    coeffs: np.ndarray

    def polynomial(self, i: int) -> BivariatePolynomial:
        return BivariatePolynomial(self.spec.degree, self.coeffs[self.spec.cell_slice(i)])

    @property
    def polynomials(self) -> List[BivariatePolynomial]:
        return [self.polynomial(i) for i in range(self.spec.partition.cell_count)]

    def __call__(self, p: DiskPoint) -> float:
        return spline_eval(self, p)

    def to_dict(self) -> Dict[str, Any]:
        return {"cells": [self.polynomial(i).coeffs.tolist() for i in range(self.spec.partition.cell_count)]}


def constant_spline(spec: SplineSpaceSpec, value: float = 1.0) -> PeriodicSpline:
    coeffs = np.zeros(spec.column_count)
    coeffs[:: spec.coeffs_per_cell] = value
    return PeriodicSpline(spec, coeffs)


@dataclass(frozen=True, eq=False)
class SplineBasis:
    """
    Orthonormal numerical basis of a spline space.

    Attributes
    ----------
    spec : SplineSpaceSpec
        The space.
    coefficients : np.ndarray
        Shape (column_count, dimension); columns are basis splines.
    singular_values : np.ndarray
        Singular values of the constraint matrix.
    residuals : np.ndarray
        Largest row residual of each basis spline.
    qr_dimension : int or None
        Nullspace dimension from the pivoted-QR rank.
    tol : float
        Relative singular-value cutoff used.
    """
    spec: SplineSpaceSpec
    coefficients: np.ndarray
    singular_values: np.ndarray
    residuals: np.ndarray
    qr_dimension: Optional[int]
    tol: float

    @property
    def dimension(self) -> int:
        return int(self.coefficients.shape[1])

    @property
    def splines(self) -> List[PeriodicSpline]:
        return [PeriodicSpline(self.spec, self.coefficients[:, k]) for k in range(self.dimension)]

    def __len__(self) -> int:
        return self.dimension

    def __getitem__(self, k: int) -> PeriodicSpline:
        return PeriodicSpline(self.spec, self.coefficients[:, k])

    def project(self, coeffs: np.ndarray) -> np.ndarray:
        """Orthogonal projection of a coefficient vector onto the span."""
        b = self.coefficients
        return b @ (b.T @ np.asarray(coeffs, dtype=float))

    def evaluate(self, p: DiskPoint) -> np.ndarray:
        """Values of all basis splines at one point, sharing one canonicalization."""
        q, cell = _reduce_point(self.spec.partition, p)
        k = self.spec.coeffs_per_cell
        block = self.coefficients[cell * k:(cell + 1) * k, :]
        return np.array([poly_eval(BivariatePolynomial(self.spec.degree, block[:, j]), q.x, q.y)
                         for j in range(self.dimension)])

    def to_dict(self) -> Dict[str, Any]:
        return {
            "spec": self.spec.to_dict(),
            "dimension": self.dimension,
            "qr_dimension": self.qr_dimension,
            "tol": self.tol,
            "splines": [s.to_dict() for s in self.splines],
            "residuals": self.residuals.tolist(),
            "max_residual": float(np.max(self.residuals)) if self.residuals.size else 0.0,
            "singular_values": self.singular_values.tolist(),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "SplineBasis":
        """
        Rebuild a basis from its JSON form.

        Raises
        ------
        SplineSpaceError
            If the coefficient arrays do not fit the echoed space.
        """
        from .partition import load_partition

        spec_data = data["spec"]
        spec = SplineSpaceSpec(
            partition=load_partition(spec_data["partition"]),
            degree=spec_data["degree"],
            smoothness=spec_data["smoothness"],
        )
        columns = []
        for s in data["splines"]:
            cells = s["cells"]
            if len(cells) != spec.partition.cell_count or any(len(c) != spec.coeffs_per_cell for c in cells):
                raise SplineSpaceError("Basis coefficients do not match the space.", details={"degree": spec.degree})
            columns.append(np.concatenate([np.asarray(c, dtype=float) for c in cells]))
        coefficients = np.column_stack(columns) if columns else np.zeros((spec.column_count, 0))
        return cls(
            spec=spec,
            coefficients=coefficients,
            singular_values=np.asarray(data.get("singular_values", []), dtype=float),
            residuals=np.asarray(data.get("residuals", []), dtype=float),
            qr_dimension=data.get("qr_dimension"),
            tol=float(data.get("tol", SOLVER_TOL)),
        )


def solve_basis(system: ConstraintSystem, tol: float = SOLVER_TOL, check_rank: bool = True) -> SplineBasis:
    """
    Orthonormal basis of the nullspace of the constraint system.

    Rank is decided by the SVD with cutoff tol * sigma_max; a pivoted QR on
    the same matrix gives an independent dimension.

    Parameters
    ----------
    system : ConstraintSystem
        Assembled rows.
    tol : float, optional
        Relative singular-value cutoff (default: SOLVER_TOL).
    check_rank : bool, optional
        Also compute the pivoted-QR dimension.

    Returns
    -------
    SplineBasis

    Raises
    ------
    SplineSpaceError
        If the partition has no cells.
    NumericalAgreementError
        If a basis spline violates a row by more than RESIDUAL_TOL in strict mode.
    """
    if system.spec.partition.cell_count == 0 or system.column_count == 0:
        raise SplineSpaceError("Cannot solve on an empty partition.")
    dense = system.dense()
    basis, singular_values = null_space_basis(dense, rcond=tol)
    residuals = (
        np.max(np.abs(dense @ basis), axis=0) if dense.shape[0] and basis.shape[1] else np.zeros(basis.shape[1])
    )
    worst = float(np.max(residuals)) if residuals.size else 0.0
    if worst > RESIDUAL_TOL:
        msg = f"Basis residual {worst:.3e} exceeds {RESIDUAL_TOL:.1e}"
        if config.STRICT_MODE:
            raise NumericalAgreementError(msg, details={"residuals": residuals.tolist()})
        warnings.warn(msg, RuntimeWarning)
    qr_dimension = system.column_count - numerical_rank_qr(dense, tol) if check_rank else None
    logger.info(
        "Spline space n=%d r=%d: dimension %d (QR: %s)",
        system.spec.degree, system.spec.smoothness, basis.shape[1], qr_dimension,
    )
    return SplineBasis(system.spec, basis, singular_values, residuals, qr_dimension, tol)


def check_dimension_agreement(basis: SplineBasis) -> None:
    """
    Raises
    ------
    NumericalAgreementError
        If the SVD and pivoted-QR dimensions differ.
    """
    if basis.qr_dimension is not None and basis.qr_dimension != basis.dimension:
        raise NumericalAgreementError(
            "SVD and QR nullspace dimensions disagree.",
            details={"svd": basis.dimension, "qr": basis.qr_dimension},
        )


def scaled_system(system: ConstraintSystem, factors: np.ndarray) -> ConstraintSystem:
    """The same rows multiplied by positive factors."""
    return replace(system, matrix=scipy.sparse.diags(np.asarray(factors, dtype=float)) @ system.matrix)


# ==============================
# Evaluation and diagnostics
# ==============================


def _reduce_point(part: Partition, p: DiskPoint) -> Tuple[DiskPoint, int]:
    if p.model is DiskModel.POINCARE:
        p = poincare_to_klein(p)
    _, q = bolza_group().canonicalize(p)
    return q, locate_cell(part, q)


def spline_eval(f: PeriodicSpline, p: DiskPoint) -> float:
    """
    Value of a periodic spline at a disk point.

    The point is reduced into the fundamental octagon, located in a cell and
    the cell polynomial is evaluated there, so f(g p) = f(p) for every group
    element g.

    Raises
    ------
    CanonicalizationError
        If reduction fails near the disk boundary.
    """
    q, cell = _reduce_point(f.spec.partition, p)
    return poly_eval(f.polynomial(cell), q.x, q.y)


def vertex_conformality_residual(f: PeriodicSpline, vertex: int, tol: float = 1e-8) -> float:
    """
    Size of sum l^(r+1) q over the smoothing cofactors around an interior vertex.

    Walking around the vertex, the cell differences telescope, so the sum
    vanishes for any spline meeting the edge conditions. Returns inf if some
    difference is not divisible within tol.

    Raises
    ------
    SplineSpaceError
        If the vertex is on the octagon boundary or r < 0.
    """
    part, r = f.spec.partition, f.spec.smoothness
    if vertex not in part.interior_vertices:
        raise SplineSpaceError(f"Vertex {vertex} is not an interior vertex.")
    if r < 0:
        raise SplineSpaceError("Conformality needs r >= 0.")
    cells = part.adjacency.vertex_cells[vertex]
    lines, cofactors = [], []
    for k, ci in enumerate(cells):
        cj = cells[(k + 1) % len(cells)]
        shared = [e for e in part.adjacency.vertex_edges[vertex] if set(part.adjacency.edge_cells[e]) == {ci, cj}]
        if not shared:
            raise SplineSpaceError(f"Cells {ci} and {cj} share no edge at vertex {vertex}.")
        line = part.edges[shared[0]].line
        q = cofactor_check(f.polynomial(ci), f.polynomial(cj), line, r, tol=tol)
        if q is None:
            return math.inf
        lines.append(line)
        cofactors.append(q)
    return conformality_residual(lines, tuple(cofactors), r)


def corner_continuity_deviation(f: PeriodicSpline, tol: float = 1e-9) -> float:
    """
    Largest jump between values at the octagon corners.

    All corners are one point of the quotient surface, so every cell
    polynomial touching a corner must take the same value there.
    """
    part = f.spec.partition
    octagon = bolza_group().octagon
    values = []
    for v, p in enumerate(part.vertices):
        if not any(p.distance_to(c) <= tol for c in octagon.corners):
            continue
        for i in part.adjacency.vertex_cells[v]:
            values.append(poly_eval(f.polynomial(i), p.x, p.y))
    deviation = float(np.ptp(values)) if values else 0.0
    logger.debug("Corner continuity deviation %.3e over %d cell values", deviation, len(values))
    return deviation


def dimension(partition: Partition, degree: int, smoothness: int, tol: float = SOLVER_TOL) -> int:
    """Dimension of S_n^r on a partition."""
    spec = SplineSpaceSpec(partition=partition, degree=degree, smoothness=smoothness)
    return solve_basis(assemble(spec), tol=tol).dimension


def evaluate_points(basis: SplineBasis, points: Sequence[DiskPoint]) -> List[List[float]]:
    """Values of every basis spline at each point."""
    return [basis.evaluate(p).tolist() for p in points]
