# src\hyperspline\spline\constraints.py

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

from ..exceptions import SplineSpaceError
from ..models import Collineation
from ..partition import BoundaryPair, Partition
from ..polynomials import (
    BivariatePolynomial,
    divisibility_matrix,
    embedding_matrix,
    multiplication_matrix,
    substitution_matrix,
)


@dataclass(frozen=True)
class RowTag:
    """
    Provenance of one constraint row.

    Attributes
    ----------
    kind : str
        "interior" or "periodic".
    edge : int
        Interior edge, or the paired edge of a boundary pair.
    partner : int or None
        Partner edge of a boundary pair.
    cells : (int, int)
        Cells whose coefficients the row involves.
    order : int
        Power m of x~ (the derivative order across the edge).
    power : int
        Power of y~ along the edge.
    """
    kind: str
    edge: int
    partner: Optional[int]
    cells: Tuple[int, int]
    order: int
    power: int

    def to_dict(self) -> Dict[str, object]:
        return {
            "kind": self.kind, "edge": self.edge, "partner": self.partner,
            "cells": list(self.cells), "order": self.order, "power": self.power,
        }


@dataclass(frozen=True)
class RowBlock:
    """Constraint rows split into per-cell coefficient blocks."""
    blocks: Dict[int, np.ndarray]
    tags: List[RowTag]

    @property
    def row_count(self) -> int:
        return len(self.tags)


def _add_block(blocks: Dict[int, np.ndarray], cell: int, block: np.ndarray) -> None:
    blocks[cell] = blocks[cell] + block if cell in blocks else block


def pullback_matrix(n: int, g: Collineation) -> np.ndarray:
    """Coefficient map p -> u of the pullback p(g x) = u / v."""
    m = g.matrix
    return substitution_matrix(n, tuple(m[0]), tuple(m[1]), tuple(m[2]))


def pullback(p: BivariatePolynomial, g: Collineation) -> Tuple[BivariatePolynomial, BivariatePolynomial]:
    """
    Numerator and denominator of p o g.

    Returns
    -------
    u : BivariatePolynomial
        Homogenized p evaluated on the rows of g applied to (x, y, 1).
    v : BivariatePolynomial
        (a31 x + a32 y + a33)^n.
    """
    n = p.degree
    u = BivariatePolynomial(n, pullback_matrix(n, g) @ p.coeffs)
    v = BivariatePolynomial.from_line(tuple(g.matrix[2])) ** n
    return u, BivariatePolynomial.from_grid(v.to_grid(), n)


def interior_constraint_rows(part: Partition, n: int, r: int, edge: int) -> RowBlock:
    """
    Rows stating that p_i - p_j is divisible by l^(r+1) across an interior edge.

    Each order m <= r contributes n - m + 1 rows.

    Raises
    ------
    SplineSpaceError
        If the edge is not shared by two cells.
    """
    cells = part.adjacency.edge_cells[edge]
    if len(cells) != 2:
        raise SplineSpaceError(f"Edge {edge} is not an interior edge.", details={"cells": list(cells)})
    i, j = cells
    rows, exps = divisibility_matrix(part.edges[edge].line, n, r)
    blocks: Dict[int, np.ndarray] = {}
    _add_block(blocks, i, rows)
    _add_block(blocks, j, -rows)
    tags = [RowTag("interior", edge, None, (i, j), m, k) for m, k in exps]
    return RowBlock(blocks, tags)


def periodic_constraint_rows(part: Partition, n: int, r: int, pair: BoundaryPair) -> RowBlock:
    """
    Rows stating that p_j v - u is divisible by l'^(r+1) across a partner edge.

    The pair's generator g maps edge e (cell i) onto edge e' (cell j, line
    l'). Outside the octagon next to e' the periodic function equals
    p_i o g^{-1} = u / v, so continuity across e' asks that p_j - u / v
    vanish to order r on l'. Each order m <= r contributes 2n - m + 1 rows.

    Raises
    ------
    SplineSpaceError
        If either edge is not a boundary edge.
    """
    cells_e = part.adjacency.edge_cells[pair.edge]
    cells_p = part.adjacency.edge_cells[pair.partner]
    if len(cells_e) != 1 or len(cells_p) != 1:
        raise SplineSpaceError("Boundary pair must join two boundary edges.", details=pair.to_dict())
    i, j = cells_e[0], cells_p[0]
    h = pair.element().klein.inverse()
    u_map = embedding_matrix(n, 2 * n) @ pullback_matrix(n, h)
    v = BivariatePolynomial.from_line(tuple(h.matrix[2])) ** n
    v_map = multiplication_matrix(v, n)
    rows, exps = divisibility_matrix(part.edges[pair.partner].line, 2 * n, r)
    blocks: Dict[int, np.ndarray] = {}
    _add_block(blocks, j, rows @ v_map)
    _add_block(blocks, i, -(rows @ u_map))
    tags = [RowTag("periodic", pair.edge, pair.partner, (i, j), m, k) for m, k in exps]
    return RowBlock(blocks, tags)
