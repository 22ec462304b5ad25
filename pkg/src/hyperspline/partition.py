# src\hyperspline\partition.py

import logging
import math
from dataclasses import dataclass, field
from json import dumps
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import BaseModel, Field, ValidationError, field_validator

from .config import BOUNDARY_TOL, LOAD_PAIRING_TOL
from .exceptions import PartitionValidationError, SplineSpaceError
from .fuchsian import FuchsianGroup, GroupElement, LocationKind, bolza_group
from .models import DiskModel, DiskPoint
from .polynomials import LineForm

logger = logging.getLogger(__name__)

AREA_FLOOR = 1e-14
"""Smallest accepted cell area."""


# ==============================
# JSON document schema
# ==============================


class EdgeEntry(BaseModel):
    """An edge of a partition document, given by its two vertex indices."""
    v: Tuple[int, int] = Field(..., description="Vertex indices of the edge endpoints")

    @field_validator('v')
    @classmethod
    def validate_endpoints(cls, value: Tuple[int, int]) -> Tuple[int, int]:
        if value[0] == value[1]:
            raise ValueError("Edge endpoints must be distinct vertices.")
        if min(value) < 0:
            raise ValueError("Vertex indices must be non-negative.")
        return value


class BoundaryPairEntry(BaseModel):
    """Generator `generator` maps edge `edge` onto edge `partner`."""
    edge: int = Field(..., ge=0)
    partner: int = Field(..., ge=0)
    generator: int = Field(..., ge=0, le=7, description="Generator index g_k")
    flip: bool = Field(False, description="First endpoint of edge lands on the second endpoint of partner")


class PartitionDocument(BaseModel):
    """
    JSON form of a multiply periodic partition of the fundamental octagon.

    Attributes
    ----------
    vertices : list of (float, float)
        Klein coordinates.
    edges : list of EdgeEntry
        Straight chords between vertices; line coefficients are recomputed on load.
    cells : list of list of int
        Vertex-index cycles of convex cells.
    boundary_pairs : list of BoundaryPairEntry
        Side identifications between boundary edges.
    """
    vertices: List[Tuple[float, float]] = Field(..., min_length=1)
    edges: List[EdgeEntry] = Field(default_factory=list)
    cells: List[List[int]] = Field(..., min_length=1)
    boundary_pairs: List[BoundaryPairEntry] = Field(default_factory=list)

    @field_validator('cells')
    @classmethod
    def validate_cells(cls, value: List[List[int]]) -> List[List[int]]:
        """
        Ensure every cell is a polygon over distinct vertices.

        Raises
        ------
        ValueError
            If a cell has fewer than 3 vertices or repeats one.
        """
        for k, cell in enumerate(value):
            if len(cell) < 3:
                raise ValueError(f"Cell {k} has fewer than 3 vertices.")
            if len(set(cell)) != len(cell):
                raise ValueError(f"Cell {k} repeats a vertex.")
        return value

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "PartitionDocument":
        """
        Parse a raw dictionary, converting pydantic failures into PartitionValidationError.
        """
        try:
            return cls.model_validate(data)
        except ValidationError as exc:
            raise PartitionValidationError(
                "Partition document does not match the schema.",
                details={"errors": exc.errors(include_url=False)},
            ) from exc

    def to_dict(self) -> Dict[str, Any]:
        return {
            "vertices": [list(v) for v in self.vertices],
            "edges": [{"v": list(e.v)} for e in self.edges],
            "cells": [list(c) for c in self.cells],
            "boundary_pairs": [p.model_dump() for p in self.boundary_pairs],
        }

    def to_json(self, indent: int = 2) -> str:
        return dumps(self.to_dict(), indent=indent, sort_keys=True)


# ==============================
# Domain types
# ==============================


@dataclass(frozen=True)
class Edge:
    """Chord between two vertices with its normalized line."""
    v: Tuple[int, int]
    line: LineForm


@dataclass(frozen=True)
class BoundaryPair:
    """
    The group element g = g_generator maps `edge` onto `partner`.

    Without flip, g sends the first endpoint of `edge` to the first endpoint
    of `partner`; with flip, to the second.
    """
    edge: int
    partner: int
    generator: int
    flip: bool

    def element(self, group: Optional[FuchsianGroup] = None) -> GroupElement:
        return (group or bolza_group()).generator(self.generator)

    def to_dict(self) -> Dict[str, Any]:
        return {"edge": self.edge, "partner": self.partner, "generator": self.generator, "flip": self.flip}


@dataclass(frozen=True)
class CellAdjacency:
    """
    Incidence structure of a partition.

    Attributes
    ----------
    cell_edges : tuple of tuple of int
        For each cell, the edge of each consecutive vertex pair.
    edge_cells : tuple of tuple of int
        For each edge, the incident cells in increasing order.
    vertex_edges : tuple of tuple of int
        For each vertex, incident edges ordered counterclockwise.
    vertex_cells : tuple of tuple of int
        For each vertex, incident cells ordered counterclockwise.
    boundary_vertices : frozenset of int
        Vertices on the octagon boundary.
    """
    cell_edges: Tuple[Tuple[int, ...], ...]
    edge_cells: Tuple[Tuple[int, ...], ...]
    vertex_edges: Tuple[Tuple[int, ...], ...]
    vertex_cells: Tuple[Tuple[int, ...], ...]
    boundary_vertices: frozenset

    @property
    def interior_vertices(self) -> Tuple[int, ...]:
        return tuple(v for v in range(len(self.vertex_edges)) if v not in self.boundary_vertices)

    def fan_closes(self, vertex: int) -> bool:
        """Consecutive edges around the vertex share a cell, all the way round."""
        edges, cells = self.vertex_edges[vertex], self.vertex_cells[vertex]
        if len(edges) < 3 or len(edges) != len(cells):
            return False
        for k, e in enumerate(edges):
            nxt = edges[(k + 1) % len(edges)]
            if not set(self.edge_cells[e]) & set(self.edge_cells[nxt]):
                return False
        return True


@dataclass(frozen=True, eq=False)
class Partition:
    """
    A convex-cell partition of the fundamental octagon with side identifications.

    Attributes
    ----------
    vertices : tuple of DiskPoint
        Klein vertices.
    edges : tuple of Edge
        Chords with normalized line coefficients.
    cells : tuple of tuple of int
        Counterclockwise vertex cycles.
    boundary_pairs : tuple of BoundaryPair
        Paired boundary edges.
    adjacency : CellAdjacency
        Incidence structure computed on construction.
    """
    vertices: Tuple[DiskPoint, ...]
    edges: Tuple[Edge, ...]
    cells: Tuple[Tuple[int, ...], ...]
    boundary_pairs: Tuple[BoundaryPair, ...]
    adjacency: CellAdjacency = field(repr=False)

    @property
    def cell_count(self) -> int:
        return len(self.cells)

    @property
    def vertex_array(self) -> np.ndarray:
        return np.array([[p.x, p.y] for p in self.vertices])

    @property
    def interior_edges(self) -> Tuple[int, ...]:
        return tuple(e for e, cells in enumerate(self.adjacency.edge_cells) if len(cells) == 2)

    @property
    def boundary_edges(self) -> Tuple[int, ...]:
        return tuple(e for e, cells in enumerate(self.adjacency.edge_cells) if len(cells) == 1)

    @property
    def interior_vertices(self) -> Tuple[int, ...]:
        return self.adjacency.interior_vertices

    def cell_area(self, i: int) -> float:
        return signed_area(self.vertex_array[list(self.cells[i])])

    def cell_of_edge(self, e: int) -> int:
        """The single cell of a boundary edge."""
        cells = self.adjacency.edge_cells[e]
        if len(cells) != 1:
            raise PartitionValidationError(f"Edge {e} is not a boundary edge.", details={"cells": list(cells)})
        return cells[0]

    def locate(self, p: DiskPoint) -> int:
        return locate_cell(self, p)

    def to_document(self) -> PartitionDocument:
        return PartitionDocument(
            vertices=[(p.x, p.y) for p in self.vertices],
            edges=[EdgeEntry(v=e.v) for e in self.edges],
            cells=[list(c) for c in self.cells],
            boundary_pairs=[BoundaryPairEntry(**bp.to_dict()) for bp in self.boundary_pairs],
        )

    def to_dict(self) -> Dict[str, Any]:
        return self.to_document().to_dict()


# ==============================
# Construction
# ==============================


def signed_area(xy: np.ndarray) -> float:
    x, y = xy[:, 0], xy[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))


def _boundary_sides(point: DiskPoint, group: FuchsianGroup) -> set:
    d = group.octagon.signed_distances(point.x, point.y)
    return {k for k in range(group.octagon.count) if abs(d[k]) <= BOUNDARY_TOL}


def build_adjacency(
    vertices: Sequence[DiskPoint],
    edges: Sequence[Edge],
    cells: Sequence[Sequence[int]],
    group: FuchsianGroup,
) -> CellAdjacency:
    """
    Derive the incidence structure.

    Raises
    ------
    PartitionValidationError
        If a cell side is not a listed edge, or an edge is listed twice.
    """
    lookup: Dict[frozenset, int] = {}
    for k, e in enumerate(edges):
        key = frozenset(e.v)
        if key in lookup:
            raise PartitionValidationError(f"Edge {k} duplicates edge {lookup[key]}.", details={"v": list(e.v)})
        lookup[key] = k

    cell_edges = []
    edge_cells: List[List[int]] = [[] for _ in edges]
    for i, cell in enumerate(cells):
        sides = []
        for a, b in zip(cell, list(cell[1:]) + [cell[0]]):
            key = frozenset((a, b))
            if key not in lookup:
                raise PartitionValidationError(
                    f"Side ({a}, {b}) of cell {i} is not a listed edge.", details={"cell": i}
                )
            sides.append(lookup[key])
            edge_cells[lookup[key]].append(i)
        cell_edges.append(tuple(sides))

    xy = np.array([[p.x, p.y] for p in vertices])
    centroids = [xy[list(c)].mean(axis=0) for c in cells]
    vertex_edges, vertex_cells = [], []
    for v in range(len(vertices)):
        incident = [k for k, e in enumerate(edges) if v in e.v]
        incident.sort(key=lambda k: _angle(xy[v], xy[edges[k].v[0] if edges[k].v[1] == v else edges[k].v[1]]))
        around = [i for i, c in enumerate(cells) if v in c]
        around.sort(key=lambda i: _angle(xy[v], centroids[i]))
        vertex_edges.append(tuple(incident))
        vertex_cells.append(tuple(around))

    boundary = frozenset(v for v, p in enumerate(vertices) if _boundary_sides(p, group))
    return CellAdjacency(
        cell_edges=tuple(cell_edges),
        edge_cells=tuple(tuple(sorted(c)) for c in edge_cells),
        vertex_edges=tuple(vertex_edges),
        vertex_cells=tuple(vertex_cells),
        boundary_vertices=boundary,
    )


def _angle(origin: np.ndarray, target: np.ndarray) -> float:
    return math.atan2(target[1] - origin[1], target[0] - origin[0])


def _assemble(
    points: Sequence[Tuple[float, float]],
    edge_vertices: Sequence[Tuple[int, int]],
    cells: Sequence[Sequence[int]],
    pairs: Sequence[BoundaryPair],
    group: FuchsianGroup,
) -> Partition:
    vertices = tuple(DiskPoint.klein(x, y) for x, y in points)
    edges = tuple(Edge(tuple(v), LineForm.through(points[v[0]], points[v[1]])) for v in edge_vertices)
    cells = tuple(tuple(c) for c in cells)
    adjacency = build_adjacency(vertices, edges, cells, group)
    return Partition(vertices, edges, cells, tuple(pairs), adjacency)


def default_triangulation() -> Partition:
    """
    The 8-triangle star of the fundamental octagon.

    Vertex 0 is the centre, vertex 1 + k is corner k. Edges 0..7 are the
    spokes to the corners, edges 8..15 the octagon sides (edge 8 + k is
    side k). Cell k is (centre, corner k, corner k + 1). Each side outside
    the canonical half of the boundary is paired with its image under the
    generator discovered for it.
    """
    group = bolza_group()
    n = group.octagon.count
    points = [(0.0, 0.0)] + [(c.x, c.y) for c in group.octagon.corners]
    spokes = [(0, 1 + k) for k in range(n)]
    sides = [(1 + k, 1 + (k + 1) % n) for k in range(n)]
    cells = [(0, 1 + k, 1 + (k + 1) % n) for k in range(n)]
    canonical = set(group.parameters.canonical_sides)
    pairs = [
        BoundaryPair(edge=n + sp.side, partner=n + sp.partner, generator=sp.generator, flip=sp.flip)
        for sp in group.side_pairings
        if sp.side not in canonical
    ]
    return _assemble(points, spokes + sides, cells, pairs, group)


def load_partition(document: Union[PartitionDocument, Dict[str, Any]], validate: bool = True) -> Partition:
    """
    Build a validated Partition from a document.

    Parameters
    ----------
    document : PartitionDocument or dict
        Parsed or raw partition document.
    validate : bool, optional
        Run every partition invariant check (default True).

    Returns
    -------
    Partition
        Partition with counterclockwise cells and recomputed line coefficients.

    Raises
    ------
    PartitionValidationError
        For schema violations, out-of-range indices and every failed invariant.
    """
    from .validation import validate_partition

    doc = document if isinstance(document, PartitionDocument) else PartitionDocument.from_dict(document)
    nv = len(doc.vertices)
    for k, e in enumerate(doc.edges):
        if max(e.v) >= nv:
            raise PartitionValidationError(f"Edge {k} references a missing vertex.", details={"v": list(e.v)})
    for i, cell in enumerate(doc.cells):
        if max(cell) >= nv:
            raise PartitionValidationError(f"Cell {i} references a missing vertex.", details={"cell": cell})
    for p in doc.boundary_pairs:
        if max(p.edge, p.partner) >= len(doc.edges):
            raise PartitionValidationError("Boundary pair references a missing edge.", details=p.model_dump())

    xy = np.array(doc.vertices, dtype=float)
    cells = []
    for i, cell in enumerate(doc.cells):
        if signed_area(xy[cell]) < 0:
            logger.debug("Reorienting clockwise cell %d", i)
            cell = list(reversed(cell))
        cells.append(cell)

    pairs = [BoundaryPair(p.edge, p.partner, p.generator, p.flip) for p in doc.boundary_pairs]
    part = _assemble(doc.vertices, [e.v for e in doc.edges], cells, pairs, bolza_group())
    if validate:
        validate_partition(part, pairing_tol=LOAD_PAIRING_TOL, strict=True)
    return part


# ==============================
# Queries and refinement
# ==============================


def _cell_violation(xy: np.ndarray, p: np.ndarray) -> float:
    """Largest distance by which p lies outside a counterclockwise convex cell."""
    a = xy
    b = np.roll(xy, -1, axis=0)
    edge = b - a
    rel = p - a
    cross = edge[:, 0] * rel[:, 1] - edge[:, 1] * rel[:, 0]
    return float(np.max(-cross / np.linalg.norm(edge, axis=1)))


def locate_cell(part: Partition, p: DiskPoint) -> int:
    """
    Index of the cell containing p.

    Cells are closed within BOUNDARY_TOL and the lowest-indexed containing
    cell wins, so points on shared edges and vertices go to the lower index.

    Raises
    ------
    PartitionValidationError
        If p lies outside the octagon or in no cell.
    """
    p.require(DiskModel.KLEIN, "locate_cell")
    group = bolza_group()
    if group.octagon.classify(p).kind is LocationKind.OUTSIDE:
        raise PartitionValidationError("Point lies outside the fundamental octagon.", details=p.to_dict())
    xy = part.vertex_array
    q = np.array([p.x, p.y])
    violations = []
    for i, cell in enumerate(part.cells):
        v = _cell_violation(xy[list(cell)], q)
        if v <= BOUNDARY_TOL:
            return i
        violations.append(v)
    best = int(np.argmin(violations))
    if violations[best] < 1e-6:
        return best
    raise PartitionValidationError(
        "Point is not covered by any cell.", details={"point": p.to_dict(), "violation": violations[best]}
    )


def refine(part: Partition) -> Partition:
    """
    Split every triangle into four at its edge split points.

    Edges are split at their Euclidean midpoints, except partner edges of
    boundary pairs, which are split at the image of the paired edge's
    midpoint so that children stay paired under the same generator.

    Raises
    ------
    SplineSpaceError
        If a cell is not a triangle.
    """
    for i, cell in enumerate(part.cells):
        if len(cell) != 3:
            raise SplineSpaceError("Refinement is defined for triangulations only.", details={"cell": i})

    group = bolza_group()
    xy = part.vertex_array
    nv, ne = len(part.vertices), len(part.edges)
    split = xy[[e.v[0] for e in part.edges]] * 0.5 + xy[[e.v[1] for e in part.edges]] * 0.5
    for bp in part.boundary_pairs:
        mx, my = split[bp.edge]
        split[bp.partner] = group.generator(bp.generator).klein.apply_xy(mx, my)

    points = [tuple(v) for v in xy] + [tuple(s) for s in split]
    mid = {frozenset(e.v): nv + k for k, e in enumerate(part.edges)}
    edge_vertices: List[Tuple[int, int]] = []
    for k, e in enumerate(part.edges):
        edge_vertices += [(e.v[0], nv + k), (nv + k, e.v[1])]

    cells = []
    for a, b, c in part.cells:
        mab, mbc, mca = mid[frozenset((a, b))], mid[frozenset((b, c))], mid[frozenset((c, a))]
        edge_vertices += [(mab, mbc), (mbc, mca), (mca, mab)]
        cells += [(a, mab, mca), (mab, b, mbc), (mca, mbc, c), (mab, mbc, mca)]

    pairs = []
    for bp in part.boundary_pairs:
        first, second = 2 * bp.edge, 2 * bp.edge + 1
        p_first, p_second = 2 * bp.partner, 2 * bp.partner + 1
        if bp.flip:
            pairs += [BoundaryPair(first, p_second, bp.generator, True),
                      BoundaryPair(second, p_first, bp.generator, True)]
        else:
            pairs += [BoundaryPair(first, p_first, bp.generator, False),
                      BoundaryPair(second, p_second, bp.generator, False)]

    logger.debug("Refined %d cells into %d", part.cell_count, len(cells))
    return _assemble(points, edge_vertices, cells, pairs, group)


def octagon_area() -> float:
    """Euclidean area of the fundamental octagon in the Klein disk."""
    return bolza_group().octagon.area()
