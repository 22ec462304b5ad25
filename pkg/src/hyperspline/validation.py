# src\hyperspline\validation.py

import logging
from typing import Dict, List

import numpy as np

from . import config
from .config import BOUNDARY_TOL, LOAD_PAIRING_TOL
from .exceptions import PartitionValidationError
from .fuchsian import LocationKind, bolza_group
from .partition import AREA_FLOOR, Partition, signed_area

logger = logging.getLogger(__name__)


def validate_partition(
    part: Partition,
    pairing_tol: float = LOAD_PAIRING_TOL,
    strict: bool = True,
    verbose: bool = False
) -> List[Dict]:
    """
    Check every invariant of a multiply periodic partition.

    Parameters
    ----------
    part : Partition
        Partition to check.
    pairing_tol : float, optional
        Endpoint tolerance for boundary pairs (default: LOAD_PAIRING_TOL).
    strict : bool, optional
        Whether to raise on the first failed check (default is True).
    verbose : bool, optional
        Whether to print one line per check (default is False).

    Returns
    -------
    List[Dict]
        One result per check with keys 'check', 'valid', 'message' and
        optional 'details'.

    Raises
    ------
    PartitionValidationError
        If strict mode is on and a check fails.
    """
    strict = strict or config.STRICT_MODE
    group = bolza_group()
    octagon = group.octagon
    xy = part.vertex_array
    report: List[Dict] = []

    def record(check: str, valid: bool, message: str, **details) -> None:
        result = {"check": check, "valid": valid, "message": message}
        if details:
            result["details"] = details
        if verbose:
            outcome = "PASSED" if valid else "FAILED"
            print(f"[{check}] {outcome}: {message}")
        if not valid:
            logger.debug("Partition check %s failed: %s", check, message)
            if strict:
                raise PartitionValidationError(message, details=result)
        report.append(result)

    # Vertices inside the closed octagon
    outside = [v for v, p in enumerate(part.vertices) if octagon.classify(p).kind is LocationKind.OUTSIDE]
    record("vertices", not outside,
           "OK" if not outside else f"Vertices outside the octagon: {outside}", vertices=outside)

    # Convex non-degenerate cells
    for i, cell in enumerate(part.cells):
        pts = xy[list(cell)]
        area = signed_area(pts)
        edge = np.roll(pts, -1, axis=0) - pts
        nxt = np.roll(edge, -1, axis=0)
        turns = edge[:, 0] * nxt[:, 1] - edge[:, 1] * nxt[:, 0]
        convex = area > AREA_FLOOR and bool(np.all(turns >= -BOUNDARY_TOL))
        record("cell", convex,
               "OK" if convex else f"Cell {i} is not convex, or degenerate (area {area:.3e})", cell=i, area=area)

    # Edge incidence
    boundary_edges = set()
    for e, cells in enumerate(part.adjacency.edge_cells):
        a, b = part.edges[e].v
        on_side = _shared_side(part, a, b)
        if not cells:
            record("edge", False, f"Edge {e} is dangling", edge=e)
        elif on_side is not None:
            boundary_edges.add(e)
            record("edge", len(cells) == 1,
                   "OK" if len(cells) == 1 else f"Boundary edge {e} lies in {len(cells)} cells", edge=e)
        else:
            record("edge", len(cells) == 2,
                   "OK" if len(cells) == 2 else f"Interior edge {e} lies in {len(cells)} cells", edge=e)

    # Boundary pairs
    counts = {e: 0 for e in boundary_edges}
    for bp in part.boundary_pairs:
        for e in (bp.edge, bp.partner):
            if e not in boundary_edges:
                record("boundary_pair", False, f"Boundary pair references non-boundary edge {e}", pair=bp.to_dict())
                continue
            counts[e] += 1
        g = bp.element(group)
        src, dst = part.edges[bp.edge].v, part.edges[bp.partner].v
        targets = (dst[1], dst[0]) if bp.flip else dst
        images = np.array([g.klein.apply_xy(*xy[src[0]]), g.klein.apply_xy(*xy[src[1]])])
        mismatch = float(np.max(np.abs(images - xy[list(targets)])))
        record("boundary_pair", mismatch <= pairing_tol,
               "OK" if mismatch <= pairing_tol else f"Generator {bp.generator} misses edge {bp.partner} by {mismatch:.3e}",
               pair=bp.to_dict(), mismatch=mismatch)
    unpaired = sorted(e for e, c in counts.items() if c != 1)
    record("boundary_pair", not unpaired,
           "OK" if not unpaired else f"Boundary edges not in exactly one pair: {unpaired}", edges=unpaired)

    # Interior vertex fans
    for v in part.interior_vertices:
        closes = part.adjacency.fan_closes(v)
        record("fan", closes, "OK" if closes else f"Fan around interior vertex {v} does not close", vertex=v)

    # Coverage
    total = sum(part.cell_area(i) for i in range(part.cell_count))
    expected = octagon.area()
    rel = abs(total - expected) / expected
    record("area", rel <= 1e-9,
           "OK" if rel <= 1e-9 else f"Cell areas sum to {total:.12f}, octagon area is {expected:.12f}",
           total=total, expected=expected)

    return report


def _shared_side(part: Partition, a: int, b: int):
    """Octagon side containing both vertices, or None."""
    octagon = bolza_group().octagon
    pa, pb = part.vertices[a], part.vertices[b]
    da = octagon.signed_distances(pa.x, pa.y)
    db = octagon.signed_distances(pb.x, pb.y)
    for k in range(octagon.count):
        if abs(da[k]) <= BOUNDARY_TOL and abs(db[k]) <= BOUNDARY_TOL:
            return k
    return None
