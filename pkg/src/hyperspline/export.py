# src\hyperspline\export.py

import io
import json
import logging
import os
import tempfile
from typing import Any, Dict, List, Sequence, Union

import matplotlib
from matplotlib.backends.backend_svg import FigureCanvasSVG
from matplotlib.figure import Figure
from matplotlib.patches import Circle, Polygon

from .config import ARC_SAMPLES, SVG_VIEW_LIMIT
from .fuchsian import Tile
from .models import DiskModel, DiskPoint, klein_to_poincare, poincare_geodesic

logger = logging.getLogger(__name__)

_GENERATOR_COLORS = (
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948", "#b07aa1", "#ff9da7",
)
_CENTRAL_COLOR = "#d3d3d3"


def atomic_write_text(path: Union[str, os.PathLike], text: str) -> None:
    """Write text to a temp file next to path and rename it into place."""
    target = os.fspath(path)
    directory = os.path.dirname(os.path.abspath(target))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".hyperspline-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.remove(tmp)
        raise
    logger.debug("Wrote %s (%d bytes)", target, len(text))


def dumps_json(data: Any) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def save_json(data: Any, path: Union[str, os.PathLike]) -> None:
    atomic_write_text(path, dumps_json(data))


def tile_corners(tile: Tile, model: DiskModel) -> List[DiskPoint]:
    if model is DiskModel.POINCARE:
        return [klein_to_poincare(c) for c in tile.corners]
    return list(tile.corners)


def tiling_document(tiles: Sequence[Tile], model: Union[DiskModel, str] = DiskModel.KLEIN) -> Dict[str, Any]:
    """
    JSON form of a tiling: one entry per tile with its word, Klein matrix
    and corners in the chosen model.
    """
    model = DiskModel(model)
    entries = []
    for tile in tiles:
        entry = tile.to_dict()
        entry["corners"] = [[c.x, c.y] for c in tile_corners(tile, model)]
        entries.append(entry)
    return {"model": model.value, "count": len(entries), "tiles": entries}


def _outline(tile: Tile, model: DiskModel):
    corners = tile_corners(tile, model)
    if model is DiskModel.KLEIN:
        return [[c.x, c.y] for c in corners]
    points = []
    for k, u in enumerate(corners):
        v = corners[(k + 1) % len(corners)]
        arc = poincare_geodesic(u, v).arc_points(u, v, ARC_SAMPLES)
        points.extend(arc[:-1].tolist())
    return points


def render_tiling_svg(
    tiles: Sequence[Tile],
    model: Union[DiskModel, str] = DiskModel.KLEIN,
    color_by_generator: bool = False
) -> str:
    """
    SVG drawing of a tiling with the unit circle.

    Klein tiles are straight-edged polygons; Poincaré tiles follow the
    geodesic arcs between their corners. Patches carry the ids
    "unit-circle" and "octagon-<i>". Output is byte-stable across runs.

    Parameters
    ----------
    tiles : sequence of Tile
        Output of tile().
    model : DiskModel or str
        Model to draw in.
    color_by_generator : bool, optional
        Fill each tile by the last letter of its word.

    Returns
    -------
    str
        The SVG document.
    """
    model = DiskModel(model)
    fig = Figure(figsize=(6, 6))
    FigureCanvasSVG(fig)
    ax = fig.add_axes((0.0, 0.0, 1.0, 1.0))
    ax.set_xlim(-SVG_VIEW_LIMIT, SVG_VIEW_LIMIT)
    ax.set_ylim(-SVG_VIEW_LIMIT, SVG_VIEW_LIMIT)
    ax.set_aspect("equal")
    ax.set_axis_off()

    ax.add_patch(Circle((0.0, 0.0), 1.0, fill=False, linewidth=1.0, edgecolor="black", gid="unit-circle"))
    for i, tile in enumerate(tiles):
        if color_by_generator and tile.element.word:
            face = _GENERATOR_COLORS[tile.element.word[-1] % len(_GENERATOR_COLORS)]
        else:
            face = _CENTRAL_COLOR if not tile.element.word else "none"
        ax.add_patch(Polygon(
            _outline(tile, model), closed=True, facecolor=face, edgecolor="black",
            linewidth=0.4, alpha=0.8 if face != "none" else 1.0, gid=f"octagon-{i}",
        ))

    buffer = io.StringIO()
    with matplotlib.rc_context({"svg.hashsalt": "hyperspline", "svg.fonttype": "none"}):
        fig.savefig(buffer, format="svg", metadata={"Date": None})
    return buffer.getvalue()


def save_tiling(
    tiles: Sequence[Tile],
    model: Union[DiskModel, str],
    svg_path: Union[str, os.PathLike, None] = None,
    json_path: Union[str, os.PathLike, None] = None,
    color_by_generator: bool = False
) -> None:
    if svg_path is not None:
        atomic_write_text(svg_path, render_tiling_svg(tiles, model, color_by_generator))
    if json_path is not None:
        save_json(tiling_document(tiles, model), json_path)
