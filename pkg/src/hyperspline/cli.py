# src\hyperspline\cli.py

"""
Command-line interface: hyperspline (tile|dim|basis|eval) [flags].

Exit codes: 0 success, 1 I/O failure, 2 validation error, 3 numerical
agreement failure.
"""

import argparse
import json
import logging
import os
import sys
from pathlib import Path
from typing import Dict, List, Literal, Optional, Sequence

import numpy as np
from pydantic import BaseModel, Field, ValidationError

from . import config
from .config import (
    BOUNDARY_TOL,
    CONFORMALITY_RANK_TOL,
    DEFAULT_DEGREE,
    DEFAULT_DEPTH,
    DEFAULT_MODEL,
    DEFAULT_SEED,
    DEFAULT_SMOOTHNESS,
    MAX_TILE_DEPTH,
    PAIRING_TOL,
    RESIDUAL_TOL,
    SEED_ENV_VAR,
    SOLVER_TOL,
)
from .exceptions import HyperSplineError, NumericalAgreementError
from .export import dumps_json, save_json, save_tiling
from .fuchsian import bolza_group
from .models import DiskModel, DiskPoint, poincare_to_klein
from .partition import default_triangulation, load_partition, refine
from .report import basis_report, dim_report, eval_report, tile_report
from .space import (
    SplineBasis,
    SplineSpaceSpec,
    assemble,
    check_dimension_agreement,
    corner_continuity_deviation,
    solve_basis,
)
from .spline import conformality_dim_formula, conformality_nullspace, random_concurrent_lines
from .validation import validate_partition

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_IO = 1
EXIT_VALIDATION = 2
EXIT_NUMERICAL = 3


class RunConfig(BaseModel):
    """
    Validated command-line configuration.

    Attributes
    ----------
    command : str
        One of tile, dim, basis, eval.
    degree, smoothness : int
        Spline degree n and smoothness r.
    depth : int
        Tiling depth.
    lines : int
        Number of concurrent lines for the dim command.
    tol : float or None
        Command tolerance; None selects the module default.
    model : DiskModel
        Disk model of drawn tiles and of input points.
    seed : int
        Seed of every randomized computation.
    """
    command: Literal["tile", "dim", "basis", "eval"]
    degree: int = Field(DEFAULT_DEGREE, ge=0)
    smoothness: int = Field(DEFAULT_SMOOTHNESS, ge=-1)
    depth: int = Field(DEFAULT_DEPTH, ge=0, le=MAX_TILE_DEPTH)
    lines: int = Field(2, ge=2)
    trials: int = Field(1, ge=1)
    tol: Optional[float] = Field(None, gt=0)
    model: DiskModel = DiskModel(DEFAULT_MODEL)
    seed: int = DEFAULT_SEED
    partition: Optional[Path] = None
    basis: Optional[Path] = None
    points: Optional[Path] = None
    output: Optional[Path] = None
    json_output: Optional[Path] = None
    refine: int = Field(0, ge=0, le=3)
    check_periodic: Optional[int] = Field(None, ge=0, le=7)
    color: bool = False
    verbose: bool = False

    @classmethod
    def from_namespace(cls, ns: argparse.Namespace) -> "RunConfig":
        data = {k: v for k, v in vars(ns).items() if v is not None and k in cls.model_fields}
        if "seed" not in data:
            data["seed"] = int(os.environ.get(SEED_ENV_VAR, DEFAULT_SEED))
        return cls(**data)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyperspline",
        description="Multiply periodic splines on the Klein disk for the Bolza surface.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", default=None, help="Log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    tile = sub.add_parser("tile", help="Export the octagon tiling of the disk")
    tile.add_argument("--depth", type=int, help=f"Word length of tiling elements (default {DEFAULT_DEPTH})")
    tile.add_argument("--model", choices=[m.value for m in DiskModel], help="Disk model to draw")
    tile.add_argument("--output", type=Path, help="SVG output path (default tiling.svg)")
    tile.add_argument("--json", dest="json_output", type=Path, help="Also write the tiling as JSON")
    tile.add_argument("--color", action="store_true", default=None, help="Colour tiles by last generator")

    dim = sub.add_parser("dim", help="Conformality dimension: formula against nullspace oracle")
    dim.add_argument("--lines", type=int, help="Number of concurrent lines N")
    dim.add_argument("--degree", type=int, help="Spline degree n")
    dim.add_argument("--smooth", dest="smoothness", type=int, help="Smoothness r")
    dim.add_argument("--trials", type=int, help="Random line configurations to test")
    dim.add_argument("--tol", type=float, help=f"Relative rank cutoff (default {CONFORMALITY_RANK_TOL})")
    dim.add_argument("--seed", type=int, help=f"Random seed (fallback ${SEED_ENV_VAR})")

    basis = sub.add_parser("basis", help="Solve for a basis of S_n^r")
    basis.add_argument("--degree", type=int, help=f"Spline degree n (default {DEFAULT_DEGREE})")
    basis.add_argument("--smooth", dest="smoothness", type=int, help=f"Smoothness r (default {DEFAULT_SMOOTHNESS})")
    basis.add_argument("--partition", type=Path, help="Partition JSON (default: star triangulation)")
    basis.add_argument("--refine", type=int, help="Uniform refinements applied to the partition")
    basis.add_argument("--tol", type=float, help=f"Relative singular-value cutoff (default {SOLVER_TOL})")
    basis.add_argument("--output", type=Path, help="Basis JSON output path")
    basis.add_argument("--seed", type=int, help="Random seed")

    ev = sub.add_parser("eval", help="Evaluate a basis at points")
    ev.add_argument("--basis", type=Path, required=True, help="Basis JSON from the basis command")
    ev.add_argument("--points", type=Path, required=True, help="JSON list of [x, y] points")
    ev.add_argument("--model", choices=[m.value for m in DiskModel], help="Model of the input points")
    ev.add_argument("--check-periodic", dest="check_periodic", type=int, help="Also evaluate at g_k(p)")
    ev.add_argument("--output", type=Path, help="Values JSON output path")
    ev.add_argument("--seed", type=int, help="Random seed")
    return parser


# ==============================
# Commands
# ==============================


def cmd_tile(cfg: RunConfig) -> int:
    group = bolza_group()
    tiles = group.tile(cfg.depth)
    svg_path = cfg.output or Path("tiling.svg")
    save_tiling(tiles, cfg.model, svg_path=svg_path, json_path=cfg.json_output, color_by_generator=cfg.color)
    outputs = {"svg": str(svg_path)}
    if cfg.json_output:
        outputs["json"] = str(cfg.json_output)
    radius = max(c.radius for t in tiles for c in t.corners)
    print(tile_report({
        "model": cfg.model.value, "depth": cfg.depth, "count": len(tiles),
        "max_corner_radius": radius, "outputs": outputs, "pairing_tol": PAIRING_TOL,
    }))
    return EXIT_OK


def cmd_dim(cfg: RunConfig) -> int:
    tol = cfg.tol or CONFORMALITY_RANK_TOL
    formula = conformality_dim_formula(cfg.lines, cfg.degree, cfg.smoothness)
    rng = np.random.default_rng(cfg.seed)
    oracle = []
    for _ in range(cfg.trials):
        lines = random_concurrent_lines(cfg.lines, rng)
        oracle.append(len(conformality_nullspace(lines, cfg.degree, cfg.smoothness, rcond=tol)))
    agree = all(v == formula for v in oracle)
    print(dim_report({
        "lines": cfg.lines, "degree": cfg.degree, "smoothness": cfg.smoothness,
        "formula": formula, "oracle": oracle, "agree": agree, "seed": cfg.seed, "tol": tol,
    }))
    if not agree:
        raise NumericalAgreementError("Dimension formula and oracle disagree.", details={"formula": formula, "oracle": oracle})
    return EXIT_OK


def cmd_basis(cfg: RunConfig) -> int:
    tol = cfg.tol or SOLVER_TOL
    if cfg.partition is not None:
        part = load_partition(json.loads(cfg.partition.read_text(encoding="utf-8")))
    else:
        part = default_triangulation()
    for _ in range(cfg.refine):
        part = refine(part)
    if config.VERBOSE_OUTPUT:
        validate_partition(part, verbose=True)
    spec = SplineSpaceSpec(partition=part, degree=cfg.degree, smoothness=cfg.smoothness)
    system = assemble(spec)
    basis = solve_basis(system, tol=tol)
    check_dimension_agreement(basis)
    corner = corner_continuity_deviation(basis[0]) if basis.dimension and cfg.smoothness >= 0 else None
    if cfg.output is not None:
        save_json(basis.to_dict(), cfg.output)
    counts = system.counts()
    print(basis_report({
        "cells": part.cell_count, "degree": cfg.degree, "smoothness": cfg.smoothness,
        "rows": system.row_count, "interior_rows": counts["interior"], "periodic_rows": counts["periodic"],
        "columns": system.column_count, "dimension": basis.dimension, "qr_dimension": basis.qr_dimension,
        "max_residual": float(np.max(basis.residuals)) if basis.residuals.size else 0.0,
        "corner_deviation": corner, "output": str(cfg.output) if cfg.output else None,
        "tol": tol, "residual_tol": RESIDUAL_TOL,
    }))
    return EXIT_OK


def read_points(path: Path, model: DiskModel) -> List[DiskPoint]:
    """
    Read [[x, y], ...] (or {"points": [...]}) and convert to Klein points.

    Raises
    ------
    HyperSplineError
        If a point is not strictly inside the unit disk.
    """
    raw = json.loads(path.read_text(encoding="utf-8"))
    if isinstance(raw, dict):
        raw = raw["points"]
    points = []
    for k, (x, y) in enumerate(raw):
        p = DiskPoint(float(x), float(y), model)
        if not p.is_interior:
            raise HyperSplineError(f"Point {k} is not inside the open unit disk.", details={"point": [x, y]})
        points.append(poincare_to_klein(p) if model is DiskModel.POINCARE else p)
    return points


def cmd_eval(cfg: RunConfig) -> int:
    basis = SplineBasis.from_dict(json.loads(cfg.basis.read_text(encoding="utf-8")))
    points = read_points(cfg.points, cfg.model)
    values = [basis.evaluate(p).tolist() for p in points]
    result: Dict[str, object] = {"points": [[p.x, p.y] for p in points], "values": values}
    deviation = None
    if cfg.check_periodic is not None:
        g = bolza_group().generator(cfg.check_periodic)
        deviation = 0.0
        for p, row in zip(points, values):
            shifted = basis.evaluate(g.apply(p))
            deviation = max(deviation, float(np.max(np.abs(shifted - np.asarray(row)))) if row else 0.0)
        result["periodic_check"] = {"generator": cfg.check_periodic, "max_deviation": deviation}
    if cfg.output is not None:
        save_json(result, cfg.output)
    else:
        sys.stdout.write(dumps_json(result))
    print(eval_report({
        "points": len(points), "dimension": basis.dimension, "preview": values[:5],
        "generator": cfg.check_periodic, "max_deviation": deviation,
        "output": str(cfg.output) if cfg.output else None, "boundary_tol": BOUNDARY_TOL,
    }), file=sys.stderr if cfg.output is None else sys.stdout)
    return EXIT_OK


COMMANDS = {"tile": cmd_tile, "dim": cmd_dim, "basis": cmd_basis, "eval": cmd_eval}


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Parse arguments, run one command and map failures onto exit codes.
    """
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        cfg = RunConfig.from_namespace(args)
    except (ValidationError, ValueError) as exc:
        print(f"error: invalid arguments: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    config.VERBOSE_OUTPUT = cfg.verbose

    try:
        return COMMANDS[cfg.command](cfg)
    except NumericalAgreementError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (HyperSplineError, ValidationError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
