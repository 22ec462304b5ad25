# src\hyperspline\report.py

from typing import Dict, List

from .config import REPORT_FLOAT_PRECISION


def _g(value: float) -> str:
    return f"{value:.{REPORT_FLOAT_PRECISION}g}"


# ==============================
# Plain Text Reports
# ==============================

def tile_report(info: Dict) -> str:
    lines = [
        "TILING REPORT",
        f"Model: {info['model']}",
        f"Depth: {info['depth']}",
        f"Octagons: {info['count']}",
        f"Max corner radius: {_g(info['max_corner_radius'])}",
    ]
    for label, path in info.get("outputs", {}).items():
        lines.append(f"{label.upper()} written to {path}")
    lines.append(f"Tolerances: pairing={_g(info['pairing_tol'])}")
    return "\n".join(lines)


def dim_report(result: Dict) -> str:
    lines = [
        "CONFORMALITY DIMENSION REPORT",
        f"Lines N={result['lines']}, degree n={result['degree']}, smoothness r={result['smoothness']}",
        f"Formula: {result['formula']}",
    ]
    for k, value in enumerate(result["oracle"]):
        lines.append(f"  Oracle trial {k + 1}: {value}")
    lines.append(f"Agreement: {'yes' if result['agree'] else 'NO'}")
    lines.append(f"Seed: {result['seed']}")
    lines.append(f"Tolerances: rank_rcond={_g(result['tol'])}")
    return "\n".join(lines)


def basis_report(summary: Dict) -> str:
    lines = [
        "SPLINE BASIS REPORT",
        f"Cells: {summary['cells']}, degree n={summary['degree']}, smoothness r={summary['smoothness']}",
        f"Rows: {summary['rows']} (interior {summary['interior_rows']}, periodic {summary['periodic_rows']})",
        f"Columns: {summary['columns']}",
        f"Dimension: {summary['dimension']} (pivoted QR: {summary['qr_dimension']})",
        f"Max residual: {_g(summary['max_residual'])}",
    ]
    if summary.get("corner_deviation") is not None:
        lines.append(f"Corner continuity deviation: {_g(summary['corner_deviation'])}")
    if summary.get("output"):
        lines.append(f"Basis written to {summary['output']}")
    lines.append(f"Tolerances: solver_rcond={_g(summary['tol'])}, residual={_g(summary['residual_tol'])}")
    return "\n".join(lines)


def eval_report(summary: Dict) -> str:
    lines = [
        "EVALUATION REPORT",
        f"Points: {summary['points']}",
        f"Basis splines: {summary['dimension']}",
    ]
    values: List[List[float]] = summary.get("preview", [])
    for k, row in enumerate(values):
        lines.append(f"  Point {k + 1}: " + ", ".join(_g(v) for v in row))
    if summary.get("generator") is not None:
        lines.append(f"Periodicity check g{summary['generator']}: max deviation {_g(summary['max_deviation'])}")
    if summary.get("output"):
        lines.append(f"Values written to {summary['output']}")
    lines.append(f"Tolerances: boundary={_g(summary['boundary_tol'])}")
    return "\n".join(lines)
