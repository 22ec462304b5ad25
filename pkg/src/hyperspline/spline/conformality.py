# src\hyperspline\spline\conformality.py

from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..config import COFACTOR_TOL, CONCURRENCY_TOL, CONFORMALITY_RANK_TOL
from ..exceptions import SplineSpaceError
from ..numerics import null_space_basis
from ..polynomials import (
    BivariatePolynomial,
    LineForm,
    monomial_count,
    multiplication_matrix,
    rotate_from_line,
    rotate_to_line,
    substitution_matrix,
)

Cofactors = Tuple[BivariatePolynomial, ...]


def cofactor_check(
    pi: BivariatePolynomial,
    pj: BivariatePolynomial,
    line: LineForm,
    r: int,
    tol: float = COFACTOR_TOL
) -> Optional[BivariatePolynomial]:
    """
    Smooth cofactor q with pi - pj = line^(r+1) q, if it exists.

    The difference is rotated so the line becomes {x~ = 0}; it is divisible
    exactly when its coefficients of x~^0 .. x~^r vanish.

    Parameters
    ----------
    pi, pj : BivariatePolynomial
        Polynomials on the two adjacent cells.
    line : LineForm
        Their common edge line.
    r : int
        Smoothness order, r >= 0.
    tol : float, optional
        Absolute coefficient magnitude treated as zero.

    Returns
    -------
    BivariatePolynomial or None
        The cofactor of degree max(n - r - 1, 0), or None when not divisible.
    """
    if r < 0:
        raise SplineSpaceError("cofactor_check needs r >= 0.", details={"r": r})
    diff = pi - pj
    n = diff.degree
    rotated = rotate_to_line(diff, line).to_grid()
    if np.any(np.abs(rotated[: r + 1, :]) > tol):
        return None
    d = n - r - 1
    if d < 0:
        return BivariatePolynomial.zero(0)
    quotient = BivariatePolynomial.from_grid(rotated[r + 1:, :], d)
    return rotate_from_line(quotient, line)


def conformality_dim_formula(N: int, n: int, r: int) -> int:
    """
    Dimension of the solution space of sum_i (a_i x + b_i y)^(r+1) q_i = 0
    for N pairwise non-proportional lines and cofactors of degree n - r - 1.

    Evaluates 1/2 (n - r - [(r+1)/(N-1)])_+ ((N-1) n - (N+1) r + (N-3) + (N-1) [(r+1)/(N-1)]).

    Raises
    ------
    SplineSpaceError
        If N < 2.
    """
    if N < 2:
        raise SplineSpaceError("The conformality dimension needs at least 2 lines.", details={"N": N})
    floor = (r + 1) // (N - 1)
    first = max(0, n - r - floor)
    if first == 0:
        return 0
    second = (N - 1) * n - (N + 1) * r + (N - 3) + (N - 1) * floor
    return max(0, first * second // 2)


def common_point(lines: Sequence[LineForm], tol: float = CONCURRENCY_TOL) -> Tuple[float, float]:
    """
    Point shared by all lines.

    Raises
    ------
    SplineSpaceError
        If fewer than two lines are given, or the lines are not concurrent.
    """
    if len(lines) < 2:
        raise SplineSpaceError("Concurrency needs at least 2 lines.")
    a = np.array([[l.alpha, l.beta] for l in lines])
    b = -np.array([l.gamma for l in lines])
    point, *_ = np.linalg.lstsq(a, b, rcond=None)
    residual = float(np.max(np.abs(a @ point - b)))
    if residual > tol:
        raise SplineSpaceError("Lines are not concurrent.", details={"residual": residual})
    return float(point[0]), float(point[1])


def conformality_matrix(lines: Sequence[LineForm], n: int, r: int) -> np.ndarray:
    """
    Matrix of (q_1, ..., q_N) -> sum l_i^(r+1) q_i for homogeneous lines through the origin.
    """
    d = n - r - 1
    blocks = []
    for l in lines:
        power = BivariatePolynomial.from_line((l.alpha, l.beta, 0.0)) ** (r + 1)
        blocks.append(multiplication_matrix(power, d))
    return np.hstack(blocks)


def conformality_nullspace(
    lines: Sequence[LineForm],
    n: int,
    r: int,
    rcond: float = CONFORMALITY_RANK_TOL
) -> List[Cofactors]:
    """
    Numerical basis of cofactor tuples solving the conformality equation at a vertex.

    The lines are translated so their common point is the origin, the
    equation is solved there, and the cofactors are moved back.

    Parameters
    ----------
    lines : sequence of LineForm
        Lines through one common point.
    n : int
        Spline degree.
    r : int
        Smoothness order; cofactors have degree n - r - 1.
    rcond : float, optional
        Relative singular-value cutoff.

    Returns
    -------
    list of tuple of BivariatePolynomial
        One tuple (q_1, ..., q_N) per basis vector.

    Raises
    ------
    SplineSpaceError
        If the lines are not concurrent.
    """
    x0, y0 = common_point(lines)
    d = n - r - 1
    if d < 0:
        return []
    basis, _ = null_space_basis(conformality_matrix(lines, n, r), rcond=rcond)
    size = monomial_count(d)
    back = substitution_matrix(d, (1.0, 0.0, -x0), (0.0, 1.0, -y0))
    result = []
    for col in basis.T:
        result.append(tuple(
            BivariatePolynomial(d, back @ col[k * size:(k + 1) * size]) for k in range(len(lines))
        ))
    return result


def conformality_residual(lines: Sequence[LineForm], cofactors: Cofactors, r: int) -> float:
    """Largest coefficient of sum l_i^(r+1) q_i."""
    total = None
    for l, q in zip(lines, cofactors):
        term = BivariatePolynomial.from_line(l) ** (r + 1) * q
        total = term if total is None else total + term
    return 0.0 if total is None else total.max_abs_coeff()


def random_concurrent_lines(
    count: int,
    rng: np.random.Generator,
    center: Tuple[float, float] = (0.0, 0.0)
) -> List[LineForm]:
    """Lines through center with independent uniform directions."""
    x0, y0 = center
    angles = rng.uniform(0.0, np.pi, size=count)
    return [
        LineForm.from_coefficients(np.cos(t), np.sin(t), -(np.cos(t) * x0 + np.sin(t) * y0))
        for t in angles
    ]
