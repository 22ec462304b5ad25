# src\hyperspline\numerics.py

import logging
import warnings
from typing import Tuple, Union

import numpy as np
import scipy.linalg

from . import config
from .config import EPSILON, FLOAT_HASH_RESOLUTION
from .exceptions import DegenerateGeometryError

logger = logging.getLogger(__name__)


def safe_division(
    numerator: Union[float, np.ndarray],
    denominator: Union[float, np.ndarray],
    eps: float = EPSILON,
    context: str = "division"
) -> Union[float, np.ndarray]:
    """
    Perform division for scalars or arrays, refusing near-zero denominators.

    Parameters
    ----------
    numerator : float or ndarray
        Numerator(s) of the division.
    denominator : float or ndarray
        Denominator(s) of the division.
    eps : float, optional
        Threshold below which denominators are considered zero (default: EPSILON).
    context : str, optional
        Short label of the computation, reported in the error details.

    Returns
    -------
    float or ndarray
        Quotient(s), with `inf` where the denominator is too small in non-strict mode.

    Raises
    ------
    ValueError
        If any input is not finite.
    DegenerateGeometryError
        For near-zero denominators when config.STRICT_MODE is set.
    """
    num = np.asarray(numerator, dtype=float)
    den = np.asarray(denominator, dtype=float)

    if not np.all(np.isfinite(num)) or not np.all(np.isfinite(den)):
        raise ValueError("Inputs to safe_division must be finite.")

    small = np.abs(den) < eps
    if np.any(small):
        msg = f"Near-zero denominator in {context}: abs < {eps}"
        if config.STRICT_MODE:
            raise DegenerateGeometryError(msg, details={"denominator": den.tolist()})
        warnings.warn(msg, RuntimeWarning)

    num, den = np.broadcast_arrays(num, den)
    result = np.empty(num.shape, dtype=float)
    mask = ~np.broadcast_to(small, num.shape)
    result[mask] = num[mask] / den[mask]
    result[~mask] = np.sign(num[~mask]) * np.inf
    return result.item() if result.shape == () else result


def normalize_rows(matrix: np.ndarray, floor: float = 1e-14) -> Tuple[np.ndarray, np.ndarray]:
    """
    Scale every row of a dense matrix to unit Euclidean norm.

    Parameters
    ----------
    matrix : np.ndarray
        Row block of shape (m, k).
    floor : float, optional
        Rows with norm below this value are dropped.

    Returns
    -------
    rows : np.ndarray
        The normalized rows that were kept.
    keep : np.ndarray
        Boolean mask of kept rows.
    """
    norms = np.linalg.norm(matrix, axis=1)
    keep = norms > floor
    if np.any(~keep):
        logger.debug("Dropping %d numerically zero constraint rows", int(np.sum(~keep)))
    return matrix[keep] / norms[keep, None], keep


def null_space_basis(matrix: np.ndarray, rcond: float) -> Tuple[np.ndarray, np.ndarray]:
    """
    Orthonormal nullspace basis via the singular value decomposition.

    Parameters
    ----------
    matrix : np.ndarray
        Dense matrix of shape (m, k); m may be zero.
    rcond : float
        Singular values below rcond * max(s) count as zero.

    Returns
    -------
    basis : np.ndarray
        Array of shape (k, d) whose columns span the nullspace.
    singular_values : np.ndarray
        Singular values of the matrix (empty when m is zero).
    """
    a = np.atleast_2d(np.asarray(matrix, dtype=float))
    k = a.shape[1]
    if a.shape[0] == 0 or not np.any(a):
        return np.eye(k), np.zeros(0)
    s = scipy.linalg.svdvals(a)
    return scipy.linalg.null_space(a, rcond=rcond), s


def numerical_rank_qr(matrix: np.ndarray, tol: float) -> int:
    """
    Rank from a column-pivoted QR factorization.

    The diagonal of R is non-increasing in magnitude, so the rank is the
    number of diagonal entries above tol * |R[0, 0]|.

    Parameters
    ----------
    matrix : np.ndarray
        Dense matrix.
    tol : float
        Relative cutoff.

    Returns
    -------
    int
        Numerical rank.
    """
    a = np.atleast_2d(np.asarray(matrix, dtype=float))
    if a.size == 0 or not np.any(a):
        return 0
    _, r, _ = scipy.linalg.qr(a, mode="economic", pivoting=True)
    diag = np.abs(np.diag(r))
    return int(np.sum(diag > tol * diag[0]))


def projective_float_key(matrix: np.ndarray, resolution: float = FLOAT_HASH_RESOLUTION) -> tuple:
    """
    Hashable key of a matrix up to nonzero scalar.

    The matrix is scaled so that its largest-magnitude entry is +1 and then
    rounded onto a grid of the given resolution.
    """
    m = np.asarray(matrix, dtype=float)
    pivot = m.flat[np.argmax(np.abs(m))]
    scaled = m / pivot
    return tuple(int(v) for v in np.rint(scaled / resolution).ravel())
