# src\hyperspline\polynomials.py

"""
Dense bivariate polynomials and the linear maps on their coefficient vectors.

Coefficient vectors use graded-lexicographic order over x^i y^j, i + j <= n:
[1, x, y, x^2, x*y, y^2, x^3, ...]. Internally polynomials are also handled
as (n+1) x (n+1) grids with grid[i, j] the coefficient of x^i y^j, which is
the layout numpy.polynomial and scipy.signal.convolve2d work with.
"""

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple, Union

import numpy as np
from numpy.polynomial import polynomial as npoly
from scipy.signal import convolve2d

from .config import EPSILON
from .exceptions import DegenerateGeometryError

Affine = Tuple[float, float, float]
"""Coefficients (a, b, c) of the linear form a*x + b*y + c."""


def monomial_count(n: int) -> int:
    return 0 if n < 0 else (n + 1) * (n + 2) // 2


@lru_cache(maxsize=None)
def monomials(n: int) -> Tuple[Tuple[int, int], ...]:
    """Exponent pairs (i, j) of x^i y^j in graded-lexicographic order."""
    return tuple((d - j, j) for d in range(n + 1) for j in range(d + 1))


@lru_cache(maxsize=None)
def monomial_index(n: int) -> Dict[Tuple[int, int], int]:
    return {m: k for k, m in enumerate(monomials(n))}


def grid_to_vector(grid: np.ndarray, n: int) -> np.ndarray:
    """Graded-lex coefficient vector of degree n; entries of the grid beyond degree n must vanish."""
    out = np.zeros(monomial_count(n))
    rows, cols = grid.shape
    for k, (i, j) in enumerate(monomials(n)):
        if i < rows and j < cols:
            out[k] = grid[i, j]
    return out


def vector_to_grid(coeffs: np.ndarray, n: int) -> np.ndarray:
    grid = np.zeros((n + 1, n + 1))
    for c, (i, j) in zip(coeffs, monomials(n)):
        grid[i, j] = c
    return grid


@dataclass(frozen=True, eq=False)
class BivariatePolynomial:
    """
    Real polynomial of total degree at most `degree`.

    Attributes
    ----------
    degree : int
        Degree bound n >= 0.
    coeffs : np.ndarray
        Graded-lex coefficient vector of length (n+1)(n+2)/2.
    """
    degree: int
    coeffs: np.ndarray

    def __post_init__(self):
        if self.degree < 0:
            raise ValueError("Polynomial degree must be non-negative.")
        coeffs = np.asarray(self.coeffs, dtype=float).ravel()
        if coeffs.size != monomial_count(self.degree):
            raise ValueError(
                f"Degree {self.degree} needs {monomial_count(self.degree)} coefficients, got {coeffs.size}."
            )
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def zero(cls, n: int) -> "BivariatePolynomial":
        return cls(n, np.zeros(monomial_count(n)))

    @classmethod
    def constant(cls, c: float, n: int = 0) -> "BivariatePolynomial":
        coeffs = np.zeros(monomial_count(n))
        coeffs[0] = c
        return cls(n, coeffs)

    @classmethod
    def from_terms(cls, terms: Dict[Tuple[int, int], float], n: int = None) -> "BivariatePolynomial":
        """Build from {(i, j): coefficient of x^i y^j}."""
        if n is None:
            n = max((i + j for i, j in terms), default=0)
        index = monomial_index(n)
        coeffs = np.zeros(monomial_count(n))
        for (i, j), c in terms.items():
            if (i, j) not in index:
                raise ValueError(f"Monomial x^{i} y^{j} exceeds degree {n}.")
            coeffs[index[(i, j)]] = c
        return cls(n, coeffs)

    @classmethod
    def from_grid(cls, grid: np.ndarray, n: int) -> "BivariatePolynomial":
        return cls(n, grid_to_vector(grid, n))

    @classmethod
    def from_line(cls, line: Union["LineForm", Affine]) -> "BivariatePolynomial":
        a, b, c = line.to_tuple() if isinstance(line, LineForm) else line
        return cls(1, np.array([c, a, b], dtype=float))

    def to_grid(self) -> np.ndarray:
        return vector_to_grid(self.coeffs, self.degree)

    def raise_degree(self, m: int) -> "BivariatePolynomial":
        if m < self.degree:
            raise ValueError("Cannot lower the degree bound.")
        return BivariatePolynomial.from_grid(self.to_grid(), m)

    def __call__(self, x, y):
        return poly_eval(self, x, y)

    def __add__(self, other: "BivariatePolynomial") -> "BivariatePolynomial":
        n = max(self.degree, other.degree)
        return BivariatePolynomial(n, self.raise_degree(n).coeffs + other.raise_degree(n).coeffs)

    def __neg__(self) -> "BivariatePolynomial":
        return BivariatePolynomial(self.degree, -self.coeffs)

    def __sub__(self, other: "BivariatePolynomial") -> "BivariatePolynomial":
        return self + (-other)

    def __mul__(self, other: Union["BivariatePolynomial", float]) -> "BivariatePolynomial":
        if isinstance(other, BivariatePolynomial):
            grid = convolve2d(self.to_grid(), other.to_grid())
            return BivariatePolynomial.from_grid(grid, self.degree + other.degree)
        return BivariatePolynomial(self.degree, float(other) * self.coeffs)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "BivariatePolynomial":
        result = BivariatePolynomial.constant(1.0)
        for _ in range(exponent):
            result = result * self
        return result

    def max_abs_coeff(self) -> float:
        return float(np.max(np.abs(self.coeffs))) if self.coeffs.size else 0.0

    def to_dict(self) -> Dict[str, object]:
        return {"degree": self.degree, "coeffs": self.coeffs.tolist()}

    @classmethod
    def from_dict(cls, data: Dict[str, object]) -> "BivariatePolynomial":
        return cls(int(data["degree"]), np.asarray(data["coeffs"], dtype=float))

    def __repr__(self) -> str:
        return f"BivariatePolynomial(degree={self.degree}, coeffs={self.coeffs.tolist()})"


def poly_eval(p: BivariatePolynomial, x, y):
    """
    Evaluate sum c_ij x^i y^j with nested Horner sweeps (numpy polyval2d).

    Scalars give a float, arrays an array of the broadcast shape.
    """
    value = npoly.polyval2d(x, y, p.to_grid())
    return float(value) if np.ndim(value) == 0 else value


# ==============================
# Lines
# ==============================


@dataclass(frozen=True)
class LineForm:
    """
    The line alpha*x + beta*y + gamma = 0 with alpha^2 + beta^2 = 1 and the
    first nonzero of (alpha, beta) positive.
    """
    alpha: float
    beta: float
    gamma: float

    @classmethod
    def from_coefficients(cls, alpha: float, beta: float, gamma: float) -> "LineForm":
        norm = math.hypot(alpha, beta)
        if norm < EPSILON:
            raise DegenerateGeometryError("Line normal vanishes.", details={"alpha": alpha, "beta": beta})
        alpha, beta, gamma = alpha / norm, beta / norm, gamma / norm
        if alpha < -EPSILON or (abs(alpha) <= EPSILON and beta < 0):
            alpha, beta, gamma = -alpha, -beta, -gamma
        return cls(alpha + 0.0, beta + 0.0, gamma + 0.0)

    @classmethod
    def through(cls, p: Sequence[float], q: Sequence[float]) -> "LineForm":
        """Line through two points given as (x, y) pairs."""
        (x0, y0), (x1, y1) = p, q
        if math.hypot(x1 - x0, y1 - y0) < EPSILON:
            raise DegenerateGeometryError("Line through coincident points.", details={"p": list(p), "q": list(q)})
        a, b = y1 - y0, x0 - x1
        return cls.from_coefficients(a, b, -(a * x0 + b * y0))

    def __call__(self, x, y):
        return self.alpha * x + self.beta * y + self.gamma

    def to_tuple(self) -> Affine:
        return (self.alpha, self.beta, self.gamma)

    def translated(self, x0: float, y0: float) -> "LineForm":
        """The line in coordinates centred at (x0, y0)."""
        return LineForm(self.alpha, self.beta, self(x0, y0))

    def to_dict(self) -> Dict[str, float]:
        return {"alpha": self.alpha, "beta": self.beta, "gamma": self.gamma}


def line_frame(line: LineForm) -> Tuple[Affine, Affine]:
    """
    Affine substitution to the rotated frame in which the line is {x~ = 0}.

    x = alpha x~ - beta y~ - alpha gamma,  y = beta x~ + alpha y~ - beta gamma.
    """
    a, b, c = line.to_tuple()
    return (a, -b, -a * c), (b, a, -b * c)


# ==============================
# Linear maps on coefficient vectors
# ==============================


def _linear_grid(form: Affine) -> np.ndarray:
    a, b, c = form
    return np.array([[c, b], [a, 0.0]])


def substitution_matrix(n: int, x_form: Affine, y_form: Affine, w_form: Affine = (0.0, 0.0, 1.0)) -> np.ndarray:
    """
    Matrix sending the coefficients of p (degree n) to those of the
    homogenized substitution sum c_ij X^i Y^j W^(n-i-j), with X, Y, W the
    given linear forms in (x, y, 1).

    Returns
    -------
    np.ndarray
        Shape (monomial_count(n), monomial_count(n)).
    """
    xs, ys, ws = _powers(x_form, n), _powers(y_form, n), _powers(w_form, n)
    out = np.zeros((monomial_count(n), monomial_count(n)))
    for col, (i, j) in enumerate(monomials(n)):
        grid = convolve2d(convolve2d(xs[i], ys[j]), ws[n - i - j])
        out[:, col] = grid_to_vector(grid, n)
    return out


def _powers(form: Affine, n: int) -> List[np.ndarray]:
    base = _linear_grid(form)
    powers = [np.ones((1, 1))]
    for _ in range(n):
        powers.append(convolve2d(powers[-1], base))
    return powers


def embedding_matrix(n: int, m: int) -> np.ndarray:
    """Inclusion of degree-n coefficient vectors into degree m >= n."""
    out = np.zeros((monomial_count(m), monomial_count(n)))
    index = monomial_index(m)
    for col, mono in enumerate(monomials(n)):
        out[index[mono], col] = 1.0
    return out


def multiplication_matrix(factor: BivariatePolynomial, n: int) -> np.ndarray:
    """Matrix of p -> factor * p on degree-n inputs, into degree n + factor.degree."""
    m = n + factor.degree
    fgrid = factor.to_grid()
    out = np.zeros((monomial_count(m), monomial_count(n)))
    for col, (i, j) in enumerate(monomials(n)):
        out[:, col] = grid_to_vector(convolve2d(fgrid, _unit_grid(i, j)), m)
    return out


def _unit_grid(i: int, j: int) -> np.ndarray:
    g = np.zeros((i + 1, j + 1))
    g[i, j] = 1.0
    return g


def low_order_rows(n: int, r: int) -> List[Tuple[int, int]]:
    """Exponents (m, k) of x~^m y~^k with m <= r in degree n, in graded-lex order."""
    return [(i, j) for i, j in monomials(n) if i <= r]


def divisibility_matrix(line: LineForm, n: int, r: int) -> Tuple[np.ndarray, List[Tuple[int, int]]]:
    """
    Rows whose vanishing on a degree-n coefficient vector is equivalent to
    divisibility by line^(r+1).

    Returns
    -------
    rows : np.ndarray
        Shape (len(tags), monomial_count(n)); row (m, k) extracts the
        coefficient of x~^m y~^k in the rotated frame.
    tags : list of (int, int)
        The (m, k) exponent of each row.
    """
    x_form, y_form = line_frame(line)
    rotated = substitution_matrix(n, x_form, y_form)
    tags = low_order_rows(n, r)
    index = monomial_index(n)
    return rotated[[index[t] for t in tags], :], tags


def rotate_to_line(p: BivariatePolynomial, line: LineForm) -> BivariatePolynomial:
    """p written in the frame where the line is {x~ = 0}."""
    x_form, y_form = line_frame(line)
    return BivariatePolynomial(p.degree, substitution_matrix(p.degree, x_form, y_form) @ p.coeffs)


def rotate_from_line(p: BivariatePolynomial, line: LineForm) -> BivariatePolynomial:
    """Inverse of rotate_to_line: x~ = alpha x + beta y + gamma, y~ = -beta x + alpha y."""
    a, b, c = line.to_tuple()
    return BivariatePolynomial(p.degree, substitution_matrix(p.degree, (a, b, c), (-b, a, 0.0)) @ p.coeffs)
