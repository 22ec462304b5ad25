# src\hyperspline\models.py

"""
Points, geodesics and isometries of the Poincaré and Klein disk models.

The Klein model is the working model of the package: its geodesics are
straight chords and its isometries are collineations, 3x3 matrices acting
on homogeneous coordinates (x, y, 1). The Poincaré model is supported for
input, conversion and drawing.
"""

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Optional, Sequence, Tuple, Union

import numpy as np

from .config import EPSILON
from .exceptions import DegenerateGeometryError, ModelMismatchError
from .field import ONE, ZERO, AlgebraicNumber, FieldComplex
from .numerics import projective_float_key, safe_division

ExactMatrix = Tuple[Tuple[AlgebraicNumber, ...], ...]

LORENTZ_FORM = np.diag([1.0, 1.0, -1.0])
"""The quadratic form x^2 + y^2 - w^2 preserved by Klein-model isometries."""


class DiskModel(Enum):
    """Supported models of the hyperbolic plane."""
    KLEIN = "klein"
    POINCARE = "poincare"


# ==============================
# Points and geodesics
# ==============================


@dataclass(frozen=True)
class DiskPoint:
    """
    A point of the unit disk tagged with the model it lives in.

    Attributes
    ----------
    x, y : float
        Euclidean coordinates in the disk.
    model : DiskModel
        Model the coordinates refer to.
    """
    x: float
    y: float
    model: DiskModel = DiskModel.KLEIN

    @classmethod
    def klein(cls, x: float, y: float) -> "DiskPoint":
        return cls(float(x), float(y), DiskModel.KLEIN)

    @classmethod
    def poincare(cls, x: float, y: float) -> "DiskPoint":
        return cls(float(x), float(y), DiskModel.POINCARE)

    @classmethod
    def from_polar(cls, radius: float, angle: float, model: DiskModel = DiskModel.KLEIN) -> "DiskPoint":
        return cls(radius * math.cos(angle), radius * math.sin(angle), model)

    @property
    def radius(self) -> float:
        return math.hypot(self.x, self.y)

    @property
    def is_interior(self) -> bool:
        return self.x * self.x + self.y * self.y < 1.0

    def as_complex(self) -> complex:
        return complex(self.x, self.y)

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y])

    def require(self, model: DiskModel, operation: str) -> None:
        """
        Check the model tag.

        Raises
        ------
        ModelMismatchError
            If the point belongs to another model.
        """
        if self.model is not model:
            raise ModelMismatchError(
                f"{operation} expects a {model.value} point, got {self.model.value}.",
                details={"point": self.to_dict()},
            )

    def distance_to(self, other: "DiskPoint") -> float:
        """Euclidean distance between the coordinate pairs."""
        return math.hypot(self.x - other.x, self.y - other.y)

    def to_dict(self) -> Dict[str, Any]:
        return {"x": self.x, "y": self.y, "model": self.model.value}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "DiskPoint":
        return cls(float(data["x"]), float(data["y"]), DiskModel(data.get("model", "klein")))


@dataclass(frozen=True)
class KleinChord:
    """
    The Klein geodesic u*x + v*y = r with u^2 + v^2 = 1 and 0 <= r < 1.
    """
    u: float
    v: float
    r: float

    @classmethod
    def from_coefficients(cls, u: float, v: float, r: float) -> "KleinChord":
        """
        Normalize an arbitrary line u*x + v*y = r to unit normal and r >= 0.

        Raises
        ------
        DegenerateGeometryError
            If (u, v) vanishes or the line misses the open disk.
        """
        norm = math.hypot(u, v)
        if norm < EPSILON:
            raise DegenerateGeometryError("Line normal vanishes.", details={"u": u, "v": v})
        u, v, r = u / norm, v / norm, r / norm
        if r < 0:
            u, v, r = -u, -v, -r
        if r >= 1.0:
            raise DegenerateGeometryError("Line does not meet the open unit disk.", details={"r": r})
        return cls(u, v, r)

    @classmethod
    def through(cls, p: DiskPoint, q: DiskPoint) -> "KleinChord":
        """The chord through two Klein points."""
        p.require(DiskModel.KLEIN, "KleinChord.through")
        q.require(DiskModel.KLEIN, "KleinChord.through")
        dx, dy = q.x - p.x, q.y - p.y
        if math.hypot(dx, dy) < EPSILON:
            raise DegenerateGeometryError("Chord through coincident points.")
        u, v = dy, -dx
        return cls.from_coefficients(u, v, u * p.x + v * p.y)

    def signed_distance(self, point: DiskPoint) -> float:
        return self.u * point.x + self.v * point.y - self.r

    def to_dict(self) -> Dict[str, float]:
        return {"u": self.u, "v": self.v, "r": self.r}


@dataclass(frozen=True)
class PoincareGeodesicCircle:
    """
    A Poincaré geodesic: either the circle x^2 + y^2 + d*x + e*y + 1 = 0
    orthogonal to the unit circle, or a diameter with the given direction.
    """
    d: float = 0.0
    e: float = 0.0
    direction: Optional[Tuple[float, float]] = None

    @property
    def is_diameter(self) -> bool:
        return self.direction is not None

    @property
    def center(self) -> Tuple[float, float]:
        return (-self.d / 2.0, -self.e / 2.0)

    @property
    def radius(self) -> float:
        return math.sqrt(self.d * self.d / 4.0 + self.e * self.e / 4.0 - 1.0)

    def residual(self, point: DiskPoint) -> float:
        """Value of the defining equation at the point (zero on the geodesic)."""
        if self.is_diameter:
            dx, dy = self.direction
            return point.x * dy - point.y * dx
        return point.x ** 2 + point.y ** 2 + self.d * point.x + self.e * point.y + 1.0

    def arc_points(self, p: DiskPoint, q: DiskPoint, samples: int) -> np.ndarray:
        """
        Sample the geodesic segment from p to q.

        Returns
        -------
        np.ndarray
            Array of shape (samples, 2), starting at p and ending at q.
        """
        t = np.linspace(0.0, 1.0, samples)
        if self.is_diameter:
            return np.outer(1.0 - t, p.as_array()) + np.outer(t, q.as_array())
        cx, cy = self.center
        a0 = math.atan2(p.y - cy, p.x - cx)
        a1 = math.atan2(q.y - cy, q.x - cx)
        # the arc inside the disk subtends less than pi at the center
        sweep = (a1 - a0 + math.pi) % (2.0 * math.pi) - math.pi
        angles = a0 + t * sweep
        rad = self.radius
        return np.column_stack([cx + rad * np.cos(angles), cy + rad * np.sin(angles)])

    def to_dict(self) -> Dict[str, Any]:
        if self.is_diameter:
            return {"diameter": list(self.direction)}
        return {"d": self.d, "e": self.e}


def poincare_to_klein(p: DiskPoint) -> DiskPoint:
    """
    Map a Poincaré point to the Klein point on the same ray.

    The Klein radius is s = 2u / (1 + u^2) for Poincaré radius u.

    Raises
    ------
    ModelMismatchError
        If p is not a Poincaré point.
    """
    p.require(DiskModel.POINCARE, "poincare_to_klein")
    factor = 2.0 / (1.0 + p.x * p.x + p.y * p.y)
    return DiskPoint(p.x * factor, p.y * factor, DiskModel.KLEIN)


def klein_to_poincare(p: DiskPoint) -> DiskPoint:
    """
    Map a Klein point to the Poincaré point on the same ray.

    Uses u = s / (1 + sqrt(1 - s^2)), which equals (1 - sqrt(1 - s^2)) / s
    without cancellation near the origin.

    Raises
    ------
    ModelMismatchError
        If p is not a Klein point.
    DegenerateGeometryError
        If p lies outside the closed unit disk.
    """
    p.require(DiskModel.KLEIN, "klein_to_poincare")
    s2 = p.x * p.x + p.y * p.y
    if s2 > 1.0:
        raise DegenerateGeometryError("Point outside the unit disk.", details={"point": p.to_dict()})
    factor = 1.0 / (1.0 + math.sqrt(1.0 - s2))
    return DiskPoint(p.x * factor, p.y * factor, DiskModel.POINCARE)


def distance_from_origin(p: DiskPoint) -> float:
    """Hyperbolic distance (curvature -1) from the disk center to p in either model."""
    s = p.radius
    if s >= 1.0:
        return math.inf
    return math.atanh(s) if p.model is DiskModel.KLEIN else 2.0 * math.atanh(s)


def poincare_geodesic(u: DiskPoint, v: DiskPoint) -> PoincareGeodesicCircle:
    """
    The Poincaré geodesic through two points.

    Parameters
    ----------
    u, v : DiskPoint
        Distinct Poincaré points.

    Returns
    -------
    PoincareGeodesicCircle
        The orthogonal circle through u and v, or the diameter form when
        u, v and the origin are collinear.

    Raises
    ------
    DegenerateGeometryError
        If the points coincide.
    """
    u.require(DiskModel.POINCARE, "poincare_geodesic")
    v.require(DiskModel.POINCARE, "poincare_geodesic")
    if u.distance_to(v) < EPSILON:
        raise DegenerateGeometryError("Geodesic through coincident points.", details={"u": u.to_dict()})

    u1, u2, v1, v2 = u.x, u.y, v.x, v.y
    den = u1 * v2 - u2 * v1
    if abs(den) < EPSILON:
        dx, dy = v1 - u1, v2 - u2
        norm = math.hypot(dx, dy)
        return PoincareGeodesicCircle(direction=(dx / norm, dy / norm))

    nu, nv = u1 * u1 + u2 * u2, v1 * v1 + v2 * v2
    d = (u2 * nv - v2 * nu + u2 - v2) / den
    e = (v1 * nu - u1 * nv + v1 - u1) / den
    return PoincareGeodesicCircle(d=d, e=e)


def invert_in_circle(
    p: Sequence[float],
    center: Sequence[float],
    r: float
) -> Tuple[float, float]:
    """
    Inverse of p in the circle of given center and radius.

    The image lies on the ray from the center through p at distance
    r^2 / |p - center|.

    Raises
    ------
    DegenerateGeometryError
        If p is the center.
    """
    dx, dy = p[0] - center[0], p[1] - center[1]
    dist2 = dx * dx + dy * dy
    if dist2 < EPSILON * EPSILON:
        raise DegenerateGeometryError("Inversion undefined at the circle center.", details={"p": list(p)})
    scale = r * r / dist2
    return (center[0] + dx * scale, center[1] + dy * scale)


# ==============================
# Möbius maps
# ==============================


@dataclass(frozen=True)
class MobiusMap:
    """
    Disk automorphism T(z) = lam * (z - a) / (conj(a) * z - 1), |lam| = 1, |a| < 1.
    """
    lam: complex
    a: complex

    def __post_init__(self):
        if abs(abs(self.lam) - 1.0) > 1e-12 or abs(self.a) >= 1.0:
            raise DegenerateGeometryError(
                "Möbius map needs |lambda| = 1 and |a| < 1.",
                details={"lambda": str(self.lam), "a": str(self.a)},
            )

    def __call__(self, z: complex) -> complex:
        return mobius_apply(self, z)

    def to_su11(self) -> Tuple[complex, complex]:
        """
        Rewrite the map as (A z + B) / (conj(B) z + conj(A)) with |A|^2 - |B|^2 = 1.

        Returns
        -------
        tuple of complex
            The pair (A, B).
        """
        # scale numerator and denominator by k with k / conj(k) = -conj(lam)
        phase = cmath.sqrt(-self.lam.conjugate())
        k = phase / math.sqrt(1.0 - abs(self.a) ** 2)
        return k * self.lam, -k * self.lam * self.a

    def to_klein(self) -> "Collineation":
        return su11_to_klein(*self.to_su11())


def mobius_apply(t: MobiusMap, z: complex) -> complex:
    """
    Evaluate T(z) = lam * (z - a) / (conj(a) * z - 1).

    Raises
    ------
    DegenerateGeometryError
        At the pole conj(a) * z = 1.
    """
    den = t.a.conjugate() * z - 1.0
    if abs(den) < EPSILON:
        raise DegenerateGeometryError("Möbius map evaluated at its pole.", details={"z": str(z)})
    return t.lam * (z - t.a) / den


def su11_apply(a: complex, b: complex, z: complex) -> complex:
    """Evaluate (a z + b) / (conj(b) z + conj(a))."""
    den = b.conjugate() * z + a.conjugate()
    if abs(den) < EPSILON:
        raise DegenerateGeometryError("SU(1,1) map evaluated at its pole.", details={"z": str(z)})
    return (a * z + b) / den


# ==============================
# Collineations
# ==============================


def _exact_to_float(rows: ExactMatrix) -> np.ndarray:
    return np.array([[entry.to_float() for entry in row] for row in rows], dtype=float)


def _exact_matmul(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    n, m, p = len(a), len(b), len(b[0])
    return tuple(
        tuple(sum((a[i][k] * b[k][j] for k in range(m)), ZERO) for j in range(p))
        for i in range(n)
    )


def _exact_det3(m: ExactMatrix) -> AlgebraicNumber:
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def _exact_adjugate3(m: ExactMatrix) -> ExactMatrix:
    def minor(i: int, j: int) -> AlgebraicNumber:
        r = [k for k in range(3) if k != i]
        c = [k for k in range(3) if k != j]
        return m[r[0]][c[0]] * m[r[1]][c[1]] - m[r[0]][c[1]] * m[r[1]][c[0]]

    return tuple(
        tuple((minor(j, i) if (i + j) % 2 == 0 else -minor(j, i)) for j in range(3))
        for i in range(3)
    )


@dataclass(frozen=True, eq=False)
class Collineation:
    """
    Projective map of the plane given by a nonsingular 3x3 matrix.

    Attributes
    ----------
    matrix : np.ndarray
        Float matrix (the shadow copy when `exact` is present).
    exact : tuple of tuple of AlgebraicNumber, optional
        Exact matrix over Q(beta), when the map was built from field data.
    """
    matrix: np.ndarray
    exact: Optional[ExactMatrix] = None

    @classmethod
    def from_exact(cls, rows: Sequence[Sequence[AlgebraicNumber]]) -> "Collineation":
        exact = tuple(tuple(row) for row in rows)
        return cls(_exact_to_float(exact), exact)

    @classmethod
    def from_float(cls, matrix: Union[np.ndarray, Sequence[Sequence[float]]]) -> "Collineation":
        m = np.array(matrix, dtype=float)
        if m.shape != (3, 3):
            raise ValueError(f"Collineation needs a 3x3 matrix, got shape {m.shape}.")
        if abs(np.linalg.det(m)) < EPSILON:
            raise DegenerateGeometryError("Singular collineation matrix.", details={"matrix": m.tolist()})
        return cls(m)

    @classmethod
    def identity(cls) -> "Collineation":
        return cls.from_exact([[ONE if i == j else ZERO for j in range(3)] for i in range(3)])

    @property
    def is_exact(self) -> bool:
        return self.exact is not None

    def compose(self, other: "Collineation") -> "Collineation":
        """The map x -> self(other(x)), i.e. the matrix product self @ other."""
        if self.is_exact and other.is_exact:
            return Collineation.from_exact(_exact_matmul(self.exact, other.exact))
        return Collineation(self.matrix @ other.matrix)

    def __matmul__(self, other: "Collineation") -> "Collineation":
        return self.compose(other)

    def inverse(self) -> "Collineation":
        """Inverse map; exact inverses are adj(M) / det(M)."""
        if self.is_exact:
            inv_det = _exact_det3(self.exact).inverse()
            adj = _exact_adjugate3(self.exact)
            return Collineation.from_exact([[inv_det * e for e in row] for row in adj])
        return Collineation(np.linalg.inv(self.matrix))

    def apply_xy(self, x, y):
        """
        Fractional linear image of coordinates (scalars or arrays).

        Raises
        ------
        DegenerateGeometryError
            If a point is sent to the line at infinity.
        """
        a = self.matrix
        w = a[2, 0] * x + a[2, 1] * y + a[2, 2]
        xn = a[0, 0] * x + a[0, 1] * y + a[0, 2]
        yn = a[1, 0] * x + a[1, 1] * y + a[1, 2]
        return (
            safe_division(xn, w, context="collineation_apply"),
            safe_division(yn, w, context="collineation_apply"),
        )

    def apply(self, p: DiskPoint) -> DiskPoint:
        return collineation_apply(self, p)

    def canonical_key(self) -> tuple:
        """
        Hashable key identifying the map up to nonzero scalar.

        Exact matrices are divided by their first nonzero entry in row-major
        order; float matrices use the rounded normalized entries.
        """
        if not self.is_exact:
            return projective_float_key(self.matrix)
        entries = [e for row in self.exact for e in row]
        pivot = next(e for e in entries if not e.is_zero())
        scale = pivot.inverse()
        return tuple((e * scale).coeffs for e in entries)

    def float_key(self) -> tuple:
        return projective_float_key(self.matrix)

    def equals_projectively(self, other: "Collineation", tol: float = 1e-10) -> bool:
        """Equality up to nonzero scalar; exact when both sides are exact."""
        if self.is_exact and other.is_exact:
            return self.canonical_key() == other.canonical_key()
        a = self.matrix / self.matrix.flat[np.argmax(np.abs(self.matrix))]
        b = other.matrix / other.matrix.flat[np.argmax(np.abs(other.matrix))]
        return bool(np.max(np.abs(a - b)) <= tol)

    def preserves_lorentz_form(self, tol: float = 1e-10) -> bool:
        """Check M^T J M = J, exactly for exact matrices."""
        if self.is_exact:
            m = self.exact
            signs = (1, 1, -1)
            for i in range(3):
                for j in range(3):
                    value = sum((signs[k] * (m[k][i] * m[k][j]) for k in range(3)), ZERO)
                    target = signs[i] if i == j else 0
                    if value != target:
                        return False
            return True
        m = self.matrix
        return bool(np.allclose(m.T @ LORENTZ_FORM @ m, LORENTZ_FORM, atol=tol))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "matrix": self.matrix.tolist(),
            "exact": None if self.exact is None else [[e.to_json() for e in row] for row in self.exact],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Collineation":
        if data.get("exact") is not None:
            return cls.from_exact([[AlgebraicNumber.from_json(e) for e in row] for row in data["exact"]])
        return cls.from_float(data["matrix"])


def collineation_apply(g: Collineation, p: DiskPoint) -> DiskPoint:
    """
    Apply a collineation to a Klein point.

    x' = (a11 x + a12 y + a13) / (a31 x + a32 y + a33),
    y' = (a21 x + a22 y + a23) / (a31 x + a32 y + a33).

    Raises
    ------
    ModelMismatchError
        If p is not a Klein point.
    DegenerateGeometryError
        If the denominator vanishes.
    """
    p.require(DiskModel.KLEIN, "collineation_apply")
    x, y = g.apply_xy(p.x, p.y)
    return DiskPoint(float(x), float(y), DiskModel.KLEIN)


def rotation_collineation(phi: float) -> Collineation:
    """Rotation of the disk by angle phi about the origin."""
    c, s = math.cos(phi), math.sin(phi)
    return Collineation(np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]]))


def klein_reflection_vertical(theta: float) -> Collineation:
    """
    Reflection in the Klein chord x = cos(theta).

    Parameters
    ----------
    theta : float
        Angle with sin(theta) != 0.

    Returns
    -------
    Collineation
        The matrix [[1 + c^2, 0, -2c], [0, -s^2, 0], [2c, 0, -1 - c^2]].

    Raises
    ------
    DegenerateGeometryError
        If the chord degenerates to a boundary tangent (sin(theta) = 0).
    """
    c, s = math.cos(theta), math.sin(theta)
    if abs(s) < EPSILON:
        raise DegenerateGeometryError("Reflection chord is tangent to the boundary.", details={"theta": theta})
    return Collineation(np.array([
        [1.0 + c * c, 0.0, -2.0 * c],
        [0.0, -s * s, 0.0],
        [2.0 * c, 0.0, -1.0 - c * c],
    ]))


def klein_reflection(chord: KleinChord) -> Collineation:
    """
    Reflection in an arbitrary Klein chord, conjugating the vertical case by a rotation.

    Raises
    ------
    DegenerateGeometryError
        If r >= 1.
    """
    if not 0.0 <= chord.r < 1.0:
        raise DegenerateGeometryError("Chord must satisfy 0 <= r < 1.", details=chord.to_dict())
    phi = math.atan2(chord.v, chord.u)
    vertical = klein_reflection_vertical(math.acos(chord.r))
    return rotation_collineation(phi) @ vertical @ rotation_collineation(-phi)


def _su11_rows(a1, a2, b1, b2):
    return [
        [a1 * a1 - a2 * a2 + b1 * b1 - b2 * b2, 2 * (b1 * b2) - 2 * (a1 * a2), 2 * (a1 * b1) - 2 * (a2 * b2)],
        [2 * (a1 * a2) + 2 * (b1 * b2), a1 * a1 - a2 * a2 - b1 * b1 + b2 * b2, 2 * (a1 * b2) + 2 * (a2 * b1)],
        [2 * (a1 * b1) + 2 * (a2 * b2), 2 * (a1 * b2) - 2 * (a2 * b1), a1 * a1 + a2 * a2 + b1 * b1 + b2 * b2],
    ]


def su11_to_klein(
    a: Union[complex, FieldComplex],
    b: Union[complex, FieldComplex]
) -> Collineation:
    """
    Klein collineation of the Poincaré automorphism (a z + b) / (conj(b) z + conj(a)).

    Parameters
    ----------
    a, b : complex or FieldComplex
        SU(1,1) parameters with |a|^2 - |b|^2 = 1. Field-valued inputs give an
        exact collineation.

    Returns
    -------
    Collineation
        The 3x3 matrix in a1, a2, b1, b2 acting on homogeneous Klein coordinates.

    Raises
    ------
    DegenerateGeometryError
        If the determinant condition fails (exactly, or beyond 1e-10 for floats).
    """
    if isinstance(a, FieldComplex) and isinstance(b, FieldComplex):
        det = a.norm_squared() - b.norm_squared()
        if det != ONE:
            raise DegenerateGeometryError("SU(1,1) determinant is not 1.", details={"det": str(det)})
        return Collineation.from_exact(_su11_rows(a.re, a.im, b.re, b.im))

    a, b = complex(a), complex(b)
    det = abs(a) ** 2 - abs(b) ** 2
    if abs(det - 1.0) > 1e-10:
        raise DegenerateGeometryError("SU(1,1) determinant is not 1.", details={"det": det})
    return Collineation(np.array(_su11_rows(a.real, a.imag, b.real, b.imag), dtype=float))
