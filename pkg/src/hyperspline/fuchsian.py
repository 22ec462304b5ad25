# src\hyperspline\fuchsian.py

"""
The Fuchsian group of the Bolza surface acting on the Klein disk.

Group elements carry an exact Klein collineation and an exact SU(1,1)
matrix over Q(beta). The regular fundamental octagon, its side pairings and
the reduction of disk points into the octagon live here as well.
"""

import logging
import math
from collections import deque
from dataclasses import dataclass
from enum import Enum
from functools import cached_property, lru_cache
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from .config import BOUNDARY_TOL, MAX_TILE_DEPTH, MAX_WORD_LENGTH, PAIRING_TOL
from .exceptions import CanonicalizationError, DegenerateGeometryError
from .field import ONE, ZERO, FieldComplex
from .groups import GroupParameters, GroupRegistry, GroupSignature
from .models import (
    Collineation,
    DiskModel,
    DiskPoint,
    KleinChord,
    distance_from_origin,
    su11_apply,
    su11_to_klein,
)

logger = logging.getLogger(__name__)

Word = Tuple[int, ...]


# ==============================
# Group elements
# ==============================


@dataclass(frozen=True)
class PoincareMatrix:
    """
    Exact 2x2 matrix [[a, b], [c, d]] with entries in Q(beta)(i).
    """
    a: FieldComplex
    b: FieldComplex
    c: FieldComplex
    d: FieldComplex

    @classmethod
    def from_su11(cls, a: FieldComplex, b: FieldComplex) -> "PoincareMatrix":
        return cls(a, b, b.conjugate(), a.conjugate())

    @classmethod
    def identity(cls) -> "PoincareMatrix":
        one, zero = FieldComplex(ONE), FieldComplex(ZERO)
        return cls(one, zero, zero, one)

    def det(self) -> FieldComplex:
        return self.a * self.d - self.b * self.c

    def __matmul__(self, other: "PoincareMatrix") -> "PoincareMatrix":
        return PoincareMatrix(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "PoincareMatrix":
        """Inverse of a determinant-one matrix."""
        return PoincareMatrix(self.d, -self.b, -self.c, self.a)

    def to_complex(self) -> np.ndarray:
        return np.array(
            [[self.a.to_complex(), self.b.to_complex()], [self.c.to_complex(), self.d.to_complex()]],
            dtype=complex,
        )

    def to_dict(self) -> Dict[str, object]:
        return {
            "a": self.a.to_json(), "b": self.b.to_json(),
            "c": self.c.to_json(), "d": self.d.to_json(),
        }


@dataclass(frozen=True, eq=False)
class GroupElement:
    """
    An element of the group with a witnessing word.

    Attributes
    ----------
    word : tuple of int
        Generator indices; (w1, ..., wm) stands for g_{w1} g_{w2} ... g_{wm},
        so g_{wm} acts first.
    klein : Collineation
        Exact Klein collineation.
    poincare : PoincareMatrix
        Exact SU(1,1) matrix.
    """
    word: Word
    klein: Collineation
    poincare: PoincareMatrix

    @cached_property
    def key(self) -> tuple:
        """Exact identity of the element up to scalar."""
        return self.klein.canonical_key()

    @property
    def is_identity(self) -> bool:
        return self.key == Collineation.identity().canonical_key()

    def apply(self, p: DiskPoint) -> DiskPoint:
        """Image of a point given in either model."""
        if p.model is DiskModel.POINCARE:
            z = su11_apply(self.poincare.a.to_complex(), self.poincare.b.to_complex(), p.as_complex())
            return DiskPoint.poincare(z.real, z.imag)
        return self.klein.apply(p)

    def to_dict(self) -> Dict[str, object]:
        return {"word": list(self.word), "matrix": self.klein.matrix.tolist()}

    def __repr__(self) -> str:
        return f"GroupElement(word={self.word})"


class LocationKind(Enum):
    INSIDE = "inside"
    ON_SIDE = "on_side"
    ON_CORNER = "on_corner"
    OUTSIDE = "outside"


@dataclass(frozen=True)
class PointLocation:
    """Classification of a point against the fundamental octagon."""
    kind: LocationKind
    index: Optional[int] = None

    def __str__(self) -> str:
        if self.index is None:
            return self.kind.value
        return f"{self.kind.value}({self.index})"


@dataclass(frozen=True)
class SidePairing:
    """
    Generator `generator` maps side `side` onto side `partner`.

    With flip set, the first endpoint of `side` (corner side) lands on the
    second endpoint of `partner` (corner partner + 1).
    """
    side: int
    partner: int
    generator: int
    flip: bool

    def to_dict(self) -> Dict[str, object]:
        return {"side": self.side, "partner": self.partner, "generator": self.generator, "flip": self.flip}


# ==============================
# Fundamental octagon
# ==============================


@dataclass(frozen=True, eq=False)
class FundamentalOctagon:
    """
    Regular fundamental polygon in the Klein disk.

    Attributes
    ----------
    corners : tuple of DiskPoint
        Klein corners in counterclockwise order.
    sides : tuple of KleinChord
        Side k joins corner k to corner k + 1, normal pointing outward.
    """
    corners: Tuple[DiskPoint, ...]
    sides: Tuple[KleinChord, ...]

    @classmethod
    def regular(cls, count: int, radius: float, phase: float) -> "FundamentalOctagon":
        corners = tuple(DiskPoint.from_polar(radius, phase + 2.0 * math.pi * k / count) for k in range(count))
        sides = tuple(KleinChord.through(corners[k], corners[(k + 1) % count]) for k in range(count))
        return cls(corners, sides)

    @property
    def count(self) -> int:
        return len(self.corners)

    @cached_property
    def _normals(self) -> np.ndarray:
        return np.array([[s.u, s.v] for s in self.sides])

    @cached_property
    def _offsets(self) -> np.ndarray:
        return np.array([s.r for s in self.sides])

    @property
    def apothem(self) -> float:
        return float(np.min(self._offsets))

    def corner_array(self) -> np.ndarray:
        return np.array([[c.x, c.y] for c in self.corners])

    def signed_distances(self, x: float, y: float) -> np.ndarray:
        return self._normals @ np.array([x, y]) - self._offsets

    def classify_xy(self, x: float, y: float, tol: float = BOUNDARY_TOL) -> PointLocation:
        d = self.signed_distances(x, y)
        if np.any(d > tol):
            return PointLocation(LocationKind.OUTSIDE)
        on = [k for k in range(self.count) if abs(d[k]) <= tol]
        if not on:
            return PointLocation(LocationKind.INSIDE)
        for k in on:
            if (k + 1) % self.count in on:
                return PointLocation(LocationKind.ON_CORNER, (k + 1) % self.count)
        return PointLocation(LocationKind.ON_SIDE, on[0])

    def classify(self, p: DiskPoint, tol: float = BOUNDARY_TOL) -> PointLocation:
        p.require(DiskModel.KLEIN, "contains")
        return self.classify_xy(p.x, p.y, tol)

    def area(self) -> float:
        """Euclidean (shoelace) area in the Klein disk."""
        xy = self.corner_array()
        x, y = xy[:, 0], xy[:, 1]
        return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))

    def to_dict(self) -> Dict[str, object]:
        return {
            "corners": [[c.x, c.y] for c in self.corners],
            "sides": [s.to_dict() for s in self.sides],
        }


@dataclass(frozen=True)
class Tile:
    """Image of the fundamental octagon under one group element."""
    element: GroupElement
    corners: Tuple[DiskPoint, ...]

    def to_dict(self) -> Dict[str, object]:
        return {
            "word": list(self.element.word),
            "matrix": self.element.klein.matrix.tolist(),
            "corners": [[c.x, c.y] for c in self.corners],
        }


# ==============================
# The group
# ==============================


class FuchsianGroup:
    """
    A Fuchsian group with paired-side regular fundamental polygon.

    Side pairings and corner elements are discovered at construction by
    transforming side endpoints with the generators and matching them.

    Parameters
    ----------
    parameters : GroupParameters
        Generator data from the GroupRegistry.
    """

    def __init__(self, parameters: GroupParameters):
        self.parameters = parameters
        self.count = parameters.generator_count
        self.identity = GroupElement((), Collineation.identity(), PoincareMatrix.identity())
        self.generators: Tuple[GroupElement, ...] = tuple(
            self._build_generator(k) for k in range(self.count)
        )
        self._generator_stack = np.stack([g.klein.matrix for g in self.generators])
        self.octagon = FundamentalOctagon.regular(
            self.count, parameters.klein_corner_radius, parameters.corner_phase
        )
        self._word_cache: Dict[Word, GroupElement] = {(): self.identity}
        self.side_pairings: Tuple[SidePairing, ...] = self._discover_side_pairings()
        self.corner_elements: Tuple[GroupElement, ...] = self._discover_corner_elements()

    # ---- construction ----

    def _build_generator(self, k: int) -> GroupElement:
        a, b = self.parameters.poincare_generators[k]
        poincare = PoincareMatrix.from_su11(a, b)
        if poincare.det() != FieldComplex(ONE):
            raise DegenerateGeometryError(f"Generator {k} is not in SU(1,1).")
        klein = Collineation.from_exact(self.parameters.klein_generators[k])
        if not klein.preserves_lorentz_form():
            raise DegenerateGeometryError(f"Klein generator {k} does not preserve the Lorentz form.")
        if klein.canonical_key() != su11_to_klein(a, b).canonical_key():
            raise DegenerateGeometryError(f"Klein and Poincaré data of generator {k} disagree.")
        return GroupElement((k,), klein, poincare)

    def _discover_side_pairings(self) -> Tuple[SidePairing, ...]:
        corners = self.octagon.corner_array()
        n = self.count
        pairings = []
        for k, g in enumerate(self.generators):
            for side in range(n):
                p0, p1 = corners[side], corners[(side + 1) % n]
                q0 = np.array(g.klein.apply_xy(*p0))
                q1 = np.array(g.klein.apply_xy(*p1))
                for partner in range(n):
                    c0, c1 = corners[partner], corners[(partner + 1) % n]
                    if np.allclose(q0, c0, atol=PAIRING_TOL) and np.allclose(q1, c1, atol=PAIRING_TOL):
                        pairings.append(SidePairing(side, partner, k, False))
                    elif np.allclose(q0, c1, atol=PAIRING_TOL) and np.allclose(q1, c0, atol=PAIRING_TOL):
                        pairings.append(SidePairing(side, partner, k, True))
        sources = sorted(p.side for p in pairings)
        if sources != list(range(n)):
            raise DegenerateGeometryError(
                "Generators do not pair the octagon sides.",
                details={"pairings": [p.to_dict() for p in pairings]},
            )
        pairings.sort(key=lambda p: p.side)
        canonical = set(self.parameters.canonical_sides)
        for p in pairings:
            if (p.side in canonical) == (p.partner in canonical):
                raise DegenerateGeometryError(
                    "Side pairing does not cross the canonical half of the boundary.",
                    details=p.to_dict(),
                )
            logger.debug("Side %d -> side %d by g%d (flip=%s)", p.side, p.partner, p.generator, p.flip)
        return tuple(pairings)

    def _discover_corner_elements(self) -> Tuple[GroupElement, ...]:
        n = self.count
        found: Dict[int, GroupElement] = {0: self.identity}
        queue = deque([0])
        while queue:
            corner = queue.popleft()
            h = found[corner]
            for p in self.side_pairings:
                ends = (p.side, (p.side + 1) % n)
                if corner not in ends:
                    continue
                first = ends.index(corner) == 0
                image = p.partner if first != p.flip else (p.partner + 1) % n
                if image in found:
                    continue
                # h' = h g^{-1} sends the image corner back to corner 0
                found[image] = self.mul(h, self.inv(self.generators[p.generator]))
                queue.append(image)
        if len(found) != n:
            raise DegenerateGeometryError("Corners do not form a single orbit.", details={"found": sorted(found)})
        return tuple(found[j] for j in range(n))

    # ---- words and products ----

    def inverse_index(self, k: int) -> int:
        return self.parameters.inverse_index(k)

    def reduce_word(self, word: Sequence[int]) -> Word:
        """Free reduction: cancel adjacent (k, k + offset) pairs."""
        stack: List[int] = []
        for k in word:
            if stack and stack[-1] == self.inverse_index(k):
                stack.pop()
            else:
                stack.append(k)
        return tuple(stack)

    def mul(self, g: GroupElement, h: GroupElement) -> GroupElement:
        return GroupElement(
            self.reduce_word(g.word + h.word),
            g.klein @ h.klein,
            g.poincare @ h.poincare,
        )

    def inv(self, g: GroupElement) -> GroupElement:
        return GroupElement(
            tuple(self.inverse_index(k) for k in reversed(g.word)),
            g.klein.inverse(),
            g.poincare.inverse(),
        )

    def element_from_word(self, word: Sequence[int]) -> GroupElement:
        """Exact element of a word, cached by reduced word."""
        reduced = self.reduce_word(word)
        cached = self._word_cache.get(reduced)
        if cached is not None:
            return cached
        element = self.mul(self.element_from_word(reduced[:-1]), self.generators[reduced[-1]])
        self._word_cache[reduced] = element
        return element

    def generator(self, k: int) -> GroupElement:
        if not 0 <= k < self.count:
            raise ValueError(f"Generator index must lie in 0..{self.count - 1}, got {k}.")
        return self.generators[k]

    # ---- enumeration ----

    def _expand(self, max_word_length: int, dedup: str) -> Tuple[List[GroupElement], List[Word]]:
        if max_word_length < 0:
            raise ValueError("max_word_length must be non-negative.")
        if dedup == "exact":
            key = lambda g: g.key  # noqa: E731
        elif dedup == "float":
            key = lambda g: g.klein.float_key()  # noqa: E731
        else:
            raise ValueError(f"Unknown dedup mode: {dedup!r}")

        seen: Dict[tuple, GroupElement] = {key(self.identity): self.identity}
        elements = [self.identity]
        relations: List[Word] = []
        frontier = [self.identity]
        for _ in range(max_word_length):
            next_frontier = []
            for g in frontier:
                last = g.word[-1] if g.word else None
                for k, gen in enumerate(self.generators):
                    if last is not None and k == self.inverse_index(last):
                        continue
                    h = GroupElement(g.word + (k,), g.klein @ gen.klein, g.poincare @ gen.poincare)
                    hk = key(h)
                    if hk in seen:
                        witness = seen[hk]
                        relation = self.reduce_word(h.word + self.inv(witness).word)
                        if relation and relation not in relations:
                            relations.append(relation)
                        continue
                    seen[hk] = h
                    elements.append(h)
                    next_frontier.append(h)
            frontier = next_frontier
        logger.debug(
            "Enumerated %d elements up to word length %d (%s dedup, %d relations)",
            len(elements), max_word_length, dedup, len(relations),
        )
        return elements, relations

    def enumerate_elements(self, max_word_length: int, dedup: str = "exact") -> Tuple[GroupElement, ...]:
        """
        Distinct elements representable by words of length at most L.

        Parameters
        ----------
        max_word_length : int
            Word length bound L, at most MAX_WORD_LENGTH.
        dedup : {"exact", "float"}
            Exact up-to-scalar matrix equality, or a hash of the normalized
            float matrix rounded to FLOAT_HASH_RESOLUTION.

        Returns
        -------
        tuple of GroupElement
            Elements in breadth-first order, each with a shortest word.
        """
        if max_word_length > MAX_WORD_LENGTH:
            raise ValueError(f"max_word_length must be at most {MAX_WORD_LENGTH}.")
        elements, _ = self._expand(max_word_length, dedup)
        return tuple(elements)

    def find_relations(self, max_length: int = 8) -> List[Word]:
        """
        Nontrivial reduced words of length at most max_length equal to the identity.

        Meets in the middle: two words of length at most max_length // 2 with
        the same matrix give the relation u v^{-1}.
        """
        _, relations = self._expand(max_length // 2, "exact")
        relations = sorted(r for r in relations if len(r) <= max_length)
        for r in relations:
            logger.info("Relation of length %d: %s", len(r), r)
        return relations

    def tile(self, depth: int) -> List[Tile]:
        """Images of the fundamental octagon under all elements up to word length depth."""
        if not 0 <= depth <= MAX_TILE_DEPTH:
            raise ValueError(f"Tiling depth must lie in 0..{MAX_TILE_DEPTH}, got {depth}.")
        elements, _ = self._expand(depth, "exact")
        return [Tile(g, tuple(g.klein.apply(c) for c in self.octagon.corners)) for g in elements]

    # ---- canonicalization ----

    def _depth_estimate(self, x: float, y: float) -> int:
        inradius = math.atanh(self.octagon.apothem)
        return 1 + math.ceil(distance_from_origin(DiskPoint.klein(x, y)) / inradius)

    def _apply_float(self, k: int, x: float, y: float) -> Tuple[float, float]:
        m = self._generator_stack[k]
        w = m[2, 0] * x + m[2, 1] * y + m[2, 2]
        return (m[0, 0] * x + m[0, 1] * y + m[0, 2]) / w, (m[1, 0] * x + m[1, 1] * y + m[1, 2]) / w

    def reduce_xy(self, x: float, y: float) -> Tuple[Word, float, float]:
        """
        Float reduction of (x, y) into the half-open fundamental domain.

        Returns
        -------
        word : tuple of int
            Reduced word of the element g with g(x, y) in the domain.
        x, y : float
            The reduced point.

        Raises
        ------
        CanonicalizationError
            If the iteration cap is hit or descent stalls outside the domain.
        """
        cap = 10 * self._depth_estimate(x, y)
        applied: List[int] = []
        location = self.octagon.classify_xy(x, y)
        while location.kind is LocationKind.OUTSIDE:
            if len(applied) >= cap:
                raise CanonicalizationError(
                    "Reduction into the fundamental domain did not terminate.",
                    details={"point": (x, y), "iterations": len(applied)},
                )
            vec = np.array([x, y, 1.0])
            images = self._generator_stack @ vec
            xs, ys = images[:, 0] / images[:, 2], images[:, 1] / images[:, 2]
            k = int(np.argmin(xs * xs + ys * ys))
            if xs[k] ** 2 + ys[k] ** 2 >= x * x + y * y:
                location = self.octagon.classify_xy(x, y, tol=1e3 * BOUNDARY_TOL)
                if location.kind is LocationKind.OUTSIDE:
                    raise CanonicalizationError(
                        "Descent stalled outside the fundamental domain.",
                        details={"point": (x, y), "iterations": len(applied)},
                    )
                break
            x, y = float(xs[k]), float(ys[k])
            applied.append(k)
            location = self.octagon.classify_xy(x, y)

        if location.kind is LocationKind.ON_SIDE and location.index not in self.parameters.canonical_sides:
            pairing = self.side_pairings[location.index]
            x, y = self._apply_float(pairing.generator, x, y)
            applied.append(pairing.generator)
        elif location.kind is LocationKind.ON_CORNER and location.index != 0:
            h = self.corner_elements[location.index]
            for k in reversed(h.word):
                x, y = self._apply_float(k, x, y)
                applied.append(k)
        return self.reduce_word(tuple(reversed(applied))), x, y

    def canonicalize(self, p: DiskPoint) -> Tuple[GroupElement, DiskPoint]:
        """
        Reduce a Klein point into the fundamental octagon.

        Greedy descent applies, while p lies outside, the generator whose
        image is Euclidean-closest to the origin.

        Returns
        -------
        g : GroupElement
            Exact element with g(p) = q.
        q : DiskPoint
            Point of the half-open fundamental domain.
        """
        p.require(DiskModel.KLEIN, "canonicalize")
        if not p.is_interior:
            raise CanonicalizationError("Point is not interior to the disk.", details=p.to_dict())
        word, x, y = self.reduce_xy(p.x, p.y)
        return self.element_from_word(word), DiskPoint.klein(x, y)


# ==============================
# Operation surface
# ==============================


@lru_cache(maxsize=None)
def get_group(signature: GroupSignature = GroupSignature.BOLZA) -> FuchsianGroup:
    """Shared group instance for a registered signature."""
    return FuchsianGroup(GroupRegistry.get_parameters(signature))


def bolza_group() -> FuchsianGroup:
    return get_group(GroupSignature.BOLZA)


def bolza_generator(k: int, model: Union[DiskModel, str] = DiskModel.KLEIN):
    """
    Exact generator g_k of the Bolza group.

    Returns
    -------
    Collineation or PoincareMatrix
        The Klein or Poincaré component of g_k.
    """
    g = bolza_group().generator(k)
    return g.poincare if DiskModel(model) is DiskModel.POINCARE else g.klein


def group_mul(g: GroupElement, h: GroupElement) -> GroupElement:
    return bolza_group().mul(g, h)


def group_inv(g: GroupElement) -> GroupElement:
    return bolza_group().inv(g)


def enumerate_elements(max_word_length: int, dedup: str = "exact") -> Tuple[GroupElement, ...]:
    return bolza_group().enumerate_elements(max_word_length, dedup)


def find_relations(max_length: int = 8) -> List[Word]:
    return bolza_group().find_relations(max_length)


def tile(depth: int) -> List[Tile]:
    return bolza_group().tile(depth)


def contains(octagon: FundamentalOctagon, p: DiskPoint, tol: float = BOUNDARY_TOL) -> PointLocation:
    """Classify p as inside, on_side(k), on_corner(k) or outside."""
    return octagon.classify(p, tol)


def canonicalize(p: DiskPoint) -> Tuple[GroupElement, DiskPoint]:
    return bolza_group().canonicalize(p)


def side_pairings() -> Tuple[SidePairing, ...]:
    return bolza_group().side_pairings


def corner_elements() -> Tuple[GroupElement, ...]:
    return bolza_group().corner_elements


def element_from_word(word: Sequence[int]) -> GroupElement:
    return bolza_group().element_from_word(word)
