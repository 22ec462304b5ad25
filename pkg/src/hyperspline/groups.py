# src\hyperspline\groups.py

import math
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Tuple, Union

from .field import (
    BETA,
    SQRT2,
    ZERO,
    FieldComplex,
    cos_quarter_pi,
    sin_quarter_pi,
    unit_root_eighth,
)
from .models import ExactMatrix

class GroupSignature(Enum):
    """Surface groups whose generators are known in closed form."""
    BOLZA = "Bolza genus-2 octagon group"


@dataclass(frozen=True)
class GroupParameters:
    """
    Generator data of a Fuchsian group with a regular polygonal fundamental domain.

    Attributes
    ----------
    name : str
        Display name.
    poincare_generators : tuple of (FieldComplex, FieldComplex)
        SU(1,1) pairs (a, b) of each generator z -> (a z + b) / (conj(b) z + conj(a)).
    klein_generators : tuple of exact 3x3 matrices
        The same generators as Klein collineations.
    inverse_offset : int
        Generator k has inverse k + inverse_offset (mod generator count).
    poincare_corner_radius : float
        Euclidean radius of the polygon corners in the Poincaré disk.
    klein_corner_radius : float
        Euclidean radius of the polygon corners in the Klein disk.
    corner_phase : float
        Polar angle of corner 0; corner k sits at corner_phase + 2*pi*k/count.
    canonical_sides : tuple of int
        Sides whose points belong to the half-open fundamental domain.
    """
    name: str
    poincare_generators: Tuple[Tuple[FieldComplex, FieldComplex], ...]
    klein_generators: Tuple[ExactMatrix, ...]
    inverse_offset: int
    poincare_corner_radius: float
    klein_corner_radius: float
    corner_phase: float
    canonical_sides: Tuple[int, ...]

    @property
    def generator_count(self) -> int:
        return len(self.poincare_generators)

    def inverse_index(self, k: int) -> int:
        return (k + self.inverse_offset) % self.generator_count

    def to_dict(self) -> Dict[str, object]:
        return {
            "name": self.name,
            "generator_count": self.generator_count,
            "inverse_offset": self.inverse_offset,
            "poincare_corner_radius": self.poincare_corner_radius,
            "klein_corner_radius": self.klein_corner_radius,
            "corner_phase": self.corner_phase,
            "canonical_sides": list(self.canonical_sides),
        }


def bolza_poincare_pair(k: int) -> Tuple[FieldComplex, FieldComplex]:
    """
    SU(1,1) pair of g_k = [[beta^2, e^{ik pi/4} sqrt2 beta], [e^{-ik pi/4} sqrt2 beta, beta^2]].
    """
    a = FieldComplex(BETA * BETA, ZERO)
    b = unit_root_eighth(k) * FieldComplex(SQRT2 * BETA, ZERO)
    return a, b


def bolza_klein_matrix(k: int) -> ExactMatrix:
    """
    Klein collineation of g_k written directly in 3 + 2 sqrt2, 2 + 2 sqrt2,
    (2 + 2 sqrt2)^{3/2} and 5 + 4 sqrt2.
    """
    p = 3 + 2 * SQRT2
    q = 2 + 2 * SQRT2
    # sqrt(2 + 2 sqrt2) = sqrt2 * beta
    r = q * SQRT2 * BETA
    s = 5 + 4 * SQRT2
    c2, s2 = cos_quarter_pi(2 * k), sin_quarter_pi(2 * k)
    c4, s4 = cos_quarter_pi(k), sin_quarter_pi(k)
    return (
        (p + q * c2, q * s2, r * c4),
        (q * s2, p - q * c2, r * s4),
        (r * c4, r * s4, s),
    )


def _bolza_parameters() -> GroupParameters:
    u = 2.0 ** -0.25
    return GroupParameters(
        name=GroupSignature.BOLZA.value,
        poincare_generators=tuple(bolza_poincare_pair(k) for k in range(8)),
        klein_generators=tuple(bolza_klein_matrix(k) for k in range(8)),
        inverse_offset=4,
        poincare_corner_radius=u,
        klein_corner_radius=(2.0 * math.sqrt(2.0) - 2.0) * 2.0 ** 0.25,
        corner_phase=math.pi / 8.0,
        canonical_sides=(0, 1, 2, 3),
    )


class GroupRegistry:
    """
    Lookup table from group signature to exact generator data.

    Generator matrices are built once at import, so every FuchsianGroup
    shares the same exact field elements.
    """

    _PARAMETERS: Dict[GroupSignature, GroupParameters] = {
        GroupSignature.BOLZA: _bolza_parameters(),
    }

    @classmethod
    def get_parameters(cls, signature: Union[GroupSignature, str]) -> GroupParameters:
        """
        Generator data of a built-in group.

        Parameters
        ----------
        signature : GroupSignature or str
            The group, by enum member or display name.

        Raises
        ------
        KeyError
            If no built-in group has that signature.
        """
        try:
            key = signature if isinstance(signature, GroupSignature) else GroupSignature(signature)
        except ValueError:
            raise KeyError(f"No generator data for group {signature!r}.") from None
        return cls._PARAMETERS[key]
