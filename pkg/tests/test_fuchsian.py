# tests\test_fuchsian.py

import math

import numpy as np
import pytest

from hyperspline.exceptions import CanonicalizationError, ModelMismatchError
from hyperspline.field import ONE, FieldComplex
from hyperspline.fuchsian import (
    LocationKind,
    PoincareMatrix,
    bolza_generator,
    canonicalize,
    contains,
    corner_elements,
    element_from_word,
    enumerate_elements,
    find_relations,
    group_inv,
    group_mul,
    side_pairings,
    tile,
)
from hyperspline.groups import GroupRegistry, GroupSignature, bolza_klein_matrix, bolza_poincare_pair
from hyperspline.models import Collineation, DiskModel, DiskPoint, poincare_to_klein, su11_to_klein

from conftest import random_octagon_points


# ==============================
# Generator data
# ==============================

def test_poincare_corners_match_klein_corners(group):
    params = group.parameters
    for k in range(8):
        angle = math.pi / 8 + k * math.pi / 4
        p = DiskPoint.from_polar(2.0 ** -0.25, angle, DiskModel.POINCARE)
        assert poincare_to_klein(p).distance_to(group.octagon.corners[k]) < 1e-12
    assert params.klein_corner_radius == pytest.approx((2 * math.sqrt(2) - 2) * 2 ** 0.25, rel=1e-15)


def test_generators_are_exact_isometries(group):
    for k in range(8):
        g = group.generator(k)
        assert g.poincare.det() == FieldComplex(ONE)
        assert g.klein.is_exact
        assert g.klein.preserves_lorentz_form()
        assert group.mul(g, group.generator((k + 4) % 8)).is_identity


def test_klein_generators_match_su11_conversion():
    for k in range(8):
        a, b = bolza_poincare_pair(k)
        converted = su11_to_klein(a, b)
        direct = Collineation.from_exact(bolza_klein_matrix(k))
        assert converted.canonical_key() == direct.canonical_key()


def test_generators_commute_with_model_conversion(group, rng):
    points = [DiskPoint.from_polar(r, t, DiskModel.POINCARE)
              for r, t in zip(0.6 * rng.uniform(size=100), rng.uniform(0, 2 * np.pi, size=100))]
    for k in range(8):
        g = group.generator(k)
        for p in points:
            image = g.apply(p)
            assert image.model is DiskModel.POINCARE
            assert poincare_to_klein(image).distance_to(g.apply(poincare_to_klein(p))) < 1e-10


def test_bolza_generator_returns_requested_model():
    assert isinstance(bolza_generator(3), Collineation)
    assert isinstance(bolza_generator(3, "poincare"), PoincareMatrix)


def test_generator_index_out_of_range(group):
    with pytest.raises(ValueError):
        group.generator(8)


def test_registry_lookup():
    bolza = GroupRegistry.get_parameters("Bolza genus-2 octagon group")
    assert bolza is GroupRegistry.get_parameters(GroupSignature.BOLZA)
    assert bolza.generator_count == 8
    assert bolza.inverse_index(6) == 2
    with pytest.raises(KeyError):
        GroupRegistry.get_parameters("Klein quartic")


# ==============================
# Words and products
# ==============================

def test_group_mul_and_inverse(group):
    g = element_from_word((0, 3, 5))
    h = element_from_word((2, 7))
    gh = group_mul(g, h)
    assert gh.word == (0, 3, 5, 2, 7)
    assert group_mul(gh, group_inv(gh)).is_identity
    assert group_inv(g).word == (1, 7, 4)


def test_word_convention_last_letter_acts_first(group):
    p = DiskPoint.klein(0.05, 0.02)
    g = element_from_word((1, 2))
    expected = group.generator(1).apply(group.generator(2).apply(p))
    assert g.apply(p).distance_to(expected) < 1e-12


def test_reduce_word_cancels_inverse_pairs(group):
    assert group.reduce_word((0, 4, 1, 2, 7, 5)) == (1, 2, 7, 5)
    assert group.reduce_word((3, 7)) == ()
    assert element_from_word((2, 6, 6, 2)).is_identity


# ==============================
# Enumeration
# ==============================

def test_element_counts_for_small_lengths():
    assert [len(enumerate_elements(L)) for L in range(3)] == [1, 9, 65]


def test_exact_and_float_dedup_agree():
    exact = enumerate_elements(3, dedup="exact")
    floats = enumerate_elements(3, dedup="float")
    assert len(exact) == len(floats) == 457


def test_enumeration_rejects_bad_arguments():
    with pytest.raises(ValueError):
        enumerate_elements(2, dedup="fuzzy")
    with pytest.raises(ValueError):
        enumerate_elements(-1)
    with pytest.raises(ValueError):
        enumerate_elements(7)


def test_no_short_relations():
    assert find_relations(6) == []


@pytest.mark.slow
def test_length_eight_relations_are_identities(group):
    relations = find_relations(8)
    assert relations
    for r in relations:
        assert len(r) == 8
        assert element_from_word(r).is_identity


# ==============================
# Side pairings and tiling
# ==============================

def test_side_pairings_follow_generator_pattern(group):
    corners = group.octagon.corner_array()
    pairings = side_pairings()
    assert [p.side for p in pairings] == list(range(8))
    for p in pairings:
        assert p.partner == (p.side + 4) % 8
        assert p.generator == (p.side + 5) % 8
        g = group.generator(p.generator).klein
        q0 = np.array(g.apply_xy(*corners[p.side]))
        q1 = np.array(g.apply_xy(*corners[(p.side + 1) % 8]))
        a, b = corners[p.partner], corners[(p.partner + 1) % 8]
        if p.flip:
            a, b = b, a
        np.testing.assert_allclose(q0, a, atol=1e-10)
        np.testing.assert_allclose(q1, b, atol=1e-10)


def test_corner_elements_send_corners_to_corner_zero(group):
    elements = corner_elements()
    assert elements[0].is_identity
    for j, h in enumerate(elements):
        assert h.apply(group.octagon.corners[j]).distance_to(group.octagon.corners[0]) < 1e-10


def test_depth_one_tiling(group):
    tiles = tile(1)
    assert len(tiles) == 9
    assert len({t.element.key for t in tiles}) == 9
    central = group.octagon.corner_array()
    for t in tiles[1:]:
        xy = np.array([[c.x, c.y] for c in t.corners])
        shared = [k for k in range(8) if np.min(np.linalg.norm(xy - central[k], axis=1)) < 1e-10]
        assert len(shared) == 2
        assert (shared[1] - shared[0]) % 8 in (1, 7)


def test_tiling_depth_limits():
    assert len(tile(0)) == 1
    with pytest.raises(ValueError):
        tile(6)


def test_tile_interiors_are_disjoint(group, rng):
    tiles = tile(2)
    corners = group.octagon.corner_array()
    sides = np.roll(corners, -1, axis=0) - corners
    pts = np.array([[p.x, p.y, 1.0] for p in random_octagon_points(group, rng, 10)]).T
    for a in tiles:
        for b in tiles:
            if a is b:
                continue
            h = np.linalg.solve(b.element.klein.matrix, a.element.klein.matrix) @ pts
            xy = (h[:2] / h[2]).T
            # positive for every side only inside the octagon
            cross = sides[:, 0] * (xy[:, None, 1] - corners[:, 1]) - sides[:, 1] * (xy[:, None, 0] - corners[:, 0])
            assert np.all(cross.min(axis=1) < 0.0)


# ==============================
# Point location and canonicalization
# ==============================

def test_contains_classification(group):
    octagon = group.octagon
    assert contains(octagon, DiskPoint.klein(0.0, 0.0)).kind is LocationKind.INSIDE
    assert contains(octagon, octagon.corners[2]).kind is LocationKind.ON_CORNER
    assert contains(octagon, octagon.corners[2]).index == 2
    mid = DiskPoint.klein(*(0.5 * (octagon.corner_array()[5] + octagon.corner_array()[6])))
    location = contains(octagon, mid)
    assert location.kind is LocationKind.ON_SIDE and location.index == 5
    assert contains(octagon, DiskPoint.klein(0.95, 0.0)).kind is LocationKind.OUTSIDE
    with pytest.raises(ModelMismatchError):
        contains(octagon, DiskPoint.poincare(0.0, 0.0))


def test_canonicalize_round_trip_from_depth_two_tiles(group, rng):
    elements = [t.element for t in tile(2)]
    for p in random_octagon_points(group, rng, 1000):
        g = elements[int(rng.integers(len(elements)))]
        moved = g.apply(p)
        h, q = canonicalize(moved)
        assert q.distance_to(p) < 1e-9
        assert h.apply(moved).distance_to(q) < 1e-9


def test_canonicalize_is_invariant_under_generators(group, rng):
    radii = 0.99 * np.sqrt(rng.uniform(size=150))
    angles = rng.uniform(0.0, 2 * np.pi, size=150)
    for r, t in zip(radii, angles):
        p = DiskPoint.from_polar(r, t)
        _, q = canonicalize(p)
        for k in range(8):
            _, qk = canonicalize(group.generator(k).apply(p))
            assert qk.distance_to(q) < 1e-9


def test_canonicalize_maps_noncanonical_side_to_partner(group):
    corners = group.octagon.corner_array()
    for side in range(4, 8):
        mid = DiskPoint.klein(*(0.5 * (corners[side] + corners[(side + 1) % 8])))
        _, q = canonicalize(mid)
        location = contains(group.octagon, q, tol=1e-9)
        assert location.kind is LocationKind.ON_SIDE
        assert location.index == (side + 4) % 8


def test_canonicalize_sends_corners_to_corner_zero(group):
    for c in group.octagon.corners:
        _, q = canonicalize(c)
        assert q.distance_to(group.octagon.corners[0]) < 1e-9


def test_canonicalize_rejects_boundary_and_poincare_points():
    with pytest.raises(CanonicalizationError):
        canonicalize(DiskPoint.klein(1.0, 0.0))
    with pytest.raises(ModelMismatchError):
        canonicalize(DiskPoint.poincare(0.1, 0.0))
