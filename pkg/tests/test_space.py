# tests\test_space.py

import numpy as np
import pytest
from pydantic import ValidationError

from hyperspline import config
from hyperspline.exceptions import NumericalAgreementError, SplineSpaceError
from hyperspline.models import DiskPoint, klein_to_poincare
from hyperspline.partition import BoundaryPair, refine
from hyperspline.space import (
    PeriodicSpline,
    SplineBasis,
    SplineSpaceSpec,
    assemble,
    check_dimension_agreement,
    constant_spline,
    corner_continuity_deviation,
    dimension,
    evaluate_points,
    scaled_system,
    solve_basis,
    spline_eval,
    vertex_conformality_residual,
)
from hyperspline.spline import cofactor_check, interior_constraint_rows, periodic_constraint_rows

from conftest import random_octagon_points


@pytest.fixture(scope="module")
def linear_basis(star):
    spec = SplineSpaceSpec(partition=star, degree=1, smoothness=0)
    return solve_basis(assemble(spec))


# ==============================
# Constraint rows
# ==============================

def test_row_counts_per_edge(star):
    n, r = 2, 1
    interior = interior_constraint_rows(star, n, r, 0)
    periodic = periodic_constraint_rows(star, n, r, star.boundary_pairs[0])
    assert interior.row_count == sum(n - m + 1 for m in range(r + 1))
    assert periodic.row_count == sum(2 * n - m + 1 for m in range(r + 1))
    assert set(interior.blocks) == set(star.adjacency.edge_cells[0])


def test_rows_reject_wrong_edge_kind(star):
    with pytest.raises(SplineSpaceError):
        interior_constraint_rows(star, 1, 0, 8)
    bad = BoundaryPair(edge=0, partner=1, generator=0, flip=False)
    with pytest.raises(SplineSpaceError):
        periodic_constraint_rows(star, 1, 0, bad)


def test_periodic_rows_reject_identical_linear_pieces(star):
    pair = star.boundary_pairs[0]
    block = periodic_constraint_rows(star, 1, 0, pair)
    x = np.array([0.0, 1.0, 0.0])
    one = np.array([1.0, 0.0, 0.0])
    assert np.max(np.abs(sum(b @ x for b in block.blocks.values()))) > 1e-3
    assert np.max(np.abs(sum(b @ one for b in block.blocks.values()))) < 1e-10


def test_assembled_system_shape(star):
    system = assemble(SplineSpaceSpec(partition=star, degree=1, smoothness=0))
    assert system.column_count == 8 * 3
    assert system.counts() == {"interior": 16, "periodic": 12}
    assert system.row_count == 28
    np.testing.assert_allclose(np.linalg.norm(system.dense(), axis=1), 1.0)


def test_threaded_assembly_matches(star):
    spec = SplineSpaceSpec(partition=star, degree=2, smoothness=1)
    serial, threaded = assemble(spec), assemble(spec, max_workers=4)
    np.testing.assert_allclose(serial.dense(), threaded.dense())
    assert [t.to_dict() for t in serial.tags] == [t.to_dict() for t in threaded.tags]


def test_constants_satisfy_every_row(star):
    for n, r in [(0, 0), (1, 0), (2, 1), (3, 2)]:
        spec = SplineSpaceSpec(partition=star, degree=n, smoothness=r)
        system = assemble(spec)
        assert np.max(system.residuals(constant_spline(spec).coeffs)) < 1e-12


# ==============================
# Space specification
# ==============================

def test_spec_validation(star):
    with pytest.raises(ValidationError):
        SplineSpaceSpec(partition=star, degree=-1, smoothness=0)
    with pytest.raises(ValidationError):
        SplineSpaceSpec(partition=star, degree=1, smoothness=-2)
    with pytest.warns(UserWarning):
        SplineSpaceSpec(partition=star, degree=1, smoothness=1)


def test_trivial_dimensions(star):
    assert dimension(star, 0, 0) == 1
    assert dimension(star, 0, -1) == 8
    assert dimension(star, 2, -1) == 8 * 6


# ==============================
# Linear periodic splines
# ==============================

def test_linear_basis_is_a_valid_space(linear_basis):
    assert linear_basis.dimension >= 2
    assert np.max(linear_basis.residuals) < 1e-9
    check_dimension_agreement(linear_basis)
    gram = linear_basis.coefficients.T @ linear_basis.coefficients
    np.testing.assert_allclose(gram, np.eye(linear_basis.dimension), atol=1e-10)


def test_constants_lie_in_span(linear_basis):
    c = constant_spline(linear_basis.spec).coeffs
    np.testing.assert_allclose(linear_basis.project(c), c, atol=1e-9)


def test_linear_basis_is_periodic(linear_basis, group, rng):
    for p in random_octagon_points(group, rng, 100, shrink=0.999):
        base = linear_basis.evaluate(p)
        for k in range(8):
            shifted = linear_basis.evaluate(group.generator(k).apply(p))
            assert np.max(np.abs(shifted - base)) < 1e-9


def test_linear_basis_is_continuous_across_edges(linear_basis, star):
    for f in linear_basis.splines:
        for e in star.interior_edges:
            i, j = star.adjacency.edge_cells[e]
            assert cofactor_check(f.polynomial(i), f.polynomial(j), star.edges[e].line, 0, tol=1e-8) is not None
        assert vertex_conformality_residual(f, 0) < 1e-8
        assert corner_continuity_deviation(f) < 1e-8


def test_vertex_residual_rejects_boundary_vertex(linear_basis):
    with pytest.raises(SplineSpaceError):
        vertex_conformality_residual(linear_basis[0], 1)


def test_evaluation_accepts_poincare_points(linear_basis):
    f = linear_basis[0]
    p = DiskPoint.klein(0.12, -0.31)
    assert spline_eval(f, klein_to_poincare(p)) == pytest.approx(spline_eval(f, p), abs=1e-12)
    assert f(p) == spline_eval(f, p)
    values = evaluate_points(linear_basis, [p])
    assert values[0] == pytest.approx(list(linear_basis.evaluate(p)))


def test_dimension_invariant_under_row_scaling(star, rng):
    system = assemble(SplineSpaceSpec(partition=star, degree=2, smoothness=0))
    reference = solve_basis(system).dimension
    for _ in range(10):
        factors = 10.0 ** rng.uniform(-1.0, 1.0, size=system.row_count)
        assert solve_basis(scaled_system(system, factors)).dimension == reference


def test_basis_dict_round_trip(linear_basis):
    again = SplineBasis.from_dict(linear_basis.to_dict())
    assert again.dimension == linear_basis.dimension
    p = DiskPoint.klein(0.2, 0.05)
    np.testing.assert_allclose(again.evaluate(p), linear_basis.evaluate(p), atol=1e-14)


def test_basis_dict_rejects_mismatched_coefficients(linear_basis):
    data = linear_basis.to_dict()
    data["splines"][0]["cells"] = data["splines"][0]["cells"][:3]
    with pytest.raises(SplineSpaceError):
        SplineBasis.from_dict(data)


# ==============================
# Higher degree and refinement
# ==============================

def test_c1_quadratic_splines(star):
    basis = solve_basis(assemble(SplineSpaceSpec(partition=star, degree=2, smoothness=1)))
    assert basis.dimension >= 1
    assert np.max(basis.residuals) < 1e-9
    check_dimension_agreement(basis)


def _gradient(fun, x, y, h=1e-5):
    return np.array([
        (fun(x + h, y) - fun(x - h, y)) / (2 * h),
        (fun(x, y + h) - fun(x, y - h)) / (2 * h),
    ])


def test_c1_quintics_on_refined_star_are_smooth(star, rng):
    fine = refine(star)
    spec = SplineSpaceSpec(partition=fine, degree=5, smoothness=1)
    system = assemble(spec)
    # nullity is at least columns minus rows
    assert system.column_count - system.row_count >= 64
    basis = solve_basis(system, tol=1e-12, check_rank=False)
    assert basis.dimension >= 64

    xy = fine.vertex_array
    steepest = 0.0
    for _ in range(3):
        f = PeriodicSpline(spec, basis.coefficients @ rng.standard_normal(basis.dimension))
        for e in fine.interior_edges:
            i, j = fine.adjacency.edge_cells[e]
            a, b = fine.edges[e].v
            for t in (0.2, 0.5, 0.8):
                x, y = (1 - t) * xy[a] + t * xy[b]
                pi, pj = f.polynomial(i), f.polynomial(j)
                assert abs(pi(x, y) - pj(x, y)) < 1e-7
                gi = _gradient(pi, x, y)
                assert np.max(np.abs(gi - _gradient(pj, x, y))) < 1e-5
                steepest = max(steepest, float(np.max(np.abs(gi))))
        for bp in fine.boundary_pairs:
            i, j = fine.cell_of_edge(bp.edge), fine.cell_of_edge(bp.partner)
            back = bp.element().klein.inverse()
            pi, pj = f.polynomial(i), f.polynomial(j)

            def across(u, v):
                return pi(*back.apply_xy(u, v))

            a, b = fine.edges[bp.partner].v
            for t in (0.2, 0.5, 0.8):
                x, y = (1 - t) * xy[a] + t * xy[b]
                assert abs(across(x, y) - pj(x, y)) < 1e-7
                assert np.max(np.abs(_gradient(across, x, y) - _gradient(pj, x, y))) < 1e-5
    assert steepest > 1e-3


def test_residual_check_follows_strict_mode(star, monkeypatch):
    system = assemble(SplineSpaceSpec(partition=star, degree=1, smoothness=0))
    monkeypatch.setattr("hyperspline.space.RESIDUAL_TOL", -1.0)
    monkeypatch.setattr(config, "STRICT_MODE", True)
    with pytest.raises(NumericalAgreementError):
        solve_basis(system)
    monkeypatch.setattr(config, "STRICT_MODE", False)
    with pytest.warns(RuntimeWarning, match="Basis residual"):
        basis = solve_basis(system)
    assert basis.dimension >= 2


def test_refined_linear_splines_are_periodic(star, group, rng):
    fine = refine(star)
    basis = solve_basis(assemble(SplineSpaceSpec(partition=fine, degree=1, smoothness=0)))
    assert basis.dimension > 2
    check_dimension_agreement(basis)
    for p in random_octagon_points(group, rng, 20, shrink=0.999):
        for k in (0, 3, 6):
            shifted = basis.evaluate(group.generator(k).apply(p))
            assert np.max(np.abs(shifted - basis.evaluate(p))) < 1e-9


def test_linear_basis_matches_across_paired_sides(linear_basis, star, group):
    xy = star.vertex_array
    for bp in star.boundary_pairs:
        i, j = star.cell_of_edge(bp.edge), star.cell_of_edge(bp.partner)
        g = group.generator(bp.generator).klein
        a, b = star.edges[bp.edge].v
        for t in (0.0, 0.3, 0.5, 0.9):
            x, y = (1 - t) * xy[a] + t * xy[b]
            gx, gy = g.apply_xy(x, y)
            for f in linear_basis.splines:
                assert abs(f.polynomial(i)(x, y) - f.polynomial(j)(gx, gy)) < 1e-8


def test_constant_basis_evaluates_uniformly(star, group, rng):
    basis = solve_basis(assemble(SplineSpaceSpec(partition=star, degree=0, smoothness=0)))
    assert basis.dimension == 1
    values = [basis.evaluate(p)[0] for p in random_octagon_points(group, rng, 100)]
    np.testing.assert_allclose(values, values[0], atol=1e-12)
