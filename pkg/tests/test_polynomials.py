# tests\test_polynomials.py

import numpy as np
import pytest

from hyperspline.exceptions import DegenerateGeometryError
from hyperspline.fuchsian import bolza_generator
from hyperspline.models import DiskPoint, collineation_apply, rotation_collineation
from hyperspline.polynomials import (
    BivariatePolynomial,
    LineForm,
    divisibility_matrix,
    embedding_matrix,
    monomial_count,
    monomials,
    multiplication_matrix,
    poly_eval,
    rotate_from_line,
    rotate_to_line,
)
from hyperspline.spline import pullback


def random_polynomial(rng, n):
    return BivariatePolynomial(n, rng.normal(size=monomial_count(n)))


def test_monomial_order_is_graded_lex():
    assert monomials(2) == ((0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2))
    assert monomial_count(3) == 10
    assert monomial_count(-1) == 0


def test_from_terms_and_evaluation():
    p = BivariatePolynomial.from_terms({(0, 0): 1.0, (2, 0): 3.0, (1, 1): -2.0})
    assert p.degree == 2
    assert p(2.0, 0.5) == pytest.approx(1.0 + 12.0 - 2.0)
    values = poly_eval(p, np.array([0.0, 1.0]), np.array([0.0, 1.0]))
    np.testing.assert_allclose(values, [1.0, 2.0])
    with pytest.raises(ValueError):
        BivariatePolynomial.from_terms({(3, 0): 1.0}, n=2)


def test_constructor_checks_coefficient_count():
    with pytest.raises(ValueError):
        BivariatePolynomial(2, np.zeros(5))
    with pytest.raises(ValueError):
        BivariatePolynomial(-1, np.zeros(0))


def test_arithmetic_matches_pointwise_values(rng):
    p, q = random_polynomial(rng, 2), random_polynomial(rng, 3)
    x, y = rng.uniform(-1, 1, size=2)
    assert (p + q)(x, y) == pytest.approx(p(x, y) + q(x, y))
    assert (p - q)(x, y) == pytest.approx(p(x, y) - q(x, y))
    assert (p * q)(x, y) == pytest.approx(p(x, y) * q(x, y))
    assert (2.5 * p)(x, y) == pytest.approx(2.5 * p(x, y))
    assert (p ** 3)(x, y) == pytest.approx(p(x, y) ** 3)
    assert (p * q).degree == 5


def test_line_normalization():
    line = LineForm.from_coefficients(-3.0, -4.0, 5.0)
    assert (line.alpha, line.beta, line.gamma) == pytest.approx((0.6, 0.8, -1.0))
    through = LineForm.through((0.0, 1.0), (1.0, 1.0))
    assert through(0.3, 1.0) == pytest.approx(0.0)
    assert abs(through.beta) == pytest.approx(1.0)
    with pytest.raises(DegenerateGeometryError):
        LineForm.from_coefficients(0.0, 0.0, 1.0)
    with pytest.raises(DegenerateGeometryError):
        LineForm.through((0.2, 0.2), (0.2, 0.2))


def test_rotation_round_trip(rng):
    line = LineForm.through((0.1, -0.2), (0.4, 0.3))
    p = random_polynomial(rng, 3)
    back = rotate_from_line(rotate_to_line(p, line), line)
    np.testing.assert_allclose(back.coeffs, p.coeffs, atol=1e-12)


def test_divisibility_rows_detect_line_factor(rng):
    line = LineForm.through((0.0, 0.3), (0.5, -0.1))
    n, r = 4, 1
    rows, tags = divisibility_matrix(line, n, r)
    assert len(tags) == sum(n - m + 1 for m in range(r + 1))
    divisible = BivariatePolynomial.from_line(line) ** (r + 1) * random_polynomial(rng, n - r - 1)
    assert np.max(np.abs(rows @ divisible.coeffs)) < 1e-12
    not_divisible = BivariatePolynomial.from_line(line) * random_polynomial(rng, n - 1)
    assert np.max(np.abs(rows @ not_divisible.coeffs)) > 1e-6


def test_embedding_and_multiplication_matrices(rng):
    p, f = random_polynomial(rng, 2), random_polynomial(rng, 1)
    np.testing.assert_allclose(embedding_matrix(2, 4) @ p.coeffs, p.raise_degree(4).coeffs)
    np.testing.assert_allclose(multiplication_matrix(f, 2) @ p.coeffs, (f * p).coeffs, atol=1e-14)


def test_pullback_agrees_with_composition(group, rng):
    for k in range(8):
        g = group.generator(k).klein
        for n in (1, 2, 4):
            p = random_polynomial(rng, n)
            u, v = pullback(p, g)
            r = 0.8 * np.sqrt(rng.uniform(size=100))
            t = rng.uniform(0.0, 2 * np.pi, size=100)
            x, y = r * np.cos(t), r * np.sin(t)
            gx, gy = g.apply_xy(x, y)
            np.testing.assert_allclose(u(x, y) / v(x, y), p(gx, gy), rtol=1e-10, atol=1e-10)


def test_pullback_of_x_by_first_generator():
    g = bolza_generator(0)
    u, v = pullback(BivariatePolynomial.from_terms({(1, 0): 1.0}), g)
    image = collineation_apply(g, DiskPoint.klein(0.1, 0.2))
    assert abs(u(0.1, 0.2) / v(0.1, 0.2) - image.x) < 1e-12

    c = BivariatePolynomial.constant(2.5, 3)
    u, v = pullback(c, g)
    np.testing.assert_allclose(u.coeffs, 2.5 * v.coeffs, atol=1e-9)


def test_pullback_by_rotation_has_constant_denominator(rng):
    g = rotation_collineation(0.7)
    p = random_polynomial(rng, 3)
    u, v = pullback(p, g)
    np.testing.assert_allclose(v.coeffs, np.eye(1, v.coeffs.size).ravel(), atol=1e-15)
    q = DiskPoint.klein(0.2, 0.1)
    image = g.apply(q)
    assert u(q.x, q.y) == pytest.approx(p(image.x, image.y))


def test_polynomial_dict_round_trip(rng):
    p = random_polynomial(rng, 2)
    q = BivariatePolynomial.from_dict(p.to_dict())
    np.testing.assert_array_equal(q.coeffs, p.coeffs)
