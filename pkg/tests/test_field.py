# tests\test_field.py

import math
from fractions import Fraction

import numpy as np
import pytest

from hyperspline.exceptions import FieldArithmeticError
from hyperspline.field import (
    BETA,
    BETA_FLOAT,
    HALF_SQRT2,
    ONE,
    SQRT2,
    ZERO,
    AlgebraicNumber,
    FieldComplex,
    cos_quarter_pi,
    field_arith,
    sin_quarter_pi,
    to_float,
    unit_root_eighth,
)


def random_element(rng):
    return AlgebraicNumber.from_coefficients(
        [Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 6))) for _ in range(4)]
    )


def test_beta_squared_squared_reduces():
    b2 = BETA * BETA
    assert field_arith(b2, b2, "mul").coeffs == (1, 0, 2, 0)


def test_sqrt2_squares_to_two():
    assert (SQRT2 * SQRT2).coeffs == (2, 0, 0, 0)
    assert SQRT2 == AlgebraicNumber.from_coefficients([-1, 0, 1, 0])


def test_multiplicative_identity(rng):
    for _ in range(20):
        x = random_element(rng)
        assert field_arith(x, ONE, "mul") == x


def test_division_inverts_multiplication(rng):
    for _ in range(20):
        x, y = random_element(rng), random_element(rng)
        if y.is_zero():
            continue
        assert field_arith(field_arith(x, y, "mul"), y, "div") == x


def test_ring_axioms_on_random_elements(rng):
    for _ in range(30):
        x, y, z = random_element(rng), random_element(rng), random_element(rng)
        assert (x * y) * z == x * (y * z)
        assert (x + y) + z == x + (y + z)
        assert x * (y + z) == x * y + x * z
        assert x * y == y * x
        assert to_float(x * (y + z)) == pytest.approx(to_float(x) * (to_float(y) + to_float(z)), rel=1e-9, abs=1e-9)


def test_rational_elements_hash_like_rationals():
    assert AlgebraicNumber.from_rational(3) == 3
    assert hash(AlgebraicNumber.from_rational(3)) == hash(3)
    assert hash(AlgebraicNumber.from_rational(Fraction(1, 2))) == hash(Fraction(1, 2))
    assert len({ONE, 1, Fraction(1), SQRT2 * SQRT2, 2}) == 2
    assert {ZERO: "zero"}[0] == "zero"


def test_division_by_zero_raises():
    with pytest.raises(FieldArithmeticError):
        field_arith(ONE, ZERO, "div")


def test_unknown_operation_raises():
    with pytest.raises(ValueError):
        field_arith(ONE, ONE, "pow")


def test_to_float_values():
    assert to_float(BETA) == pytest.approx(1.5537739740300374, rel=1e-14)
    assert to_float(ZERO) == 0.0
    assert BETA_FLOAT == pytest.approx(math.sqrt(1.0 + math.sqrt(2.0)))


def test_to_float_matches_power_basis(rng):
    for _ in range(20):
        x = random_element(rng)
        expected = sum(float(c) * BETA_FLOAT ** k for k, c in enumerate(x.coeffs))
        assert to_float(x) == pytest.approx(expected, rel=1e-13, abs=1e-13)


def test_json_round_trip_keeps_exact_value():
    x = AlgebraicNumber.from_coefficients([Fraction(1, 3), -2, 0, Fraction(5, 7)])
    assert AlgebraicNumber.from_json(x.to_json()) == x
    with pytest.raises(ValueError):
        AlgebraicNumber.from_json(["1", "2"])


def test_quarter_pi_trigonometry():
    for k in range(8):
        c, s = cos_quarter_pi(k), sin_quarter_pi(k)
        assert c * c + s * s == ONE
        assert to_float(c) == pytest.approx(math.cos(k * math.pi / 4), abs=1e-15)
        assert to_float(s) == pytest.approx(math.sin(k * math.pi / 4), abs=1e-15)
    assert to_float(HALF_SQRT2) == pytest.approx(math.sqrt(0.5))


def test_eighth_roots_of_unity():
    for k in range(8):
        w = unit_root_eighth(k)
        assert w.norm_squared() == ONE
        np.testing.assert_allclose(w.to_complex(), np.exp(1j * k * math.pi / 4), atol=1e-15)
    assert (unit_root_eighth(1) * unit_root_eighth(7)) == FieldComplex(ONE)
