# tests\test_numerics.py

import numpy as np
import pytest

from hyperspline import config
from hyperspline.exceptions import DegenerateGeometryError
from hyperspline.numerics import (
    normalize_rows,
    null_space_basis,
    numerical_rank_qr,
    projective_float_key,
    safe_division,
)


def test_safe_division_regular_values():
    assert safe_division(1.0, 4.0) == 0.25
    np.testing.assert_allclose(safe_division(np.array([1.0, 3.0]), 2.0), [0.5, 1.5])
    with pytest.raises(ValueError):
        safe_division(np.nan, 1.0)


def test_safe_division_strict_raises(monkeypatch):
    monkeypatch.setattr(config, "STRICT_MODE", True)
    with pytest.raises(DegenerateGeometryError, match="test quotient"):
        safe_division(1.0, 1e-15, context="test quotient")


def test_safe_division_lenient_warns_and_returns_inf(monkeypatch):
    monkeypatch.setattr(config, "STRICT_MODE", False)
    with pytest.warns(RuntimeWarning, match="Near-zero denominator"):
        out = safe_division(np.array([1.0, -2.0, 3.0]), np.array([2.0, 0.0, 1e-20]))
    np.testing.assert_array_equal(out, [0.5, -np.inf, np.inf])


def test_normalize_rows_drops_zero_rows():
    rows, keep = normalize_rows(np.array([[3.0, 4.0], [0.0, 0.0], [0.0, -2.0]]))
    np.testing.assert_array_equal(keep, [True, False, True])
    np.testing.assert_allclose(rows, [[0.6, 0.8], [0.0, -1.0]])


def test_svd_and_qr_agree_on_rank(rng):
    a = rng.standard_normal((6, 3)) @ rng.standard_normal((3, 8))
    basis, s = null_space_basis(a, rcond=1e-10)
    assert basis.shape == (8, 5)
    assert np.max(np.abs(a @ basis)) < 1e-10
    np.testing.assert_allclose(basis.T @ basis, np.eye(5), atol=1e-12)
    assert s.shape == (6,)
    assert numerical_rank_qr(a, 1e-10) == 3


def test_empty_matrices():
    basis, s = null_space_basis(np.zeros((0, 4)), rcond=1e-10)
    np.testing.assert_array_equal(basis, np.eye(4))
    assert s.size == 0
    assert numerical_rank_qr(np.zeros((2, 3)), 1e-10) == 0


def test_projective_key_ignores_scale():
    m = np.array([[1.0, 2.0], [-4.0, 0.5]])
    assert projective_float_key(m) == projective_float_key(-2.5 * m)
    assert projective_float_key(m) != projective_float_key(m + 1e-6)
