# tests\test_exceptions.py

import pytest

from hyperspline.exceptions import (
    FieldArithmeticError,
    HyperSplineError,
    PartitionValidationError,
)


def test_details_are_shown_after_message():
    err = PartitionValidationError("Edge 3 is dangling.", details={"edge": 3})
    assert str(err) == "Edge 3 is dangling. (edge=3)"
    assert err.details == {"edge": 3}
    assert "PartitionValidationError" in repr(err)
    assert str(HyperSplineError("plain")) == "plain"


def test_field_errors_are_zero_division_errors():
    with pytest.raises(ZeroDivisionError):
        raise FieldArithmeticError("Division by zero in Q(beta).")
    assert issubclass(PartitionValidationError, HyperSplineError)
