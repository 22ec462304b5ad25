# src\hyperspline\field.py

"""
Exact arithmetic in the quartic field Q(beta), beta = sqrt(1 + sqrt(2)).

An element is stored as four rationals (c0, c1, c2, c3) standing for
c0 + c1*beta + c2*beta**2 + c3*beta**3. Every result is reduced modulo the
minimal polynomial beta**4 - 2*beta**2 - 1, and the rationals are kept in
lowest terms with positive denominators, so equality is a coefficient
comparison.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple, Union

from .exceptions import FieldArithmeticError

BETA_FLOAT: float = math.sqrt(1.0 + math.sqrt(2.0))
"""Floating-point value of beta used by to_float."""

MINIMAL_POLYNOMIAL: Tuple[int, ...] = (-1, 0, -2, 0, 1)
"""Coefficients of beta**4 - 2*beta**2 - 1, lowest degree first."""

Scalar = Union[int, Fraction, "AlgebraicNumber"]
Coefficients = Tuple[Fraction, Fraction, Fraction, Fraction]

# ==============================
# Polynomial helpers over Q
# ==============================


def _trim(poly: List[Fraction]) -> List[Fraction]:
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    return poly


def _poly_mul(a: Sequence[Fraction], b: Sequence[Fraction]) -> List[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j, bj in enumerate(b):
            if bj:
                out[i + j] += ai * bj
    return out


def _poly_sub(a: Sequence[Fraction], b: Sequence[Fraction]) -> List[Fraction]:
    n = max(len(a), len(b))
    out = [Fraction(0)] * n
    for i, ai in enumerate(a):
        out[i] += ai
    for i, bi in enumerate(b):
        out[i] -= bi
    return _trim(out)


def _poly_divmod(
    num: Sequence[Fraction],
    den: Sequence[Fraction]
) -> Tuple[List[Fraction], List[Fraction]]:
    rem = _trim([Fraction(c) for c in num])
    den = _trim([Fraction(c) for c in den])
    quot = [Fraction(0)] * max(len(rem) - len(den) + 1, 1)
    lead = den[-1]
    while len(rem) >= len(den) and any(rem):
        shift = len(rem) - len(den)
        factor = rem[-1] / lead
        quot[shift] = factor
        for i, d in enumerate(den):
            rem[shift + i] -= factor * d
        rem.pop()
        if not rem:
            rem = [Fraction(0)]
        _trim(rem)
    return _trim(quot), rem


def _reduce(coeffs: Sequence[Fraction]) -> Coefficients:
    """Fold every power beta**k, k >= 4, using beta**k = 2*beta**(k-2) + beta**(k-4)."""
    c = [Fraction(x) for x in coeffs]
    c.extend([Fraction(0)] * max(0, 4 - len(c)))
    for k in range(len(c) - 1, 3, -1):
        top = c[k]
        if top:
            c[k - 2] += 2 * top
            c[k - 4] += top
    return c[0], c[1], c[2], c[3]


# ==============================
# Field elements
# ==============================


@dataclass(frozen=True, eq=False)
class AlgebraicNumber:
    """
    Exact element c0 + c1*beta + c2*beta**2 + c3*beta**3 of Q(beta).

    Attributes
    ----------
    coeffs : tuple of Fraction
        The four rational coefficients in canonical (reduced, lowest terms) form.
    """
    coeffs: Coefficients

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _reduce(self.coeffs))

    # --- construction ---

    @classmethod
    def from_rational(cls, value: Union[int, Fraction, str]) -> "AlgebraicNumber":
        """Embed a rational number as (value, 0, 0, 0)."""
        return cls((Fraction(value), Fraction(0), Fraction(0), Fraction(0)))

    @classmethod
    def from_coefficients(cls, coeffs: Sequence[Union[int, Fraction, str]]) -> "AlgebraicNumber":
        """Build an element from any number of power-basis coefficients (reduced on entry)."""
        return cls(tuple(Fraction(c) for c in coeffs))

    @classmethod
    def from_json(cls, data: Sequence[str]) -> "AlgebraicNumber":
        """
        Parse the JSON form produced by to_json.

        Parameters
        ----------
        data : sequence of str
            Four "num/den" strings.

        Returns
        -------
        AlgebraicNumber
            The parsed element.

        Raises
        ------
        ValueError
            If the sequence does not contain exactly four rationals.
        """
        if len(data) != 4:
            raise ValueError(f"Expected 4 coefficients, got {len(data)}.")
        return cls(tuple(Fraction(str(c)) for c in data))

    def to_json(self) -> List[str]:
        """Serialize as four "num/den" strings."""
        return [f"{c.numerator}/{c.denominator}" for c in self.coeffs]

    # --- predicates and conversions ---

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def to_float(self) -> float:
        """Evaluate the coefficient form at beta = sqrt(1 + sqrt(2)) by Horner's rule."""
        c0, c1, c2, c3 = (float(c) for c in self.coeffs)
        return ((c3 * BETA_FLOAT + c2) * BETA_FLOAT + c1) * BETA_FLOAT + c0

    def __float__(self) -> float:
        return self.to_float()

    def sign(self) -> int:
        """Sign of the real number; zero is decided exactly, otherwise from the float value."""
        if self.is_zero():
            return 0
        return 1 if self.to_float() > 0 else -1

    def inverse(self) -> "AlgebraicNumber":
        """
        Multiplicative inverse via the extended Euclidean algorithm in Q[x].

        Returns
        -------
        AlgebraicNumber
            The element y with self * y = 1.

        Raises
        ------
        FieldArithmeticError
            If self is zero.
        """
        if self.is_zero():
            raise FieldArithmeticError("Division by zero in Q(beta).")
        r0 = [Fraction(c) for c in MINIMAL_POLYNOMIAL]
        r1 = _trim(list(self.coeffs))
        s0: List[Fraction] = [Fraction(0)]
        s1: List[Fraction] = [Fraction(1)]
        while any(r1):
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        # the minimal polynomial is irreducible, so the gcd r0 is a nonzero constant
        gcd = r0[0]
        return AlgebraicNumber.from_coefficients([c / gcd for c in s0])

    # --- arithmetic ---

    @staticmethod
    def _coerce(other) -> "AlgebraicNumber":
        if isinstance(other, AlgebraicNumber):
            return other
        if isinstance(other, (int, Fraction)):
            return AlgebraicNumber.from_rational(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return AlgebraicNumber(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return AlgebraicNumber(tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return AlgebraicNumber(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return AlgebraicNumber(tuple(_poly_mul(self.coeffs, other.coeffs)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        base = self if exponent >= 0 else self.inverse()
        result = ONE
        for _ in range(abs(exponent)):
            result = result * base
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.coeffs == other.coeffs

    def __hash__(self):
        # rational elements compare equal to int and Fraction
        if not any(self.coeffs[1:]):
            return hash(self.coeffs[0])
        return hash(self.coeffs)

    def __repr__(self):
        return f"AlgebraicNumber({self})"

    def __str__(self):
        terms = []
        for power, c in enumerate(self.coeffs):
            if not c:
                continue
            monomial = "" if power == 0 else ("b" if power == 1 else f"b^{power}")
            if power == 0:
                terms.append(str(c))
            elif c == 1:
                terms.append(monomial)
            else:
                terms.append(f"{c}*{monomial}")
        return " + ".join(terms) if terms else "0"


ZERO = AlgebraicNumber.from_rational(0)
ONE = AlgebraicNumber.from_rational(1)
BETA = AlgebraicNumber.from_coefficients([0, 1])
SQRT2 = AlgebraicNumber.from_coefficients([-1, 0, 1])
"""sqrt(2) = beta**2 - 1."""

HALF_SQRT2 = AlgebraicNumber.from_coefficients([Fraction(-1, 2), 0, Fraction(1, 2)])
"""cos(pi/4) = (beta**2 - 1) / 2."""

_COS_QUARTER = (ONE, HALF_SQRT2, ZERO, -HALF_SQRT2, -ONE, -HALF_SQRT2, ZERO, HALF_SQRT2)


def cos_quarter_pi(k: int) -> AlgebraicNumber:
    """Exact cos(k*pi/4)."""
    return _COS_QUARTER[k % 8]


def sin_quarter_pi(k: int) -> AlgebraicNumber:
    """Exact sin(k*pi/4)."""
    return _COS_QUARTER[(k - 2) % 8]


# ==============================
# Complex pairs over Q(beta)
# ==============================


@dataclass(frozen=True)
class FieldComplex:
    """
    Complex number re + i*im with both parts in Q(beta).
    """
    re: AlgebraicNumber
    im: AlgebraicNumber = ZERO

    def __add__(self, other: "FieldComplex") -> "FieldComplex":
        return FieldComplex(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "FieldComplex") -> "FieldComplex":
        return FieldComplex(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "FieldComplex":
        return FieldComplex(-self.re, -self.im)

    def __mul__(self, other: "FieldComplex") -> "FieldComplex":
        return FieldComplex(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def conjugate(self) -> "FieldComplex":
        return FieldComplex(self.re, -self.im)

    def norm_squared(self) -> AlgebraicNumber:
        return self.re * self.re + self.im * self.im

    def is_zero(self) -> bool:
        return self.re.is_zero() and self.im.is_zero()

    def to_complex(self) -> complex:
        return complex(self.re.to_float(), self.im.to_float())

    def to_json(self) -> List[List[str]]:
        return [self.re.to_json(), self.im.to_json()]


def unit_root_eighth(k: int) -> FieldComplex:
    """Exact e^{i k pi / 4}."""
    return FieldComplex(cos_quarter_pi(k), sin_quarter_pi(k))


# ==============================
# Operation surface
# ==============================

_OPERATIONS = {
    "add": lambda a, b: a + b,
    "sub": lambda a, b: a - b,
    "mul": lambda a, b: a * b,
    "div": lambda a, b: a / b,
}


def field_arith(a: AlgebraicNumber, b: AlgebraicNumber, op: str) -> AlgebraicNumber:
    """
    Apply one of the four field operations.

    Parameters
    ----------
    a, b : AlgebraicNumber
        Operands.
    op : {"add", "sub", "mul", "div"}
        Operation name.

    Returns
    -------
    AlgebraicNumber
        Reduced canonical representative of the result.

    Raises
    ------
    FieldArithmeticError
        For division by zero.
    ValueError
        For an unknown operation name.
    """
    try:
        fn = _OPERATIONS[op]
    except KeyError:
        raise ValueError(f"Unsupported field operation: {op!r}") from None
    return fn(a, b)


def to_float(a: AlgebraicNumber) -> float:
    """Numeric value of a at beta = sqrt(1 + sqrt(2))."""
    return a.to_float()
