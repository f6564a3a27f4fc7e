"""Exact arithmetic over GF(2), GF(4) and GF(2^k).

GF(4) elements are integers 0..3 in the polynomial basis {1, ω}:
0 ↦ 0, 1 ↦ 1, 2 ↦ ω, 3 ↦ ω² = ω + 1. Addition is XOR of the codes.

GF(2^k) scalars are integers below 2^k, reduced modulo the fixed polynomial
listed in ``IRREDUCIBLE_POLYNOMIALS``. Arithmetic is delegated to ``galois``.
"""

from dataclasses import dataclass
from enum import StrEnum
from functools import cache, cached_property
from typing import Any

import galois

F4_ZERO = 0
F4_ONE = 1
F4_OMEGA = 2
F4_OMEGA2 = 3
F4_ELEMENTS = (F4_ZERO, F4_ONE, F4_OMEGA, F4_OMEGA2)

MAX_DEGREE = 8

# Degree -> (integer representation, display form)
IRREDUCIBLE_POLYNOMIALS: dict[int, tuple[int, str]] = {
    1: (0b10, "x"),
    2: (0b111, "x^2 + x + 1"),
    3: (0b1011, "x^3 + x + 1"),
    4: (0b10011, "x^4 + x + 1"),
    5: (0b100101, "x^5 + x^2 + 1"),
    6: (0b1000011, "x^6 + x + 1"),
    7: (0b10000011, "x^7 + x + 1"),
    8: (0b100011101, "x^8 + x^4 + x^3 + x^2 + 1"),
}

_F4_MUL = (
    (0, 0, 0, 0),
    (0, 1, 2, 3),
    (0, 2, 3, 1),
    (0, 3, 1, 2),
)
_F4_INV = (None, 1, 3, 2)


class FieldError(ValueError):
    """Raised for out-of-range elements, unsupported degrees or division by zero."""

    pass


class FieldOp(StrEnum):
    ADD = "add"
    MUL = "mul"
    INV = "inv"


def _check_f4(*values: int) -> None:
    for value in values:
        if value not in F4_ELEMENTS:
            raise FieldError(f"Not a GF(4) code: {value!r}")


def f4_add(a: int, b: int) -> int:
    """Add two GF(4) elements."""
    _check_f4(a, b)
    return a ^ b


def f4_mul(a: int, b: int) -> int:
    """Multiply two GF(4) elements."""
    _check_f4(a, b)
    return _F4_MUL[a][b]


def f4_conj(a: int) -> int:
    """Frobenius conjugation x ↦ x²."""
    return f4_mul(a, a)


def f4_trace(a: int) -> int:
    """Trace to GF(2): a + conj(a), always 0 or 1."""
    return f4_add(a, f4_conj(a))


def f4_norm(a: int) -> int:
    """Norm to GF(2): a · conj(a), 1 for every nonzero element."""
    return f4_mul(a, f4_conj(a))


def f4_inv(a: int) -> int:
    """
    Multiplicative inverse in GF(4).

    Raises:
        FieldError: If a is zero
    """
    _check_f4(a)
    inverse = _F4_INV[a]
    if inverse is None:
        raise FieldError("Cannot invert zero")
    return inverse


@dataclass(frozen=True)
class ScalarField:
    """
    The scalar field GF(2^k) used for the module A.

    Attributes:
        degree: Extension degree k (1 ≤ k ≤ 8)
    """

    degree: int

    def __post_init__(self) -> None:
        if not isinstance(self.degree, int) or not 1 <= self.degree <= MAX_DEGREE:
            raise FieldError(f"Field degree must be in 1..{MAX_DEGREE}, got {self.degree!r}")

    @property
    def order(self) -> int:
        return 1 << self.degree

    @property
    def label(self) -> str:
        return f"GF(2^{self.degree})"

    @property
    def polynomial(self) -> str:
        return IRREDUCIBLE_POLYNOMIALS[self.degree][1]

    @cached_property
    def galois_type(self) -> Any:
        """The ``galois.FieldArray`` subclass implementing this field."""
        if self.degree == 1:
            return galois.GF(2)
        return galois.GF(self.order, irreducible_poly=IRREDUCIBLE_POLYNOMIALS[self.degree][0])

    def check(self, value: int) -> int:
        if not isinstance(value, int) or not 0 <= value < self.order:
            raise FieldError(f"Not an element of {self.label}: {value!r}")
        return value

    def add(self, a: int, b: int) -> int:
        return self.check(a) ^ self.check(b)

    def mul(self, a: int, b: int) -> int:
        gf = self.galois_type
        return int(gf(self.check(a)) * gf(self.check(b)))

    def inv(self, a: int) -> int:
        if self.check(a) == 0:
            raise FieldError(f"Cannot invert zero in {self.label}")
        gf = self.galois_type
        return int(gf(1) / gf(a))

    def square(self, a: int) -> int:
        return self.mul(a, a)

    def elements(self) -> range:
        return range(self.order)


@cache
def scalar_field(degree: int = 1) -> ScalarField:
    """Return the (shared) scalar field of the given degree."""
    return ScalarField(degree)


def k_arith(a: int, b: int, op: FieldOp | str, degree: int = 1) -> int:
    """
    Apply one field operation in GF(2^degree).

    Args:
        a: First operand
        b: Second operand (ignored for ``inv``)
        op: One of ``add``, ``mul``, ``inv``
        degree: Extension degree of the field

    Returns:
        int: The result in the same integer encoding

    Raises:
        FieldError: On inversion of zero or an out-of-range operand
    """
    field = scalar_field(degree)
    match FieldOp(op):
        case FieldOp.ADD:
            return field.add(a, b)
        case FieldOp.MUL:
            return field.mul(a, b)
        case FieldOp.INV:
            return field.inv(a)


def parse_field(text: str | int) -> int:
    """
    Parse a field designation into its degree.

    Accepts ``"2"``, ``"4"``, ``"2^k"`` and ``"GF(2^k)"``.

    Raises:
        FieldError: If the text does not name a supported GF(2^k)
    """
    raw = str(text).strip().upper().removeprefix("GF(").removesuffix(")")
    try:
        if raw.startswith("2^"):
            degree = int(raw[2:])
        else:
            order = int(raw)
            if order < 2 or order & (order - 1):
                raise FieldError(f"Field order must be a power of two: {text!r}")
            degree = order.bit_length() - 1
    except ValueError as e:
        raise FieldError(f"Cannot parse field: {text!r}") from e
    return scalar_field(degree).degree
