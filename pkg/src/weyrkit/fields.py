"""Exact scalar arithmetic over the rationals and over prime fields.

Two field kinds exist: arbitrary-precision rationals (values are
``fractions.Fraction``, hence always in lowest terms with positive
denominator) and GF(p) for a prime p (values are residues in ``[0, p)``).
Field elements are immutable, and every operation is pure, so scalars and
field descriptors can be shared freely between threads.

Textual formats: rationals are written ``"a/b"`` or ``"a"``; prime-field
elements are decimal residues. A field itself is selected by the string
``"q"`` or ``"fp:<p>"``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import DivisionByZero, FieldMismatch, ParseError

RATIONALS = "rationals"
PRIME = "prime"

_SCALAR_RE = re.compile(r"^[+-]?\d+(/\d+)?$")

# Deterministic Miller-Rabin witness set, valid for all n < 3.3 * 10**24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MODULUS_LIMIT = 2**64


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Descriptor of the ground field: Q, or GF(p) for a validated prime p."""

    kind: str
    p: int | None = None

    def __post_init__(self) -> None:
        if self.kind == RATIONALS:
            if self.p is not None:
                raise ValueError("rationals carry no modulus")
        elif self.kind == PRIME:
            if not isinstance(self.p, int) or self.p < 2:
                raise ValueError(f"prime modulus must be an integer >= 2, got {self.p!r}")
            if self.p >= _MODULUS_LIMIT:
                raise ValueError(f"modulus {self.p} too large (limit 2**64)")
            if not _is_prime(self.p):
                raise ValueError(f"modulus {self.p} is not prime")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return QQ

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls(PRIME, p)

    @property
    def is_prime_field(self) -> bool:
        return self.kind == PRIME

    @property
    def characteristic(self) -> int:
        return self.p if self.kind == PRIME else 0

    def __str__(self) -> str:
        return "q" if self.kind == RATIONALS else f"fp:{self.p}"

    def coerce(self, value) -> Union[int, Fraction]:
        """Normalize ``value`` to the raw representation used in this field.

        Rationals come back as ``int`` when integral, else ``Fraction``;
        prime-field values come back as residues in ``[0, p)``. Strings are
        parsed in the textual scalar format.
        """
        if isinstance(value, Scalar):
            if value.field != self:
                raise FieldMismatch(f"scalar of {value.field} used in {self}")
            return value.value
        if isinstance(value, str):
            if not _SCALAR_RE.match(value.strip()):
                raise ParseError(f"malformed scalar {value!r}")
            value = Fraction(value.strip())
        if isinstance(value, bool) or not isinstance(value, (int, Fraction)):
            raise TypeError(f"cannot coerce {value!r} into {self}")
        if self.kind == RATIONALS:
            if isinstance(value, Fraction) and value.denominator == 1:
                return int(value)
            return value
        if isinstance(value, Fraction):
            den = value.denominator % self.p
            if den == 0:
                raise DivisionByZero(f"denominator of {value} vanishes mod {self.p}")
            return value.numerator * pow(den, -1, self.p) % self.p
        return value % self.p

    def scalar(self, value) -> "Scalar":
        return Scalar(self, self.coerce(value))

    def zero(self) -> "Scalar":
        return Scalar(self, 0)

    def one(self) -> "Scalar":
        return Scalar(self, 1)

    def format(self, raw) -> str:
        """Textual form of a raw value of this field."""
        return str(raw)


QQ = FieldSpec(RATIONALS)


def parse_field(text: str) -> FieldSpec:
    """Parse a field selection string, ``"q"`` or ``"fp:<p>"``."""
    text = text.strip().lower()
    if text == "q":
        return QQ
    if text.startswith("fp:"):
        try:
            p = int(text[3:])
        except ValueError:
            raise ParseError(f"malformed field string {text!r}") from None
        try:
            return FieldSpec.prime(p)
        except ValueError as exc:
            raise ParseError(str(exc)) from None
    raise ParseError(f"malformed field string {text!r} (expected 'q' or 'fp:<p>')")


class Scalar:
    """An immutable exact field element tied to its :class:`FieldSpec`."""

    __slots__ = ("field", "value")

    def __init__(self, field: FieldSpec, value):
        object.__setattr__(self, "field", field)
        if field.kind == RATIONALS:
            if isinstance(value, int):
                pass
            elif isinstance(value, Fraction):
                if value.denominator == 1:
                    value = int(value)
            else:
                raise TypeError(f"bad rational value {value!r}")
        else:
            if not isinstance(value, int):
                raise TypeError(f"bad residue {value!r}")
            value = value % field.p
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, _value):
        raise AttributeError(f"Scalar is immutable, cannot set {name}")

    @classmethod
    def parse(cls, text: str, field: FieldSpec) -> "Scalar":
        return field.scalar(text)

    def _other(self, other) -> Union[int, Fraction]:
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other.value
        return self.field.coerce(other)

    def __add__(self, other):
        return Scalar(self.field, self.value + self._other(other))

    __radd__ = __add__

    def __sub__(self, other):
        return Scalar(self.field, self.value - self._other(other))

    def __rsub__(self, other):
        return Scalar(self.field, self._other(other) - self.value)

    def __mul__(self, other):
        return Scalar(self.field, self.value * self._other(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o == 0 or (self.field.is_prime_field and o % self.field.p == 0):
            raise DivisionByZero("division by zero")
        if self.field.kind == RATIONALS:
            return Scalar(self.field, Fraction(self.value) / o)
        return Scalar(self.field, self.value * pow(o, -1, self.field.p))

    def __rtruediv__(self, other):
        return Scalar(self.field, self._other(other)) / self

    def __neg__(self):
        return Scalar(self.field, -self.value)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        if self.field.is_prime_field:
            return Scalar(self.field, pow(self.value, k, self.field.p))
        return Scalar(self.field, Fraction(self.value) ** k)

    def inv(self) -> "Scalar":
        """Multiplicative inverse; extended Euclid in GF(p)."""
        if self.value == 0:
            raise DivisionByZero("inverse of zero")
        if self.field.kind == RATIONALS:
            return Scalar(self.field, 1 / Fraction(self.value))
        return Scalar(self.field, pow(self.value, -1, self.field.p))

    def is_zero(self) -> bool:
        return self.value == 0

    def __eq__(self, other) -> bool:
        if isinstance(other, Scalar):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, Fraction)):
            try:
                return self.value == self.field.coerce(other)
            except (FieldMismatch, DivisionByZero):
                return False
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field, self.value))

    def __str__(self) -> str:
        return str(self.value)

    def __repr__(self) -> str:
        return f"Scalar({self.field}, {self.value})"


def field_ops(a: Scalar, b: Scalar, op: str) -> Scalar:
    """Dispatch one of the four field operations by name."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def inv(a: Scalar) -> Scalar:
    return a.inv()


def char_guard(field: FieldSpec, bound: int) -> bool:
    """True when the field characteristic is 0 or exceeds ``bound``."""
    if bound < 0:
        raise ValueError("bound must be non-negative")
    return field.kind == RATIONALS or field.p > bound
