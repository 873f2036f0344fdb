"""Exact scalars over Q and over quadratic extensions Q(sqrt(c)).

Rationals are backed by ``gmpy2.mpq``, which is always kept in lowest terms
with a positive denominator, so equality of scalars is componentwise
equality of the stored rationals.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from gmpy2 import is_square as _int_is_square
from gmpy2 import mpq

RATIONALS_KIND = "Rationals"
QUADEXT_KIND = "QuadExt"

Coercible = Union["FieldScalar", int, Fraction, str]


class FieldError(ValueError):
    """Raised on invalid field operations (mismatch, division by zero...)."""


def _to_mpq(value) -> mpq:
    if isinstance(value, str):
        text = value.strip()
        return mpq(text[1:] if text.startswith("+") else text)
    return mpq(value)


def _rational_is_square(x: mpq) -> bool:
    if x < 0:
        return False
    if x == 0:
        return True
    return bool(_int_is_square(x.numerator) and _int_is_square(x.denominator))


@dataclass(frozen=True)
class FieldDescriptor:
    kind: str
    c: mpq | None = None

    def __post_init__(self):
        if self.kind == RATIONALS_KIND:
            if self.c is not None:
                raise FieldError("Rationals take no radicand")
        elif self.kind == QUADEXT_KIND:
            if self.c is None:
                raise FieldError("QuadExt requires a radicand")
            c = _to_mpq(self.c)
            object.__setattr__(self, "c", c)
            if c == 0 or _rational_is_square(c):
                raise FieldError(f"radicand {c} is zero or a rational square")
        else:
            raise FieldError(f"unknown field kind {self.kind!r}")

    @property
    def is_rational(self) -> bool:
        return self.kind == RATIONALS_KIND

    @property
    def zero(self) -> "FieldScalar":
        return _cached_constant(self, 0)

    @property
    def one(self) -> "FieldScalar":
        return _cached_constant(self, 1)

    def __call__(self, a: Coercible = 0, b: Coercible = 0) -> "FieldScalar":
        """Build ``a + b*sqrt(c)`` in this field (``b`` must be 0 over Q)."""
        if isinstance(a, FieldScalar):
            if a.field != self:
                raise FieldError("scalar belongs to a different field")
            return a
        return FieldScalar(self, a, b)

    def sqrt_c(self) -> "FieldScalar":
        if self.is_rational:
            raise FieldError("Q has no distinguished square root")
        return FieldScalar(self, 0, 1)

    def __str__(self) -> str:
        return "Q" if self.is_rational else f"Q(sqrt({self.c}))"

    def to_json(self) -> dict:
        if self.is_rational:
            return {"kind": RATIONALS_KIND}
        return {"kind": QUADEXT_KIND, "c": str(self.c)}

    @classmethod
    def from_json(cls, data: dict) -> "FieldDescriptor":
        if data["kind"] == RATIONALS_KIND:
            return RATIONALS
        return quad_ext(data["c"])


RATIONALS = FieldDescriptor(RATIONALS_KIND)


def quad_ext(c) -> FieldDescriptor:
    return FieldDescriptor(QUADEXT_KIND, _to_mpq(c))


_CONSTANTS: dict = {}


def _cached_constant(field: FieldDescriptor, value: int) -> "FieldScalar":
    key = (field, value)
    hit = _CONSTANTS.get(key)
    if hit is None:
        hit = _CONSTANTS[key] = FieldScalar(field, value)
    return hit


_ZERO = mpq(0)
_new = object.__new__


class FieldScalar:
    """The value ``a + b*sqrt(c)``; over Q, ``b`` is always zero."""

    __slots__ = ("field", "a", "b")

    def __init__(self, field: FieldDescriptor, a=0, b=0):
        a = _to_mpq(a)
        b = _to_mpq(b)
        if field.is_rational and b != 0:
            raise FieldError("rational scalar with nonzero sqrt part")
        self.field = field
        self.a = a
        self.b = b

    @staticmethod
    def _raw(field, a, b):
        obj = _new(FieldScalar)
        obj.field = field
        obj.a = a
        obj.b = b
        return obj

    def _coerce(self, other) -> "FieldScalar":
        if isinstance(other, FieldScalar):
            if other.field != self.field:
                raise FieldError(f"field mismatch: {self.field} vs {other.field}")
            return other
        if isinstance(other, (int, Fraction, type(_ZERO))):
            return FieldScalar._raw(self.field, mpq(other), _ZERO)
        return NotImplemented

    def __add__(self, other):
        if other.__class__ is FieldScalar and other.field is self.field:
            return FieldScalar._raw(self.field, self.a + other.a, self.b + other.b)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldScalar._raw(self.field, self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldScalar._raw(self.field, self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __neg__(self):
        return FieldScalar._raw(self.field, -self.a, -self.b)

    def __mul__(self, other):
        if other.__class__ is FieldScalar and other.field is self.field and self.field.c is None:
            return FieldScalar._raw(self.field, self.a * other.a, _ZERO)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.field.is_rational:
            return FieldScalar._raw(self.field, self.a * o.a, _ZERO)
        c = self.field.c
        return FieldScalar._raw(
            self.field,
            self.a * o.a + c * self.b * o.b,
            self.a * o.b + self.b * o.a,
        )

    __rmul__ = __mul__

    def norm(self) -> mpq:
        """Field norm to Q, ``a^2 - c*b^2``."""
        if self.field.is_rational:
            return self.a * self.a
        return self.a * self.a - self.field.c * self.b * self.b

    def inverse(self) -> "FieldScalar":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if self.field.is_rational:
            return FieldScalar._raw(self.field, 1 / self.a, _ZERO)
        n = self.norm()
        return FieldScalar._raw(self.field, self.a / n, -self.b / n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = self.field.one
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def conjugate(self) -> "FieldScalar":
        if self.field.is_rational:
            return self
        return FieldScalar._raw(self.field, self.a, -self.b)

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if other.__class__ is FieldScalar:
            return self.field == other.field and self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction, type(_ZERO))):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.field))

    def canonical(self) -> "FieldScalar":
        return FieldScalar(self.field, self.a, self.b)

    def to_fraction(self) -> Fraction:
        if self.b != 0:
            raise FieldError(f"{self} is not rational")
        return Fraction(int(self.a.numerator), int(self.a.denominator))

    def __str__(self) -> str:
        if self.field.is_rational or self.b == 0:
            return str(self.a)
        tail = f"{self.b}*sqrt({self.field.c})"
        if self.a == 0:
            return tail
        sign = "+" if self.b > 0 else ""
        return f"{self.a}{sign}{tail}"

    def __repr__(self) -> str:
        return f"FieldScalar({self})"


_QUAD_RE = re.compile(
    r"^\s*(?P<a>[+-]?\d+(?:/\d+)?)?\s*"
    r"(?:(?P<bsign>[+-])?\s*(?P<b>\d+(?:/\d+)?)?\s*\*?\s*sqrt\(\s*(?P<c>[+-]?\d+(?:/\d+)?)\s*\))?\s*$"
)


def parse_scalar(text: str, field: FieldDescriptor | None = None) -> FieldScalar:
    """Parse ``"p/q"``, ``"p"`` or ``"p/q+r/s*sqrt(c)"``.

    When ``field`` is omitted the field is inferred: rationals for plain
    numbers, ``Q(sqrt(c))`` when a ``sqrt(c)`` term is present.
    """
    m = _QUAD_RE.match(text)
    if not m or (m.group("a") is None and m.group("c") is None):
        raise FieldError(f"cannot parse scalar {text!r}")
    a = _to_mpq(m.group("a")) if m.group("a") else _ZERO
    if m.group("c") is None:
        f = field or RATIONALS
        return FieldScalar(f, a)
    if m.group("a") is not None and m.group("bsign") is None:
        raise FieldError(f"missing sign before sqrt term in {text!r}")
    b = mpq(m.group("b")) if m.group("b") else mpq(1)
    if m.group("bsign") == "-":
        b = -b
    f = quad_ext(m.group("c"))
    if field is not None and field != f:
        raise FieldError(f"{text!r} does not live in {field}")
    return FieldScalar(f, a, b)


def arith(op: str, x: FieldScalar, y: FieldScalar) -> FieldScalar:
    if x.field != y.field:
        raise FieldError(f"field mismatch: {x.field} vs {y.field}")
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        if y.is_zero():
            raise ZeroDivisionError("division by zero")
        return x / y
    raise FieldError(f"unknown operation {op!r}")


def conjugate(x: FieldScalar) -> FieldScalar:
    return x.conjugate()


def is_square(x: FieldScalar) -> bool:
    """Squareness in Q; scalars of a quadratic extension are unsupported."""
    if not x.field.is_rational:
        raise NotImplementedError("square testing is only supported over Q")
    return _rational_is_square(x.a)


def as_scalar(value, field: FieldDescriptor = RATIONALS) -> FieldScalar:
    if isinstance(value, FieldScalar):
        return value
    if isinstance(value, str):
        return parse_scalar(value, field)
    return FieldScalar(field, value)
