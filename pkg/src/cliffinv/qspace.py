"""Diagonal quadratic forms and orthogonal symmetries given as sign vectors."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .exactfield import RATIONALS, FieldDescriptor, FieldError, FieldScalar, as_scalar


class FormError(ValueError):
    pass


@dataclass(frozen=True)
class QuadForm:
    """The diagonal form <a_1, ..., a_n>; all coefficients are nonzero."""

    coeffs: tuple[FieldScalar, ...]
    field: FieldDescriptor = RATIONALS

    def __post_init__(self):
        coeffs = tuple(as_scalar(c, self.field) for c in self.coeffs)
        for i, c in enumerate(coeffs):
            if c.field != self.field:
                raise FieldError(f"coefficient {i} lives in {c.field}, not {self.field}")
            if c.is_zero():
                raise FormError(f"degenerate form: coefficient {i + 1} is zero")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def of(cls, *values, field: FieldDescriptor = RATIONALS) -> "QuadForm":
        return cls(tuple(as_scalar(v, field) for v in values), field)

    @property
    def n(self) -> int:
        return len(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i]

    def value(self, vector: Sequence) -> FieldScalar:
        """q(x) for coordinates ``x`` in the diagonal basis."""
        total = self.field.zero
        for a, x in zip(self.coeffs, vector):
            total = total + a * x * x
        return total

    def polar(self, x: Sequence, y: Sequence) -> FieldScalar:
        """The bilinear form b_q(x, y) = (q(x+y) - q(x) - q(y)) / 2."""
        total = self.field.zero
        for a, u, v in zip(self.coeffs, x, y):
            total = total + a * u * v
        return total

    def restrict(self, indices: Iterable[int]) -> "QuadForm":
        return QuadForm(tuple(self.coeffs[i] for i in indices), self.field)

    def permute(self, order: Sequence[int]) -> "QuadForm":
        """The form whose k-th coefficient is the ``order[k]``-th of this one."""
        return self.restrict(order)

    def __str__(self):
        return "<" + ", ".join(str(c) for c in self.coeffs) + ">"


@dataclass(frozen=True)
class OrthSymmetry:
    """sigma(e_i) = signs[i] * e_i on the diagonal basis of the companion form."""

    signs: tuple[int, ...]

    def __post_init__(self):
        signs = tuple(int(s) for s in self.signs)
        if any(s not in (1, -1) for s in signs):
            raise FormError(f"symmetry signs must be +1/-1, got {signs}")
        object.__setattr__(self, "signs", signs)

    @classmethod
    def identity(cls, n: int) -> "OrthSymmetry":
        return cls((1,) * n)

    @classmethod
    def minus_identity(cls, n: int) -> "OrthSymmetry":
        return cls((-1,) * n)

    @classmethod
    def reflection(cls, n: int, index: int = 0) -> "OrthSymmetry":
        if not 0 <= index < n:
            raise FormError(f"reflection index {index} out of range for n={n}")
        return cls(tuple(-1 if i == index else 1 for i in range(n)))

    @classmethod
    def from_text(cls, text: str) -> "OrthSymmetry":
        text = text.strip()
        for pos, ch in enumerate(text):
            if ch not in "+-":
                raise FormError(f"bad symmetry character {ch!r} at position {pos}")
        return cls(tuple(1 if ch == "+" else -1 for ch in text))

    @property
    def n(self) -> int:
        return len(self.signs)

    @property
    def s(self) -> int:
        """Dimension of the -1 eigenspace."""
        return sum(1 for x in self.signs if x < 0)

    @property
    def trace(self) -> int:
        return self.n - 2 * self.s

    @property
    def det(self) -> int:
        return -1 if self.s % 2 else 1

    def is_reflection(self) -> bool:
        return self.s == 1

    def plus_indices(self) -> list[int]:
        return [i for i, x in enumerate(self.signs) if x > 0]

    def minus_indices(self) -> list[int]:
        return [i for i, x in enumerate(self.signs) if x < 0]

    def __neg__(self) -> "OrthSymmetry":
        return OrthSymmetry(tuple(-x for x in self.signs))

    def scaled(self, sign: int) -> "OrthSymmetry":
        return self if sign > 0 else -self

    def oplus(self, other: "OrthSymmetry") -> "OrthSymmetry":
        return OrthSymmetry(self.signs + other.signs)

    def restrict(self, indices: Iterable[int]) -> "OrthSymmetry":
        return OrthSymmetry(tuple(self.signs[i] for i in indices))

    def permute(self, order: Sequence[int]) -> "OrthSymmetry":
        return self.restrict(order)

    def check_matches(self, q: QuadForm) -> None:
        if self.n != q.n:
            raise FormError(f"symmetry has length {self.n} but the form has dimension {q.n}")

    def __str__(self):
        return "".join("+" if x > 0 else "-" for x in self.signs) or "()"


def orth_sum(q1: QuadForm, q2: QuadForm) -> QuadForm:
    if q1.field != q2.field:
        raise FieldError(f"field mismatch: {q1.field} vs {q2.field}")
    return QuadForm(q1.coeffs + q2.coeffs, q1.field)


def scale(a, q: QuadForm) -> QuadForm:
    a = as_scalar(a, q.field)
    if a.is_zero():
        raise FormError("cannot scale a form by zero")
    return QuadForm(tuple(a * c for c in q.coeffs), q.field)


def _sign_of_pairs(n: int) -> int:
    return -1 if (n * (n - 1) // 2) % 2 else 1


def signed_disc(q: QuadForm) -> FieldScalar:
    """(-1)^(n(n-1)/2) * a_1 * ... * a_n for this exact diagonal."""
    prod = q.field.one
    for c in q.coeffs:
        prod = prod * c
    return prod if _sign_of_pairs(q.n) > 0 else -prod


def symmetry_disc_sign(sigma: OrthSymmetry) -> int:
    return _sign_of_pairs(sigma.n) * sigma.det


def symmetry_disc(sigma: OrthSymmetry, field: FieldDescriptor = RATIONALS) -> FieldScalar:
    """(-1)^(n(n-1)/2) * det(sigma), with det(sigma) = (-1)^s."""
    return FieldScalar(field, symmetry_disc_sign(sigma))
