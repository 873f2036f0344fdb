"""Clifford algebras of diagonal forms on the blade basis.

A blade is an int mask: bit ``i`` set means the generator ``e_{i+1}`` occurs,
and the blade is the product of its generators in increasing order.
"""

from __future__ import annotations

import re
from functools import lru_cache
from typing import Callable, Mapping, Sequence

from .exactfield import FieldScalar, as_scalar, parse_scalar
from .linalg import LinearMapTable, kernel
from .qspace import FormError, OrthSymmetry, QuadForm


class CliffordError(ValueError):
    pass


def popcount(mask: int) -> int:
    return mask.bit_count()


@lru_cache(maxsize=1 << 18)
def reorder_sign(S: int, T: int) -> int:
    """(-1)^r where r counts pairs (i in S, j in T) with i > j."""
    r = 0
    t = T
    while t:
        low = t & -t
        j = low.bit_length() - 1
        r += popcount(S >> (j + 1))
        t ^= low
    return -1 if r & 1 else 1


@lru_cache(maxsize=None)
def contraction_table(form: QuadForm) -> tuple:
    """prod_{i in mask} a_i for every mask, indexed by mask."""
    n = form.n
    table = [form.field.one] * (1 << n)
    for mask in range(1, 1 << n):
        low = mask & -mask
        table[mask] = table[mask ^ low] * form.coeffs[low.bit_length() - 1]
    return tuple(table)


def _check_mask(mask: int, form: QuadForm) -> None:
    if mask < 0 or mask >> form.n:
        raise CliffordError(f"blade mask {mask:#b} does not fit a form of dimension {form.n}")


def blade_mul(S: int, T: int, q: QuadForm) -> tuple[int, FieldScalar, int]:
    """e_S * e_T = sign * coeff * e_{S xor T}."""
    _check_mask(S, q)
    _check_mask(T, q)
    return reorder_sign(S, T), contraction_table(q)[S & T], S ^ T


def reversion_sign(mask: int) -> int:
    g = popcount(mask)
    return -1 if (g * (g - 1) // 2) % 2 else 1


def grade_sign(mask: int) -> int:
    return -1 if popcount(mask) & 1 else 1


def symmetry_sign(sigma: OrthSymmetry, mask: int) -> int:
    """prod_{i in mask} sigma_i."""
    sign = 1
    for i, x in enumerate(sigma.signs):
        if x < 0 and (mask >> i) & 1:
            sign = -sign
    return sign


def blade_label(mask: int) -> str:
    if mask == 0:
        return "e0"
    return "^".join(f"e{i + 1}" for i in range(mask.bit_length()) if (mask >> i) & 1)


class CliffordElement:
    """Sparse combination of blades of C(q); zero coefficients are never stored."""

    __slots__ = ("form", "terms")

    def __init__(self, form: QuadForm, terms: Mapping[int, FieldScalar] | None = None):
        self.form = form
        clean = {}
        for mask, c in (terms or {}).items():
            _check_mask(mask, form)
            c = as_scalar(c, form.field)
            if not c.is_zero():
                clean[mask] = c
        self.terms = clean

    @classmethod
    def _raw(cls, form, terms):
        obj = object.__new__(cls)
        obj.form = form
        obj.terms = terms
        return obj

    # constructors
    @classmethod
    def scalar(cls, form: QuadForm, value=1) -> "CliffordElement":
        return cls(form, {0: as_scalar(value, form.field)})

    @classmethod
    def blade(cls, form: QuadForm, mask: int, coeff=1) -> "CliffordElement":
        return cls(form, {mask: as_scalar(coeff, form.field)})

    @classmethod
    def generator(cls, form: QuadForm, i: int) -> "CliffordElement":
        """e_{i+1} (zero-based index)."""
        if not 0 <= i < form.n:
            raise CliffordError(f"generator index {i} out of range")
        return cls.blade(form, 1 << i)

    @classmethod
    def vector(cls, form: QuadForm, coords: Sequence) -> "CliffordElement":
        if len(coords) != form.n:
            raise CliffordError("vector length does not match the form")
        return cls(form, {1 << i: c for i, c in enumerate(coords)})

    # arithmetic
    def _same(self, other: "CliffordElement") -> None:
        if other.form != self.form:
            raise CliffordError("elements live in Clifford algebras of different forms")

    def __add__(self, other):
        if not isinstance(other, CliffordElement):
            other = CliffordElement.scalar(self.form, other)
        self._same(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out[m] + c if m in out else c
            if s.is_zero():
                out.pop(m, None)
            else:
                out[m] = s
        return CliffordElement._raw(self.form, out)

    __radd__ = __add__

    def __neg__(self):
        return CliffordElement._raw(self.form, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, CliffordElement):
            other = CliffordElement.scalar(self.form, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, CliffordElement):
            c = as_scalar(other, self.form.field)
            if c.is_zero():
                return CliffordElement._raw(self.form, {})
            return CliffordElement._raw(self.form, {m: v * c for m, v in self.terms.items()})
        self._same(other)
        table = contraction_table(self.form)
        out: dict[int, FieldScalar] = {}
        for S, x in self.terms.items():
            for T, y in other.terms.items():
                v = x * y * table[S & T]
                if reorder_sign(S, T) < 0:
                    v = -v
                m = S ^ T
                cur = out.get(m)
                if cur is None:
                    out[m] = v
                else:
                    s = cur + v
                    if s.is_zero():
                        del out[m]
                    else:
                        out[m] = s
        return CliffordElement._raw(self.form, out)

    def __rmul__(self, other):
        c = as_scalar(other, self.form.field)
        return CliffordElement._raw(
            self.form, {m: c * v for m, v in self.terms.items()} if not c.is_zero() else {})

    def __truediv__(self, other):
        c = as_scalar(other, self.form.field)
        return self * c.inverse()

    def __eq__(self, other):
        if isinstance(other, CliffordElement):
            return self.form == other.form and self.terms == other.terms
        if isinstance(other, (int, FieldScalar)):
            return self == CliffordElement.scalar(self.form, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.form, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, mask: int) -> FieldScalar:
        return self.terms.get(mask, self.form.field.zero)

    def map_blades(self, sign_of: Callable[[int], int]) -> "CliffordElement":
        return CliffordElement._raw(
            self.form, {m: (c if sign_of(m) > 0 else -c) for m, c in self.terms.items()})

    def is_even(self) -> bool:
        return all(popcount(m) % 2 == 0 for m in self.terms)

    def even_part(self) -> "CliffordElement":
        return CliffordElement._raw(
            self.form, {m: c for m, c in self.terms.items() if popcount(m) % 2 == 0})

    def odd_part(self) -> "CliffordElement":
        return CliffordElement._raw(
            self.form, {m: c for m, c in self.terms.items() if popcount(m) % 2 == 1})

    def blade_inverse(self) -> "CliffordElement":
        """Inverse of a single blade term: e_S^-1 = e_S / (e_S * e_S)."""
        if len(self.terms) != 1:
            raise CliffordError("blade_inverse needs a single-term element")
        (mask, c), = self.terms.items()
        sign, coeff, _ = blade_mul(mask, mask, self.form)
        square = coeff * sign * c * c
        return self * square.inverse()

    def __str__(self):
        return format_element(self)

    def __repr__(self):
        return f"CliffordElement({self.form}, {format_element(self)})"


def _format_coeff(c: FieldScalar) -> str:
    text = str(c)
    if "sqrt" in text and c.a != 0:
        return f"({text})"
    return text


def format_element(x: CliffordElement) -> str:
    if not x.terms:
        return "0"
    parts = []
    for mask in sorted(x.terms, key=lambda m: (popcount(m), m)):
        c = x.terms[mask]
        if mask == 0:
            body = _format_coeff(c)
        elif c == 1:
            body = blade_label(mask)
        elif c == -1:
            body = "-" + blade_label(mask)
        else:
            body = f"{_format_coeff(c)} {blade_label(mask)}"
        parts.append(body)
    text = parts[0]
    for p in parts[1:]:
        text += " - " + p[1:] if p.startswith("-") else " + " + p
    return text


_TERM_RE = re.compile(r"^(?P<coeff>[^e]*?)\s*(?P<blade>e\d+(?:\^e\d+)*)?$")


def parse_element(text: str, form: QuadForm) -> CliffordElement:
    """Parse the blade text syntax, e.g. ``"-6 + 2 e1^e3"`` or ``"e0"``."""
    src = text.strip()
    if not src:
        raise CliffordError("empty element text")
    # Split on +/- that start a new term (not inside parentheses or a ratio).
    terms, depth, start = [], 0, 0
    for pos, ch in enumerate(src):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "+-" and depth == 0 and pos > 0 and src[:pos].rstrip()[-1:] not in ("", "*", "/", "+", "-", "("):
            terms.append(src[start:pos])
            start = pos
    terms.append(src[start:])
    total = CliffordElement(form)
    for raw in terms:
        term = raw.replace(" ", "")
        if not term:
            continue
        m = _TERM_RE.match(term)
        if not m:
            raise CliffordError(f"cannot parse term {raw!r}")
        coeff_text = m.group("coeff")
        blade_text = m.group("blade")
        if coeff_text in ("", "+"):
            coeff = form.field.one
        elif coeff_text == "-":
            coeff = -form.field.one
        else:
            sign = 1
            if coeff_text[0] in "+-" and coeff_text[1:2] == "(":
                sign = -1 if coeff_text[0] == "-" else 1
                coeff_text = coeff_text[1:]
            coeff_text = coeff_text.strip("()")
            coeff = parse_scalar(coeff_text, form.field) * sign
        mask = 0
        if blade_text:
            for part in blade_text.split("^"):
                idx = int(part[1:])
                if idx == 0:
                    continue
                if idx > form.n:
                    raise CliffordError(f"generator e{idx} exceeds dimension {form.n}")
                bit = 1 << (idx - 1)
                if mask & bit:
                    raise CliffordError(f"repeated generator in {blade_text!r}")
                mask |= bit
            # Blade text lists generators in increasing order only.
            idxs = [int(p[1:]) for p in blade_text.split("^") if p != "e0"]
            if idxs != sorted(idxs):
                raise CliffordError(f"blade {blade_text!r} must list generators in increasing order")
        total = total + CliffordElement.blade(form, mask, coeff)
    return total


# -- canonical (anti)automorphisms ------------------------------------------

def grade_involution(x: CliffordElement) -> CliffordElement:
    return x.map_blades(grade_sign)


def reversion(x: CliffordElement) -> CliffordElement:
    return x.map_blades(reversion_sign)


def induced_involution(sigma: OrthSymmetry, x: CliffordElement) -> CliffordElement:
    """J_q^sigma: the antiautomorphism with e_i -> sigma_i e_i."""
    if sigma.n != x.form.n:
        raise FormError(f"symmetry of length {sigma.n} on a form of dimension {x.form.n}")
    return x.map_blades(lambda m: symmetry_sign(sigma, m) * reversion_sign(m))


def symmetry_automorphism(sigma: OrthSymmetry, x: CliffordElement) -> CliffordElement:
    """The algebra automorphism extending sigma (e_i -> sigma_i e_i)."""
    return x.map_blades(lambda m: symmetry_sign(sigma, m))


def z_element(sigma: OrthSymmetry, q: QuadForm) -> CliffordElement:
    """Product of the +1 generators, then the -1 generators, each increasing."""
    sigma.check_matches(q)
    z = CliffordElement.scalar(q)
    for i in sigma.plus_indices() + sigma.minus_indices():
        z = z * CliffordElement.generator(q, i)
    return z


# -- algebra views -----------------------------------------------------------

class CliffordAlgebra:
    """C(q) or its even part, as a basis-indexed target for linear maps."""

    def __init__(self, form: QuadForm, even: bool = False):
        self.form = form
        self.even = even
        full = range(1 << form.n)
        self.masks = [m for m in full if popcount(m) % 2 == 0] if even else list(full)
        self.index = {m: i for i, m in enumerate(self.masks)}

    @property
    def dim(self) -> int:
        return len(self.masks)

    @property
    def field(self):
        return self.form.field

    def one(self) -> CliffordElement:
        return CliffordElement.scalar(self.form)

    def basis(self, i: int) -> CliffordElement:
        return CliffordElement.blade(self.form, self.masks[i])

    def gen(self, i: int) -> CliffordElement:
        return CliffordElement.generator(self.form, i)

    def coordinates(self, x: CliffordElement) -> dict:
        try:
            return {self.index[m]: c for m, c in x.terms.items()}
        except KeyError as exc:
            raise CliffordError(f"{x} is not in the even subalgebra") from exc

    def element(self, coords: Mapping[int, FieldScalar]) -> CliffordElement:
        return CliffordElement(self.form, {self.masks[i]: c for i, c in coords.items()})

    def __repr__(self):
        return f"CliffordAlgebra({self.form}, even={self.even})"


def center_basis(q: QuadForm) -> list[CliffordElement]:
    """Basis of {x : x e_i = e_i x for all i}, by exact kernel extraction."""
    n = q.n
    table = contraction_table(q)
    rows: dict[tuple[int, int], dict] = {}
    for S in range(1 << n):
        for g in range(n):
            G = 1 << g
            diff = reorder_sign(S, G) - reorder_sign(G, S)
            if diff:
                coeff = table[S & G] * diff
                rows.setdefault((g, S ^ G), {})[S] = coeff
    vecs = kernel(rows.values(), 1 << n, q.field)
    return [CliffordElement(q, v) for v in vecs]


# -- Clifford maps and universal properties ----------------------------------

def _two(field):
    return field.one + field.one


def check_clifford_relations(images: Sequence, q: QuadForm, target) -> tuple[bool, str | None]:
    one = target.one()
    for i, g in enumerate(images):
        if g * g != one * q.coeffs[i]:
            return False, f"image of e{i + 1} squares to {g * g}, expected {q.coeffs[i]}"
    for i in range(len(images)):
        for j in range(i + 1, len(images)):
            anti = images[i] * images[j] + images[j] * images[i]
            if not _is_zero(anti):
                return False, f"images of e{i + 1}, e{j + 1} do not anticommute"
    return True, None


def _is_zero(x) -> bool:
    return x.is_zero()


def clifford_map_factor(images: Sequence, q: QuadForm, target, verify: bool = True) -> LinearMapTable:
    """Extend a Clifford map e_i -> images[i] to the homomorphism C(q) -> target."""
    if len(images) != q.n:
        raise CliffordError(f"{len(images)} images for a form of dimension {q.n}")
    ok, why = check_clifford_relations(images, q, target)
    if not ok:
        raise CliffordError(f"not a Clifford map: {why}")
    dim = 1 << q.n
    blade_images = [None] * dim
    blade_images[0] = target.one()
    for mask in range(1, dim):
        top = mask.bit_length() - 1
        blade_images[mask] = blade_images[mask ^ (1 << top)] * images[top]
    if verify:
        for S in range(dim):
            for T in range(dim):
                sign, coeff, U = blade_mul(S, T, q)
                lhs = blade_images[U] * (coeff * sign)
                if lhs != blade_images[S] * blade_images[T]:
                    raise CliffordError(
                        f"extension is not multiplicative on ({blade_label(S)}, {blade_label(T)})")
    cols = [target.coordinates(x) for x in blade_images]
    return LinearMapTable(dim, target.dim, cols, q.field)


class EvenMapReport:
    """Outcome of checking the even Clifford map conditions."""

    def __init__(self):
        self.failures: dict[str, str] = {}

    def fail(self, condition: str, witness: str) -> None:
        self.failures.setdefault(condition, witness)

    @property
    def passed(self) -> bool:
        return not self.failures

    @property
    def first_failure(self) -> tuple[str, str] | None:
        for cond in ("2", "1", "2'", "1'"):
            if cond in self.failures:
                return cond, self.failures[cond]
        return None

    def __repr__(self):
        return f"EvenMapReport(passed={self.passed}, failures={self.failures})"


def even_clifford_map_validate(psi: Mapping[tuple[int, int], object], q: QuadForm, target) -> EvenMapReport:
    """Check the even Clifford map conditions for psi on the diagonal basis.

    Both conditions are quadratic in a vector argument, so they are checked
    in polarized form over basis tuples, which is equivalent on all of V:

    (1)  psi(x,y)psi(y,z) = q(y) psi(x,z)
    (2)  psi(x,x) = q(x)
    (1') psi(x,y)psi(x,z) = 2b(x,y) psi(x,z) - q(x) psi(y,z)
    (2') psi(x,y) + psi(y,x) = 2b(x,y)
    """
    n = q.n
    a = q.coeffs
    one = target.one()
    report = EvenMapReport()
    P = {(i, j): psi[(i, j)] for i in range(n) for j in range(n)}

    def b(i, j):
        return a[i] if i == j else q.field.zero

    for i in range(n):
        if P[(i, i)] != one * a[i]:
            report.fail("2", f"psi(e{i + 1},e{i + 1}) != q(e{i + 1})")
            break
    for i in range(n):
        for j in range(n):
            lhs = P[(i, j)] + P[(j, i)]
            if lhs != one * (b(i, j) * 2):
                report.fail("2'", f"psi(e{i + 1},e{j + 1}) + psi(e{j + 1},e{i + 1}) != 2b")
                if i != j:
                    report.fail("2", f"psi(x,x) != q(x) for x = e{i + 1} + e{j + 1}")
    prods = {}

    def pp(k1, k2):
        key = (k1, k2)
        hit = prods.get(key)
        if hit is None:
            hit = prods[key] = P[k1] * P[k2]
        return hit

    for i in range(n):
        for k in range(n):
            for j in range(n):
                for l in range(j, n):
                    # (1) polarized in the middle argument y = e_j, e_l.
                    lhs = pp((i, j), (j, k)) if j == l else pp((i, j), (l, k)) + pp((i, l), (j, k))
                    rhs = P[(i, k)] * (a[j] if j == l else q.field.zero)
                    if lhs != rhs:
                        report.fail("1", f"psi(e{i + 1},e{j + 1})psi(e{l + 1},e{k + 1}) breaks (1)")
                    # (1') polarized in the repeated argument x = e_j, e_l with y=e_i, z=e_k.
                    if j == l:
                        lhs2 = pp((j, i), (j, k))
                        rhs2 = P[(j, k)] * (b(j, i) * 2) - P[(i, k)] * a[j]
                    else:
                        lhs2 = pp((j, i), (l, k)) + pp((l, i), (j, k))
                        rhs2 = (P[(l, k)] * (b(j, i) * 2) + P[(j, k)] * (b(l, i) * 2)
                                - P[(i, k)] * (b(j, l) * 2))
                    if lhs2 != rhs2:
                        report.fail("1'", f"psi(e{j + 1},e{i + 1})psi(e{l + 1},e{k + 1}) breaks (1')")
    return report


def even_universal_factor(psi: Mapping[tuple[int, int], object], q: QuadForm, target,
                          other: LinearMapTable | None = None,
                          verify: bool = True) -> LinearMapTable:
    """The unique homomorphism C_0(q) -> target with Psi(e_i e_j) = psi(e_i, e_j).

    When ``other`` is given (a second factorization), it must agree with the
    result entry by entry on the even blade basis.
    """
    report = even_clifford_map_validate(psi, q, target)
    if not report.passed:
        cond, why = report.first_failure
        raise CliffordError(f"psi is not an even Clifford map (condition {cond}): {why}")
    source = CliffordAlgebra(q, even=True)
    images = []
    for mask in source.masks:
        idx = [i for i in range(q.n) if (mask >> i) & 1]
        img = target.one()
        for t in range(0, len(idx), 2):
            img = img * psi[(idx[t], idx[t + 1])]
        images.append(img)
    if verify:
        for s, S in enumerate(source.masks):
            for t, T in enumerate(source.masks):
                sign, coeff, U = blade_mul(S, T, q)
                if images[source.index[U]] * (coeff * sign) != images[s] * images[t]:
                    raise CliffordError(
                        f"factorization not multiplicative on ({blade_label(S)}, {blade_label(T)})")
        for i in range(q.n):
            for j in range(q.n):
                sign, coeff, U = blade_mul(1 << i, 1 << j, q)
                if images[source.index[U]] * (coeff * sign) != psi[(i, j)]:
                    raise CliffordError(f"Psi o j != psi at (e{i + 1}, e{j + 1})")
    cols = [target.coordinates(x) for x in images]
    table = LinearMapTable(source.dim, target.dim, cols, q.field)
    if other is not None:
        diff = table.first_difference(other)
        if diff is not None or table != other:
            raise CliffordError(
                f"two factorizations disagree on {blade_label(source.masks[diff or 0])}")
    return table


def even_factor_via_pivot(psi: Mapping[tuple[int, int], object], q: QuadForm, target,
                          pivot: int = 0) -> LinearMapTable:
    """Second route to the factorization: Psi = F o G^-1 through C(V0, -d q0).

    v = e_{pivot}, d = q(v), V0 = span of the other generators; G sends
    w -> v w into C_0(q) and F sends w -> psi(v, w) into the target.
    """
    if not 0 <= pivot < q.n:
        raise CliffordError(f"pivot {pivot} out of range")
    rest = [i for i in range(q.n) if i != pivot]
    d = q.coeffs[pivot]
    reduced = QuadForm(tuple(-d * q.coeffs[i] for i in rest), q.field)
    even = CliffordAlgebra(q, even=True)
    v = CliffordElement.generator(q, pivot)
    g_images = [v * CliffordElement.generator(q, i) for i in rest]
    f_images = [psi[(pivot, i)] for i in rest]
    G = clifford_map_factor(g_images, reduced, even)
    F = clifford_map_factor(f_images, reduced, target)
    return F.compose(G.inverse())


def even_blade_product_psi(q: QuadForm) -> dict:
    """The canonical even Clifford map j(x, y) = x y into C_0(q)."""
    gens = [CliffordElement.generator(q, i) for i in range(q.n)]
    return {(i, j): gens[i] * gens[j] for i in range(q.n) for j in range(q.n)}
