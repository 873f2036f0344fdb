"""Finite-dimensional algebras with involution as structure-constant tables.

An :class:`InvolutiveAlgebra` stores ``basis_i * basis_j`` as a sparse
vector for every ordered pair, a unit vector and the involution as a
:class:`LinearMapTable`.  Everything downstream (centers, classification,
certificates) works on those tables only, so Clifford algebras, quaternion
models and tensor products are handled uniformly.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from math import isqrt
from typing import Mapping, Sequence

from gmpy2 import mpq

from .clifford import (CliffordAlgebra, CliffordElement, blade_label, contraction_table, popcount,
                       reorder_sign, reversion_sign, symmetry_sign)
from .exactfield import RATIONALS, FieldDescriptor, FieldError, FieldScalar, as_scalar, parse_scalar
from .linalg import LinearMapTable, kernel, rank, transpose_dict
from .qspace import OrthSymmetry, QuadForm

SCHEMA = "inv-alg/1"

# Construction-time validation: exhaustive up to these dimensions, seeded
# sampling above them.
EXHAUSTIVE_ASSOC_DIM = 16
EXHAUSTIVE_PAIR_DIM = 64
VALIDATION_SAMPLES = 2000


class AlgebraError(ValueError):
    pass


# Over Q the hot loops run on bare mpq values; FieldScalar wrapping is
# applied only at the boundary.
_QZERO = mpq(0)


def _raw_vec(x: Mapping) -> dict:
    return {k: v.a for k, v in x.items()}


def _wrap_vec(fld: FieldDescriptor, x: Mapping) -> dict:
    raw = FieldScalar._raw
    return {k: raw(fld, v, _QZERO) for k, v in x.items()}


@lru_cache(maxsize=None)
def _samples(dim: int, arity: int) -> tuple:
    """The seeded index tuples checked when exhaustive validation is too costly."""
    rng = random.Random(0)
    return tuple(tuple(rng.randrange(dim) for _ in range(arity)) for _ in range(VALIDATION_SAMPLES))


def _apply_q(cols: Sequence[Mapping], x: Mapping) -> dict:
    out: dict = {}
    get = out.get
    for j, a in x.items():
        for k, c in cols[j].items():
            out[k] = get(k, 0) + a * c
    return {k: v for k, v in out.items() if v}


def _acc(out: dict, k: int, v: FieldScalar) -> None:
    cur = out.get(k)
    if cur is None:
        out[k] = v
    else:
        s = cur + v
        if s.is_zero():
            del out[k]
        else:
            out[k] = s


class AlgElement:
    """An element of an :class:`InvolutiveAlgebra` (sparse coordinates)."""

    __slots__ = ("algebra", "vec")

    def __init__(self, algebra: "InvolutiveAlgebra", vec: Mapping[int, FieldScalar]):
        self.algebra = algebra
        self.vec = {k: v for k, v in vec.items() if not v.is_zero()}

    def _wrap(self, vec):
        out = object.__new__(AlgElement)
        out.algebra = self.algebra
        out.vec = vec
        return out

    def _check(self, other):
        if other.algebra is not self.algebra and other.algebra.dim != self.algebra.dim:
            raise AlgebraError("elements of different algebras")

    def __add__(self, other):
        if not isinstance(other, AlgElement):
            other = self.algebra.one() * as_scalar(other, self.algebra.field)
        self._check(other)
        out = dict(self.vec)
        for k, v in other.vec.items():
            _acc(out, k, v)
        return self._wrap(out)

    __radd__ = __add__

    def __neg__(self):
        return self._wrap({k: -v for k, v in self.vec.items()})

    def __sub__(self, other):
        if not isinstance(other, AlgElement):
            other = self.algebra.one() * as_scalar(other, self.algebra.field)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, AlgElement):
            self._check(other)
            return self._wrap(self.algebra.mul_vec(self.vec, other.vec))
        c = as_scalar(other, self.algebra.field)
        if c.is_zero():
            return self._wrap({})
        return self._wrap({k: v * c for k, v in self.vec.items()})

    def __rmul__(self, other):
        return self * other

    def __eq__(self, other):
        if isinstance(other, AlgElement):
            return self.vec == other.vec and self.algebra.dim == other.algebra.dim
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.vec.items()))

    def is_zero(self) -> bool:
        return not self.vec

    def involve(self) -> "AlgElement":
        return self._wrap(self.algebra.inv.apply(self.vec))

    def __str__(self):
        if not self.vec:
            return "0"
        labels = self.algebra.labels
        return " + ".join(f"{v}*{labels[k]}" for k, v in sorted(self.vec.items()))

    __repr__ = __str__


@dataclass(frozen=True)
class InvolutionClass:
    kind: str
    type: str
    sym_dim: int
    degree: int

    def to_json(self) -> dict:
        return {"kind": self.kind, "type": self.type, "sym_dim": self.sym_dim, "degree": self.degree}


class InvolutiveAlgebra:
    """Associative unital algebra with an involution, on a fixed basis.

    ``table[i][j]`` is the sparse product ``basis_i * basis_j``; ``inv`` is
    the involution matrix; ``gens`` (optional) is a generating set used to
    compute the center as a commutant.
    """

    def __init__(self, field: FieldDescriptor, table: Sequence[Sequence[Mapping]],
                 unit: Mapping[int, FieldScalar], inv: LinearMapTable,
                 gens: Sequence[Mapping] | None = None, labels: Sequence[str] | None = None,
                 name: str = "", validate: bool = True):
        self.field = field
        self.dim = len(table)
        self.table = [[dict(entry) for entry in row] for row in table]
        self.unit = dict(unit)
        self.inv = inv
        self.gens = [dict(g) for g in gens] if gens is not None else None
        self.labels = list(labels) if labels is not None else [f"b{i}" for i in range(self.dim)]
        self.name = name
        if inv.src_dim != self.dim or inv.tgt_dim != self.dim:
            raise AlgebraError("involution matrix has the wrong size")
        if validate:
            self.validate()

    # -- element plumbing ----------------------------------------------
    @cached_property
    def _qtable(self):
        if self.field.c is not None:
            return None
        return [[{k: v.a for k, v in e.items()} for e in row] for row in self.table]

    def _mul_q(self, x: Mapping, y: Mapping) -> dict:
        out: dict = {}
        get = out.get
        table = self._qtable
        for i, a in x.items():
            row = table[i]
            for j, b in y.items():
                ab = a * b
                for k, c in row[j].items():
                    out[k] = get(k, 0) + ab * c
        return {k: v for k, v in out.items() if v}

    def mul_vec(self, x: Mapping, y: Mapping) -> dict:
        if self._qtable is not None:
            return _wrap_vec(self.field, self._mul_q(_raw_vec(x), _raw_vec(y)))
        out: dict = {}
        table = self.table
        for i, a in x.items():
            row = table[i]
            for j, b in y.items():
                ab = a * b
                for k, c in row[j].items():
                    _acc(out, k, ab * c)
        return out

    def one(self) -> AlgElement:
        return AlgElement(self, self.unit)

    def basis(self, i: int) -> AlgElement:
        return AlgElement(self, {i: self.field.one})

    def element(self, coords: Mapping[int, FieldScalar]) -> AlgElement:
        return AlgElement(self, coords)

    def coordinates(self, x: AlgElement) -> dict:
        return dict(x.vec)

    def involve(self, x: AlgElement) -> AlgElement:
        return x.involve()

    def generators(self) -> list[dict]:
        if self.gens is not None:
            return self.gens
        return [{i: self.field.one} for i in range(self.dim)]

    # -- validation -----------------------------------------------------
    def validate(self) -> None:
        dim = self.dim
        if self._qtable is not None:
            mul, table, one = self._mul_q, self._qtable, mpq(1)
            unit, inv_cols = _raw_vec(self.unit), [_raw_vec(c) for c in self.inv.cols]

            def inv_apply(x):
                return _apply_q(inv_cols, x)
        else:
            mul, table, one = self.mul_vec, self.table, self.field.one
            unit, inv_cols, inv_apply = self.unit, self.inv.cols, self.inv.apply
        for i in range(dim):
            e = {i: one}
            if mul(unit, e) != e or mul(e, unit) != e:
                raise AlgebraError(f"unit fails on basis element {self.labels[i]}")
        if dim <= EXHAUSTIVE_ASSOC_DIM:
            triples = itertools.product(range(dim), repeat=3)
        else:
            triples = _samples(dim, 3)
        for i, j, k in triples:
            if mul(table[i][j], {k: one}) != mul({i: one}, table[j][k]):
                raise AlgebraError(
                    f"not associative on ({self.labels[i]}, {self.labels[j]}, {self.labels[k]})")
        if not self.inv.compose(self.inv).is_identity():
            raise AlgebraError("involution does not square to the identity")
        if inv_apply(unit) != unit:
            raise AlgebraError("involution does not fix the unit")
        for i, j in self._pairs():
            if inv_apply(table[i][j]) != mul(inv_cols[j], inv_cols[i]):
                raise AlgebraError(
                    f"involution is not antimultiplicative on ({self.labels[i]}, {self.labels[j]})")

    def _pairs(self):
        dim = self.dim
        if dim <= EXHAUSTIVE_PAIR_DIM:
            return itertools.product(range(dim), repeat=2)
        return _samples(dim, 2)

    # -- structure --------------------------------------------------------
    @cached_property
    def center(self) -> list[dict]:
        """Basis of the commutant of the generating set."""
        rows: dict = {}
        one = self.field.one
        for gi, g in enumerate(self.generators()):
            for i in range(self.dim):
                e = {i: one}
                diff = self.mul_vec(e, g)
                for k, v in self.mul_vec(g, e).items():
                    _acc(diff, k, -v)
                for k, v in diff.items():
                    rows.setdefault((gi, k), {})[i] = v
        return kernel(rows.values(), self.dim, self.field)

    @cached_property
    def center_action(self) -> str:
        for z in self.center:
            if self.inv.apply(z) != z:
                return "conjugates-center"
        return "fixes-center"

    @cached_property
    def symmetric_dim(self) -> int:
        one = self.field.one
        cols = []
        for i, col in enumerate(self.inv.cols):
            c = dict(col)
            _acc(c, i, -one)
            cols.append(c)
        return self.dim - rank(cols)

    def is_semisimple(self) -> bool:
        """Nondegenerate trace form Tr(L_{xy}) (valid in characteristic zero)."""
        traces = []
        for b in range(self.dim):
            t = self.field.zero
            row = self.table[b]
            for i in range(self.dim):
                c = row[i].get(i)
                if c is not None:
                    t = t + c
            traces.append(t)
        rows = []
        for i in range(self.dim):
            r = {}
            for j in range(self.dim):
                v = self.field.zero
                for k, c in self.table[i][j].items():
                    if not traces[k].is_zero():
                        v = v + c * traces[k]
                if not v.is_zero():
                    r[j] = v
            rows.append(r)
        return rank(rows) == self.dim

    # -- equality and serialization --------------------------------------
    def same_as(self, other: "InvolutiveAlgebra") -> bool:
        return (self is other) or (
            self.dim == other.dim and self.field == other.field and self.unit == other.unit
            and self.table == other.table and self.inv == other.inv)

    def to_json(self) -> dict:
        mul = [[i, j, k, str(v)] for i in range(self.dim) for j in range(self.dim)
               for k, v in sorted(self.table[i][j].items())]
        return {
            "schema": SCHEMA,
            "type": "algebra",
            "name": self.name,
            "field": self.field.to_json(),
            "dim": self.dim,
            "unit": [[k, str(v)] for k, v in sorted(self.unit.items())],
            "mul": mul,
            "inv": self.inv.to_json()["entries"],
            "labels": self.labels,
        }

    @classmethod
    def from_json(cls, data: dict) -> "InvolutiveAlgebra":
        if data.get("schema") != SCHEMA or data.get("type") != "algebra":
            raise AlgebraError("not an inv-alg/1 algebra document")
        fd = FieldDescriptor.from_json(data["field"])
        dim = data["dim"]
        table = [[{} for _ in range(dim)] for _ in range(dim)]
        for i, j, k, v in data["mul"]:
            table[i][j][k] = parse_scalar(v, fd)
        cols = [{} for _ in range(dim)]
        for i, j, v in data["inv"]:
            cols[j][i] = parse_scalar(v, fd)
        unit = {k: parse_scalar(v, fd) for k, v in data["unit"]}
        return cls(fd, table, unit, LinearMapTable(dim, dim, cols, fd),
                   labels=data.get("labels"), name=data.get("name", ""))

    def __repr__(self):
        return f"InvolutiveAlgebra({self.name or 'anonymous'}, dim={self.dim}, field={self.field})"


# -- constructors ------------------------------------------------------------

def _clifford_table(q: QuadForm, masks: Sequence[int]) -> list:
    index = {m: i for i, m in enumerate(masks)}
    contraction = contraction_table(q)
    negated = [-c for c in contraction]
    table = []
    for S in masks:
        row = []
        for T in masks:
            c = contraction if reorder_sign(S, T) > 0 else negated
            row.append({index[S ^ T]: c[S & T]})
        table.append(row)
    return table


def _involution_diag(q: QuadForm, sigma: OrthSymmetry, masks: Sequence[int]) -> LinearMapTable:
    one = q.field.one
    cols = [{i: one if symmetry_sign(sigma, m) * reversion_sign(m) > 0 else -one}
            for i, m in enumerate(masks)]
    return LinearMapTable(len(masks), len(masks), cols, q.field)


def from_clifford(q: QuadForm, sigma: OrthSymmetry) -> InvolutiveAlgebra:
    """(C(q), J_q^sigma) on the blade basis, masks in increasing order."""
    sigma.check_matches(q)
    masks = list(range(1 << q.n))
    gens = [{1 << i: q.field.one} for i in range(q.n)]
    alg = InvolutiveAlgebra(q.field, _clifford_table(q, masks), {0: q.field.one},
                            _involution_diag(q, sigma, masks), gens=gens,
                            labels=[blade_label(m) for m in masks],
                            name=f"C({q}), J^{sigma}")
    alg.form, alg.sigma, alg.masks, alg.even = q, sigma, masks, False
    return alg


def from_even_clifford(q: QuadForm, sigma: OrthSymmetry) -> InvolutiveAlgebra:
    """(C_0(q), J_q^sigma restricted) on the even blade basis."""
    sigma.check_matches(q)
    masks = [m for m in range(1 << q.n) if popcount(m) % 2 == 0]
    index = {m: i for i, m in enumerate(masks)}
    gens = [{index[1 | (1 << j)]: q.field.one} for j in range(1, q.n)]
    alg = InvolutiveAlgebra(q.field, _clifford_table(q, masks), {0: q.field.one},
                            _involution_diag(q, sigma, masks), gens=gens,
                            labels=[blade_label(m) for m in masks],
                            name=f"C0({q}), J^{sigma}")
    alg.form, alg.sigma, alg.masks, alg.even = q, sigma, masks, True
    return alg


QUATERNION_KINDS = ("canonical", "orthogonal_uv", "orthogonal_wv")


def quaternion(a, b, invkind: str = "canonical", field: FieldDescriptor = RATIONALS) -> InvolutiveAlgebra:
    """(a, b) on the basis 1, i, j, k with i^2 = a, j^2 = b, k = ij = -ji."""
    a, b = as_scalar(a, field), as_scalar(b, field)
    if a.is_zero() or b.is_zero():
        raise AlgebraError("quaternion parameters must be nonzero")
    if invkind == "canonical":
        signs = (1, -1, -1, -1)
    elif invkind in ("orthogonal_uv", "orthogonal_wv"):
        # J(i) = -i, J(j) = j forces J(ij) = ij; the wv model fixes w = ij and v = j.
        signs = (1, -1, 1, 1)
    else:
        raise AlgebraError(f"unknown quaternion involution {invkind!r}")
    q = QuadForm((a, b), field)
    one = field.one
    inv = LinearMapTable(4, 4, [{i: one if s > 0 else -one} for i, s in enumerate(signs)], field)
    alg = InvolutiveAlgebra(field, _clifford_table(q, [0, 1, 2, 3]), {0: one}, inv,
                            gens=[{1: one}, {2: one}], labels=["1", "i", "j", "k"],
                            name=f"({a},{b}), {invkind}")
    alg.params, alg.invkind = (a, b), invkind
    return alg


def base_field_algebra(field: FieldDescriptor = RATIONALS) -> InvolutiveAlgebra:
    one = field.one
    return InvolutiveAlgebra(field, [[{0: one}]], {0: one},
                             LinearMapTable.identity(1, field), gens=[], labels=["1"], name="k")


def quadratic_extension_algebra(c, field: FieldDescriptor = RATIONALS) -> InvolutiveAlgebra:
    """K = k(sqrt c) as a 2-dimensional k-algebra with its conjugation."""
    c = as_scalar(c, field)
    if field.is_rational and c.is_zero():
        raise AlgebraError("radicand must be nonzero")
    if field.is_rational:
        from .exactfield import is_square
        if is_square(c):
            raise AlgebraError(f"{c} is a square; k(sqrt c) is not a field")
    one = field.one
    table = [[{0: one}, {1: one}], [{1: one}, {0: c}]]
    inv = LinearMapTable(2, 2, [{0: one}, {1: -one}], field)
    alg = InvolutiveAlgebra(field, table, {0: one}, inv, gens=[{1: one}],
                            labels=["1", f"sqrt({c})"], name=f"K(sqrt {c}), conj")
    alg.radicand = c
    return alg


def tensor(A: InvolutiveAlgebra, B: InvolutiveAlgebra, validate: bool = True) -> InvolutiveAlgebra:
    """Ungraded tensor product; basis (i, j) is index i * dim B + j.

    Products of the same two algebra objects are memoized; algebras are
    never mutated after construction, so sharing the result is safe.
    """
    if validate:
        return _tensor_cached(A, B)
    return _tensor(A, B, validate)


@lru_cache(maxsize=48)
def _tensor_cached(A: InvolutiveAlgebra, B: InvolutiveAlgebra) -> InvolutiveAlgebra:
    return _tensor(A, B, True)


def _tensor(A: InvolutiveAlgebra, B: InvolutiveAlgebra, validate: bool) -> InvolutiveAlgebra:
    if A.field != B.field:
        raise FieldError(f"field mismatch: {A.field} vs {B.field}")
    dA, dB = A.dim, B.dim
    rational = A._qtable is not None
    tA, tB = (A._qtable, B._qtable) if rational else (A.table, B.table)
    table = [[None] * (dA * dB) for _ in range(dA * dB)]
    for i1 in range(dA):
        for i2 in range(dA):
            ca = tA[i1][i2].items()
            for j1 in range(dB):
                row = table[i1 * dB + j1]
                rowB = tB[j1]
                for j2 in range(dB):
                    cb = rowB[j2].items()
                    row[i2 * dB + j2] = {ka * dB + kb: va * vb for ka, va in ca for kb, vb in cb}
    if rational:
        table = [[_wrap_vec(A.field, e) for e in row] for row in table]
    unit = kron_vec(A.unit, B.unit, dB)
    gens = [kron_vec(g, B.unit, dB) for g in A.generators()] + \
           [kron_vec(A.unit, g, dB) for g in B.generators()]
    labels = [f"{la}(x){lb}" for la in A.labels for lb in B.labels]
    alg = InvolutiveAlgebra(A.field, table, unit, A.inv.kron(B.inv), gens=gens, labels=labels,
                            name=f"[{A.name}] (x) [{B.name}]", validate=validate)
    alg.factors = (A, B)
    return alg


def tensor_many(algebras: Sequence[InvolutiveAlgebra]) -> InvolutiveAlgebra:
    """Left-nested product ((A1 (x) A2) (x) A3) ...; same table as right nesting."""
    if not algebras:
        raise AlgebraError("empty tensor product")
    out = algebras[0]
    for B in algebras[1:]:
        out = tensor(out, B)
    return out


def kron_vec(x: Mapping, y: Mapping, dim_y: int) -> dict:
    return {i * dim_y + j: a * b for i, a in x.items() for j, b in y.items()}


def pure_tensor(T: InvolutiveAlgebra, x, y) -> AlgElement:
    """x (x) y in T = A (x) B, for elements or coordinate dicts of A and B."""
    A, B = T.factors
    xv = x.vec if isinstance(x, AlgElement) else _as_coords(A, x)
    yv = y.vec if isinstance(y, AlgElement) else _as_coords(B, y)
    return AlgElement(T, kron_vec(xv, yv, B.dim))


def _as_coords(alg: InvolutiveAlgebra, x) -> dict:
    if isinstance(x, CliffordElement):
        index = {m: i for i, m in enumerate(alg.masks)}
        return {index[m]: c for m, c in x.terms.items()}
    return dict(x)


def clifford_to_alg(alg: InvolutiveAlgebra, x: CliffordElement) -> AlgElement:
    """View a Clifford element inside a table built by from_(even_)clifford."""
    return AlgElement(alg, _as_coords(alg, x))


# -- classification ----------------------------------------------------------

def symmetric_dim(A: InvolutiveAlgebra) -> int:
    return A.symmetric_dim


def center(A: InvolutiveAlgebra) -> list[dict]:
    return A.center


def classify(A: InvolutiveAlgebra) -> InvolutionClass:
    zdim = len(A.center)
    if zdim not in (1, 2):
        raise AlgebraError(f"center has dimension {zdim}; expected 1 or 2")
    if not A.is_semisimple():
        raise AlgebraError("algebra is not semisimple (degenerate trace form)")
    sym = A.symmetric_dim
    if A.center_action == "conjugates-center":
        d = isqrt(A.dim // 2)
        if 2 * d * d != A.dim or sym != d * d:
            raise AlgebraError(f"second-kind involution with unexpected sym_dim {sym} (dim {A.dim})")
        return InvolutionClass("second", "unitary", sym, d)
    if zdim != 1:
        raise AlgebraError("first-kind involution on an algebra whose center is not the base "
                           "field; type is undefined there")
    d = isqrt(A.dim)
    if d * d != A.dim:
        raise AlgebraError(f"dimension {A.dim} is not a square")
    if sym == d * (d + 1) // 2:
        return InvolutionClass("first", "orthogonal", sym, d)
    if sym == d * (d - 1) // 2:
        return InvolutionClass("first", "symplectic", sym, d)
    raise AlgebraError(f"sym_dim {sym} matches neither orthogonal nor symplectic for degree {d}")


# -- certificates ------------------------------------------------------------

CHECK_NAMES = ("unital", "multiplicative", "bijective", "involution_compatible")


@dataclass
class CheckResult:
    status: str = "pending"
    witness: str | None = None

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict:
        out = {"status": self.status}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class IsoCertificate:
    source: InvolutiveAlgebra
    target: InvolutiveAlgebra
    map: LinearMapTable
    description: str = ""
    checks: dict = field(default_factory=lambda: {name: CheckResult() for name in CHECK_NAMES})
    meta: dict = field(default_factory=dict)

    @property
    def verified(self) -> bool:
        return all(self.checks[name].passed for name in CHECK_NAMES)

    def failures(self) -> dict:
        return {k: v.witness for k, v in self.checks.items() if not v.passed}

    def require(self) -> "IsoCertificate":
        if not self.verified:
            raise AlgebraError(f"certificate '{self.description}' failed: {self.failures()}")
        return self

    def apply(self, x: AlgElement) -> AlgElement:
        return AlgElement(self.target, self.map.apply(x.vec))

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "type": "certificate",
            "description": self.description,
            "source_dim": self.source.dim,
            "target_dim": self.target.dim,
            "map": self.map.to_json()["entries"],
            "checks": {k: v.to_json() for k, v in self.checks.items()},
        }


def verify_certificate(cert: IsoCertificate) -> IsoCertificate:
    src, tgt, M = cert.source, cert.target, cert.map
    checks = cert.checks
    if src.dim != tgt.dim or M.src_dim != src.dim or M.tgt_dim != tgt.dim:
        for name in CHECK_NAMES:
            checks[name] = CheckResult("fail", f"dimension mismatch {src.dim} -> {tgt.dim}")
        return cert
    if M.apply(src.unit) == tgt.unit:
        checks["unital"] = CheckResult("pass")
    else:
        checks["unital"] = CheckResult("fail", "image of the unit is not the unit")

    witness = None
    if src._qtable is not None and tgt._qtable is not None:
        images = [_raw_vec(col) for col in M.cols]
        for i in range(src.dim):
            row = src._qtable[i]
            for j in range(src.dim):
                if _apply_q(images, row[j]) != tgt._mul_q(images[i], images[j]):
                    witness = f"({src.labels[i]}, {src.labels[j]})"
                    break
            if witness:
                break
    else:
        images = M.cols
        for i in range(src.dim):
            row = src.table[i]
            for j in range(src.dim):
                if M.apply(row[j]) != tgt.mul_vec(images[i], images[j]):
                    witness = f"({src.labels[i]}, {src.labels[j]})"
                    break
            if witness:
                break
    checks["multiplicative"] = CheckResult("fail", witness) if witness else CheckResult("pass")

    r = M.rank()
    checks["bijective"] = (CheckResult("pass") if r == src.dim
                           else CheckResult("fail", f"rank {r} < {src.dim}"))

    witness = None
    for i in range(src.dim):
        if M.apply(src.inv.cols[i]) != tgt.inv.apply(M.cols[i]):
            witness = src.labels[i]
            break
    checks["involution_compatible"] = (CheckResult("fail", witness) if witness
                                       else CheckResult("pass"))
    return cert


def certify(source, target, M, description: str = "") -> IsoCertificate:
    return verify_certificate(IsoCertificate(source, target, M, description))


def identity_certificate(A: InvolutiveAlgebra, description: str = "identity") -> IsoCertificate:
    return certify(A, A, LinearMapTable.identity(A.dim, A.field), description)


def invert(cert: IsoCertificate, description: str | None = None) -> IsoCertificate:
    """Exact inverse of a verified certificate, re-verified from scratch."""
    cert.require()
    return certify(cert.target, cert.source, cert.map.inverse(),
                   description or f"inverse of {cert.description}")


def compose(first: IsoCertificate, second: IsoCertificate,
            description: str | None = None) -> IsoCertificate:
    """second o first."""
    if not first.target.same_as(second.source):
        raise AlgebraError("certificates do not compose: target and source differ")
    return certify(first.source, second.target, second.map.compose(first.map),
                   description or f"{second.description} o {first.description}")


def kron_certificate(c1: IsoCertificate, c2: IsoCertificate,
                     description: str | None = None) -> IsoCertificate:
    """c1 (x) c2 between the tensor products of sources and targets."""
    return certify(tensor(c1.source, c2.source), tensor(c1.target, c2.target),
                   c1.map.kron(c2.map), description or f"{c1.description} (x) {c2.description}")


def clifford_view(alg: InvolutiveAlgebra) -> CliffordAlgebra:
    return CliffordAlgebra(alg.form, even=alg.even)
