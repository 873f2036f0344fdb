"""Sparse exact linear algebra over a FieldScalar field.

Vectors are ``dict[int, FieldScalar]`` with zero entries never stored.
Elimination is plain Gauss-Jordan on exact scalars; with canonical
rationals underneath there is no rounding and no coefficient blowup worth
the bookkeeping of a fraction-free scheme at these sizes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .exactfield import FieldDescriptor, FieldScalar

SparseVec = dict  # dict[int, FieldScalar]


class LinAlgError(ArithmeticError):
    pass


def vec_add(x: SparseVec, y: SparseVec, coeff: FieldScalar | None = None) -> SparseVec:
    """Return x + coeff*y."""
    out = dict(x)
    for k, v in y.items():
        if coeff is not None:
            v = v * coeff
        cur = out.get(k)
        if cur is None:
            out[k] = v
        else:
            s = cur + v
            if s.is_zero():
                del out[k]
            else:
                out[k] = s
    return out


def vec_scale(x: SparseVec, c: FieldScalar) -> SparseVec:
    if c.is_zero():
        return {}
    return {k: v * c for k, v in x.items()}


def _axpy_inplace(out: SparseVec, y: SparseVec, coeff: FieldScalar) -> None:
    for k, v in y.items():
        v = v * coeff
        cur = out.get(k)
        if cur is None:
            out[k] = v
        else:
            s = cur + v
            if s.is_zero():
                del out[k]
            else:
                out[k] = s


class Echelon:
    """Incrementally maintained reduced row echelon form."""

    def __init__(self):
        self.pivots: dict[int, SparseVec] = {}

    def reduce(self, row: SparseVec) -> SparseVec:
        r = dict(row)
        hits = [c for c in r if c in self.pivots]
        for c in hits:
            coeff = r.get(c)
            if coeff is not None:
                _axpy_inplace(r, self.pivots[c], -coeff)
        return r

    def add(self, row: SparseVec) -> bool:
        """Insert a row; return True if it raised the rank."""
        r = self.reduce(row)
        if not r:
            return False
        col = min(r)
        inv = r[col].inverse()
        r = {k: v * inv for k, v in r.items()}
        for prow in self.pivots.values():
            coeff = prow.get(col)
            if coeff is not None:
                _axpy_inplace(prow, r, -coeff)
        self.pivots[col] = r
        return True

    @property
    def rank(self) -> int:
        return len(self.pivots)


def rank(rows: Iterable[SparseVec]) -> int:
    ech = Echelon()
    for r in rows:
        ech.add(r)
    return ech.rank


def kernel(rows: Iterable[SparseVec], ncols: int, field: FieldDescriptor) -> list[SparseVec]:
    """Basis of {x : row . x = 0 for every row}, one vector per free column."""
    ech = Echelon()
    for r in rows:
        ech.add(r)
    basis = []
    for free in range(ncols):
        if free in ech.pivots:
            continue
        vec = {free: field.one}
        for pcol, prow in ech.pivots.items():
            c = prow.get(free)
            if c is not None:
                vec[pcol] = -c
        basis.append(vec)
    return basis


def transpose_dict(cols: Sequence[SparseVec]) -> dict[int, SparseVec]:
    rows: dict[int, SparseVec] = {}
    for j, col in enumerate(cols):
        for i, v in col.items():
            rows.setdefault(i, {})[j] = v
    return rows


@dataclass
class LinearMapTable:
    """A linear map given by the images of the source basis (columns)."""

    src_dim: int
    tgt_dim: int
    cols: list  # list[SparseVec]
    field: FieldDescriptor
    _inverse_cache: "LinearMapTable | None" = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if len(self.cols) != self.src_dim:
            raise LinAlgError(f"{len(self.cols)} columns for source dimension {self.src_dim}")
        for col in self.cols:
            for k in col:
                if not 0 <= k < self.tgt_dim:
                    raise LinAlgError(f"row index {k} outside target dimension {self.tgt_dim}")

    @classmethod
    def identity(cls, dim: int, field: FieldDescriptor) -> "LinearMapTable":
        return cls(dim, dim, [{i: field.one} for i in range(dim)], field)

    @classmethod
    def from_permutation(cls, perm: Sequence[int], field: FieldDescriptor,
                         signs: Sequence[FieldScalar] | None = None) -> "LinearMapTable":
        """Column i is signs[i] * basis[perm[i]]."""
        if signs is None:
            cols = [{p: field.one} for p in perm]
        else:
            cols = [{p: s} for p, s in zip(perm, signs)]
        return cls(len(perm), len(perm), cols, field)

    def apply(self, vec: SparseVec) -> SparseVec:
        out: SparseVec = {}
        for j, x in vec.items():
            _axpy_inplace(out, self.cols[j], x)
        return out

    def compose(self, inner: "LinearMapTable") -> "LinearMapTable":
        """self o inner."""
        if inner.tgt_dim != self.src_dim:
            raise LinAlgError("dimension mismatch in composition")
        return LinearMapTable(inner.src_dim, self.tgt_dim,
                              [self.apply(col) for col in inner.cols], self.field)

    def kron(self, other: "LinearMapTable") -> "LinearMapTable":
        """Tensor product of maps, basis (i, j) -> i*dim2 + j on both sides."""
        cols = []
        for ca in self.cols:
            for cb in other.cols:
                col = {}
                for i, x in ca.items():
                    for j, y in cb.items():
                        col[i * other.tgt_dim + j] = x * y
                cols.append(col)
        return LinearMapTable(self.src_dim * other.src_dim, self.tgt_dim * other.tgt_dim,
                              cols, self.field)

    def scaled(self, c: FieldScalar) -> "LinearMapTable":
        return LinearMapTable(self.src_dim, self.tgt_dim,
                              [vec_scale(col, c) for col in self.cols], self.field)

    def rank(self) -> int:
        return rank(self.cols)

    def is_bijective(self) -> bool:
        return self.src_dim == self.tgt_dim and self.rank() == self.src_dim

    def inverse(self) -> "LinearMapTable":
        if self._inverse_cache is not None:
            return self._inverse_cache
        if self.src_dim != self.tgt_dim:
            raise LinAlgError("only square maps can be inverted")
        n = self.src_dim
        # Row-reduce [M | I]; M's rows are read off the columns.
        ech = Echelon()
        m_rows = transpose_dict(self.cols)
        for i in range(n):
            aug = dict(m_rows.get(i, {}))
            aug[n + i] = self.field.one
            ech.add(aug)
        for c in range(n):
            if c not in ech.pivots:
                raise LinAlgError("map is singular")
        # Pivot row for column c reads x_c = sum_i inv[c, i] * y_i.
        inv_rows = {c: {k - n: v for k, v in ech.pivots[c].items() if k >= n} for c in range(n)}
        cols: list[SparseVec] = [dict() for _ in range(n)]
        for c, row in inv_rows.items():
            for i, v in row.items():
                cols[i][c] = v
        result = LinearMapTable(n, n, cols, self.field)
        self._inverse_cache = result
        return result

    def __eq__(self, other):
        if not isinstance(other, LinearMapTable):
            return NotImplemented
        return (self.src_dim == other.src_dim and self.tgt_dim == other.tgt_dim
                and self.cols == other.cols)

    def first_difference(self, other: "LinearMapTable") -> int | None:
        for j, (a, b) in enumerate(zip(self.cols, other.cols)):
            if a != b:
                return j
        return None

    def is_identity(self) -> bool:
        return self.src_dim == self.tgt_dim and all(
            col == {i: self.field.one} for i, col in enumerate(self.cols))

    def to_json(self) -> dict:
        return {
            "src_dim": self.src_dim,
            "tgt_dim": self.tgt_dim,
            "entries": [[i, j, str(v)] for j, col in enumerate(self.cols)
                        for i, v in sorted(col.items())],
        }
