"""Exact linear algebra over a ScalarField.

Dense matrices are lists of rows of field elements and go through sympy's
DomainMatrix for row reduction. Subspaces are stored in reduced row echelon
form, which makes equality of subspaces equality of data.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any, Callable, Hashable, Iterable, Optional, Sequence

from sympy.polys.matrices import DomainMatrix

from .errors import DimensionMismatchError, StructureError
from .scalar import ScalarField
from .utils import add_into

logger = logging.getLogger("codiff.linalg")

Row = list


def _dm(rows: Sequence[Sequence[Any]], ncols: int, field: ScalarField) -> DomainMatrix:
    for r in rows:
        if len(r) != ncols:
            raise DimensionMismatchError(f"row of length {len(r)} in a matrix with {ncols} columns")
    return DomainMatrix([list(r) for r in rows], (len(rows), ncols), field.domain)


def rref(rows: Sequence[Sequence[Any]], ncols: int, field: ScalarField) -> tuple[list[Row], tuple[int, ...]]:
    """Nonzero rows of the reduced row echelon form (pivot entries 1) and the pivot columns."""
    if not rows or ncols == 0:
        return [], ()
    reduced, pivots = _dm(rows, ncols, field).rref()
    data = reduced.to_list()
    out = []
    for i, p in enumerate(pivots):
        r = data[i]
        lead = r[p]
        if lead != field.one:
            inv = field.one / lead
            r = [inv * c for c in r]
        out.append(r)
    return out, tuple(pivots)


def rank(rows: Sequence[Sequence[Any]], ncols: int, field: ScalarField) -> int:
    return len(rref(rows, ncols, field)[1])


def kernel(rows: Sequence[Sequence[Any]], ncols: int, field: ScalarField) -> list[Row]:
    """Basis of {x : A x = 0}, one vector per free column."""
    reduced, pivots = rref(rows, ncols, field)
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        x = [field.zero] * ncols
        x[f] = field.one
        for r, p in zip(reduced, pivots):
            if r[f]:
                x[p] = -r[f]
        basis.append(x)
    return basis


def transpose(rows: Sequence[Sequence[Any]], nrows: int, ncols: int, field: ScalarField) -> list[Row]:
    if not rows:
        return [[] for _ in range(ncols)] if nrows == 0 else [[field.zero] * nrows for _ in range(ncols)]
    return [[rows[i][j] for i in range(nrows)] for j in range(ncols)]


def image(rows: Sequence[Sequence[Any]], ncols: int, field: ScalarField) -> "Subspace":
    """Column space of A as a subspace of the codomain (dimension len(rows))."""
    m = len(rows)
    return Subspace.from_vectors(transpose(rows, m, ncols, field), m, field)


def matvec(rows: Sequence[Sequence[Any]], x: Sequence[Any], field: ScalarField) -> Row:
    out = []
    for r in rows:
        s = field.zero
        for a, b in zip(r, x):
            if a and b:
                s += a * b
        out.append(s)
    return out


def matmul(a: Sequence[Sequence[Any]], b: Sequence[Sequence[Any]], field: ScalarField) -> list[Row]:
    if not a:
        return []
    inner = len(b)
    ncols = len(b[0]) if b else 0
    if len(a[0]) != inner:
        raise DimensionMismatchError("matrix shapes do not compose")
    return (_dm(a, inner, field) * _dm(b, ncols, field)).to_list()


def solve(rows: Sequence[Sequence[Any]], b: Sequence[Any], ncols: int, field: ScalarField) -> Optional[Row]:
    """One solution of A x = b, or None when inconsistent."""
    if len(rows) != len(b):
        raise DimensionMismatchError("right-hand side does not match the number of equations")
    if not rows:
        return [field.zero] * ncols
    aug = [list(r) + [c] for r, c in zip(rows, b)]
    reduced, pivots = rref(aug, ncols + 1, field)
    if pivots and pivots[-1] == ncols:
        return None
    x = [field.zero] * ncols
    for r, p in zip(reduced, pivots):
        x[p] = r[ncols]
    return x


def inverse(rows: Sequence[Sequence[Any]], field: ScalarField) -> list[Row]:
    n = len(rows)
    aug = [list(r) + [field.one if i == j else field.zero for j in range(n)] for i, r in enumerate(rows)]
    reduced, pivots = rref(aug, 2 * n, field)
    if tuple(pivots[:n]) != tuple(range(n)) or (len(pivots) > n and pivots[n] < n):
        raise StructureError("matrix is singular")
    return [r[n:] for r in reduced[:n]]


def identity(n: int, field: ScalarField) -> list[Row]:
    return [[field.one if i == j else field.zero for j in range(n)] for i in range(n)]


@dataclass(frozen=True)
class Subspace:
    field: ScalarField
    ambient: int
    rows: tuple[tuple, ...]
    pivots: tuple[int, ...]

    @classmethod
    def from_vectors(cls, vectors: Iterable[Sequence[Any]], ambient: int, field: ScalarField) -> "Subspace":
        vecs = [list(v) for v in vectors]
        reduced, pivots = rref(vecs, ambient, field)
        return cls(field, ambient, tuple(tuple(r) for r in reduced), pivots)

    @classmethod
    def zero(cls, ambient: int, field: ScalarField) -> "Subspace":
        return cls(field, ambient, (), ())

    @classmethod
    def whole(cls, ambient: int, field: ScalarField) -> "Subspace":
        return cls.from_vectors(identity(ambient, field), ambient, field)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def basis(self) -> list[Row]:
        return [list(r) for r in self.rows]

    def reduce(self, v: Sequence[Any]) -> Row:
        if len(v) != self.ambient:
            raise DimensionMismatchError(f"vector of length {len(v)} in ambient dimension {self.ambient}")
        w = list(v)
        for r, p in zip(self.rows, self.pivots):
            c = w[p]
            if c:
                w = [a - c * b for a, b in zip(w, r)]
        return w

    def member(self, v: Sequence[Any]) -> bool:
        return not any(self.reduce(v))

    def coordinates(self, v: Sequence[Any]) -> Optional[Row]:
        """Coordinates of v in ``basis()``; None when v is not in the subspace."""
        if not self.member(v):
            return None
        return [v[p] for p in self.pivots]

    def combine(self, coords: Sequence[Any]) -> Row:
        out = [self.field.zero] * self.ambient
        for c, r in zip(coords, self.rows):
            if c:
                out = [a + c * b for a, b in zip(out, r)]
        return out

    def sum(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace.from_vectors(self.basis() + other.basis(), self.ambient, self.field)

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if not self.dim or not other.dim:
            return Subspace.zero(self.ambient, self.field)
        r, s = self.dim, other.dim
        system = [
            [self.rows[i][t] for i in range(r)] + [-other.rows[j][t] for j in range(s)]
            for t in range(self.ambient)
        ]
        sols = kernel(system, r + s, self.field)
        return Subspace.from_vectors([self.combine(x[:r]) for x in sols], self.ambient, self.field)

    def is_subset(self, other: "Subspace") -> bool:
        self._check(other)
        return all(other.member(r) for r in self.rows)

    def map(self, matrix: Sequence[Sequence[Any]], target_dim: int) -> "Subspace":
        return Subspace.from_vectors([matvec(matrix, r, self.field) for r in self.rows], target_dim, self.field)

    def _check(self, other: "Subspace"):
        if other.ambient != self.ambient:
            raise DimensionMismatchError("subspaces live in different ambient spaces")


@dataclass(frozen=True)
class QuotientSpace:
    """V / W with representatives at the non-pivot coordinates of W's echelon form."""

    sub: Subspace

    @property
    def field(self) -> ScalarField:
        return self.sub.field

    @property
    def representatives(self) -> tuple[int, ...]:
        piv = set(self.sub.pivots)
        return tuple(i for i in range(self.sub.ambient) if i not in piv)

    @property
    def dim(self) -> int:
        return self.sub.ambient - self.sub.dim

    def project(self, v: Sequence[Any]) -> Row:
        w = self.sub.reduce(v)
        return [w[i] for i in self.representatives]

    def section(self, coords: Sequence[Any]) -> Row:
        if len(coords) != self.dim:
            raise DimensionMismatchError(f"quotient vector of length {len(coords)}, expected {self.dim}")
        out = [self.field.zero] * self.sub.ambient
        for i, c in zip(self.representatives, coords):
            out[i] = c
        return out


def _default_order(key):
    return key


class SparseSpan:
    """Incremental span of sparse vectors kept fully reduced.

    Each stored row has coefficient 1 at its pivot key and 0 at every other
    pivot key. The pivot of a new row is its smallest key under ``order``.
    """

    def __init__(self, field: ScalarField, order: Callable[[Hashable], Any] = _default_order):
        self.field = field
        self.order = order
        self.rows: dict[Hashable, dict] = {}

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def reduce(self, v: dict) -> dict:
        w = dict(v)
        for p in [k for k in w if k in self.rows]:
            c = w.get(p)
            if c:
                add_into(w, self.rows[p], -c)
        return w

    def contains(self, v: dict) -> bool:
        return not self.reduce(v)

    def insert(self, v: dict) -> Optional[dict]:
        """Add v; return the normalized new row, or None when v was already in the span."""
        r = self.reduce(v)
        if not r:
            return None
        p = min(r, key=self.order)
        inv = self.field.one / r[p]
        r = {k: inv * c for k, c in r.items()}
        for row in self.rows.values():
            c = row.get(p)
            if c:
                add_into(row, r, -c)
        self.rows[p] = r
        return r

    def add(self, v: dict) -> bool:
        return self.insert(v) is not None

    def basis(self) -> list[dict]:
        return [dict(self.rows[p]) for p in sorted(self.rows, key=self.order)]

    def pivots(self) -> list[Hashable]:
        return sorted(self.rows, key=self.order)

    def coordinates(self, v: dict) -> Optional[list]:
        """Coordinates of v in ``basis()``; None when outside the span."""
        if not self.contains(v):
            return None
        return [v.get(p, self.field.zero) for p in self.pivots()]


def sparse_coordinates(v: dict, basis: Sequence[dict], field: ScalarField) -> Optional[list]:
    """Coordinates of v in an arbitrary independent family of sparse vectors."""
    keys = sorted({k for b in basis for k in b} | set(v), key=repr)
    index = {k: i for i, k in enumerate(keys)}
    system = [[field.zero] * len(basis) for _ in keys]
    for j, b in enumerate(basis):
        for k, c in b.items():
            system[index[k]][j] = c
    rhs = [v.get(k, field.zero) for k in keys]
    return solve(system, rhs, len(basis), field)
