"""Coalgebras given by structure constants.

Basis elements are addressed by index; labels are carried for reports and
text input only. Tensors are sparse dicts keyed by index tuples, so
``{(j, k): c}`` is Σ c e_j⊗e_k.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field as dc_field
from typing import Any, Iterable, Optional, Sequence

from .errors import DimensionMismatchError, FieldMismatchError, InputError, StructureError
from .linalg import identity, inverse, matmul, rank
from .models import CoalgebraDocument, ValidationReport
from .scalar import ScalarField, parse_scalar
from .utils import add_term

logger = logging.getLogger("codiff.coalgebra")

Term = tuple  # (j, k, coefficient)


@dataclass(frozen=True)
class Coalgebra:
    field: ScalarField
    labels: tuple[str, ...]
    coproduct: tuple[tuple[Term, ...], ...]
    counit: tuple
    name: str = "coalgebra"
    _index: dict = dc_field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        n = len(self.labels)
        if len(set(self.labels)) != n:
            raise InputError(f"duplicate basis labels in {self.name}")
        if len(self.coproduct) != n or len(self.counit) != n:
            raise DimensionMismatchError(f"{self.name}: coproduct/counit tables do not match {n} basis labels")
        for i, terms in enumerate(self.coproduct):
            for j, k, _ in terms:
                if not (0 <= j < n and 0 <= k < n):
                    raise InputError(f"{self.name}: coproduct of {self.labels[i]} references index out of range")
        object.__setattr__(self, "_index", {lab: i for i, lab in enumerate(self.labels)})

    @property
    def n(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise InputError(f"unknown basis label {label!r} in {self.name}") from None

    def delta(self, i: int) -> dict:
        out: dict = {}
        for j, k, c in self.coproduct[i]:
            add_term(out, (j, k), c)
        return out

    def eps(self, i: int):
        return self.counit[i]

    def apply_delta(self, vec: dict) -> dict:
        """Δ on a sparse vector {i: c}."""
        out: dict = {}
        for i, a in vec.items():
            for j, k, c in self.coproduct[i]:
                add_term(out, (j, k), a * c)
        return out

    def apply_counit(self, vec: dict):
        s = self.field.zero
        for i, a in vec.items():
            if self.counit[i]:
                s += a * self.counit[i]
        return s

    def delta_matrix(self) -> list[list]:
        """n² × n matrix of Δ with row index a*n+b."""
        n = self.n
        m = [[self.field.zero] * n for _ in range(n * n)]
        for i in range(n):
            for (j, k), c in self.delta(i).items():
                m[j * n + k][i] = c
        return m

    def tensor_label(self, a: int, b: int) -> str:
        return f"{self.labels[a]}⊗{self.labels[b]}"


def coalgebra_from_tables(
    field: ScalarField,
    labels: Sequence[str],
    coproduct: dict,
    counit: dict,
    name: str = "coalgebra",
) -> Coalgebra:
    """Build from label-keyed tables: coproduct[label] = [(l1, l2, coeff), ...]."""
    index = {lab: i for i, lab in enumerate(labels)}

    def idx(lab):
        if lab not in index:
            raise InputError(f"unknown basis label {lab!r} in {name}")
        return index[lab]

    for lab in coproduct:
        idx(lab)
    table = []
    for lab in labels:
        terms = []
        for l1, l2, c in coproduct.get(lab, ()):
            c = field(c)
            if c:
                terms.append((idx(l1), idx(l2), c))
        table.append(tuple(terms))
    eps = tuple(field(counit.get(lab, 0)) for lab in labels)
    return Coalgebra(field, tuple(labels), tuple(table), eps, name)


def coalgebra_from_document(doc: CoalgebraDocument) -> Coalgebra:
    field = ScalarField.from_descriptor(doc.field)
    coproduct = {}
    for lab, terms in doc.coproduct.items():
        rows = []
        for t in terms:
            if len(t) != 3:
                raise InputError(f"coproduct term for {lab!r} must be [left, right, coefficient]")
            rows.append((t[0], t[1], parse_scalar(t[2], field)))
        coproduct[lab] = rows
    counit = {lab: parse_scalar(c, field) for lab, c in doc.counit.items()}
    return coalgebra_from_tables(field, doc.basis, coproduct, counit, doc.name or "coalgebra")


def coalgebra_to_document(C: Coalgebra) -> CoalgebraDocument:
    f = C.field
    return CoalgebraDocument(
        field=f.descriptor,
        basis=list(C.labels),
        coproduct={
            C.labels[i]: [[C.labels[j], C.labels[k], f.format(c)] for (j, k), c in sorted(C.delta(i).items())]
            for i in range(C.n)
        },
        counit={C.labels[i]: f.format(C.counit[i]) for i in range(C.n)},
        name=C.name,
    )


def apply_coproduct_left(C: Coalgebra, tensor: dict) -> dict:
    """(Δ⊗id⊗...) on a tensor keyed by index tuples."""
    out: dict = {}
    for key, a in tensor.items():
        for j, k, c in C.coproduct[key[0]]:
            add_term(out, (j, k) + key[1:], a * c)
    return out


def apply_coproduct_right(C: Coalgebra, tensor: dict) -> dict:
    """(...⊗id⊗Δ) on the last leg."""
    out: dict = {}
    for key, a in tensor.items():
        for j, k, c in C.coproduct[key[-1]]:
            add_term(out, key[:-1] + (j, k), a * c)
    return out


def validate_coalgebra(C: Coalgebra) -> ValidationReport:
    report = ValidationReport(structure=C.name)
    one = C.field.one
    for i in range(C.n):
        d = C.delta(i)
        left = apply_coproduct_left(C, d)
        right = apply_coproduct_right(C, d)
        report.checked += 1
        if left != right:
            report.fail("coassociativity", C.labels[i], _diff(C, left, right))
        lc: dict = {}
        rc: dict = {}
        for (j, k), c in d.items():
            add_term(lc, k, C.counit[j] * c)
            add_term(rc, j, C.counit[k] * c)
        report.checked += 1
        if lc != {i: one}:
            report.fail("left counit", C.labels[i], f"(ε⊗id)Δ = {_fmt_vec(C, lc)}")
        if rc != {i: one}:
            report.fail("right counit", C.labels[i], f"(id⊗ε)Δ = {_fmt_vec(C, rc)}")
    return report


def _fmt_vec(C: Coalgebra, vec: dict) -> str:
    if not vec:
        return "0"
    return " + ".join(f"({C.field.format(c)})*{C.labels[k]}" for k, c in sorted(vec.items()))


def _diff(C: Coalgebra, a: dict, b: dict) -> str:
    keys = sorted(set(a) | set(b))
    bad = [k for k in keys if a.get(k) != b.get(k)]
    k = bad[0]
    lab = "⊗".join(C.labels[x] for x in k)
    return f"{lab}: {C.field.format(a.get(k, C.field.zero))} != {C.field.format(b.get(k, C.field.zero))}"


def is_cocommutative(C: Coalgebra) -> bool:
    for i in range(C.n):
        d = C.delta(i)
        if d != {(k, j): c for (j, k), c in d.items()}:
            return False
    return True


@dataclass(frozen=True)
class CoalgebraMorphism:
    source: Coalgebra
    target: Coalgebra
    matrix: tuple[tuple, ...]  # target.n rows, source.n columns

    def __post_init__(self):
        if len(self.matrix) != self.target.n or any(len(r) != self.source.n for r in self.matrix):
            raise DimensionMismatchError("morphism matrix does not match source/target dimensions")

    def image(self, i: int) -> dict:
        return {r: self.matrix[r][i] for r in range(self.target.n) if self.matrix[r][i]}

    def apply(self, vec: dict) -> dict:
        out: dict = {}
        for i, a in vec.items():
            for r in range(self.target.n):
                if self.matrix[r][i]:
                    add_term(out, r, a * self.matrix[r][i])
        return out

    def rows(self) -> list[list]:
        return [list(r) for r in self.matrix]


def morphism(source: Coalgebra, target: Coalgebra, rows: Sequence[Sequence[Any]]) -> CoalgebraMorphism:
    return CoalgebraMorphism(source, target, tuple(tuple(r) for r in rows))


def identity_morphism(C: Coalgebra) -> CoalgebraMorphism:
    return morphism(C, C, identity(C.n, C.field))


def compose(g: CoalgebraMorphism, f: CoalgebraMorphism) -> CoalgebraMorphism:
    """g∘f."""
    if f.target is not g.source and f.target != g.source:
        raise InputError("morphisms do not compose")
    return morphism(f.source, g.target, matmul(g.rows(), f.rows(), f.source.field))


def check_morphism(phi: CoalgebraMorphism) -> ValidationReport:
    S, T = phi.source, phi.target
    report = ValidationReport(structure=f"{S.name} -> {T.name}")
    for i in range(S.n):
        lhs: dict = {}
        for (j, k), c in S.delta(i).items():
            for a, x in phi.image(j).items():
                for b, y in phi.image(k).items():
                    add_term(lhs, (a, b), c * x * y)
        rhs = T.apply_delta(phi.image(i))
        report.checked += 1
        if lhs != rhs:
            report.fail("comultiplicative", S.labels[i], _diff(T, lhs, rhs))
        report.checked += 1
        if T.apply_counit(phi.image(i)) != S.counit[i]:
            report.fail("counit", S.labels[i])
    return report


def is_automorphism(phi: CoalgebraMorphism) -> bool:
    return (
        phi.source.n == phi.target.n
        and check_morphism(phi).ok
        and rank(phi.rows(), phi.source.n, phi.source.field) == phi.source.n
    )


def inverse_morphism(phi: CoalgebraMorphism) -> CoalgebraMorphism:
    if phi.source.n != phi.target.n:
        raise StructureError("only square morphisms can be inverted")
    return morphism(phi.target, phi.source, inverse(phi.rows(), phi.source.field))


def direct_sum(coalgebras: Sequence[Coalgebra], name: Optional[str] = None) -> tuple[Coalgebra, list[CoalgebraMorphism]]:
    """Block direct sum with its canonical inclusions."""
    if not coalgebras:
        raise InputError("direct sum of no coalgebras")
    if len(coalgebras) == 1:
        C = coalgebras[0]
        return C, [identity_morphism(C)]
    field = coalgebras[0].field
    for C in coalgebras[1:]:
        if C.field != field:
            raise FieldMismatchError(f"summands live over {field} and {C.field}")
    labels: list[str] = []
    seen: set[str] = set()
    table: list[tuple] = []
    eps: list = []
    offsets = []
    for s, C in enumerate(coalgebras):
        off = len(labels)
        offsets.append(off)
        for lab in C.labels:
            new = lab if lab not in seen else f"{lab}_{s}"
            while new in seen:
                new += "'"
            seen.add(new)
            labels.append(new)
        for i in range(C.n):
            table.append(tuple((j + off, k + off, c) for j, k, c in C.coproduct[i]))
            eps.append(C.counit[i])
    total = Coalgebra(field, tuple(labels), tuple(table), tuple(eps), name or " ⊕ ".join(C.name for C in coalgebras))
    inclusions = []
    for off, C in zip(offsets, coalgebras):
        rows = [[field.zero] * C.n for _ in range(total.n)]
        for i in range(C.n):
            rows[off + i][i] = field.one
        inclusions.append(morphism(C, total, rows))
    return total, inclusions


@dataclass(frozen=True)
class DualAlgebra:
    """C* with the convolution product; ε is the unit."""

    coalgebra: Coalgebra

    @property
    def unit(self) -> list:
        return list(self.coalgebra.counit)

    def multiply(self, alpha: Sequence[Any], beta: Sequence[Any]) -> list:
        return convolution(self.coalgebra, alpha, beta)

    def basis_product(self, a: int, b: int) -> list:
        """e^a ⋆ e^b in the dual basis."""
        C = self.coalgebra
        out = [C.field.zero] * C.n
        for i in range(C.n):
            for j, k, c in C.coproduct[i]:
                if j == a and k == b:
                    out[i] += c
        return out

    def is_commutative(self) -> bool:
        return is_cocommutative(self.coalgebra)


def dual_algebra(C: Coalgebra) -> DualAlgebra:
    return DualAlgebra(C)


def convolution(C: Coalgebra, alpha: Sequence[Any], beta: Sequence[Any]) -> list:
    """(α⋆β)(e_i) = Σ c α(e_j) β(e_k) over Δe_i = Σ c e_j⊗e_k."""
    if len(alpha) != C.n or len(beta) != C.n:
        raise DimensionMismatchError(f"functionals must have length {C.n}")
    out = []
    for i in range(C.n):
        s = C.field.zero
        for j, k, c in C.coproduct[i]:
            if alpha[j] and beta[k]:
                s += c * alpha[j] * beta[k]
        out.append(s)
    return out


def basis_functional(C: Coalgebra, i: int) -> list:
    return [C.field.one if j == i else C.field.zero for j in range(C.n)]


def sparse(vec: Iterable) -> dict:
    return {i: c for i, c in enumerate(vec) if c}
