"""Bicomodules, the universal bicomodule C⊗C/ImΔ and its coderivation.

Vectors of a bicomodule are dense lists when they describe subspaces and
sparse dicts {index: coefficient} inside coaction arithmetic. A left coaction
entry (c, j, s) stands for s·e_c⊗m_j, a right coaction entry (j, c, s) for
s·m_j⊗e_c.
"""
from __future__ import annotations

import logging
import os
import time
from dataclasses import dataclass, field as dc_field
from typing import Any, Literal, Optional, Sequence

import numpy as np
from tqdm import tqdm

from .coalgebra import Coalgebra, CoalgebraMorphism, check_morphism, is_automorphism, is_cocommutative
from .config import settings
from .errors import (
    DimensionMismatchError,
    InputError,
    NotClosedError,
    StructureError,
    ZeroGeneratorError,
)
from .linalg import QuotientSpace, Subspace, inverse, kernel, matmul, rank, solve
from .models import ValidationReport
from .scalar import ScalarField
from .utils import add_into, add_term, to_dense

logger = logging.getLogger("codiff.bicomodule")
LOG_TABLES = os.getenv("CODIFF_LOG_TABLES", "0") == "1"


@dataclass(frozen=True)
class Bicomodule:
    left: Coalgebra
    right: Coalgebra
    labels: tuple[str, ...]
    left_coaction: tuple[tuple, ...]
    right_coaction: tuple[tuple, ...]
    name: str = "bicomodule"

    def __post_init__(self):
        m = len(self.labels)
        if len(self.left_coaction) != m or len(self.right_coaction) != m:
            raise DimensionMismatchError(f"{self.name}: coaction tables do not match {m} basis vectors")
        if self.left.field != self.right.field:
            raise InputError("left and right coalgebras live over different fields")

    @property
    def field(self) -> ScalarField:
        return self.left.field

    @property
    def m(self) -> int:
        return len(self.labels)

    def sparse(self, v) -> dict:
        if isinstance(v, dict):
            return {k: c for k, c in v.items() if c}
        if len(v) != self.m:
            raise DimensionMismatchError(f"vector of length {len(v)} in a bicomodule of dimension {self.m}")
        return {i: c for i, c in enumerate(v) if c}

    def dense(self, v: dict) -> list:
        return to_dense(v, {i: i for i in range(self.m)}, self.m, self.field.zero)

    def coact_left(self, v) -> dict:
        out: dict = {}
        for i, a in self.sparse(v).items():
            for c, j, s in self.left_coaction[i]:
                add_term(out, (c, j), a * s)
        return out

    def coact_right(self, v) -> dict:
        out: dict = {}
        for i, a in self.sparse(v).items():
            for j, c, s in self.right_coaction[i]:
                add_term(out, (j, c), a * s)
        return out

    def coact_both(self, v) -> dict:
        """(id⊗Δ_R)∘Δ_L keyed by (c, j, d)."""
        out: dict = {}
        for (c, j), a in self.coact_left(v).items():
            for jj, d, s in self.right_coaction[j]:
                add_term(out, (c, jj, d), a * s)
        return out

    def format(self, v) -> str:
        v = self.sparse(v)
        if not v:
            return "0"
        f = self.field
        parts = []
        for i in sorted(v):
            c = v[i]
            if c == f.one:
                parts.append(self.labels[i])
            elif c == -f.one:
                parts.append(f"-{self.labels[i]}")
            else:
                parts.append(f"({f.format(c)})*{self.labels[i]}")
        return " + ".join(parts).replace("+ -", "- ")


def validate_bicomodule(M: Bicomodule) -> ValidationReport:
    report = ValidationReport(structure=M.name)
    one = M.field.one
    C, D = M.left, M.right
    for i in range(M.m):
        lab = M.labels[i]
        L = M.coact_left({i: one})
        # (Δ⊗id)Δ_L = (id⊗Δ_L)Δ_L
        a: dict = {}
        for (c, j), s in L.items():
            for c1, c2, t in C.coproduct[c]:
                add_term(a, (c1, c2, j), s * t)
        b: dict = {}
        for (c, j), s in L.items():
            for c2, jj, t in M.left_coaction[j]:
                add_term(b, (c, c2, jj), s * t)
        report.checked += 1
        if a != b:
            report.fail("left coassociativity", lab)
        eps_l: dict = {}
        for (c, j), s in L.items():
            add_term(eps_l, j, C.counit[c] * s)
        report.checked += 1
        if eps_l != {i: one}:
            report.fail("left counit", lab)

        R = M.coact_right({i: one})
        a = {}
        for (j, c), s in R.items():
            for c1, c2, t in D.coproduct[c]:
                add_term(a, (j, c1, c2), s * t)
        b = {}
        for (j, c), s in R.items():
            for jj, c1, t in M.right_coaction[j]:
                add_term(b, (jj, c1, c), s * t)
        report.checked += 1
        if a != b:
            report.fail("right coassociativity", lab)
        eps_r: dict = {}
        for (j, c), s in R.items():
            add_term(eps_r, j, D.counit[c] * s)
        report.checked += 1
        if eps_r != {i: one}:
            report.fail("right counit", lab)

        # (Δ_L⊗id)Δ_R = (id⊗Δ_R)Δ_L
        a = {}
        for (j, d), s in R.items():
            for c, jj, t in M.left_coaction[j]:
                add_term(a, (c, jj, d), s * t)
        report.checked += 1
        if a != M.coact_both({i: one}):
            report.fail("commuting coactions", lab)

    rows = _two_sided_matrix(M)
    report.checked += 1
    if rows and rank(rows, M.m, M.field) != M.m:
        report.fail("injective coaction", M.name, "ᴸΔᴿ is not injective")
    return report


def _two_sided_matrix(M: Bicomodule) -> list[list]:
    keys: dict = {}
    cols = []
    for i in range(M.m):
        t = M.coact_both({i: M.field.one})
        for k in t:
            keys.setdefault(k, len(keys))
        cols.append(t)
    rows = [[M.field.zero] * M.m for _ in keys]
    for i, t in enumerate(cols):
        for k, s in t.items():
            rows[keys[k]][i] = s
    return rows


def regular_bicomodule(C: Coalgebra) -> Bicomodule:
    left = tuple(tuple((j, k, c) for j, k, c in C.coproduct[i]) for i in range(C.n))
    return Bicomodule(C, C, C.labels, left, left, name=f"{C.name} (regular)")


def tensor_bicomodule(C: Coalgebra) -> Bicomodule:
    """C⊗C with Δ_L(a⊗b) = a₁⊗(a₂⊗b) and Δ_R(a⊗b) = (a⊗b₁)⊗b₂."""
    n = C.n
    labels, left, right = [], [], []
    for a in range(n):
        for b in range(n):
            labels.append(C.tensor_label(a, b))
            left.append(tuple((a1, a2 * n + b, c) for a1, a2, c in C.coproduct[a]))
            right.append(tuple((a * n + b1, b2, c) for b1, b2, c in C.coproduct[b]))
    return Bicomodule(C, C, tuple(labels), tuple(left), tuple(right), name=f"{C.name}⊗{C.name}")


def induce_along(phi: CoalgebraMorphism, M: Bicomodule) -> Bicomodule:
    """Push the coactions of M forward along φ: (φ⊗id)Δ_L and (id⊗φ)Δ_R."""
    if M.left != phi.source or M.right != phi.source:
        raise InputError("bicomodule does not live over the source of the morphism")
    if not check_morphism(phi).ok:
        raise StructureError("cannot induce along an invalid coalgebra morphism")
    left = []
    right = []
    for i in range(M.m):
        L: dict = {}
        for c, j, s in M.left_coaction[i]:
            for r, x in phi.image(c).items():
                add_term(L, (r, j), s * x)
        left.append(tuple((c, j, s) for (c, j), s in L.items()))
        R: dict = {}
        for j, c, s in M.right_coaction[i]:
            for r, x in phi.image(c).items():
                add_term(R, (j, r), s * x)
        right.append(tuple((j, c, s) for (j, c), s in R.items()))
    T = phi.target
    return Bicomodule(T, T, M.labels, tuple(left), tuple(right), name=f"{M.name} over {T.name}")


class UniversalBicomodule:
    """Υ^U = C⊗C / ImΔ with δ^U[a⊗b] = aε(b) − bε(a).

    Quotient coordinates sit at the non-pivot positions of the echelon form
    of ImΔ; basis vector k is the class of e_a⊗e_b for representative (a, b).
    """

    def __init__(self, C: Coalgebra):
        t0 = time.perf_counter()
        self.coalgebra = C
        n = C.n
        self.field = C.field
        dm = C.delta_matrix()
        columns = [[dm[r][i] for r in range(n * n)] for i in range(n)]
        self.image = Subspace.from_vectors(columns, n * n, C.field)
        self.quotient = QuotientSpace(self.image)
        self.reps = [divmod(r, n) for r in self.quotient.representatives]
        self.labels = tuple(f"[{C.labels[a]}⊗{C.labels[b]}]" for a, b in self.reps)
        self._unit_proj: list[dict] = []
        for t in range(n * n):
            e = [C.field.zero] * (n * n)
            e[t] = C.field.one
            self._unit_proj.append({k: c for k, c in enumerate(self.quotient.project(e)) if c})
        self.bicomodule = self._build_bicomodule()
        logger.debug("universal bicomodule of %s took %.3fs; dim=%d", C.name, time.perf_counter() - t0, self.dim)
        if LOG_TABLES:
            logger.info("Υ^U basis of %s: %s", C.name, ", ".join(self.labels))

    @property
    def dim(self) -> int:
        return len(self.reps)

    @property
    def n(self) -> int:
        return self.coalgebra.n

    def cls(self, a: int, b: int) -> dict:
        """π(e_a⊗e_b) as a sparse quotient vector."""
        return dict(self._unit_proj[a * self.n + b])

    def project(self, tensor: dict) -> dict:
        out: dict = {}
        for (a, b), c in tensor.items():
            add_into(out, self._unit_proj[a * self.n + b], c)
        return out

    def project_dense(self, tensor: dict) -> list:
        return self.dense(self.project(tensor))

    def section(self, v) -> dict:
        v = self.bicomodule.sparse(v)
        return {self.reps[k]: c for k, c in v.items()}

    def dense(self, v: dict) -> list:
        return self.bicomodule.dense(v)

    def _build_bicomodule(self) -> Bicomodule:
        C = self.coalgebra
        left, right = [], []
        for a, b in self.reps:
            L: dict = {}
            for a1, a2, c in C.coproduct[a]:
                for k, s in self._unit_proj[a2 * self.n + b].items():
                    add_term(L, (a1, k), c * s)
            left.append(tuple((c, k, s) for (c, k), s in L.items()))
            R: dict = {}
            for b1, b2, c in C.coproduct[b]:
                for k, s in self._unit_proj[a * self.n + b1].items():
                    add_term(R, (k, b2), c * s)
            right.append(tuple((k, c, s) for (k, c), s in R.items()))
        return Bicomodule(C, C, self.labels, tuple(left), tuple(right), name=f"Υ^U({C.name})")

    def delta(self, v) -> dict:
        """δ^U on a quotient vector, as a sparse vector of C."""
        C = self.coalgebra
        out: dict = {}
        for (a, b), c in self.section(v).items():
            add_term(out, a, c * C.counit[b])
            add_term(out, b, -c * C.counit[a])
        return out

    def delta_matrix(self) -> list[list]:
        """n × dim matrix of δ^U."""
        rows = [[self.field.zero] * self.dim for _ in range(self.n)]
        for k in range(self.dim):
            for i, c in self.delta({k: self.field.one}).items():
                rows[i][k] = c
        return rows

    def kernel_of_delta(self) -> Subspace:
        return Subspace.from_vectors(kernel(self.delta_matrix(), self.dim, self.field), self.dim, self.field)

    def sigma_R(self, v) -> dict:
        """σ_R([a⊗b]) = a⊗b − ε(a)Δ(b) on representatives."""
        C = self.coalgebra
        out: dict = {}
        for (a, b), c in self.section(v).items():
            add_term(out, (a, b), c)
            if C.counit[a]:
                for b1, b2, t in C.coproduct[b]:
                    add_term(out, (b1, b2), -c * C.counit[a] * t)
        return out

    def sigma_L(self, v) -> dict:
        """σ_L([a⊗b]) = −a⊗b + ε(b)Δ(a)."""
        C = self.coalgebra
        out: dict = {}
        for (a, b), c in self.section(v).items():
            add_term(out, (a, b), -c)
            if C.counit[b]:
                for a1, a2, t in C.coproduct[a]:
                    add_term(out, (a1, a2), c * C.counit[b] * t)
        return out

    def r_epsilon(self, tensor: dict) -> dict:
        """r_ε(a⊗b) = ε(a)b."""
        C = self.coalgebra
        out: dict = {}
        for (a, b), c in tensor.items():
            add_term(out, b, c * C.counit[a])
        return out

    def format(self, v) -> str:
        return self.bicomodule.format(v)

    def coderivation(self) -> "Coderivation":
        return Coderivation(self.bicomodule, tuple(tuple(r) for r in self.delta_matrix()))


def build_universal(C: Coalgebra) -> UniversalBicomodule:
    return UniversalBicomodule(C)


@dataclass(frozen=True)
class Coderivation:
    """δ: M → C given by an n × m matrix."""

    source: Bicomodule
    matrix: tuple[tuple, ...]

    def __post_init__(self):
        if self.source.left != self.source.right:
            raise InputError("coderivations need a bicomodule over a single coalgebra")
        C = self.source.left
        if len(self.matrix) != C.n or any(len(r) != self.source.m for r in self.matrix):
            raise DimensionMismatchError("coderivation matrix has the wrong shape")

    @property
    def coalgebra(self) -> Coalgebra:
        return self.source.left

    def column(self, j: int) -> dict:
        return {i: self.matrix[i][j] for i in range(self.coalgebra.n) if self.matrix[i][j]}

    def apply(self, v) -> dict:
        out: dict = {}
        for j, a in self.source.sparse(v).items():
            add_into(out, self.column(j), a)
        return out

    def rows(self) -> list[list]:
        return [list(r) for r in self.matrix]


def hat_delta(U: UniversalBicomodule, delta: Coderivation) -> list[list]:
    """ĥδ(m) = π(δ(m_<0>)⊗m_(1)) as a dim(Υ^U) × m matrix."""
    if delta.coalgebra != U.coalgebra:
        raise InputError("coderivation and universal bicomodule live over different coalgebras")
    M = delta.source
    rows = [[U.field.zero] * M.m for _ in range(U.dim)]
    for i in range(M.m):
        t: dict = {}
        for j, c, s in M.right_coaction[i]:
            for a, x in delta.column(j).items():
                add_term(t, (a, c), s * x)
        for k, y in U.project(t).items():
            rows[k][i] = y
    return rows


def check_coderivation(delta: Coderivation, U: Optional[UniversalBicomodule] = None) -> ValidationReport:
    """co-Leibniz, ε∘δ = 0 and, when U is given, injectivity of ĥδ (the FOCC condition)."""
    M, C = delta.source, delta.coalgebra
    report = ValidationReport(structure=f"δ on {M.name}")
    for i in range(M.m):
        d = delta.column(i)
        lhs = C.apply_delta(d)
        rhs: dict = {}
        for c, j, s in M.left_coaction[i]:
            for a, x in delta.column(j).items():
                add_term(rhs, (c, a), s * x)
        for j, c, s in M.right_coaction[i]:
            for a, x in delta.column(j).items():
                add_term(rhs, (a, c), s * x)
        report.checked += 1
        if lhs != rhs:
            report.fail("co-Leibniz", M.labels[i])
        report.checked += 1
        if C.apply_counit(d):
            report.fail("counit kills image", M.labels[i])
    if U is not None:
        report.checked += 1
        h = hat_delta(U, delta)
        if M.m and rank(h, M.m, C.field) != M.m:
            report.fail("FOCC", M.name, "ĥδ is not injective")
    return report


def is_focc(delta: Coderivation, U: UniversalBicomodule) -> bool:
    return check_coderivation(delta, U).ok


def internal_coderivation(M: Bicomodule, gamma: Sequence[Any]) -> Coderivation:
    """δ_Γ(m) = m_(-1)Γ(m_<0>) − Γ(m_<0>)m_(1)."""
    if len(gamma) != M.m:
        raise DimensionMismatchError(f"functional of length {len(gamma)} on a bicomodule of dimension {M.m}")
    C = M.left
    rows = [[C.field.zero] * M.m for _ in range(C.n)]
    for i in range(M.m):
        for c, j, s in M.left_coaction[i]:
            if gamma[j]:
                rows[c][i] += s * gamma[j]
        for j, c, s in M.right_coaction[i]:
            if gamma[j]:
                rows[c][i] -= s * gamma[j]
    return Coderivation(M, tuple(tuple(r) for r in rows))


def internal_on_C(C: Coalgebra, alpha: Sequence[Any]) -> Coderivation:
    """δ_α(a) = a₁α(a₂) − α(a₁)a₂ on the regular bicomodule."""
    return internal_coderivation(regular_bicomodule(C), alpha)


def _closure(M: Bicomodule, vectors: Sequence[dict], left: bool, right: bool) -> list[dict]:
    """Middle legs of the chosen coactions, grouped by their outer legs."""
    out = []
    for v in vectors:
        groups: dict = {}
        if left and right:
            for (c, j, d), s in M.coact_both(v).items():
                add_term(groups.setdefault((c, d), {}), j, s)
        elif left:
            for (c, j), s in M.coact_left(v).items():
                add_term(groups.setdefault(c, {}), j, s)
        else:
            for (j, c), s in M.coact_right(v).items():
                add_term(groups.setdefault(c, {}), j, s)
        out.extend(g for g in groups.values() if g)
    return out


def is_subbicomodule(M: Bicomodule, S: Subspace) -> bool:
    return _closed(M, S, True, True)


def _closed(M: Bicomodule, S: Subspace, left: bool, right: bool) -> bool:
    for b in S.basis():
        v = M.sparse(b)
        if left and not all(S.member(M.dense(w)) for w in _closure(M, [v], True, False)):
            return False
        if right and not all(S.member(M.dense(w)) for w in _closure(M, [v], False, True)):
            return False
    return True


def _span(M: Bicomodule, generators, left: bool, right: bool) -> Subspace:
    gens = []
    for g in generators:
        v = M.sparse(g)
        if not v:
            raise ZeroGeneratorError("generators must be nonzero")
        gens.append(v)
    legs = _closure(M, gens, left, right)
    S = Subspace.from_vectors([M.dense(w) for w in legs], M.m, M.field)
    if not _closed(M, S, left, right):
        raise NotClosedError(f"generated subspace of {M.name} failed the closure re-check")
    return S


def generate_subbicomodule(M: Bicomodule, generators) -> Subspace:
    """Smallest subbicomodule containing the generators.

    The span of middle legs of ᴸΔᴿ(v) is closed by coassociativity; the
    closure is re-checked before returning.
    """
    t0 = time.perf_counter()
    S = _span(M, generators, True, True)
    logger.debug("generate in %s took %.3fs; dim=%d", M.name, time.perf_counter() - t0, S.dim)
    return S


def left_coefficient_space(M: Bicomodule, generators) -> Subspace:
    """Smallest left subcomodule containing the generators."""
    return _span(M, generators, True, False)


def right_coefficient_space(M: Bicomodule, generators) -> Subspace:
    return _span(M, generators, False, True)


def delta_image(U: UniversalBicomodule, S: Subspace) -> Subspace:
    C = U.coalgebra
    vecs = [to_dense(U.delta(b), {i: i for i in range(C.n)}, C.n, C.field.zero) for b in S.basis()]
    return Subspace.from_vectors(vecs, C.n, C.field)


def escapes_kernel(U: UniversalBicomodule, x, side: Literal["left", "right"] = "right") -> bool:
    """Whether the one-sided comodule generated by x leaves Ker δ^U."""
    closure = (right_coefficient_space if side == "right" else left_coefficient_space)(U.bicomodule, [x])
    return any(U.delta(b) for b in closure.basis())


def cocommutator(M: Bicomodule) -> Subspace:
    """M^♮ = Ker(Δ_L − τ∘Δ_R)."""
    if M.left != M.right:
        raise InputError("the cocommutator needs a bicomodule over a single coalgebra")
    keys: dict = {}
    cols = []
    for i in range(M.m):
        t = M.coact_left({i: M.field.one})
        for (j, c), s in M.coact_right({i: M.field.one}).items():
            add_term(t, (c, j), -s)
        for k in t:
            keys.setdefault(k, len(keys))
        cols.append(t)
    rows = [[M.field.zero] * M.m for _ in keys]
    for i, t in enumerate(cols):
        for k, s in t.items():
            rows[keys[k]][i] = s
    S = Subspace.from_vectors(kernel(rows, M.m, M.field), M.m, M.field) if rows else Subspace.whole(M.m, M.field)
    if is_cocommutative(M.left) and not is_subbicomodule(M, S):
        raise NotClosedError(f"cocommutator of {M.name} is not a subbicomodule")
    return S


def decompose_bicomodule(M: Bicomodule, summands: Sequence[Subspace]) -> list[tuple[int, int, Subspace]]:
    """Blocks M_ij = {m : Δ_L m ∈ C_i⊗M, Δ_R m ∈ M⊗C_j} for C = ⊕C_i."""
    C = M.left
    if M.left != M.right:
        raise InputError("decomposition needs a bicomodule over a single coalgebra")
    basis, block = [], []
    for s, S in enumerate(summands):
        if S.ambient != C.n:
            raise DimensionMismatchError("summand does not live in the coalgebra")
        basis.extend(S.basis())
        block.extend([s] * S.dim)
    if len(basis) != C.n or rank(basis, C.n, C.field) != C.n:
        raise InputError("summands do not form a direct sum decomposition of the coalgebra")
    # columns of B are the new basis; B⁻¹ gives block coordinates of old basis vectors
    B = [[basis[j][i] for j in range(C.n)] for i in range(C.n)]
    Binv = inverse(B, C.field)

    def off_block(leg_index: int, keep: int) -> dict:
        return {r: Binv[r][leg_index] for r in range(C.n) if Binv[r][leg_index] and block[r] != keep}

    out = []
    for i in range(len(summands)):
        for j in range(len(summands)):
            keys: dict = {}
            cols = []
            for t in range(M.m):
                e = {t: C.field.one}
                con: dict = {}
                for (c, jj), s in M.coact_left(e).items():
                    for r, x in off_block(c, i).items():
                        add_term(con, ("L", r, jj), s * x)
                for (jj, c), s in M.coact_right(e).items():
                    for r, x in off_block(c, j).items():
                        add_term(con, ("R", jj, r), s * x)
                for k in con:
                    keys.setdefault(k, len(keys))
                cols.append(con)
            rows = [[C.field.zero] * M.m for _ in keys]
            for t, con in enumerate(cols):
                for k, s in con.items():
                    rows[keys[k]][t] = s
            if rows:
                S = Subspace.from_vectors(kernel(rows, M.m, C.field), M.m, C.field)
            else:
                S = Subspace.whole(M.m, C.field)
            out.append((i, j, S))
    return out


def find_cointegral(C: Coalgebra) -> Optional[list[list]]:
    """ω on C⊗C with ω∘Δ = ε and (id⊗ω)(Δ⊗id) = (ω⊗id)(id⊗Δ), or None."""
    n = C.n
    f = C.field
    rows, rhs = [], []
    for i in range(n):
        r = [f.zero] * (n * n)
        for j, k, s in C.coproduct[i]:
            r[j * n + k] += s
        rows.append(r)
        rhs.append(C.counit[i])
    for a in range(n):
        for b in range(n):
            eqs: dict = {}
            for p, k, s in C.coproduct[a]:
                e = eqs.setdefault(p, {})
                add_term(e, k * n + b, s)
            for j, p, t in C.coproduct[b]:
                e = eqs.setdefault(p, {})
                add_term(e, a * n + j, -t)
            for e in eqs.values():
                if e:
                    r = [f.zero] * (n * n)
                    for k, c in e.items():
                        r[k] = c
                    rows.append(r)
                    rhs.append(f.zero)
    x = solve(rows, rhs, n * n, f)
    if x is None:
        return None
    return [x[a * n:(a + 1) * n] for a in range(n)]


@dataclass
class SimplicityVerdict:
    verdict: Literal["Simple", "HasProperSub", "Inconclusive"]
    budget: int
    certified: bool = False
    witness: Optional[Subspace] = None
    probes: int = dc_field(default=0)


def probe_vectors(S: Subspace, budget: int, seed: Optional[int] = None, height: Optional[int] = None) -> list[list]:
    """Basis vectors of S followed by ``budget`` random integer combinations."""
    rng = np.random.default_rng(settings.seed if seed is None else seed)
    h = settings.probe_height if height is None else height
    f = S.field
    out = [list(b) for b in S.basis()]
    for _ in range(budget):
        coeffs = [int(c) for c in rng.integers(-h, h + 1, size=S.dim)]
        if not any(coeffs):
            coeffs[0] = 1
        out.append(S.combine([f(c) for c in coeffs]))
    return out


def is_simple_probe(
    M: Bicomodule, S: Subspace, budget: Optional[int] = None, seed: Optional[int] = None
) -> SimplicityVerdict:
    budget = settings.probe_budget if budget is None else budget
    if S.dim == 0:
        raise InputError("simplicity is not defined for the zero subspace")
    if not is_subbicomodule(M, S):
        raise NotClosedError("subspace is not a subbicomodule")
    if S.dim == 1:
        return SimplicityVerdict("Simple", budget, certified=True, probes=1)
    probes = probe_vectors(S, budget, seed)
    count = 0
    for v in tqdm(probes, desc="probes", disable=not settings.progress):
        if not any(v):
            continue
        count += 1
        G = generate_subbicomodule(M, [v])
        if G.dim < S.dim:
            logger.info("probe found a proper subbicomodule of dim %d in dim %d", G.dim, S.dim)
            return SimplicityVerdict("HasProperSub", budget, witness=G, probes=count)
    if budget == 0:
        return SimplicityVerdict("Inconclusive", budget, probes=count)
    return SimplicityVerdict("Simple", budget, probes=count)


def simple_decomposition(M: Bicomodule, budget: Optional[int] = None, seed: Optional[int] = None) -> list[Subspace]:
    """Singleton-generated simple subbicomodules whose sum is direct, found greedily from probes.

    The pieces exhaust M exactly when their dimensions add up to dim M.
    """
    whole = Subspace.whole(M.m, M.field)
    total = Subspace.zero(M.m, M.field)
    pieces: list[Subspace] = []
    for v in probe_vectors(whole, settings.probe_budget if budget is None else budget, seed):
        if total.member(v):
            continue
        G = generate_subbicomodule(M, [v])
        if G.intersect(total).dim:
            continue
        if is_simple_probe(M, G, budget, seed).verdict != "Simple":
            continue
        pieces.append(G)
        total = total.sum(G)
        if total.dim == M.m:
            break
    logger.info("%s: %d simple pieces spanning dim %d of %d", M.name, len(pieces), total.dim, M.m)
    return pieces


def tensor_map(U: UniversalBicomodule, phi: CoalgebraMorphism) -> list[list]:
    """Matrix of [φ⊗φ] on Υ^U."""
    rows = [[U.field.zero] * U.dim for _ in range(U.dim)]
    for k, (a, b) in enumerate(U.reps):
        t: dict = {}
        for x, s in phi.image(a).items():
            for y, r in phi.image(b).items():
                add_term(t, (x, y), s * r)
        for kk, c in U.project(t).items():
            rows[kk][k] = c
    return rows


def apply_automorphism(U: UniversalBicomodule, phi: CoalgebraMorphism, S: Subspace) -> Subspace:
    if phi.source != U.coalgebra or phi.target != U.coalgebra:
        raise InputError("automorphism must act on the coalgebra of the universal bicomodule")
    if not is_automorphism(phi):
        raise StructureError("map is not a coalgebra automorphism")
    T = tensor_map(U, phi)
    return S.map(T, U.dim)


def check_functoriality(
    U: UniversalBicomodule,
    phi: CoalgebraMorphism,
    delta1: Coderivation,
    delta2: Coderivation,
    psi: Sequence[Sequence[Any]],
) -> bool:
    """[φ⊗φ]∘ĥδ₁ = ĥδ₂∘Ψ for a bicomodule map Ψ: M₁ → M₂ with δ₂∘Ψ = φ∘δ₁."""
    f = U.field
    lhs = matmul(tensor_map(U, phi), hat_delta(U, delta1), f)
    rhs = matmul(hat_delta(U, delta2), [list(r) for r in psi], f)
    return lhs == rhs


# examples living on the universal bicomodule


def flip_class(U: UniversalBicomodule, v) -> dict:
    """[a⊗b] ↦ [b⊗a]; well defined when C is cocommutative."""
    return U.project({(b, a): c for (a, b), c in U.section(v).items()})


def divided_power_vector(U: UniversalBicomodule, n: int) -> dict:
    """υⁿ = Σ_{i<n} (1 − i/n)[X^{n−i}⊗X^i] in a divided power coalgebra (basis index = exponent)."""
    f = U.field
    if not 1 <= n < U.n:
        raise InputError(f"υ^{n} needs 1 ≤ n ≤ {U.n - 1}")
    t = {(n - i, i): f.one - f(i) / f(n) for i in range(n)}
    return U.project({k: c for k, c in t.items() if c})


def divided_power_conjecture(U: UniversalBicomodule) -> dict:
    """Compare the cocommutator of Υ^U with span{υⁿ}."""
    nat = cocommutator(U.bicomodule)
    span = Subspace.from_vectors([U.dense(divided_power_vector(U, n)) for n in range(1, U.n)], U.dim, U.field)
    return {
        "cocommutator_dim": nat.dim,
        "span_dim": span.dim,
        "equal": nat == span,
        "contained": span.is_subset(nat),
    }


def form_vector(U: UniversalBicomodule, omega: Sequence[Sequence[Any]]) -> dict:
    """ω̂ = Σ ω_ij [v_i⊗v_j] on C_V (basis index 0 is the group-like, 1..d the primitives)."""
    d = U.n - 1
    if len(omega) != d or any(len(r) != d for r in omega):
        raise DimensionMismatchError(f"form must be {d}×{d}")
    t = {}
    for i in range(d):
        for j in range(d):
            if omega[i][j]:
                t[(i + 1, j + 1)] = omega[i][j]
    return U.project(t)
