"""Duality between a finite-dimensional Hopf algebra H and H* = H°.

H* is stored as another FiniteHopfAlgebra on the dual basis e^0..e^{n-1}, so a
functional α is the sparse dict {i: α(e_i)} and the canonical pairing is a dot
product over shared keys. Tensors pair the same way: an element of H⊗H keyed
by (a, b) against an element of H°⊗H° keyed by (i, j).
"""
from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Mapping, Optional

from tqdm import tqdm

from .bicomodule import UniversalBicomodule, build_universal
from .coalgebra import Coalgebra
from .config import settings
from .errors import InputError, NotClosedError
from .hopf import (
    FiniteHopfAlgebra,
    HopfAlgebra,
    ad_left,
    check_hopf_morphism,
    validate_hopf,
    woronowicz_maps,
)
from .linalg import Subspace, kernel, rank, transpose
from .models import ValidationReport
from .utils import add_term

logger = logging.getLogger("codiff.duality")

# Sweedler's algebra is self-dual; images of 1, g, X, Xg in H*.
SWEEDLER_SELF_DUALITY: dict[str, dict[str, int]] = {
    "1": {"1": 1, "g": 1},
    "g": {"1": 1, "g": -1},
    "X": {"X": 1, "Xg": 1},
    "Xg": {"X": 1, "Xg": -1},
}


def _dot(x: Mapping, y: Mapping):
    if len(y) < len(x):
        x, y = y, x
    s = None
    for k, c in x.items():
        d = y.get(k)
        if d:
            s = c * d if s is None else s + c * d
    return s


@dataclass
class DualHopf:
    source: FiniteHopfAlgebra
    dual: FiniteHopfAlgebra

    @property
    def field(self):
        return self.source.field

    @property
    def n(self) -> int:
        return self.source.n

    def zero_if_none(self, s):
        return self.field.zero if s is None else s

    def ev(self, alpha: Mapping, x: Mapping):
        """<x | α>"""
        return self.zero_if_none(_dot(alpha, x))

    @cached_property
    def epsilon(self) -> dict:
        """ε as an element of H*; the unit of the dual."""
        return self.dual.unit()

    @cached_property
    def one_forms(self) -> "UniversalOneForms":
        return UniversalOneForms(self)


def dual_hopf(H: HopfAlgebra) -> DualHopf:
    """H* with ⋆ = Δ*, Δ° = μ*, S° = S*, unit ε and counit evaluation at 1."""
    if not isinstance(H, FiniteHopfAlgebra):
        raise InputError(f"{H.name} is not finite-dimensional; only finite duals are built")
    t0 = time.perf_counter()
    f = H.field
    n = H.n
    coproduct = []
    for k in range(n):
        terms = []
        for i in range(n):
            for j in range(n):
                c = H.mul_basis(i, j).get(k)
                if c:
                    terms.append((i, j, c))
        coproduct.append(tuple(terms))
    u = H.unit()
    counit = tuple(u.get(k, f.zero) for k in range(n))
    labels = tuple(f"e^{lab}" for lab in H.labels)
    C = Coalgebra(f, labels, tuple(coproduct), counit, f"{H.name}*")

    product = [[{} for _ in range(n)] for _ in range(n)]
    for k in range(n):
        for (i, j), c in H.coproduct_basis(k).items():
            add_term(product[i][j], k, c)
    unit = {k: c for k in range(n) if (c := H.counit_basis(k))}
    antipode: list[dict] = [{} for _ in range(n)]
    for k in range(n):
        for i, c in H.antipode_basis(k).items():
            add_term(antipode[i], k, c)
    D = FiniteHopfAlgebra(C, product, unit, antipode, f"{H.name}*")
    logger.debug("dual of %s took %.3fs; dim=%d", H.name, time.perf_counter() - t0, n)
    return DualHopf(H, D)


def double_dual_report(Dh: DualHopf) -> ValidationReport:
    """The canonical map H → H** sends e_a to the evaluation e^{e^a}."""
    DD = dual_hopf(Dh.dual).dual
    one = Dh.field.one
    report = check_hopf_morphism(lambda a: {a: one}, Dh.source, DD)
    report.structure = f"{Dh.source.name} -> {DD.name}"
    return report


def duality_map_report(Dh: DualHopf, images: Mapping[str, Mapping[str, Any]]) -> ValidationReport:
    """Check an explicit Hopf map H → H* given on basis labels of H and H."""
    H, D = Dh.source, Dh.dual
    f = Dh.field
    table = {}
    for lab in H.labels:
        if lab not in images:
            raise InputError(f"no image for basis element {lab!r}")
        table[H.index(lab)] = {H.index(k): f(c) for k, c in images[lab].items() if f(c)}
    return check_hopf_morphism(lambda a: table[a], H, D)


class UniversalOneForms:
    """Kerμ° ⊂ H°⊗H° with d°α = α⊗ε − ε⊗α."""

    def __init__(self, Dh: DualHopf):
        t0 = time.perf_counter()
        self.Dh = Dh
        D = Dh.dual
        n = Dh.n
        f = Dh.field
        rows = [[f.zero] * (n * n) for _ in range(n)]
        for i in range(n):
            for j in range(n):
                for k, c in D.mul_basis(i, j).items():
                    rows[k][i * n + j] = c
        self.space = Subspace.from_vectors(kernel(rows, n * n, f), n * n, f)
        self.basis = [self._sparse(v) for v in self.space.basis()]
        logger.debug("Kerμ° of %s took %.3fs; dim=%d", D.name, time.perf_counter() - t0, self.dim)

    @property
    def dim(self) -> int:
        return self.space.dim

    def _sparse(self, v) -> dict:
        n = self.Dh.n
        return {divmod(k, n): c for k, c in enumerate(v) if c}

    def dense(self, w: Mapping) -> list:
        n = self.Dh.n
        out = [self.Dh.field.zero] * (n * n)
        for (i, j), c in w.items():
            out[i * n + j] = c
        return out

    def coordinates(self, w: Mapping) -> list:
        c = self.space.coordinates(self.dense(w))
        if c is None:
            raise NotClosedError("two-tensor is not in Kerμ°")
        return c

    def d(self, alpha: Mapping) -> dict:
        eps = self.Dh.epsilon
        out: dict = {}
        for i, a in alpha.items():
            for j, e in eps.items():
                add_term(out, (i, j), a * e)
                add_term(out, (j, i), -a * e)
        return out

    def right(self, w: Mapping, beta: Mapping) -> dict:
        """w⋆β: multiply the second leg."""
        D = self.Dh.dual
        out: dict = {}
        for (i, j), c in w.items():
            for k, s in D.mul({j: c}, beta).items():
                add_term(out, (i, k), s)
        return out

    def left(self, beta: Mapping, w: Mapping) -> dict:
        """β⋆w: multiply the first leg."""
        D = self.Dh.dual
        out: dict = {}
        for (i, j), c in w.items():
            for k, s in D.mul(beta, {i: c}).items():
                add_term(out, (k, j), s)
        return out


def pairing(Dh: DualHopf, U: Optional[UniversalBicomodule] = None) -> list[list]:
    """Gram matrix <[a⊗b] | ω> between the Υ^U basis (rows) and the Kerμ° basis (columns)."""
    U = U or build_universal(Dh.source.coalgebra)
    K = Dh.one_forms
    f = Dh.field
    return [[f.zero if (s := w.get(rep)) is None else s for w in K.basis] for rep in U.reps]


def pairing_rank(Dh: DualHopf, U: Optional[UniversalBicomodule] = None) -> int:
    U = U or build_universal(Dh.source.coalgebra)
    return rank(pairing(Dh, U), Dh.one_forms.dim, Dh.field)


def _delta_L(Dh: DualHopf, w: Mapping) -> dict:
    """Δ°_L(α⊗β) = α₁⋆β₁ ⊗ (α₂⊗β₂), keyed (z, i, j)."""
    D = Dh.dual
    out: dict = {}
    for (i, j), c in w.items():
        for (i1, i2), s in D.coproduct_basis(i).items():
            for (j1, j2), t in D.coproduct_basis(j).items():
                for z, u in D.mul_basis(i1, j1).items():
                    add_term(out, (z, i2, j2), c * s * t * u)
    return out


def _delta_R(Dh: DualHopf, w: Mapping) -> dict:
    """Δ°_R(α⊗β) = (α₁⊗β₁) ⊗ α₂⋆β₂, keyed (i, j, z)."""
    D = Dh.dual
    out: dict = {}
    for (i, j), c in w.items():
        for (i1, i2), s in D.coproduct_basis(i).items():
            for (j1, j2), t in D.coproduct_basis(j).items():
                for z, u in D.mul_basis(i2, j2).items():
                    add_term(out, (i1, j1, z), c * s * t * u)
    return out


def _tensor_products(H: FiniteHopfAlgebra, z: int, a: int, b: int, side: str) -> dict:
    """z▷(a⊗b) = z₁a⊗z₂b or (a⊗b)◁z = az₁⊗bz₂."""
    out: dict = {}
    for (z1, z2), c in H.coproduct_basis(z).items():
        if side == "left":
            x, y = H.mul_basis(z1, a), H.mul_basis(z2, b)
        else:
            x, y = H.mul_basis(a, z1), H.mul_basis(b, z2)
        for p, s in x.items():
            for q, t in y.items():
                add_term(out, (p, q), c * s * t)
    return out


def check_pairing_identities(Dh: DualHopf, U: Optional[UniversalBicomodule] = None) -> ValidationReport:
    """Evaluation identities, well-definedness on Υ^U and the bicovariance of the pairing."""
    t0 = time.perf_counter()
    H, D = Dh.source, Dh.dual
    f = Dh.field
    n = H.n
    U = U or build_universal(H.coalgebra)
    K = Dh.one_forms
    report = ValidationReport(structure=f"pairing {H.name} | {D.name}")
    val = Dh.zero_if_none
    u = H.unit()
    eps = Dh.epsilon

    # evaluation identities on H × H*
    for i in range(n):
        report.checked += 1
        if D.counit_basis(i) != u.get(i, f.zero):
            report.fail("evaluation", D.label(i), "ε°(α) != α(1)")
        for a in range(n):
            report.checked += 2
            if H.antipode_basis(a).get(i, f.zero) != D.antipode_basis(i).get(a, f.zero):
                report.fail("evaluation", f"{H.label(a)}, {D.label(i)}", "<S(X)|α> != <X|S°(α)>")
            for j in range(n):
                if D.mul_basis(i, j).get(a, f.zero) != H.coproduct_basis(a).get((i, j), f.zero):
                    report.fail("evaluation", f"{H.label(a)}, {D.label(i)}⋆{D.label(j)}", "<X|α⋆β> != α(X₁)β(X₂)")
                    break
            for b in range(n):
                if H.mul_basis(a, b).get(i, f.zero) != D.coproduct_basis(i).get((a, b), f.zero):
                    report.fail("evaluation", f"{H.label(a)}{H.label(b)}, {D.label(i)}", "<XY|α> != α₁(X)α₂(Y)")
                    break
    for a in range(n):
        report.checked += 1
        if eps.get(a, f.zero) != H.counit_basis(a):
            report.fail("evaluation", H.label(a), "<X|ε> != ε(X)")

    # Kerμ° annihilates ImΔ, so <[X⊗Y]|ω> is well defined
    for k, w in enumerate(K.basis):
        for x in range(n):
            report.checked += 1
            if val(_dot(w, H.coproduct_basis(x))):
                report.fail("pairing well-defined", f"ω{k}, Δ({H.label(x)})", "Kerμ° does not vanish on ImΔ")

    for k, w in enumerate(tqdm(K.basis, desc="pairing", disable=not settings.progress)):
        DL, DR = _delta_L(Dh, w), _delta_R(Dh, w)
        acted = [(K.left({g: f.one}, w), K.right(w, {g: f.one})) for g in range(n)]
        for a, b in U.reps:
            at = f"[{H.label(a)}⊗{H.label(b)}], ω{k}"
            for z in range(n):
                report.checked += 2
                lhs = val(_dot(_tensor_products(H, z, a, b, "left"), w))
                if lhs != DL.get((z, a, b), f.zero):
                    report.fail("left coaction pairing", f"{H.label(z)}▷{at}", f"{f.format(lhs)} != {f.format(DL.get((z, a, b), f.zero))}")
                lhs = val(_dot(_tensor_products(H, z, a, b, "right"), w))
                if lhs != DR.get((a, b, z), f.zero):
                    report.fail("right coaction pairing", f"{at}◁{H.label(z)}", f"{f.format(lhs)} != {f.format(DR.get((a, b, z), f.zero))}")
            for g in range(n):
                report.checked += 2
                lhs = val(_dot({(p, b): c for (p0, p), c in H.coproduct_basis(a).items() if p0 == g}, w))
                rhs = acted[g][0].get((a, b), f.zero)
                if lhs != rhs:
                    report.fail("left action pairing", f"{D.label(g)}, {at}", f"{f.format(lhs)} != {f.format(rhs)}")
                lhs = val(_dot({(a, p): c for (p, p0), c in H.coproduct_basis(b).items() if p0 == g}, w))
                rhs = acted[g][1].get((a, b), f.zero)
                if lhs != rhs:
                    report.fail("right action pairing", f"{at}, {D.label(g)}", f"{f.format(lhs)} != {f.format(rhs)}")

    # δ^U against d°
    for i in range(n):
        alpha = {i: f.one}
        d_alpha = K.d(alpha)
        report.checked += 1
        if not K.space.member(K.dense(d_alpha)):
            report.fail("differential pairing", D.label(i), "d°α is not in Kerμ°")
        for a, b in U.reps:
            report.checked += 1
            delta_u = U.delta(U.cls(a, b))
            lhs = Dh.ev(alpha, delta_u)
            mid = val(_dot({(a, b): f.one}, d_alpha))
            rhs = alpha.get(a, f.zero) * H.counit_basis(b) - alpha.get(b, f.zero) * H.counit_basis(a)
            if not lhs == mid == rhs:
                report.fail("differential pairing", f"[{H.label(a)}⊗{H.label(b)}], {D.label(i)}", f"{f.format(lhs)}, {f.format(mid)}, {f.format(rhs)}")

    report.merge(_check_woronowicz_duality(Dh))
    report.merge(_check_yd_duality(Dh))
    logger.debug("pairing identities of %s took %.3fs; dim=%d", H.name, time.perf_counter() - t0, n)
    return report


def _check_woronowicz_duality(Dh: DualHopf) -> ValidationReport:
    """r on H⊗H is the transpose of s' on H°⊗H°, and <[X⊗1]◁Y|ω> = <[X⊗1]⊗Y|Δ°_R(ω)>."""
    H, D = Dh.source, Dh.dual
    f = Dh.field
    n = H.n
    report = ValidationReport(structure=f"Woronowicz duality {H.name}")
    r = woronowicz_maps(H)["r"]
    s_dual = woronowicz_maps(D)["s'"]
    report.checked += 1
    if transpose(r, n * n, n * n, f) != s_dual:
        report.fail("Woronowicz duality", "r, s'", "s' on H°⊗H° is not the transpose of r")
    u = H.unit()
    if len(u) != 1 or next(iter(u.values())) != f.one:
        raise InputError("Woronowicz duality needs the unit to be a basis vector")
    (one,) = u
    for k, w in enumerate(Dh.one_forms.basis):
        DR = _delta_R(Dh, w)
        dense_w = [w.get(divmod(t, n), f.zero) for t in range(n * n)]
        for x in range(n):
            for y in range(n):
                report.checked += 1
                col = [r[row][x * n + y] for row in range(n * n)]
                lhs = sum((c * d for c, d in zip(col, dense_w) if c and d), f.zero)
                action = Dh.zero_if_none(_dot(_tensor_products(H, y, x, one, "right"), w))
                rhs = DR.get((x, one, y), f.zero)
                if not lhs == action == rhs:
                    report.fail("Woronowicz duality", f"[{H.label(x)}⊗1]◁{H.label(y)}, ω{k}", f"{f.format(lhs)}, {f.format(action)}, {f.format(rhs)}")
    return report


def kernel_epsilon_basis(Dh: DualHopf) -> list[dict]:
    """A basis of Kerε° = {α | α(1) = 0}."""
    f = Dh.field
    u = Dh.source.dense(Dh.source.unit())
    return [{i: c for i, c in enumerate(v) if c} for v in kernel([u], Dh.n, f)]


def _check_yd_duality(Dh: DualHopf) -> ValidationReport:
    """<ad_Y X̄ | α> = <Y⊗X̄ | α₁⋆S°(α₃)⊗α₂> and <X̄ | β⋆α> = <Ξ_L(X̄) | β⊗α> for α in Kerε°."""
    H, D = Dh.source, Dh.dual
    f = Dh.field
    n = H.n
    report = ValidationReport(structure=f"Y-D duality {H.name}")
    for m, alpha in enumerate(kernel_epsilon_basis(Dh)):
        xi: dict = {}
        for (i, j, k), c in D.coproduct2(alpha).items():
            for y, s in D.mul({i: f.one}, D.antipode_basis(k)).items():
                add_term(xi, (y, j), c * s)
        for x in range(n):
            for y in range(n):
                report.checked += 2
                lhs = Dh.ev(alpha, ad_left(H, H.basis(y), H.basis(x)))
                rhs = xi.get((y, x), f.zero)
                if lhs != rhs:
                    report.fail("Y-D evaluation", f"ad_{H.label(y)}{H.label(x)}, α{m}", f"{f.format(lhs)} != {f.format(rhs)}")
                beta = {y: f.one}
                lhs = Dh.ev(D.mul(beta, alpha), H.basis(x))
                rhs = Dh.zero_if_none(
                    _dot({(p, q): c for (p, q), c in H.coproduct_basis(x).items()}, {(y, q): a for q, a in alpha.items()})
                )
                if lhs != rhs:
                    report.fail("Y-D evaluation", f"{H.label(x)}, {D.label(y)}⋆α{m}", f"{f.format(lhs)} != {f.format(rhs)}")
    return report


# quantum tangent space and vector fields


def v_eval(Dh: DualHopf, x: Mapping, w: Mapping):
    """v(X̄)(ω) = <δ(X)⊗1 | ω> with δ(X) = X − ε(X)1; on dα⋆β this is α(δX)β(1)."""
    H = Dh.source
    delta = dict(x)
    for k, c in H.unit().items():
        add_term(delta, k, -H.counit(x) * c)
    total = Dh.field.zero
    for (i, j), c in w.items():
        a = delta.get(i)
        b = H.unit().get(j)
        if a and b:
            total += c * a * b
    return total


def v_of(Dh: DualHopf, x: Mapping) -> list:
    """v(X̄) as its values on the Kerμ° basis."""
    return [v_eval(Dh, x, w) for w in Dh.one_forms.basis]


def functional(Dh: DualHopf, v: list, w: Mapping):
    """Evaluate a functional on Kerμ° given by its values on the basis."""
    c = Dh.one_forms.coordinates(w)
    return sum((a * b for a, b in zip(v, c) if a and b), Dh.field.zero)


def tangent_space(Dh: DualHopf) -> Subspace:
    """𝒯 = {v ∈ (Kerμ°)* | v(dα⋆β) = v(dα)β(1)} in coordinates dual to the Kerμ° basis."""
    t0 = time.perf_counter()
    K = Dh.one_forms
    D = Dh.dual
    f = Dh.field
    rows = []
    for i in range(Dh.n):
        d_alpha = K.d({i: f.one})
        cd = K.coordinates(d_alpha)
        for j in range(Dh.n):
            c = K.coordinates(K.right(d_alpha, {j: f.one}))
            b1 = D.counit_basis(j)
            rows.append([p - b1 * q for p, q in zip(c, cd)])
    T = Subspace.from_vectors(kernel(rows, K.dim, f), K.dim, f)
    logger.debug("tangent space of %s took %.3fs; dim=%d", D.name, time.perf_counter() - t0, T.dim)
    return T


def v_matrix(Dh: DualHopf) -> list[list]:
    """Columns v(ē_k) for the non-pivot basis keys of H̄."""
    H = Dh.source
    cols = [v_of(Dh, H.basis(k)) for k in H.generators()]
    return transpose(cols, len(cols), Dh.one_forms.dim, Dh.field) if cols else []


def kernel_of_v(Dh: DualHopf) -> list[dict]:
    """Kernel of X̄ ↦ v(X̄) as elements of H̄; empty whenever the pairing is nondegenerate."""
    H = Dh.source
    keys = H.generators()
    if not keys:
        return []
    M = v_matrix(Dh)
    out = []
    for vec in kernel(M, len(keys), Dh.field):
        out.append({keys[k]: c for k, c in enumerate(vec) if c})
    if out:
        logger.info("v is not injective on %s: kernel dim %d", H.name, len(out))
    return out


@dataclass
class VectorField:
    """v^▷(α) = v(dα₁)α₂ as an endomorphism of H°."""

    Dh: DualHopf
    values: list

    @cached_property
    def on_differentials(self) -> list:
        """v(d e^i) for every dual basis element."""
        K = self.Dh.one_forms
        f = self.Dh.field
        return [functional(self.Dh, self.values, K.d({i: f.one})) for i in range(self.Dh.n)]

    def __call__(self, alpha: Mapping) -> dict:
        vd = self.on_differentials
        out: dict = {}
        for (i, j), c in self.Dh.dual.coproduct(dict(alpha)).items():
            add_term(out, j, c * vd[i])
        return out


def vector_field_action(Dh: DualHopf, v: list) -> VectorField:
    if len(v) != Dh.one_forms.dim:
        raise InputError(f"functional has {len(v)} values for Kerμ° of dim {Dh.one_forms.dim}")
    return VectorField(Dh, list(v))


def check_vector_fields(Dh: DualHopf) -> ValidationReport:
    """v(X̄) ∈ 𝒯, Leibniz compatibility with X̄⋆β, ad and bracket compatibility, and Δ°v^▷ = (v^▷⊗id)Δ°."""
    t0 = time.perf_counter()
    H, D = Dh.source, Dh.dual
    K = Dh.one_forms
    f = Dh.field
    n = H.n
    report = ValidationReport(structure=f"vector fields on {D.name}")
    T = tangent_space(Dh)
    report.checked += 1
    if T.dim != n - 1:
        report.fail("tangent space", D.name, f"dim {T.dim}, expected {n - 1}")
    keys = H.generators()
    for x in keys:
        report.checked += 1
        if not T.member(v_of(Dh, H.basis(x))):
            report.fail("tangent vector", H.label(x), "v(X̄) is not in the tangent space")

    def v(x: Mapping, alpha: Mapping):
        return v_eval(Dh, x, K.d(alpha))

    # right action X̄⋆β = β(X₁)X̄₂ and the Leibniz rule
    for x in keys:
        for j in range(n):
            beta = {j: f.one}
            x_beta: dict = {}
            for (p, q), c in H.coproduct_basis(x).items():
                if p == j:
                    add_term(x_beta, q, c)
            for i in range(n):
                alpha = {i: f.one}
                report.checked += 1
                lhs = v(x_beta, alpha)
                mid = v_eval(Dh, H.basis(x), K.left(beta, K.d(alpha)))
                rhs = v_eval(Dh, H.basis(x), _sub(K.d(D.mul(beta, alpha)), K.right(K.d(beta), alpha)))
                if not lhs == mid == rhs:
                    report.fail("Leibniz", f"{H.label(x)}⋆{D.label(j)}, {D.label(i)}", f"{f.format(lhs)}, {f.format(mid)}, {f.format(rhs)}")

    # ad and bracket
    for i in range(n):
        alpha = {i: f.one}
        triple = D.coproduct2(alpha)
        for x in range(n):
            X = H.basis(x)
            weights: dict = {}
            for (a1, a2, a3), c in triple.items():
                w = Dh.ev(D.mul({a1: f.one}, D.antipode_basis(a3)), X)
                if w:
                    add_term(weights, a2, c * w)
            for y in keys:
                Y = H.basis(y)
                report.checked += 2
                ad = ad_left(H, X, Y)
                lhs = v(ad, alpha)
                rhs = sum((c * v(Y, {a2: f.one}) for a2, c in weights.items()), f.zero)
                if lhs != rhs:
                    report.fail("adjoint compatibility", f"ad_{H.label(x)}{H.label(y)}, {D.label(i)}", f"{f.format(lhs)} != {f.format(rhs)}")
                bracket = _sub(ad, {k: H.counit(X) * c for k, c in Y.items()})
                lhs = v(bracket, alpha)
                rhs = rhs - H.counit(X) * v(Y, alpha)
                if lhs != rhs:
                    report.fail("bracket compatibility", f"[{H.label(x)},{H.label(y)}], {D.label(i)}", f"{f.format(lhs)} != {f.format(rhs)}")

    # vector fields commute with Δ° on the left leg
    fields = [(f"v({H.label(x)})", vector_field_action(Dh, v_of(Dh, H.basis(x)))) for x in keys]
    for name, field in fields:
        report.checked += 1
        if field(Dh.epsilon):
            report.fail("vector field counit", name, "v^▷(ε) != 0")
        for i in range(n):
            report.checked += 1
            lhs = D.coproduct(field({i: f.one}))
            rhs: dict = {}
            for (p, q), c in D.coproduct_basis(i).items():
                for k, s in field({p: f.one}).items():
                    add_term(rhs, (k, q), c * s)
            if lhs != rhs:
                report.fail("vector field coproduct", f"{name}, {D.label(i)}", f"{D.format_tensor(lhs)} != {D.format_tensor(rhs)}")
    logger.debug("vector fields of %s took %.3fs; dim=%d", D.name, time.perf_counter() - t0, n)
    return report


def _sub(a: Mapping, b: Mapping) -> dict:
    out = dict(a)
    for k, c in b.items():
        add_term(out, k, -c)
    return out


def check_duality(H: HopfAlgebra) -> tuple[DualHopf, ValidationReport]:
    """Everything at once: the dual's axioms, H ≅ H**, pairing and vector field identities."""
    Dh = dual_hopf(H)
    report = validate_hopf(Dh.dual)
    report.structure = f"duality {H.name}"
    report.merge(double_dual_report(Dh))
    U = build_universal(H.coalgebra)
    report.checked += 1
    expected = Dh.n * (Dh.n - 1)
    r = pairing_rank(Dh, U)
    if r != expected:
        report.fail("pairing rank", H.name, f"rank {r}, expected {expected}")
    report.merge(check_pairing_identities(Dh, U))
    report.merge(check_vector_fields(Dh))
    return Dh, report
