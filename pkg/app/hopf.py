"""Hopf algebras and their Yetter-Drinfeld structures.

Elements are sparse dicts over basis keys. Finite algebras use integer keys
into a table; filtered algebras (see presentations) use normally ordered
words and may raise TruncationOverflow when a product leaves the bound.

H̄ = H/𝕂1 is represented by dropping one pivot key of the unit; ad and Ξ
descend to it.
"""
from __future__ import annotations

import logging
import time
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, Callable, Hashable, Iterable, Literal, Optional, Sequence

from .bicomodule import UniversalBicomodule, is_subbicomodule
from .coalgebra import Coalgebra, coalgebra_from_document, coalgebra_to_document, validate_coalgebra
from .errors import DimensionMismatchError, InputError, NotClosedError, TruncationOverflow, ZeroGeneratorError
from .linalg import SparseSpan, Subspace, rank
from .models import CompletenessCertificate, HopfDocument, ValidationReport
from .scalar import ScalarField, parse_scalar
from .utils import add_into, add_term, parse_vector, scale

logger = logging.getLogger("codiff.hopf")

Side = Literal["left", "right"]


class HopfAlgebra(ABC):
    field: ScalarField
    name: str = "hopf"
    bound: Optional[int] = None

    @abstractmethod
    def mul_basis(self, a: Hashable, b: Hashable) -> dict: ...

    @abstractmethod
    def coproduct_basis(self, a: Hashable) -> dict: ...

    @abstractmethod
    def antipode_basis(self, a: Hashable) -> dict: ...

    @abstractmethod
    def counit_basis(self, a: Hashable) -> Any: ...

    @abstractmethod
    def generators(self) -> list: ...

    @abstractmethod
    def unit(self) -> dict: ...

    @abstractmethod
    def label(self, key: Hashable) -> str: ...

    @abstractmethod
    def validation_keys(self) -> list: ...

    @abstractmethod
    def resolve(self, label: str) -> Optional[dict]:
        """Vector named by a basis label or monomial; None when the text names none."""

    def key_order(self, key: Hashable):
        return key

    def degree(self, key: Hashable) -> int:
        return 0

    @property
    def finite(self) -> bool:
        return self.bound is None

    # linear extensions

    def mul(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for a, c in x.items():
            for b, d in y.items():
                add_into(out, self.mul_basis(a, b), c * d)
        return out

    def mul_many(self, *xs: dict) -> dict:
        out = xs[0]
        for x in xs[1:]:
            out = self.mul(out, x)
        return out

    def coproduct(self, x: dict) -> dict:
        out: dict = {}
        for a, c in x.items():
            add_into(out, self.coproduct_basis(a), c)
        return out

    def coproduct2(self, x: dict) -> dict:
        """(Δ⊗id)Δ keyed by triples."""
        out: dict = {}
        for (a, b), c in self.coproduct(x).items():
            for (a1, a2), d in self.coproduct_basis(a).items():
                add_term(out, (a1, a2, b), c * d)
        return out

    def antipode(self, x: dict) -> dict:
        out: dict = {}
        for a, c in x.items():
            add_into(out, self.antipode_basis(a), c)
        return out

    def counit(self, x: dict):
        s = self.field.zero
        for a, c in x.items():
            e = self.counit_basis(a)
            if e:
                s += c * e
        return s

    def basis(self, key: Hashable) -> dict:
        return {key: self.field.one}

    def format(self, x: dict) -> str:
        if not x:
            return "0"
        f = self.field
        parts = []
        for k in sorted(x, key=self.key_order):
            c = x[k]
            lab = self.label(k)
            if c == f.one:
                parts.append(lab)
            elif c == -f.one:
                parts.append(f"-{lab}")
            else:
                parts.append(f"({f.format(c)})*{lab}")
        return " + ".join(parts).replace("+ -", "- ")

    def format_tensor(self, t: dict) -> str:
        if not t:
            return "0"
        f = self.field
        parts = []
        for (a, b) in sorted(t, key=lambda k: (self.key_order(k[0]), self.key_order(k[1]))):
            parts.append(f"({f.format(t[(a, b)])})*{self.label(a)}⊗{self.label(b)}")
        return " + ".join(parts)

    # H̄ = H/𝕂1

    @property
    def bar_pivot(self) -> Hashable:
        u = self.unit()
        return min(u, key=self.key_order)

    def bar(self, x: dict) -> dict:
        p = self.bar_pivot
        c = x.get(p)
        if not c:
            return dict(x)
        u = self.unit()
        out = dict(x)
        add_into(out, u, -c / u[p])
        out.pop(p, None)
        return out


class FiniteHopfAlgebra(HopfAlgebra):
    """Hopf algebra given by tables on a finite basis indexed 0..n-1."""

    def __init__(
        self,
        coalgebra: Coalgebra,
        product: Sequence[Sequence[dict]],
        unit: dict,
        antipode: Sequence[dict],
        name: Optional[str] = None,
    ):
        n = coalgebra.n
        if len(product) != n or any(len(r) != n for r in product) or len(antipode) != n:
            raise DimensionMismatchError("product/antipode tables do not match the basis")
        self.coalgebra = coalgebra
        self.field = coalgebra.field
        self.name = name or coalgebra.name
        self._product = [[dict(c) for c in row] for row in product]
        self._unit = dict(unit)
        self._antipode = [dict(s) for s in antipode]
        self.bound = None

    @property
    def n(self) -> int:
        return self.coalgebra.n

    @property
    def labels(self) -> tuple[str, ...]:
        return self.coalgebra.labels

    def mul_basis(self, a, b):
        return self._product[a][b]

    def coproduct_basis(self, a):
        return self.coalgebra.delta(a)

    def antipode_basis(self, a):
        return self._antipode[a]

    def counit_basis(self, a):
        return self.coalgebra.counit[a]

    def unit(self):
        return dict(self._unit)

    def label(self, key):
        return self.coalgebra.labels[key]

    def generators(self):
        p = self.bar_pivot
        return [k for k in range(self.n) if k != p]

    def validation_keys(self):
        return list(range(self.n))

    def resolve(self, label: str) -> Optional[dict]:
        i = self.coalgebra._index.get(label.strip())
        return None if i is None else {i: self.field.one}

    def index(self, label: str) -> int:
        return self.coalgebra.index(label)

    def element(self, vec: Sequence[Any]) -> dict:
        return {i: c for i, c in enumerate(vec) if c}

    def dense(self, x: dict) -> list:
        out = [self.field.zero] * self.n
        for k, c in x.items():
            out[k] = c
        return out


def parse_element(H: HopfAlgebra, text: str) -> dict:
    """``coeff*label + ...`` with labels or monomials of H."""
    return parse_vector(text, H.resolve, lambda s: parse_scalar(s, H.field), H.field.one)


def hopf_from_document(doc: HopfDocument) -> FiniteHopfAlgebra:
    C = coalgebra_from_document(doc)
    f = C.field

    def vec(terms, what) -> dict:
        out: dict = {}
        for t in terms:
            if len(t) != 2:
                raise InputError(f"{what} terms must be [label, coefficient]")
            add_term(out, C.index(t[0]), parse_scalar(t[1], f))
        return out

    product = [[{} for _ in range(C.n)] for _ in range(C.n)]
    for a, row in doc.product.items():
        for b, terms in row.items():
            product[C.index(a)][C.index(b)] = vec(terms, "product")
    antipode = [{} for _ in range(C.n)]
    for a, terms in doc.antipode.items():
        antipode[C.index(a)] = vec(terms, "antipode")
    return FiniteHopfAlgebra(C, product, {C.index(doc.unit): f.one}, antipode, doc.name)


def hopf_to_document(H: FiniteHopfAlgebra) -> HopfDocument:
    base = coalgebra_to_document(H.coalgebra)
    f = H.field
    unit = H.unit()
    if len(unit) != 1 or next(iter(unit.values())) != f.one:
        raise InputError("only algebras whose unit is a basis vector can be exported")

    def terms(x):
        return [[H.label(k), f.format(c)] for k, c in sorted(x.items())]

    return HopfDocument(
        **base.model_dump(),
        product={H.label(a): {H.label(b): terms(H.mul_basis(a, b)) for b in range(H.n)} for a in range(H.n)},
        unit=H.label(next(iter(unit))),
        antipode={H.label(a): terms(H.antipode_basis(a)) for a in range(H.n)},
    )


def validate_hopf(H: HopfAlgebra) -> ValidationReport:
    """Hopf axioms on the validation keys; triples leaving a truncation are skipped."""
    t0 = time.perf_counter()
    report = ValidationReport(structure=H.name)
    if isinstance(H, FiniteHopfAlgebra):
        report.merge(validate_coalgebra(H.coalgebra))
    keys = H.validation_keys()
    one = H.unit()
    f = H.field

    for a in keys:
        x = H.basis(a)
        lab = H.label(a)
        if not isinstance(H, FiniteHopfAlgebra):
            d = H.coproduct(x)
            report.checked += 1
            left: dict = {}
            for (p, q), c in d.items():
                for (p1, p2), e in H.coproduct_basis(p).items():
                    add_term(left, (p1, p2, q), c * e)
            right: dict = {}
            for (p, q), c in d.items():
                for (q1, q2), e in H.coproduct_basis(q).items():
                    add_term(right, (p, q1, q2), c * e)
            if left != right:
                report.fail("coassociativity", lab)
            report.checked += 1
            lc: dict = {}
            rc: dict = {}
            for (p, q), c in d.items():
                add_term(lc, q, c * H.counit_basis(p))
                add_term(rc, p, c * H.counit_basis(q))
            if lc != x or rc != x:
                report.fail("counit", lab)
        try:
            report.checked += 1
            if H.mul(one, x) != x or H.mul(x, one) != x:
                report.fail("unit", lab)
            report.checked += 1
            d = H.coproduct(x)
            sl: dict = {}
            sr: dict = {}
            for (p, q), c in d.items():
                add_into(sl, H.mul(H.antipode_basis(p), H.basis(q)), c)
                add_into(sr, H.mul(H.basis(p), H.antipode_basis(q)), c)
            expect = scale(one, H.counit_basis(a))
            if sl != expect:
                report.fail("left antipode", lab, f"S(a₁)a₂ = {H.format(sl)}")
            if sr != expect:
                report.fail("right antipode", lab, f"a₁S(a₂) = {H.format(sr)}")
        except TruncationOverflow:
            report.skipped += 1

    for a in keys:
        for b in keys:
            at = f"{H.label(a)}, {H.label(b)}"
            try:
                ab = H.mul_basis(a, b)
            except TruncationOverflow:
                report.skipped += 1
                continue
            report.checked += 1
            lhs = H.coproduct(ab)
            rhs: dict = {}
            try:
                for (a1, a2), c in H.coproduct_basis(a).items():
                    for (b1, b2), d in H.coproduct_basis(b).items():
                        for k1, e1 in H.mul_basis(a1, b1).items():
                            for k2, e2 in H.mul_basis(a2, b2).items():
                                add_term(rhs, (k1, k2), c * d * e1 * e2)
            except TruncationOverflow:
                report.skipped += 1
                continue
            if lhs != rhs:
                report.fail("coproduct multiplicative", at)
            report.checked += 1
            if H.counit(ab) != H.counit_basis(a) * H.counit_basis(b):
                report.fail("counit multiplicative", at)
            report.checked += 1
            try:
                if H.antipode(ab) != H.mul(H.antipode_basis(b), H.antipode_basis(a)):
                    report.fail("antipode anti-multiplicative", at)
            except TruncationOverflow:
                report.skipped += 1
            for c_key in keys:
                try:
                    left = H.mul(ab, H.basis(c_key))
                    right = H.mul(H.basis(a), H.mul_basis(b, c_key))
                except TruncationOverflow:
                    report.skipped += 1
                    continue
                report.checked += 1
                if left != right:
                    report.fail("associativity", f"{at}, {H.label(c_key)}")
    logger.debug("validate %s took %.3fs; dim=%d", H.name, time.perf_counter() - t0, len(keys))
    return report


def check_hopf_morphism(
    f: Callable[[Hashable], dict], H1: HopfAlgebra, H2: HopfAlgebra
) -> ValidationReport:
    """f given on basis keys of H1; checks unit, products, Δ, ε and S."""
    report = ValidationReport(structure=f"{H1.name} -> {H2.name}")

    def F(x: dict) -> dict:
        out: dict = {}
        for k, c in x.items():
            add_into(out, f(k), c)
        return out

    report.checked += 1
    if F(H1.unit()) != H2.unit():
        report.fail("unit", "1")
    keys = H1.validation_keys()
    for a in keys:
        lab = H1.label(a)
        fa = F(H1.basis(a))
        lhs: dict = {}
        for (p, q), c in H1.coproduct_basis(a).items():
            for x, s in f(p).items():
                for y, t in f(q).items():
                    add_term(lhs, (x, y), c * s * t)
        report.checked += 3
        if lhs != H2.coproduct(fa):
            report.fail("comultiplicative", lab)
        if H2.counit(fa) != H1.counit_basis(a):
            report.fail("counit", lab)
        if F(H1.antipode_basis(a)) != H2.antipode(fa):
            report.fail("antipode", lab)
        for b in keys:
            report.checked += 1
            if F(H1.mul_basis(a, b)) != H2.mul(fa, F(H1.basis(b))):
                report.fail("multiplicative", f"{lab}, {H1.label(b)}")
    return report


# Yetter-Drinfeld structures on H̄


def ad_left(H: HopfAlgebra, x: dict, a: dict) -> dict:
    """ad^L_x ā = bar(x₁ a S(x₂))."""
    out: dict = {}
    for (p, q), c in H.coproduct(x).items():
        add_into(out, H.mul(H.mul(H.basis(p), a), H.antipode_basis(q)), c)
    return H.bar(out)


def ad_right(H: HopfAlgebra, a: dict, x: dict) -> dict:
    """ā ◂ x = bar(S(x₁) a x₂)."""
    out: dict = {}
    for (p, q), c in H.coproduct(x).items():
        add_into(out, H.mul(H.mul(H.antipode_basis(p), a), H.basis(q)), c)
    return H.bar(out)


def coaction_left(H: HopfAlgebra, a: dict) -> dict:
    """Ξ_L(ā) = a₁⊗ā₂."""
    out: dict = {}
    for (p, q), c in H.coproduct(a).items():
        for k, d in H.bar(H.basis(q)).items():
            add_term(out, (p, k), c * d)
    return out


def coaction_right(H: HopfAlgebra, a: dict) -> dict:
    """Ξ_R(ā) = ā₁⊗a₂."""
    out: dict = {}
    for (p, q), c in H.coproduct(a).items():
        for k, d in H.bar(H.basis(p)).items():
            add_term(out, (k, q), c * d)
    return out


def _legs(t: dict, outer: int) -> list[dict]:
    groups: dict = {}
    for key, c in t.items():
        inner = key[1 - outer]
        add_term(groups.setdefault(key[outer], {}), inner, c)
    return [g for g in groups.values() if g]


def _yd_images(H: HopfAlgebra, r: dict, side: Side, act: bool):
    """Vectors whose span must lie in any Y-D submodule containing r."""
    if side == "left":
        yield from _legs(coaction_left(H, r), 0)
    else:
        yield from _legs(coaction_right(H, r), 1)
    if act:
        for x in H.generators():
            xv = H.basis(x)
            yield ("act", x, lambda xv=xv: ad_left(H, xv, r) if side == "left" else ad_right(H, r, xv))


@dataclass
class YDResult:
    span: SparseSpan
    certificate: CompletenessCertificate

    @property
    def dim(self) -> int:
        return self.span.dim

    def basis(self) -> list[dict]:
        return self.span.basis()

    def contains(self, v: dict) -> bool:
        return self.span.contains(v)


def _generate(H: HopfAlgebra, generators: Iterable[dict], side: Side, act: bool) -> YDResult:
    t0 = time.perf_counter()
    span = SparseSpan(H.field, order=H.key_order)
    queue: list[dict] = []
    for g in generators:
        v = H.bar(g)
        if not v:
            raise ZeroGeneratorError("generator vanishes in H/𝕂1")
        queue.append(v)
    cert = CompletenessCertificate(status="Complete", bound=H.bound)
    while queue:
        r = span.insert(queue.pop())
        if r is None:
            continue
        for item in _yd_images(H, r, side, act):
            if isinstance(item, tuple):
                _, x, image = item
                try:
                    w = image()
                except TruncationOverflow as exc:
                    if cert.status == "Complete":
                        cert = CompletenessCertificate(status="TruncationLimited", bound=H.bound, witness=str(exc))
                    continue
                if w:
                    queue.append(w)
            else:
                queue.append(item)
    result = YDResult(span, cert)
    if cert.complete:
        ok, witness = _closed(H, span.basis(), span, side, act)
        if not ok:
            raise NotClosedError(f"generated module failed the closure re-check at {witness}")
    logger.debug("Y-D generation in %s took %.3fs; dim=%d", H.name, time.perf_counter() - t0, span.dim)
    return result


def _closed(H: HopfAlgebra, basis: Sequence[dict], span: SparseSpan, side: Side, act: bool) -> tuple[bool, str]:
    for b in basis:
        for item in _yd_images(H, b, side, act):
            if isinstance(item, tuple):
                w = item[2]()
                if not span.contains(w):
                    return False, f"ad_{H.label(item[1])}({H.format(b)})"
            elif not span.contains(item):
                return False, f"coaction of {H.format(b)}"
    return True, ""


def generate_yd_submodule(H: HopfAlgebra, generators: Iterable[dict], side: Side = "left") -> YDResult:
    """Smallest Y-D submodule of H̄ containing the generators."""
    return _generate(H, generators, side, act=True)


def right_covariant_comodule(H: HopfAlgebra, generators: Iterable[dict]) -> YDResult:
    """Left subcomodule of H̄ under Ξ_L generated by the generators."""
    return _generate(H, generators, "left", act=False)


def is_yd_submodule(H: HopfAlgebra, vectors: Sequence[dict], side: Side = "left") -> tuple[bool, str]:
    span = SparseSpan(H.field, order=H.key_order)
    for v in vectors:
        span.add(H.bar(v))
    return _closed(H, span.basis(), span, side, act=True)


def closed_subgroups(H: FiniteHopfAlgebra, subgroups: Sequence[Sequence[str]]) -> list[list[str]]:
    """Subgroups N of a group algebra whose reduced span \\bar{K(N)} is Y-D closed."""
    out = []
    for N in subgroups:
        vecs = [H.basis(H.index(g)) for g in N]
        vecs = [v for v in vecs if H.bar(v)]
        if vecs and is_yd_submodule(H, vecs)[0]:
            out.append(list(N))
    return out


# bicovariant structure on Υ^U for finite H


def _tensor_mul(H: FiniteHopfAlgebra, left: dict, t: dict, right: dict) -> dict:
    """(x⊗y)·t·(z⊗w) for x⊗y = Δ-type tensors."""
    out: dict = {}
    for (x, y), c in left.items():
        for (a, b), d in t.items():
            for (z, w), e in right.items():
                xa_z = H.mul(H.mul_basis(x, a), H.basis(z))
                yb_w = H.mul(H.mul_basis(y, b), H.basis(w))
                for k1, s1 in xa_z.items():
                    for k2, s2 in yb_w.items():
                        add_term(out, (k1, k2), c * d * e * s1 * s2)
    return out


def act_left(H: FiniteHopfAlgebra, U: UniversalBicomodule, x: dict, m) -> dict:
    """x▷[a⊗b] = [x₁a⊗x₂b]."""
    one = {(H.bar_pivot, H.bar_pivot): H.field.one}
    return U.project(_tensor_mul(H, H.coproduct(x), U.section(m), one))


def act_right(H: FiniteHopfAlgebra, U: UniversalBicomodule, m, x: dict) -> dict:
    """[a⊗b]◁x = [ax₁⊗bx₂]."""
    one = {(H.bar_pivot, H.bar_pivot): H.field.one}
    return U.project(_tensor_mul(H, one, U.section(m), H.coproduct(x)))


def _require_unit_basis(H: FiniteHopfAlgebra):
    u = H.unit()
    if len(u) != 1 or next(iter(u.values())) != H.field.one:
        raise InputError("bicovariant operations need the unit to be a basis vector")


def check_bicovariant_bimodule(H: FiniteHopfAlgebra, U: UniversalBicomodule) -> ValidationReport:
    """Module laws, coaction compatibility and δ(a▷m◁b) = aδ(m)b on basis triples."""
    _require_unit_basis(H)
    report = ValidationReport(structure=f"Υ^U({H.name}) bicovariant")
    M = U.bicomodule
    f = H.field
    one = H.unit()
    for k in range(U.dim):
        m = {k: f.one}
        report.checked += 1
        if act_left(H, U, one, m) != m or act_right(H, U, m, one) != m:
            report.fail("unit action", U.labels[k])
        for a in range(H.n):
            xa = H.basis(a)
            am = act_left(H, U, xa, m)
            # Δ_L(x▷m) = x₁m₍₋₁₎ ⊗ x₂▷m₍₀₎
            lhs = M.coact_left(am)
            rhs: dict = {}
            for (p, q), c in H.coproduct(xa).items():
                for (cc, j), s in M.coact_left(m).items():
                    pm = H.mul_basis(p, cc)
                    qm = act_left(H, U, H.basis(q), {j: f.one})
                    for k1, s1 in pm.items():
                        for k2, s2 in qm.items():
                            add_term(rhs, (k1, k2), c * s * s1 * s2)
            report.checked += 1
            if lhs != rhs:
                report.fail("left covariance", f"{H.label(a)}▷{U.labels[k]}")
            lhs = M.coact_right(am)
            rhs = {}
            for (p, q), c in H.coproduct(xa).items():
                for (j, cc), s in M.coact_right(m).items():
                    pm = act_left(H, U, H.basis(p), {j: f.one})
                    qm = H.mul_basis(q, cc)
                    for k1, s1 in pm.items():
                        for k2, s2 in qm.items():
                            add_term(rhs, (k1, k2), c * s * s1 * s2)
            report.checked += 1
            if lhs != rhs:
                report.fail("right covariance", f"{H.label(a)}▷{U.labels[k]}")
            for b in range(H.n):
                xb = H.basis(b)
                amb = act_right(H, U, am, xb)
                report.checked += 1
                if amb != act_left(H, U, xa, act_right(H, U, m, xb)):
                    report.fail("bimodule", f"{H.label(a)}▷{U.labels[k]}◁{H.label(b)}")
                lhs = U.delta(amb)
                rhs = H.mul(H.mul(xa, U.delta(m)), xb)
                report.checked += 1
                if lhs != rhs:
                    report.fail("bicovariant δ", f"{H.label(a)}▷{U.labels[k]}◁{H.label(b)}")
                ab = H.mul_basis(a, b)
                report.checked += 1
                if act_left(H, U, ab, m) != act_left(H, U, xa, act_left(H, U, xb, m)):
                    report.fail("left action", f"{H.label(a)}{H.label(b)}▷{U.labels[k]}")
    return report


def projector_left(H: FiniteHopfAlgebra, U: UniversalBicomodule, m) -> dict:
    """P_L(m) = S(m₍₋₁₎)▷m₍₀₎."""
    out: dict = {}
    for (c, j), s in U.bicomodule.coact_left(m).items():
        add_into(out, act_left(H, U, H.antipode_basis(c), {j: H.field.one}), s)
    return out


def projector_right(H: FiniteHopfAlgebra, U: UniversalBicomodule, m) -> dict:
    """P_R(m) = m₍₀₎◁S(m₍₁₎)."""
    out: dict = {}
    for (j, c), s in U.bicomodule.coact_right(m).items():
        add_into(out, act_right(H, U, {j: H.field.one}, H.antipode_basis(c)), s)
    return out


def phi_R(H: FiniteHopfAlgebra, U: UniversalBicomodule, t: dict) -> dict:
    """Φ_R(ā⊗b) = [ab₁⊗b₂] for t keyed by (a, b) with a ≠ unit."""
    out: dict = {}
    for (a, b), c in t.items():
        for (b1, b2), d in H.coproduct_basis(b).items():
            for k, e in H.mul_basis(a, b1).items():
                add_into(out, U.cls(k, b2), c * d * e)
    return out


def phi_R_inv(H: FiniteHopfAlgebra, U: UniversalBicomodule, m) -> dict:
    """Φ_R⁻¹([a⊗b]) = \\overline{aS(b₁)}⊗b₂."""
    out: dict = {}
    for (a, b), c in U.section(m).items():
        for (b1, b2), d in H.coproduct_basis(b).items():
            for k, e in H.bar(H.mul(H.basis(a), H.antipode_basis(b1))).items():
                add_term(out, (k, b2), c * d * e)
    return out


def phi_L(H: FiniteHopfAlgebra, U: UniversalBicomodule, t: dict) -> dict:
    """Φ_L(a⊗b̄) = [a₁⊗a₂b]."""
    out: dict = {}
    for (a, b), c in t.items():
        for (a1, a2), d in H.coproduct_basis(a).items():
            for k, e in H.mul_basis(a2, b).items():
                add_into(out, U.cls(a1, k), c * d * e)
    return out


def phi_L_inv(H: FiniteHopfAlgebra, U: UniversalBicomodule, m) -> dict:
    """Φ_L⁻¹([a⊗b]) = a₁⊗\\overline{S(a₂)b}."""
    out: dict = {}
    for (a, b), c in U.section(m).items():
        for (a1, a2), d in H.coproduct_basis(a).items():
            for k, e in H.bar(H.mul(H.antipode_basis(a2), H.basis(b))).items():
                add_term(out, (a1, k), c * d * e)
    return out


def bicovariant_focc_from_yd(H: FiniteHopfAlgebra, U: UniversalBicomodule, vectors: Sequence[dict]) -> Subspace:
    """Φ_R(𝓛⊗H) for a left-left Y-D submodule 𝓛 of H̄."""
    _require_unit_basis(H)
    ok, witness = is_yd_submodule(H, vectors)
    if not ok:
        raise NotClosedError(f"not a Y-D submodule: {witness}")
    span = SparseSpan(H.field)
    for v in vectors:
        span.add(H.bar(v))
    images = []
    for l in span.basis():
        for b in range(H.n):
            t = {(a, b): c for a, c in l.items()}
            images.append(U.dense(phi_R(H, U, t)))
    S = Subspace.from_vectors(images, U.dim, U.field)
    if not is_subbicomodule(U.bicomodule, S):
        raise NotClosedError("Φ_R image is not a subbicomodule")
    for b in S.basis():
        m = U.bicomodule.sparse(b)
        for x in range(H.n):
            if not S.member(U.dense(act_left(H, U, H.basis(x), m))) or not S.member(
                U.dense(act_right(H, U, m, H.basis(x)))
            ):
                raise NotClosedError("Φ_R image is not closed under the actions")
    return S


def woronowicz_maps(H: FiniteHopfAlgebra) -> dict[str, list[list]]:
    """r, r', s, s' on H⊗H as n² × n² matrices (row index a*n+b).

    r(a⊗b) = ab₁⊗b₂, r'(a⊗b) = a₁b⊗a₂, s(a⊗b) = b₁⊗ab₂, s'(a⊗b) = a₁⊗a₂b.
    """
    n = H.n
    f = H.field
    maps = {name: [[f.zero] * (n * n) for _ in range(n * n)] for name in ("r", "r'", "s", "s'")}
    for a in range(n):
        for b in range(n):
            col = a * n + b
            for (b1, b2), c in H.coproduct_basis(b).items():
                for k, d in H.mul_basis(a, b1).items():
                    maps["r"][k * n + b2][col] += c * d
                for k, d in H.mul_basis(a, b2).items():
                    maps["s"][b1 * n + k][col] += c * d
            for (a1, a2), c in H.coproduct_basis(a).items():
                for k, d in H.mul_basis(a1, b).items():
                    maps["r'"][k * n + a2][col] += c * d
                for k, d in H.mul_basis(a2, b).items():
                    maps["s'"][a1 * n + k][col] += c * d
    return maps


def woronowicz_invertibility(H: FiniteHopfAlgebra) -> dict[str, bool]:
    n = H.n
    return {name: rank(m, n * n, H.field) == n * n for name, m in woronowicz_maps(H).items()}


@dataclass
class YDStructure:
    """A Y-D module structure on H itself: action x▷a and coaction δ(a)."""

    name: str
    action: Callable[[dict, dict], dict]
    coaction: Callable[[dict], dict]


def yd_structures_on_H(H: FiniteHopfAlgebra) -> tuple[YDStructure, YDStructure]:
    def ad(x, a):
        out: dict = {}
        for (p, q), c in H.coproduct(x).items():
            add_into(out, H.mul(H.mul(H.basis(p), a), H.antipode_basis(q)), c)
        return out

    def coadjoint(a):
        out: dict = {}
        for (a1, a2, a3), c in H.coproduct2(a).items():
            for k, d in H.mul(H.basis(a1), H.antipode_basis(a3)).items():
                add_term(out, (k, a2), c * d)
        return out

    return (
        YDStructure("adjoint", ad, H.coproduct),
        YDStructure("coadjoint", H.mul, coadjoint),
    )


def check_yd_structure(H: FiniteHopfAlgebra, Y: YDStructure) -> ValidationReport:
    """δ(x▷a) = x₁a₍₋₁₎S(x₃)⊗x₂▷a₍₀₎ on basis pairs."""
    report = ValidationReport(structure=f"{H.name} {Y.name}")
    for x in range(H.n):
        xv = H.basis(x)
        d2 = H.coproduct2(xv)
        for a in range(H.n):
            av = H.basis(a)
            lhs = Y.coaction(Y.action(xv, av))
            rhs: dict = {}
            for (x1, x2, x3), c in d2.items():
                for (am, a0), d in Y.coaction(av).items():
                    left = H.mul(H.mul_basis(x1, am), H.antipode_basis(x3))
                    right = Y.action(H.basis(x2), H.basis(a0))
                    for k1, s1 in left.items():
                        for k2, s2 in right.items():
                            add_term(rhs, (k1, k2), c * d * s1 * s2)
            report.checked += 1
            if lhs != rhs:
                report.fail("Y-D compatibility", f"{H.label(x)}▷{H.label(a)}")
    return report


def yd_closed_on_H(H: FiniteHopfAlgebra, Y: YDStructure, vectors: Sequence[dict]) -> bool:
    """Whether span(vectors) ⊂ H is stable under Y's action and coaction."""
    span = SparseSpan(H.field)
    for v in vectors:
        span.add(v)
    for b in span.basis():
        for x in range(H.n):
            if not span.contains(Y.action(H.basis(x), b)):
                return False
        for leg in _legs(Y.coaction(b), 0):
            if not span.contains(leg):
                return False
    return True
