"""Quantum Lie algebras on Y-D submodules of H̄.

For 𝓛 ⊂ H̄ closed under ad and Ξ_L:

    τ(X̄⊗Ȳ) = ad_{X₁}Ȳ ⊗ \\overline{X₂}
    [X̄, Ȳ] = ad_X Ȳ − ε(X)Ȳ

Both are stored as structure constants in a chosen basis of 𝓛. The
right-handed versions use the right-right Y-D structure and are certified
through their mirror image, which is a left structure over H^{op,cop}.
"""
from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field as dc_field
from typing import Any, Literal, Optional, Sequence

from .errors import InputError, NotClosedError, TruncationOverflow
from .hopf import HopfAlgebra, ad_left, ad_right, is_yd_submodule, parse_element
from .linalg import SparseSpan, inverse, kernel
from .models import ValidationReport
from .scalar import ScalarField, specialize
from .utils import add_into, add_term

logger = logging.getLogger("codiff.qlie")

Side = Literal["left", "right"]
Table = dict  # (i, j) -> {key tuple: coefficient}


class _Coordinates:
    """Coordinates in an arbitrary basis of a subspace of H̄."""

    def __init__(self, H: HopfAlgebra, basis: Sequence[dict]):
        self.field = H.field
        self.span = SparseSpan(H.field, order=H.key_order)
        for b in basis:
            if not self.span.add(b):
                raise InputError("basis vectors are linearly dependent in H/𝕂1")
        T = [self.span.coordinates(b) for b in basis]
        self.inv = inverse(T, H.field)
        self.n = len(basis)

    def __call__(self, v: dict) -> list:
        c = self.span.coordinates(v)
        if c is None:
            raise NotClosedError("vector leaves the Y-D submodule")
        f = self.field
        out = []
        for k in range(self.n):
            s = f.zero
            for j in range(self.n):
                if c[j] and self.inv[j][k]:
                    s += c[j] * self.inv[j][k]
            out.append(s)
        return out

    def sparse(self, v: dict) -> dict:
        return {k: c for k, c in enumerate(self(v)) if c}


@dataclass
class QLieStructure:
    field: ScalarField
    labels: list[str]
    braiding: Table
    bracket: Table
    side: Side = "left"
    name: str = "qlie"
    skipped: list[tuple[int, int]] = dc_field(default_factory=list)
    hopf: Optional[HopfAlgebra] = None
    basis: list[dict] = dc_field(default_factory=list)

    @property
    def dim(self) -> int:
        return len(self.labels)

    def tau(self, i: int, j: int) -> dict:
        return self.braiding.get((i, j), {})

    def br(self, i: int, j: int) -> dict:
        return self.bracket.get((i, j), {})

    def mirror(self) -> "QLieStructure":
        """Reverse every tensor order: a right structure becomes a left one."""
        braid = {(j, i): {tuple(reversed(k)): c for k, c in v.items()} for (i, j), v in self.braiding.items()}
        brk = {(j, i): dict(v) for (i, j), v in self.bracket.items()}
        other: Side = "left" if self.side == "right" else "right"
        return QLieStructure(
            self.field, self.labels, braid, brk, other, f"{self.name} mirrored", [(j, i) for i, j in self.skipped]
        )

    def format_element(self, v: dict) -> str:
        return _format(self.field, v, self.labels)

    def to_dict(self) -> dict[str, Any]:
        n = self.dim
        return {
            "name": self.name,
            "side": self.side,
            "field": self.field.descriptor,
            "basis": list(self.labels),
            "braiding": {
                f"{self.labels[i]}⊗{self.labels[j]}": self.format_element(self.tau(i, j))
                for i in range(n)
                for j in range(n)
                if (i, j) not in self.skipped
            },
            "bracket": {
                f"[{self.labels[i]},{self.labels[j]}]": self.format_element(self.br(i, j))
                for i in range(n)
                for j in range(n)
                if (i, j) not in self.skipped
            },
            "skipped": [f"{self.labels[i]}⊗{self.labels[j]}" for i, j in self.skipped],
        }


def _format(f: ScalarField, v: dict, labels: Sequence[str]) -> str:
    if not v:
        return "0"
    parts = []
    for key in sorted(v, key=lambda k: k if isinstance(k, tuple) else (k,)):
        c = v[key]
        idx = key if isinstance(key, tuple) else (key,)
        name = "⊗".join(labels[i] for i in idx)
        if c == f.one:
            parts.append(name)
        elif c == -f.one:
            parts.append(f"-{name}")
        else:
            parts.append(f"({f.format(c)})*{name}")
    return " + ".join(parts).replace("+ -", "- ")


def _pair_images(H: HopfAlgebra, coords: _Coordinates, X: dict, Y: dict, side: Side) -> tuple[dict, dict]:
    tau: dict = {}
    if side == "left":
        # group Δ(X) by its left leg so that every right leg sum lies in 𝓛
        legs: dict = {}
        for (p, q), c in H.coproduct(X).items():
            add_term(legs.setdefault(p, {}), q, c)
        for p, right in legs.items():
            r = coords.sparse(H.bar(right))
            if not r:
                continue
            a = coords.sparse(ad_left(H, H.basis(p), Y))
            for k, s in a.items():
                for l, t in r.items():
                    add_term(tau, (k, l), s * t)
        b = coords.sparse(ad_left(H, X, Y))
        add_into(b, coords.sparse(Y), -H.counit(X))
    else:
        # τ(X̄⊗Ȳ) = \overline{Y₁} ⊗ X̄◂Y₂
        legs = {}
        for (p, q), c in H.coproduct(Y).items():
            add_term(legs.setdefault(q, {}), p, c)
        for q, left in legs.items():
            lc = coords.sparse(H.bar(left))
            if not lc:
                continue
            a = coords.sparse(ad_right(H, X, H.basis(q)))
            for k, s in lc.items():
                for l, t in a.items():
                    add_term(tau, (k, l), s * t)
        b = coords.sparse(ad_right(H, X, Y))
        add_into(b, coords.sparse(X), -H.counit(Y))
    return tau, {(k,): c for k, c in b.items() if c}


def build_qlie(
    H: HopfAlgebra,
    basis: Sequence[dict],
    labels: Optional[Sequence[str]] = None,
    side: Side = "left",
    check_closed: bool = True,
) -> QLieStructure:
    """Braiding and bracket tables on span(basis) ⊂ H̄; pairs whose products overflow are skipped."""
    t0 = time.perf_counter()
    basis = [H.bar(b) for b in basis]
    if any(not b for b in basis):
        raise InputError("basis vector vanishes in H/𝕂1")
    if check_closed:
        try:
            ok, witness = is_yd_submodule(H, basis, side)
        except TruncationOverflow as exc:
            raise NotClosedError(f"closure of the basis cannot be certified below the bound: {exc}") from exc
        if not ok:
            raise NotClosedError(f"span is not a Y-D submodule: {witness}")
    coords = _Coordinates(H, basis)
    n = len(basis)
    labels = list(labels) if labels is not None else [f"v{i}" for i in range(n)]
    if len(labels) != n:
        raise InputError(f"{len(labels)} labels for a basis of {n}")
    braiding: Table = {}
    bracket: Table = {}
    skipped = []
    for i in range(n):
        for j in range(n):
            try:
                tau, b = _pair_images(H, coords, basis[i], basis[j], side)
            except TruncationOverflow as exc:
                logger.debug("skipping %s⊗%s: %s", labels[i], labels[j], exc)
                skipped.append((i, j))
                continue
            braiding[(i, j)] = tau
            bracket[(i, j)] = b
    logger.debug("qlie tables on %s took %.3fs; dim=%d", H.name, time.perf_counter() - t0, n)
    return QLieStructure(H.field, labels, braiding, bracket, side, f"qlie({H.name})", skipped, H, basis)


def braiding(H: HopfAlgebra, basis: Sequence[dict], labels: Optional[Sequence[str]] = None) -> Table:
    return build_qlie(H, basis, labels).braiding


def bracket(H: HopfAlgebra, basis: Sequence[dict], labels: Optional[Sequence[str]] = None) -> Table:
    return build_qlie(H, basis, labels).bracket


def braiding_right(H: HopfAlgebra, basis: Sequence[dict], labels: Optional[Sequence[str]] = None) -> Table:
    return build_qlie(H, basis, labels, side="right").braiding


def bracket_right(H: HopfAlgebra, basis: Sequence[dict], labels: Optional[Sequence[str]] = None) -> Table:
    return build_qlie(H, basis, labels, side="right").bracket


# bases in which published tables are written, keyed by (structure, generator)
STANDARD_BASES: dict[tuple[str, str], tuple[list[str], list[str]]] = {
    ("uqsl2", "K"): (["υ00", "υ10", "υ01", "υ11"], ["K", "E", "F*K", "E*F - q^2*F*E"]),
    ("kappa-poincare", "Pi0"): (
        ["Π0", "P1", "P2", "P3", "Cκ"],
        [
            "Pi0",
            "P1",
            "P2",
            "P3",
            "kappa^2*Pi0 + kappa^2*Pi0^-1 - 2*kappa^2*1 - P1^2*Pi0^-1 - P2^2*Pi0^-1 - P3^2*Pi0^-1",
        ],
    ),
}


def standard_basis(H: HopfAlgebra, generators: Sequence[str]) -> Optional[tuple[list[str], list[dict]]]:
    """Labels and vectors of the usual basis of 𝓛<generator>, when one is known."""
    if len(generators) != 1:
        return None
    entry = STANDARD_BASES.get((H.name, generators[0].replace(" ", "")))
    if entry is None:
        return None
    labels, texts = entry
    return list(labels), [parse_element(H, t) for t in texts]

# tensor arithmetic on 𝓛^{⊗k}, vectors keyed by index tuples


def _apply(t: dict, pos: int, table: Table) -> dict:
    """Apply a map 𝓛⊗𝓛 → 𝓛^{⊗m} at tensor positions pos, pos+1."""
    out: dict = {}
    for key, c in t.items():
        image = table[(key[pos], key[pos + 1])]
        for k, s in image.items():
            add_term(out, key[:pos] + k + key[pos + 2:], c * s)
    return out


def _minus(a: dict, b: dict) -> dict:
    out = dict(a)
    add_into(out, b, -1)
    return out


def _one_minus(Q: QLieStructure, table: Table) -> Table:
    """(id − table) on the pairs where table is known."""
    return {key: _minus({key: Q.field.one}, img) for key, img in table.items()}


def _tau_squared(Q: QLieStructure) -> Table:
    out = {}
    for key, img in Q.braiding.items():
        try:
            out[key] = _apply(img, 0, Q.braiding)
        except KeyError:
            continue
    return out


def certify_identities(Q: QLieStructure) -> ValidationReport:
    """Braid relation, braided anticommutativity and the three braided Jacobi identities on basis triples."""
    if Q.side == "right":
        report = certify_identities(Q.mirror())
        report.structure = f"{Q.name} (right, via mirror)"
        return report
    t0 = time.perf_counter()
    report = ValidationReport(structure=Q.name)
    n = Q.dim
    f = Q.field
    tau, br = Q.braiding, Q.bracket
    skipped = set(Q.skipped)
    id_minus_tau = _one_minus(Q, tau)
    id_minus_tau2 = _one_minus(Q, _tau_squared(Q))

    def fmt(v: dict) -> str:
        return _format(f, v, Q.labels)

    # anticommutativity: [,] vanishes on Ker(id − τ)
    if not skipped:
        rows = [[f.zero] * (n * n) for _ in range(n * n)]
        for (i, j), img in id_minus_tau.items():
            for (k, l), c in img.items():
                rows[k * n + l][i * n + j] = c
        for v in kernel(rows, n * n, f):
            t = {divmod(idx, n): c for idx, c in enumerate(v) if c}
            report.checked += 1
            image = _apply(t, 0, br)
            if image:
                report.fail("anticommutativity", fmt(t), f"bracket gives {fmt(image)}")
    else:
        report.skipped += 1

    for i in range(n):
        for j in range(n):
            for k in range(n):
                e = {(i, j, k): f.one}
                at = f"{Q.labels[i]}⊗{Q.labels[j]}⊗{Q.labels[k]}"
                try:
                    sides = {
                        "braid relation": (
                            _apply(_apply(_apply(e, 0, tau), 1, tau), 0, tau),
                            _apply(_apply(_apply(e, 1, tau), 0, tau), 1, tau),
                        ),
                        "Jacobi": (
                            _apply(_apply(e, 0, br), 0, br),
                            _apply(_apply(_apply(e, 0, id_minus_tau), 1, br), 0, br),
                        ),
                        "bracket then braiding": (
                            _apply(_apply(e, 1, br), 0, tau),
                            _apply(_apply(_apply(e, 0, tau), 1, tau), 0, br),
                        ),
                        "braiding then bracket": (
                            _minus(
                                _apply(_apply(e, 0, br), 0, tau),
                                _apply(_apply(_apply(e, 1, tau), 0, tau), 1, br),
                            ),
                            _apply(_apply(_apply(e, 0, id_minus_tau2), 1, tau), 0, br),
                        ),
                    }
                except KeyError:
                    # a pair on the way was skipped for overflow
                    report.skipped += 1
                    continue
                for name, (lhs, rhs) in sides.items():
                    report.checked += 1
                    if lhs != rhs:
                        report.fail(name, at, f"{fmt(lhs)} != {fmt(rhs)}")

    if Q.hopf is not None and Q.basis:
        report.merge(_check_factorization(Q))
    logger.debug("certify %s took %.3fs; dim=%d", Q.name, time.perf_counter() - t0, n)
    return report


def _check_factorization(Q: QLieStructure) -> ValidationReport:
    """[X̄, Ȳ] = \\overline{μ(δ⊗δ)(id − τ)(X̄⊗Ȳ)} with δ(X̄) = X − ε(X)1."""
    H = Q.hopf
    report = ValidationReport(structure=f"{Q.name} bracket factorization")
    unit = H.unit()

    def delta(x: dict) -> dict:
        out = dict(x)
        add_into(out, unit, -H.counit(x))
        return out

    def vec(coeffs: dict) -> dict:
        out: dict = {}
        for (k,), c in coeffs.items():
            add_into(out, Q.basis[k], c)
        return out

    ds = [delta(b) for b in Q.basis]
    id_minus_tau = _one_minus(Q, Q.braiding)
    for i in range(Q.dim):
        for j in range(Q.dim):
            if (i, j) in Q.skipped:
                continue
            try:
                rhs: dict = {}
                for (k, l), c in id_minus_tau[(i, j)].items():
                    add_into(rhs, H.mul(ds[k], ds[l]), c)
                rhs = H.bar(rhs)
            except TruncationOverflow:
                report.skipped += 1
                continue
            report.checked += 1
            lhs = H.bar(vec(Q.br(i, j)))
            if lhs != rhs:
                report.fail("bracket factorization", f"{Q.labels[i]}⊗{Q.labels[j]}", f"{H.format(lhs)} != {H.format(rhs)}")
    return report


@dataclass
class ClassicalLimit:
    field: ScalarField
    labels: list[str]
    braiding: Table
    bracket: Table
    dropped: list[str]

    def is_flip(self) -> bool:
        n = len(self.labels)
        return all(self.braiding.get((i, j), {}) == {(j, i): self.field.one} for i in range(n) for j in range(n))

    def to_dict(self) -> dict[str, Any]:
        n = len(self.labels)
        return {
            "field": self.field.descriptor,
            "basis": list(self.labels),
            "dropped": list(self.dropped),
            "flip": self.is_flip(),
            "bracket": {
                f"[{self.labels[i]},{self.labels[j]}]": _format(self.field, self.bracket.get((i, j), {}), self.labels)
                for i in range(n)
                for j in range(n)
            },
        }


def classical_limit(Q: QLieStructure, value: Any, drop: Sequence[str] = ()) -> ClassicalLimit:
    """Specialize the deformation parameter; basis vectors in ``drop`` are sent to zero."""
    f = Q.field
    if f.parameter is None:
        raise InputError(f"{Q.name} has no deformation parameter")
    unknown = set(drop) - set(Q.labels)
    if unknown:
        raise InputError(f"unknown basis labels {sorted(unknown)}")
    base = ScalarField(f.base)
    keep = [i for i, l in enumerate(Q.labels) if l not in drop]
    new = {old: k for k, old in enumerate(keep)}

    def restrict(table: Table) -> Table:
        out: Table = {}
        for (i, j), img in table.items():
            if i not in new or j not in new:
                continue
            v: dict = {}
            for key, c in img.items():
                if all(x in new for x in key):
                    add_term(v, tuple(new[x] for x in key), specialize(c, f, value))
            out[(new[i], new[j])] = v
        return out

    return ClassicalLimit(base, [Q.labels[i] for i in keep], restrict(Q.braiding), restrict(Q.bracket), list(drop))
