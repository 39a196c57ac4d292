"""Built-in coalgebras and Hopf algebras.

Finite structures are compiled straight into tables. The quantum groups and
enveloping algebras are infinite dimensional; they are presented by letters,
straightening rules and the images of Δ and S on letters, and multiplied by
normal ordering. Each letter carries a weight; a product whose total weight
exceeds the truncation bound raises TruncationOverflow, so everything below
the bound is exact.
"""
from __future__ import annotations

import logging
import os
import re
import time
from dataclasses import dataclass, field as dc_field
from itertools import combinations
from typing import Any, Callable, Hashable, Mapping, Optional, Sequence, Union

from sympy import LeviCivita
from sympy.combinatorics import Permutation, SymmetricGroup

from .coalgebra import Coalgebra, coalgebra_from_tables
from .config import settings
from .errors import InputError, RewriteBudgetExceeded, StructureError, TruncationOverflow
from .hopf import FiniteHopfAlgebra, HopfAlgebra
from .scalar import ScalarField
from .utils import add_into, add_term

logger = logging.getLogger("codiff.presentations")
LOG_TABLES = os.getenv("CODIFF_LOG_TABLES", "0") == "1"

Word = tuple[str, ...]
Structure = Union[Coalgebra, HopfAlgebra]

_FACTOR_RE = re.compile(r"^([A-Za-z][A-Za-z0-9]*)(?:\^(-?\d+))?$")


# finite coalgebras


def matrix_coalgebra(n: int = 2, field: Optional[ScalarField] = None) -> Coalgebra:
    """Δe_ij = Σ_k e_ik⊗e_kj. For n = 2 the basis is named x, u, v, y."""
    f = field or ScalarField()
    if n < 1:
        raise InputError("matrix coalgebra needs n ≥ 1")
    if n == 2:
        names = {(0, 0): "x", (0, 1): "u", (1, 0): "v", (1, 1): "y"}
    else:
        names = {(i, j): f"e{i + 1}{j + 1}" for i in range(n) for j in range(n)}
    labels = [names[(i, j)] for i in range(n) for j in range(n)]
    coproduct = {
        names[(i, j)]: [(names[(i, k)], names[(k, j)], 1) for k in range(n)] for i in range(n) for j in range(n)
    }
    counit = {names[(i, i)]: 1 for i in range(n)}
    return coalgebra_from_tables(f, labels, coproduct, counit, "m2x2" if n == 2 else f"matrix:{n}")


SWEEDLER_LABELS = ("1", "g", "X", "Xg")


def sweedler_coalgebra(field: Optional[ScalarField] = None) -> Coalgebra:
    coproduct = {
        "1": [("1", "1", 1)],
        "g": [("g", "g", 1)],
        "X": [("X", "1", 1), ("g", "X", 1)],
        "Xg": [("Xg", "g", 1), ("1", "Xg", 1)],
    }
    return coalgebra_from_tables(field or ScalarField(), SWEEDLER_LABELS, coproduct, {"1": 1, "g": 1}, "sweedler")


def cv_coalgebra(d: int, field: Optional[ScalarField] = None) -> Coalgebra:
    """C_V = 𝕂1 ⊕ V with every v ∈ V primitive."""
    if d < 1:
        raise InputError("C_V needs dim V ≥ 1")
    labels = ["1"] + [f"v{i}" for i in range(1, d + 1)]
    coproduct = {"1": [("1", "1", 1)]}
    for v in labels[1:]:
        coproduct[v] = [(v, "1", 1), ("1", v, 1)]
    return coalgebra_from_tables(field or ScalarField(), labels, coproduct, {"1": 1}, f"cv:{d}")


def divided_power_coalgebra(N: int, field: Optional[ScalarField] = None) -> Coalgebra:
    """Span{Xⁿ : n ≤ N} with Δ(Xⁿ) = Σ Xⁱ⊗X^{n−i}."""
    if N < 1:
        raise InputError("divided power truncation needs N ≥ 1")
    labels = [_power_label("X", k) for k in range(N + 1)]
    coproduct = {labels[k]: [(labels[i], labels[k - i], 1) for i in range(k + 1)] for k in range(N + 1)}
    return coalgebra_from_tables(field or ScalarField(), labels, coproduct, {"1": 1}, f"divided-power:{N}")


def set_coalgebra(k: int, field: Optional[ScalarField] = None) -> Coalgebra:
    if k < 1:
        raise InputError("set coalgebra needs at least one point")
    labels = [f"p{i}" for i in range(k)]
    coproduct = {p: [(p, p, 1)] for p in labels}
    return coalgebra_from_tables(field or ScalarField(), labels, coproduct, {p: 1 for p in labels}, f"set:{k}")


def _power_label(base: str, k: int) -> str:
    if k == 0:
        return "1"
    return base if k == 1 else f"{base}^{k}"


# finite Hopf algebras


def sweedler_hopf(field: Optional[ScalarField] = None) -> FiniteHopfAlgebra:
    C = sweedler_coalgebra(field)
    f = C.field
    one, g, X, Xg = range(4)
    table = {
        (g, g): {one: 1}, (g, X): {Xg: -1}, (g, Xg): {X: -1},
        (X, g): {Xg: 1}, (Xg, g): {X: 1},
    }
    product = [[{} for _ in range(4)] for _ in range(4)]
    for a in range(4):
        product[one][a] = {a: f.one}
        product[a][one] = {a: f.one}
    for (a, b), v in table.items():
        product[a][b] = {k: f(c) for k, c in v.items()}
    antipode = [{one: f.one}, {g: f.one}, {Xg: f.one}, {X: -f.one}]
    return FiniteHopfAlgebra(C, product, {one: f.one}, antipode, "sweedler")


def group_algebra(
    name: str,
    elements: Sequence[Hashable],
    multiply: Callable[[Any, Any], Any],
    inverse: Callable[[Any], Any],
    label: Callable[[Any], str],
    field: Optional[ScalarField] = None,
) -> FiniteHopfAlgebra:
    """𝕂(G) with every group element group-like; ``elements[0]`` must be the identity."""
    f = field or ScalarField()
    index = {g: i for i, g in enumerate(elements)}
    labels = [label(g) for g in elements]
    C = coalgebra_from_tables(f, labels, {l: [(l, l, 1)] for l in labels}, {l: 1 for l in labels}, name)
    product = []
    for a in elements:
        row = []
        for b in elements:
            ab = multiply(a, b)
            if ab not in index:
                raise StructureError(f"{name}: product {label(a)}·{label(b)} leaves the element list")
            row.append({index[ab]: f.one})
        product.append(row)
    antipode = [{index[inverse(g)]: f.one} for g in elements]
    if multiply(elements[0], elements[-1]) != elements[-1]:
        raise StructureError(f"{name}: the first element is not the identity")
    return FiniteHopfAlgebra(C, product, {0: f.one}, antipode, name)


def cyclic_group_algebra(n: int, field: Optional[ScalarField] = None) -> FiniteHopfAlgebra:
    if n < 1:
        raise InputError("cyclic group needs order ≥ 1")
    return group_algebra(
        f"z{n}", list(range(n)), lambda a, b: (a + b) % n, lambda a: (-a) % n, lambda a: _power_label("g", a), field
    )


def _cycle_label(p: Permutation) -> str:
    if p.is_Identity:
        return "1"
    return "".join("(" + " ".join(str(i) for i in c) + ")" for c in p.cyclic_form)


def symmetric_group_algebra(field: Optional[ScalarField] = None) -> FiniteHopfAlgebra:
    """𝕂(S₃), elements labelled in cycle notation."""
    elements = sorted(SymmetricGroup(3).elements, key=lambda p: (not p.is_Identity, p.order(), p.array_form))
    return group_algebra("s3", elements, lambda a, b: a * b, lambda a: ~a, _cycle_label, field)


def trivial_hopf(field: Optional[ScalarField] = None) -> FiniteHopfAlgebra:
    f = field or ScalarField()
    C = coalgebra_from_tables(f, ["1"], {"1": [("1", "1", 1)]}, {"1": 1}, "trivial")
    return FiniteHopfAlgebra(C, [[{0: f.one}]], {0: f.one}, [{0: f.one}], "trivial")


def group_subgroups(H: FiniteHopfAlgebra) -> list[list[str]]:
    """Subgroups of G for a group algebra 𝕂(G), each generated by at most two elements."""
    n = H.n

    def mul(a, b):
        (k,) = H.mul_basis(a, b)
        return k

    found: list[frozenset] = []
    for size in (1, 2):
        for gens in combinations(range(n), size):
            sub = {0, *gens}
            frontier = list(sub)
            while frontier:
                a = frontier.pop()
                for b in list(sub):
                    for c in (mul(a, b), mul(b, a)):
                        if c not in sub:
                            sub.add(c)
                            frontier.append(c)
            fs = frozenset(sub)
            if fs not in found:
                found.append(fs)
    found.sort(key=lambda s: (len(s), sorted(s)))
    return [[H.label(k) for k in sorted(s)] for s in found]


# filtered Hopf algebras by presentation


@dataclass(frozen=True)
class Letter:
    name: str
    weight: int = 1
    grouplike: bool = False
    inverse_of: Optional[str] = None


class FilteredHopfAlgebra(HopfAlgebra):
    """Hopf algebra given by a PBW presentation, truncated at total weight ``bound``.

    ``rules[(a, b)]`` rewrites the adjacent pair ``a b``; it must exist for every
    pair out of letter order and may exist for ordered pairs too (K K⁻¹ → 1).
    Words are tuples of letter names; a word is normal when no adjacent pair
    has a rule.
    """

    def __init__(
        self,
        name: str,
        field: ScalarField,
        letters: Sequence[Letter],
        rules: Mapping[tuple[str, str], Mapping[Word, Any]],
        coproducts: Mapping[str, Mapping[tuple[Word, Word], Any]],
        antipodes: Mapping[str, Mapping[Word, Any]],
        counits: Optional[Mapping[str, Any]] = None,
        bound: Optional[int] = None,
        step_budget: Optional[int] = None,
        validation_length: int = 1,
    ):
        t0 = time.perf_counter()
        self.name = name
        self.field = field
        self.letters = tuple(letters)
        self._tables = {
            "rules": {k: dict(v) for k, v in rules.items()},
            "coproducts": {k: dict(v) for k, v in coproducts.items()},
            "antipodes": {k: dict(v) for k, v in antipodes.items()},
            "counits": dict(counits or {}),
        }
        self._letter = {l.name: l for l in self.letters}
        if len(self._letter) != len(self.letters):
            raise StructureError(f"{name}: duplicate letters")
        self._pos = {l.name: i for i, l in enumerate(self.letters)}
        self.bound = settings.default_trunc if bound is None else bound
        if self.bound < 1:
            raise InputError("truncation bound must be ≥ 1")
        self.step_budget = settings.rewrite_step_budget if step_budget is None else step_budget
        self.validation_length = validation_length
        self._tables.update(bound=self.bound, step_budget=self.step_budget, validation_length=validation_length)
        self._steps = 0
        self._mul_cache: dict = {}
        self._product_cache: dict = {}
        self._delta_cache: dict = {}
        self._anti_cache: dict = {}

        f = field
        self._rules: dict[tuple[str, str], dict] = {}
        for l in self.letters:
            if l.inverse_of is not None:
                base = self._require(l.inverse_of)
                if not (l.grouplike and base.grouplike):
                    raise StructureError(f"{name}: only group-like letters have inverses")
                self._rules[(base.name, l.name)] = {(): f.one}
                self._rules[(l.name, base.name)] = {(): f.one}
        for (a, b), rhs in rules.items():
            self._require(a), self._require(b)
            vec = {tuple(w): f(c) for w, c in rhs.items() if f(c)}
            lhs = self._letter[a].weight + self._letter[b].weight
            for w in vec:
                if self.degree(w) > lhs:
                    raise StructureError(f"{name}: rule for {a} {b} raises the weight")
            self._rules[(a, b)] = vec

        self._eps = {}
        counits = dict(counits or {})
        for l in self.letters:
            self._eps[l.name] = f.one if l.grouplike else f(counits.get(l.name, 0))
        self._delta: dict[str, dict] = {}
        self._anti: dict[str, dict] = {}
        for l in self.letters:
            if l.grouplike:
                self._delta[l.name] = {((l.name,), (l.name,)): f.one}
            else:
                if l.name not in coproducts:
                    raise StructureError(f"{name}: no coproduct given for {l.name}")
                legs: dict = {}
                for (w1, w2), c in coproducts[l.name].items():
                    if self.degree(w1) > l.weight or self.degree(w2) > l.weight:
                        raise StructureError(f"{name}: a leg of Δ({l.name}) exceeds its weight")
                    for k1, e1 in self._word_nf(tuple(w1)).items():
                        for k2, e2 in self._word_nf(tuple(w2)).items():
                            add_term(legs, (k1, k2), f(c) * e1 * e2)
                self._delta[l.name] = legs
            if l.name in antipodes:
                anti: dict = {}
                for w, c in antipodes[l.name].items():
                    add_into(anti, self._word_nf(tuple(w)), f(c))
                self._anti[l.name] = anti
            elif l.grouplike:
                inv = self._inverse_name(l.name)
                self._anti[l.name] = {(inv,): f.one}
            else:
                raise StructureError(f"{name}: no antipode given for {l.name}")
        logger.debug("presentation %s took %.3fs; dim=%d", name, time.perf_counter() - t0, len(self.letters))
        if LOG_TABLES:
            logger.info("%s rules: %s", name, {f"{a} {b}": self.format(v) for (a, b), v in self._rules.items()})

    def _require(self, name: str) -> Letter:
        if name not in self._letter:
            raise StructureError(f"{self.name}: unknown letter {name!r}")
        return self._letter[name]

    def _inverse_name(self, name: str) -> str:
        for l in self.letters:
            if l.inverse_of == name:
                return l.name
        base = self._letter[name].inverse_of
        if base is not None:
            return base
        raise StructureError(f"{self.name}: group-like {name} has no inverse letter")

    # normal ordering

    def _mul_letter(self, word: Word, letter: str) -> dict:
        key = (word, letter)
        hit = self._mul_cache.get(key)
        if hit is not None:
            return hit
        one = self.field.one
        if not word:
            out = {(letter,): one}
        else:
            last = word[-1]
            rule = self._rules.get((last, letter))
            if rule is None:
                if self._pos[last] > self._pos[letter]:
                    raise StructureError(f"{self.name}: no rule to reorder {last} {letter}")
                out = {word + (letter,): one}
            else:
                self._steps += 1
                if self._steps > self.step_budget:
                    raise RewriteBudgetExceeded(f"{self.name}: more than {self.step_budget} rewrite steps")
                out = {}
                prefix = {word[:-1]: one}
                for w, c in rule.items():
                    add_into(out, self._mul_words(prefix, w), c)
        self._mul_cache[key] = out
        return out

    def _mul_words(self, vec: dict, word: Word) -> dict:
        for letter in word:
            nxt: dict = {}
            for w, c in vec.items():
                add_into(nxt, self._mul_letter(w, letter), c)
            vec = nxt
        return vec

    def _word_nf(self, word: Word) -> dict:
        self._steps = 0
        return self._mul_words({(): self.field.one}, word)

    def _product(self, a: Word, b: Word) -> dict:
        key = (a, b)
        hit = self._product_cache.get(key)
        if hit is None:
            self._steps = 0
            hit = self._mul_words({a: self.field.one}, b)
            self._product_cache[key] = hit
        return hit

    def normal_order(self, word: Sequence[str]) -> dict:
        """Normal form of an arbitrary word; words above the bound overflow."""
        word = tuple(word)
        for l in word:
            self._require(l)
        d = self.degree(word)
        if d > self.bound:
            raise TruncationOverflow("*".join(word) or "1", "1", d, self.bound)
        return self._word_nf(word)

    def _linear_product(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for a, c in x.items():
            for b, d in y.items():
                add_into(out, self._product(a, b), c * d)
        return out

    # HopfAlgebra interface

    def degree(self, key: Word) -> int:
        return sum(self._letter[l].weight for l in key)

    def key_order(self, key: Word):
        return (self.degree(key), tuple(self._pos[l] for l in key))

    def mul_basis(self, a: Word, b: Word) -> dict:
        d = self.degree(a) + self.degree(b)
        if d > self.bound:
            raise TruncationOverflow(self.label(a), self.label(b), d, self.bound)
        return self._product(a, b)

    def coproduct_basis(self, a: Word) -> dict:
        hit = self._delta_cache.get(a)
        if hit is not None:
            return hit
        one = self.field.one
        out = {((), ()): one}
        for l in a:
            nxt: dict = {}
            for (x, y), c in out.items():
                for (p, q), d in self._delta[l].items():
                    for k1, e1 in self._product(x, p).items():
                        for k2, e2 in self._product(y, q).items():
                            add_term(nxt, (k1, k2), c * d * e1 * e2)
            out = nxt
        self._delta_cache[a] = out
        return out

    def antipode_basis(self, a: Word) -> dict:
        hit = self._anti_cache.get(a)
        if hit is not None:
            return hit
        out = {(): self.field.one}
        for l in reversed(a):
            out = self._linear_product(out, self._anti[l])
        self._anti_cache[a] = out
        return out

    def counit_basis(self, a: Word):
        e = self.field.one
        for l in a:
            e = e * self._eps[l]
            if not e:
                break
        return e

    def generators(self) -> list[Word]:
        return [(l.name,) for l in self.letters]

    def unit(self) -> dict:
        return {(): self.field.one}

    def label(self, key: Word) -> str:
        if not key:
            return "1"
        parts = []
        i = 0
        while i < len(key):
            j = i
            while j < len(key) and key[j] == key[i]:
                j += 1
            k = j - i
            l = self._letter[key[i]]
            if l.inverse_of is not None:
                parts.append(f"{l.inverse_of}^-{k}")
            else:
                parts.append(l.name if k == 1 else f"{l.name}^{k}")
            i = j
        return "*".join(parts)

    def validation_keys(self) -> list[Word]:
        return self.basis_words(self.validation_length)

    def basis_words(self, max_length: int) -> list[Word]:
        """Normal words of at most ``max_length`` letters within the bound."""
        words: list[Word] = [()]
        frontier: list[Word] = [()]
        for _ in range(max_length):
            nxt = []
            for w in frontier:
                for l in self.letters:
                    if w and ((w[-1], l.name) in self._rules or self._pos[w[-1]] > self._pos[l.name]):
                        continue
                    v = w + (l.name,)
                    if self.degree(v) <= self.bound:
                        nxt.append(v)
            words.extend(nxt)
            frontier = nxt
        return sorted(words, key=self.key_order)

    def resolve(self, label: str) -> Optional[dict]:
        """Monomial ``E^2*F*K^-1`` as a normal-ordered vector, or None if a factor is not a letter."""
        label = label.strip()
        if label == "1":
            return self.unit()
        word: list[str] = []
        for factor in label.split("*"):
            m = _FACTOR_RE.match(factor.strip())
            if not m or m.group(1) not in self._letter or self._letter[m.group(1)].inverse_of is not None:
                return None
            name, k = m.group(1), int(m.group(2) or 1)
            if k < 0:
                if not self._letter[name].grouplike:
                    raise InputError(f"{name} is not invertible in {self.name}")
                name, k = self._inverse_name(name), -k
            word.extend([name] * k)
        d = self.degree(tuple(word))
        if d > self.bound:
            raise InputError(f"{label} has degree {d} above the truncation bound {self.bound}")
        return self._word_nf(tuple(word))

    def tables(self) -> dict:
        """The presentation this algebra was built from, as keyword arguments."""
        out = dict(self._tables)
        for k in ("rules", "coproducts", "antipodes"):
            out[k] = {key: dict(v) for key, v in out[k].items()}
        out["counits"] = dict(out["counits"])
        return out

    def rebuild(self, **tables) -> "FilteredHopfAlgebra":
        """Same letters with some presentation tables replaced, e.g. a new ``bound``."""
        unknown = set(tables) - set(self._tables)
        if unknown:
            raise InputError(f"unknown presentation tables {sorted(unknown)}")
        return FilteredHopfAlgebra(self.name, self.field, self.letters, **{**self.tables(), **tables})

    def to_dict(self) -> dict:
        f = self.field
        return {
            "name": self.name,
            "field": f.descriptor,
            "truncation": self.bound,
            "letters": [
                {"name": l.name, "weight": l.weight, "grouplike": l.grouplike, "inverse_of": l.inverse_of}
                for l in self.letters
            ],
            "rules": {f"{self.label((a,))} {self.label((b,))}": self.format(v) for (a, b), v in self._rules.items()},
            "coproduct": {self.label((l.name,)): self.format_tensor(self._delta[l.name]) for l in self.letters},
            "antipode": {self.label((l.name,)): self.format(self._anti[l.name]) for l in self.letters},
            "counit": {self.label((l.name,)): f.format(self._eps[l.name]) for l in self.letters},
        }


def _grouplike_pair(name: str) -> list[Letter]:
    return [Letter(name, 0, grouplike=True), Letter(f"{name}_inv", 0, grouplike=True, inverse_of=name)]


def _w(text: str) -> Word:
    return tuple(text.split()) if text else ()


def uq_bplus(trunc: Optional[int] = None) -> FilteredHopfAlgebra:
    """U_Q(𝔟₊): Xg = QgX, ΔX = X⊗1 + g⊗X."""
    f = ScalarField("QQ", "Q")
    Q = f.gen()
    return FilteredHopfAlgebra(
        "uqbplus",
        f,
        [Letter("X", 1), *_grouplike_pair("g")],
        rules={("g", "X"): {_w("X g"): 1 / Q}, ("g_inv", "X"): {_w("X g_inv"): Q}},
        coproducts={"X": {(_w("X"), ()): 1, (_w("g"), _w("X")): 1}},
        antipodes={"X": {_w("g_inv X"): -1}},
        bound=settings.bplus_trunc if trunc is None else trunc,
    )


def uq_sl2(trunc: Optional[int] = None) -> FilteredHopfAlgebra:
    """U_q(sl2): KE = q²EK, KF = q⁻²FK, [E,F] = (K − K⁻¹)/(q − q⁻¹)."""
    f = ScalarField("QQ", "q")
    q = f.gen()
    c = f.one / (q - 1 / q)
    return FilteredHopfAlgebra(
        "uqsl2",
        f,
        [Letter("E", 1), Letter("F", 1), *_grouplike_pair("K")],
        rules={
            ("F", "E"): {_w("E F"): 1, _w("K"): -c, _w("K_inv"): c},
            ("K", "E"): {_w("E K"): q**2},
            ("K", "F"): {_w("F K"): q**-2},
            ("K_inv", "E"): {_w("E K_inv"): q**-2},
            ("K_inv", "F"): {_w("F K_inv"): q**2},
        },
        coproducts={
            "E": {(_w("E"), _w("K")): 1, ((), _w("E")): 1},
            "F": {(_w("F"), ()): 1, (_w("K_inv"), _w("F")): 1},
        },
        antipodes={"E": {_w("E K_inv"): -1}, "F": {_w("K F"): -1}},
        bound=settings.sl2_trunc if trunc is None else trunc,
    )


def slq2(trunc: Optional[int] = None) -> FilteredHopfAlgebra:
    """SL_q(2) with generators u, v, x, y: ux = qxu, uy = q⁻¹yu, xy = 1 + q⁻¹uv."""
    f = ScalarField("QQ", "q")
    q = f.gen()
    return FilteredHopfAlgebra(
        "slq2",
        f,
        [Letter("u"), Letter("v"), Letter("x"), Letter("y")],
        rules={
            ("x", "u"): {_w("u x"): 1 / q},
            ("x", "v"): {_w("v x"): 1 / q},
            ("y", "u"): {_w("u y"): q},
            ("y", "v"): {_w("v y"): q},
            ("v", "u"): {_w("u v"): 1},
            ("x", "y"): {(): 1, _w("u v"): 1 / q},
            ("y", "x"): {(): 1, _w("u v"): q},
        },
        coproducts={
            "x": {(_w("x"), _w("x")): 1, (_w("u"), _w("v")): 1},
            "y": {(_w("y"), _w("y")): 1, (_w("v"), _w("u")): 1},
            "u": {(_w("x"), _w("u")): 1, (_w("u"), _w("y")): 1},
            "v": {(_w("y"), _w("v")): 1, (_w("v"), _w("x")): 1},
        },
        antipodes={"x": {_w("y"): 1}, "y": {_w("x"): 1}, "u": {_w("u"): -q}, "v": {_w("v"): -1 / q}},
        counits={"x": 1, "y": 1},
        bound=settings.slq2_trunc if trunc is None else trunc,
    )


def _eps3(j: int, k: int, l: int) -> int:
    return int(LeviCivita(j, k, l))


def kappa_poincare(trunc: Optional[int] = None) -> FilteredHopfAlgebra:
    """κ-Poincaré algebra in the classical basis over ℚ(i)(κ).

    Boosts N weigh 2, rotations and momenta 1, Π₀ = e^{P₀/κ} and its inverse 0.
    """
    f = ScalarField("QQ_I", "kappa")
    kap = f.gen()
    i = f.imag_unit()
    R = (1, 2, 3)
    N = {j: f"N{j}" for j in R}
    M = {j: f"M{j}" for j in R}
    P = {j: f"P{j}" for j in R}
    Pi, Pii = "Pi0", "Pi0_inv"
    letters = (
        [Letter(N[j], 2) for j in R]
        + [Letter(M[j], 1) for j in R]
        + [Letter(P[j], 1) for j in R]
        + _grouplike_pair(Pi)
    )
    # G_κ = κ(Π₀ − Π₀⁻¹) + P²Π₀⁻¹/κ
    G = {(Pi,): kap, (Pii,): -kap}
    for a in R:
        G[(P[a], P[a], Pii)] = 1 / kap

    rules: dict = {}
    for j in R:
        for k in R:
            rhs = {(N[j], M[k]): f.one}
            for l in R:
                if _eps3(j, k, l):
                    rhs[(N[l],)] = -i * _eps3(j, k, l)
            rules[(M[k], N[j])] = rhs
            rhs = {(N[j], P[k]): f.one}
            if j == k:
                for w, c in G.items():
                    rhs[w] = i / 2 * c
            rules[(P[k], N[j])] = rhs
            rhs = {(M[j], P[k]): f.one}
            for l in R:
                if _eps3(j, k, l):
                    rhs[(P[l],)] = -i * _eps3(j, k, l)
            rules[(P[k], M[j])] = rhs
            if k > j:
                rules[(N[k], N[j])] = {(N[j], N[k]): f.one, **{(M[l],): -i * _eps3(k, j, l) for l in R if _eps3(k, j, l)}}
                rules[(M[k], M[j])] = {(M[j], M[k]): f.one, **{(M[l],): i * _eps3(k, j, l) for l in R if _eps3(k, j, l)}}
                rules[(P[k], P[j])] = {(P[j], P[k]): f.one}
        rules[(Pi, N[j])] = {(N[j], Pi): f.one, (P[j],): i / kap}
        rules[(Pii, N[j])] = {(N[j], Pii): f.one, (P[j], Pii, Pii): -i / kap}
        for g in (Pi, Pii):
            rules[(g, M[j])] = {(M[j], g): f.one}
            rules[(g, P[j])] = {(P[j], g): f.one}

    coproducts: dict = {}
    antipodes: dict = {}
    for j in R:
        d = {((N[j],), ()): f.one, ((Pii,), (N[j],)): f.one}
        s = {(Pi, N[j]): -f.one}
        for k in R:
            for l in R:
                e = _eps3(j, k, l)
                if e:
                    d[((P[k], Pii), (M[l],))] = -e / kap
                    s[(P[k], M[l])] = -e / kap
        coproducts[N[j]] = d
        antipodes[N[j]] = s
        coproducts[M[j]] = {((M[j],), ()): f.one, ((), (M[j],)): f.one}
        antipodes[M[j]] = {(M[j],): -f.one}
        coproducts[P[j]] = {((P[j],), (Pi,)): f.one, ((), (P[j],)): f.one}
        antipodes[P[j]] = {(P[j], Pii): -f.one}
    return FilteredHopfAlgebra(
        "kappa-poincare",
        f,
        letters,
        rules,
        coproducts,
        antipodes,
        bound=settings.kappa_trunc if trunc is None else trunc,
    )


def kappa_casimir(H: FilteredHopfAlgebra) -> dict:
    """C_κ = κ²(Π₀ + Π₀⁻¹ − 2) − P²Π₀⁻¹."""
    f = H.field
    kap = f.gen()
    out = {("Pi0",): kap**2, ("Pi0_inv",): kap**2, (): -2 * kap**2}
    for a in (1, 2, 3):
        add_into(out, H.normal_order((f"P{a}", f"P{a}", "Pi0_inv")), -f.one)
    return out


def enveloping_algebra(
    name: str,
    generators: Sequence[str],
    brackets: Mapping[tuple[str, str], Mapping[str, Any]],
    field: Optional[ScalarField] = None,
    trunc: Optional[int] = None,
) -> FilteredHopfAlgebra:
    """PBW truncation of U(𝔤): generators primitive, S(x) = −x, yx = xy + [y, x] for y after x."""
    f = field or ScalarField()
    pos = {g: i for i, g in enumerate(generators)}
    full: dict[tuple[str, str], dict] = {}
    for (a, b), v in brackets.items():
        if a not in pos or b not in pos:
            raise StructureError(f"{name}: bracket [{a}, {b}] names an unknown generator")
        full[(a, b)] = {c: f(s) for c, s in v.items()}
        full[(b, a)] = {c: -f(s) for c, s in v.items()}
    rules = {}
    for a in generators:
        for b in generators:
            if pos[b] > pos[a]:
                rhs = {(a, b): f.one}
                for c, s in full.get((b, a), {}).items():
                    if s:
                        rhs[(c,)] = s
                rules[(b, a)] = rhs
    return FilteredHopfAlgebra(
        name,
        f,
        [Letter(g, 1) for g in generators],
        rules,
        {g: {((g,), ()): 1, ((), (g,)): 1} for g in generators},
        {g: {(g,): -1} for g in generators},
        bound=settings.default_trunc if trunc is None else trunc,
    )


def b_plus(trunc: Optional[int] = None) -> FilteredHopfAlgebra:
    """U(𝔟₊) with [H, E] = E."""
    return enveloping_algebra("b-plus", ["H", "E"], {("H", "E"): {"E": 1}}, trunc=trunc)


def u_sl2(trunc: Optional[int] = None) -> FilteredHopfAlgebra:
    """U(sl2) with [E, F] = H, [H, E] = 2E, [H, F] = −2F."""
    return enveloping_algebra(
        "u-sl2",
        ["E", "F", "H"],
        {("E", "F"): {"H": 1}, ("H", "E"): {"E": 2}, ("H", "F"): {"F": -2}},
        trunc=trunc,
    )


# registry

_PARAM_RE = re.compile(r"^(cv|set|matrix):(\d+)$|^z(\d+)$|^divided-power(?::(\d+))?$")

_DESCRIPTIONS = {
    "trivial": "the ground field 𝕂 as a Hopf algebra",
    "m2x2": "coalgebra of 2×2 matrices, basis x, u, v, y",
    "matrix:<n>": "matrix coalgebra of n×n matrices",
    "sweedler-coalgebra": "4-dim Sweedler coalgebra, basis 1, g, X, Xg",
    "sweedler": "4-dim Sweedler Hopf algebra",
    "cv:<d>": "C_V = 𝕂1 ⊕ V with V primitive of dim d",
    "divided-power": "divided power coalgebra truncated at --trunc",
    "set:<k>": "set coalgebra on k points",
    "z<n>": "group algebra of the cyclic group of order n",
    "s3": "group algebra of S₃",
    "b-plus": "U(𝔟₊), [H, E] = E (truncated)",
    "u-sl2": "U(sl2) (truncated)",
    "uqbplus": "U_Q(𝔟₊) over ℚ(Q) (truncated)",
    "uqsl2": "U_q(sl2) over ℚ(q) (truncated)",
    "slq2": "SL_q(2) over ℚ(q) (truncated)",
    "kappa-poincare": "κ-Poincaré over ℚ(i)(κ) (truncated)",
}

_FIXED: dict[str, Callable[[Optional[int]], Structure]] = {
    "trivial": lambda trunc: trivial_hopf(),
    "m2x2": lambda trunc: matrix_coalgebra(2),
    "sweedler-coalgebra": lambda trunc: sweedler_coalgebra(),
    "sweedler": lambda trunc: sweedler_hopf(),
    "s3": lambda trunc: symmetric_group_algebra(),
    "b-plus": b_plus,
    "u-sl2": u_sl2,
    "uqbplus": uq_bplus,
    "uqsl2": uq_sl2,
    "slq2": slq2,
    "kappa-poincare": kappa_poincare,
}


@dataclass(frozen=True)
class Presentation:
    """A built-in structure by name, e.g. ``cv:4`` or ``uqsl2`` with a truncation."""

    kind: str
    size: Optional[int] = None
    trunc: Optional[int] = None
    options: dict = dc_field(default_factory=dict, compare=False, hash=False)

    @classmethod
    def from_name(cls, name: str, trunc: Optional[int] = None) -> "Presentation":
        name = (name or "").strip()
        if name in _FIXED:
            return cls(name, None, trunc)
        m = _PARAM_RE.match(name)
        if not m:
            raise InputError(f"unknown built-in {name!r}; see `builtins`")
        if m.group(1):
            return cls(m.group(1), int(m.group(2)), trunc)
        if m.group(3):
            return cls("z", int(m.group(3)), trunc)
        size = int(m.group(4)) if m.group(4) else None
        return cls("divided-power", size, trunc)


def build(p: Presentation) -> Structure:
    t0 = time.perf_counter()
    if p.kind in _FIXED:
        out = _FIXED[p.kind](p.trunc)
    elif p.kind == "cv":
        out = cv_coalgebra(p.size)
    elif p.kind == "set":
        out = set_coalgebra(p.size)
    elif p.kind == "matrix":
        out = matrix_coalgebra(p.size)
    elif p.kind == "z":
        out = cyclic_group_algebra(p.size)
    elif p.kind == "divided-power":
        N = p.trunc or p.size or settings.divided_power_trunc
        out = divided_power_coalgebra(N)
    else:
        raise InputError(f"unknown presentation kind {p.kind!r}")
    logger.debug("built %s took %.3fs; dim=%d", p.kind, time.perf_counter() - t0, getattr(out, "n", 0))
    return out


def build_builtin(name: str, trunc: Optional[int] = None) -> Structure:
    return build(Presentation.from_name(name, trunc))


def list_builtins() -> list[dict[str, str]]:
    return [{"name": k, "description": v} for k, v in _DESCRIPTIONS.items()]


def as_coalgebra(S: Structure) -> Coalgebra:
    if isinstance(S, Coalgebra):
        return S
    if isinstance(S, FiniteHopfAlgebra):
        return S.coalgebra
    raise InputError(f"{S.name} is infinite dimensional; coalgebra commands need a finite structure")
