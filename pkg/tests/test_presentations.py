import pytest

from app.coalgebra import validate_coalgebra
from app.errors import InputError, RewriteBudgetExceeded, StructureError, TruncationOverflow
from app.hopf import parse_element, validate_hopf
from app.presentations import (
    FilteredHopfAlgebra,
    Letter,
    Presentation,
    as_coalgebra,
    b_plus,
    build_builtin,
    cyclic_group_algebra,
    divided_power_coalgebra,
    enveloping_algebra,
    kappa_casimir,
    kappa_poincare,
    list_builtins,
    slq2,
    u_sl2,
    uq_bplus,
    uq_sl2,
)
from app.scalar import ScalarField
from app.utils import add_into, scale


def test_uq_sl2_relations():
    H = uq_sl2(6)
    q = H.field.gen()
    E, F, K, Ki = (H.resolve(s) for s in ("E", "F", "K", "K^-1"))
    assert H.mul(K, E) == scale(H.mul(E, K), q**2)
    assert H.mul(K, F) == scale(H.mul(F, K), q**-2)
    assert H.mul(K, Ki) == H.unit()
    commutator = H.mul(E, F)
    add_into(commutator, H.mul(F, E), -H.field.one)
    c = H.field.one / (q - 1 / q)
    assert commutator == {("K",): c, ("K_inv",): -c}


def test_uq_sl2_hopf_maps():
    H = uq_sl2(6)
    E, F = H.resolve("E"), H.resolve("F")
    assert H.coproduct(E) == {(("E",), ("K",)): H.field.one, ((), ("E",)): H.field.one}
    assert H.antipode(E) == {("E", "K_inv"): -H.field.one}
    assert not H.counit(E) and H.counit(H.resolve("K")) == H.field.one
    assert H.coproduct(F) == {(("F",), ()): H.field.one, (("K_inv",), ("F",)): H.field.one}


def test_monomial_labels_and_resolve():
    H = uq_sl2(6)
    assert H.label(("E", "E", "F", "K_inv")) == "E^2*F*K^-1"
    assert H.resolve("E^2*F*K^-1") == {("E", "E", "F", "K_inv"): H.field.one}
    assert H.resolve("1") == H.unit()
    assert H.resolve("Z") is None
    with pytest.raises(InputError):
        H.resolve("E^7")
    with pytest.raises(InputError):
        H.resolve("E^-1")
    assert parse_element(H, "q*E - F") == {("E",): H.field.gen(), ("F",): -H.field.one}


def test_truncation_overflow():
    H = uq_sl2(4)
    with pytest.raises(TruncationOverflow) as exc:
        H.mul_basis(("E", "E", "E"), ("F", "F"))
    assert exc.value.degree == 5 and exc.value.bound == 4
    with pytest.raises(TruncationOverflow):
        H.normal_order(("F",) * 5)
    # group-like letters carry no weight
    assert H.degree(("K",) * 9) == 0
    assert H.mul_basis(("K",) * 5, ("K_inv",) * 5) == H.unit()
    with pytest.raises(InputError):
        uq_sl2(0)


def test_basis_words_are_normal_and_bounded():
    H = uq_sl2(2)
    words = H.basis_words(2)
    assert () in words
    assert ("F", "E") not in words and ("E", "F") in words
    assert ("K", "K_inv") not in words
    assert all(H.degree(w) <= 2 for w in words)
    assert all(H.normal_order(w) == {w: H.field.one} for w in words)


def test_uq_bplus_commutation():
    H = uq_bplus(4)
    Q = H.field.gen()
    g, X = H.resolve("g"), H.resolve("X")
    assert H.mul(X, g) == scale(H.mul(g, X), Q)
    assert H.antipode(X) == {("X", "g_inv"): -Q}


def test_slq2_determinant_and_counits():
    H = slq2(4)
    q = H.field.gen()
    det = H.mul(H.resolve("x"), H.resolve("y"))
    add_into(det, H.mul(H.resolve("u"), H.resolve("v")), -1 / q)
    assert det == H.unit()
    assert H.counit(H.resolve("x")) == H.field.one
    assert not H.counit(H.resolve("u"))


def test_enveloping_algebra_brackets():
    H = b_plus(4)
    one = H.field.one
    assert H.mul(H.resolve("E"), H.resolve("H")) == {("H", "E"): one, ("E",): -one}
    assert H.antipode(H.resolve("H")) == {("H",): -one}
    U = u_sl2(4)
    ef = U.mul(U.resolve("F"), U.resolve("E"))
    assert ef == {("E", "F"): one, ("H",): -one}
    with pytest.raises(StructureError):
        enveloping_algebra("bad", ["A"], {("A", "B"): {"A": 1}})


@pytest.mark.parametrize(
    "H",
    [
        pytest.param(uq_bplus(4), id="uqbplus"),
        pytest.param(uq_sl2(4), id="uqsl2"),
        pytest.param(slq2(3), id="slq2"),
        pytest.param(b_plus(4), id="b-plus"),
        pytest.param(u_sl2(4), id="u-sl2"),
    ],
)
def test_filtered_algebras_validate(H):
    report = validate_hopf(H)
    assert report.ok, report.violations[:3]
    assert report.checked > 0


def filtered_mutations(H, count=20):
    """Coproduct, antipode and counit entries of the non-group-like letters, shifted by ±1, ±2, ..."""
    t = H.tables()
    letters = [l.name for l in H.letters if not l.grouplike]
    groups = {"coproduct": [], "antipode": [], "counit": []}
    for delta in (1, -1, 2, -2, 3, -3, 4, -4):
        for l in letters:
            cop, anti, key = t["coproducts"][l], t["antipodes"][l], ((l,), ())
            groups["coproduct"].append(
                H.rebuild(coproducts={**t["coproducts"], l: {**cop, key: cop.get(key, 0) + delta}})
            )
            groups["antipode"].append(H.rebuild(antipodes={**t["antipodes"], l: {**anti, (): anti.get((), 0) + delta}}))
            groups["counit"].append(H.rebuild(counits={**t["counits"], l: t["counits"].get(l, 0) + delta}))
    out = []
    for batch in zip(*groups.values()):
        out.extend(batch)
    return out[:count]


@pytest.mark.parametrize(
    "H",
    [
        pytest.param(uq_bplus(4), id="uqbplus"),
        pytest.param(uq_sl2(4), id="uqsl2"),
        pytest.param(slq2(3), id="slq2"),
        pytest.param(b_plus(4), id="b-plus"),
        pytest.param(u_sl2(4), id="u-sl2"),
        pytest.param(kappa_poincare(4), id="kappa", marks=pytest.mark.slow),
    ],
)
def test_filtered_mutations_are_detected(H):
    mutations = filtered_mutations(H)
    assert len(mutations) == 20
    for M in mutations:
        assert not validate_hopf(M).ok


def test_rebuild_keeps_presentation():
    H = uq_bplus(4)
    wider = H.rebuild(bound=6)
    assert wider.bound == 6
    assert validate_hopf(wider).ok
    assert wider.mul(wider.resolve("X"), wider.resolve("g")) == H.mul(H.resolve("X"), H.resolve("g"))
    with pytest.raises(InputError):
        H.rebuild(relations={})


@pytest.mark.slow
def test_kappa_poincare_validates():
    report = validate_hopf(kappa_poincare(4))
    assert report.ok, report.violations[:3]


@pytest.mark.slow
def test_kappa_casimir_is_central():
    H = kappa_poincare(4)
    C = kappa_casimir(H)
    for letter in ("N1", "N3", "M1", "P1", "P2"):
        x = H.resolve(letter)
        assert H.mul(C, x) == H.mul(x, C), letter


def test_rewrite_budget():
    H = FilteredHopfAlgebra(
        "budget",
        ScalarField(),
        [Letter("a"), Letter("b")],
        rules={("b", "a"): {("a", "b"): 1}},
        coproducts={l: {((l,), ()): 1, ((), (l,)): 1} for l in "ab"},
        antipodes={l: {(l,): -1} for l in "ab"},
        bound=6,
        step_budget=2,
    )
    with pytest.raises(RewriteBudgetExceeded):
        H.normal_order(("b", "b", "a", "a"))


def test_presentation_rejects_bad_letters():
    with pytest.raises(StructureError):
        FilteredHopfAlgebra(
            "bad",
            ScalarField(),
            [Letter("a"), Letter("a")],
            rules={},
            coproducts={},
            antipodes={},
        )
    with pytest.raises(StructureError):
        FilteredHopfAlgebra(
            "noanti",
            ScalarField(),
            [Letter("a")],
            rules={},
            coproducts={"a": {(("a",), ()): 1, ((), ("a",)): 1}},
            antipodes={},
        )


@pytest.mark.parametrize(
    "name, kind, size",
    [("cv:4", "cv", 4), ("set:3", "set", 3), ("z5", "z", 5), ("matrix:3", "matrix", 3),
     ("divided-power:3", "divided-power", 3), ("divided-power", "divided-power", None), ("uqsl2", "uqsl2", None)],
)
def test_presentation_names(name, kind, size):
    p = Presentation.from_name(name)
    assert (p.kind, p.size) == (kind, size)


@pytest.mark.parametrize("name", ["", "cv", "cv:x", "sl3", "z"])
def test_unknown_builtins(name):
    with pytest.raises(InputError):
        Presentation.from_name(name)


def test_builtin_registry():
    names = {b["name"] for b in list_builtins()}
    assert {"sweedler", "m2x2", "uqsl2", "kappa-poincare", "s3"} <= names
    assert build_builtin("divided-power", 3).n == 4
    assert build_builtin("z4").labels == ("1", "g", "g^2", "g^3")
    assert validate_coalgebra(as_coalgebra(build_builtin("sweedler"))).ok
    with pytest.raises(InputError):
        as_coalgebra(build_builtin("uqsl2", 3))


def test_cyclic_group_products():
    H = cyclic_group_algebra(4)
    assert H.mul_basis(H.index("g"), H.index("g^3")) == {0: H.field.one}
    assert H.antipode_basis(H.index("g")) == {H.index("g^3"): H.field.one}


def test_divided_power_coproduct():
    C = divided_power_coalgebra(3)
    assert C.labels == ("1", "X", "X^2", "X^3")
    assert len(C.delta(3)) == 4
    with pytest.raises(InputError):
        divided_power_coalgebra(0)
