import pytest
from sympy import LeviCivita

from app.errors import InputError, NotClosedError
from app.hopf import ad_left, coaction_left, generate_yd_submodule, parse_element, right_covariant_comodule
from app.presentations import b_plus, kappa_poincare, slq2, uq_bplus, uq_sl2
from app.qlie import (
    braiding,
    braiding_right,
    bracket,
    bracket_right,
    build_qlie,
    certify_identities,
    classical_limit,
    standard_basis,
)
from app.scalar import parse_scalar
from app.utils import add_into, add_term

A = "2 - q^2 - q^-2"
B = "q^-1 - q^3"

# basis order υ00 = K̄, υ10 = Ē, υ01 = \overline{FK}, υ11 = \overline{EF − q²FE}
UQSL2_BRAIDING = {
    (0, 0): {(0, 0): "1"},
    (0, 1): {(1, 0): "q^2"},
    (0, 2): {(2, 0): "q^-2"},
    (0, 3): {(3, 0): "1"},
    (1, 0): {(0, 1): "1", (1, 0): "1 - q^2"},
    (1, 1): {(1, 1): "1"},
    (1, 2): {(2, 1): "1", (3, 0): "1"},
    (1, 3): {(3, 1): "1", (1, 0): "-(q^3 + q)"},
    (2, 0): {(0, 2): "1", (2, 0): "1 - q^-2"},
    (2, 1): {(1, 2): "1", (3, 0): "-1"},
    (2, 2): {(2, 2): "1"},
    (2, 3): {(3, 2): "1", (2, 0): "q + q^-1"},
    (3, 0): {(0, 3): "1", (3, 0): A, (2, 1): A, (1, 2): f"-({A})"},
    (3, 1): {(1, 3): "q^-2", (3, 1): "1 - q^-2", (1, 0): "q + q^-1"},
    (3, 2): {(2, 3): "q^2", (3, 2): "1 - q^2", (2, 0): "-(q^3 + q)"},
    (3, 3): {(3, 3): "1", (3, 0): B, (2, 1): B, (1, 2): f"-({B})"},
}

# (1, 3), (2, 3), (3, 3) and (3, 2) are recomputed from the defining relations and differ from the
# commonly quoted table, which also has υ11 in place of υ01 in [υ11, υ01]. At q = 1 they give sl2.
UQSL2_BRACKET = {
    (0, 0): {},
    (0, 1): {(1,): "q^2 - 1"},
    (0, 2): {(2,): "q^-2 - 1"},
    (0, 3): {},
    (1, 0): {(1,): "1 - q^2"},
    (1, 1): {},
    (1, 2): {(3,): "1"},
    (1, 3): {(1,): "-(q + q^3)"},
    (2, 0): {(2,): "1 - q^-2"},
    (2, 1): {(3,): "-1"},
    (2, 2): {},
    (2, 3): {(2,): "q + q^-1"},
    (3, 0): {(3,): A},
    (3, 1): {(1,): "q + q^-1"},
    (3, 2): {(2,): "-(q + q^3)"},
    (3, 3): {(3,): B},
}


@pytest.fixture(scope="module")
def uqsl2():
    return uq_sl2(6)


@pytest.fixture(scope="module")
def uqsl2_qlie(uqsl2):
    labels, basis = standard_basis(uqsl2, ["K"])
    return build_qlie(uqsl2, basis, labels)


def _parsed(table, field):
    return {pair: {key: parse_scalar(c, field) for key, c in image.items()} for pair, image in table.items()}


def test_uqsl2_module_of_K(uqsl2):
    result = generate_yd_submodule(uqsl2, [uqsl2.resolve("K")])
    assert result.certificate.complete
    assert result.dim == 4
    _, basis = standard_basis(uqsl2, ["K"])
    assert all(result.contains(uqsl2.bar(v)) for v in basis)


def test_uqsl2_braiding_table(uqsl2_qlie):
    Q = uqsl2_qlie
    assert Q.skipped == []
    expected = _parsed(UQSL2_BRAIDING, Q.field)
    for pair, image in expected.items():
        assert Q.tau(*pair) == image, Q.labels[pair[0]] + "⊗" + Q.labels[pair[1]]


def test_uqsl2_bracket_table(uqsl2_qlie):
    Q = uqsl2_qlie
    expected = _parsed(UQSL2_BRACKET, Q.field)
    for pair, image in expected.items():
        assert Q.br(*pair) == image, f"[{Q.labels[pair[0]]},{Q.labels[pair[1]]}]"


def test_uqsl2_identities_hold(uqsl2_qlie):
    report = certify_identities(uqsl2_qlie)
    assert report.ok, report.violations[:3]
    assert report.skipped == 0
    assert report.checked >= 4 * 4**3


def test_doubled_bracket_breaks_jacobi(uqsl2_qlie):
    Q = uqsl2_qlie
    broken = build_qlie(Q.hopf, Q.basis, Q.labels)
    broken.bracket[(1, 2)] = {(3,): 2 * Q.field.one}
    report = certify_identities(broken)
    assert not report.ok
    assert "Jacobi" in {v.axiom for v in report.violations}


def test_uqsl2_classical_limit(uqsl2_qlie):
    L = classical_limit(uqsl2_qlie, 1, ["υ00"])
    assert L.labels == ["υ10", "υ01", "υ11"]
    assert L.is_flip()
    two = L.field(2)
    assert L.bracket[(0, 1)] == {(2,): L.field.one}
    assert L.bracket[(2, 0)] == {(0,): two}
    assert L.bracket[(2, 1)] == {(1,): -two}
    assert L.bracket[(0, 2)] == {(0,): -two}
    assert L.bracket[(2, 2)] == {}
    assert L.to_dict()["flip"] is True


def test_classical_limit_errors(uqsl2_qlie, sweedler):
    with pytest.raises(InputError):
        classical_limit(uqsl2_qlie, 1, ["w"])
    basis = generate_yd_submodule(sweedler, [parse_element(sweedler, "g")]).basis()
    with pytest.raises(InputError):
        classical_limit(build_qlie(sweedler, basis), 1)


def test_uqsl2_module_of_K_squared(uqsl2):
    result = generate_yd_submodule(uqsl2, [uqsl2.resolve("K^2")])
    assert result.certificate.complete
    assert result.dim == 9


def test_build_qlie_rejects_bad_bases(uqsl2):
    K, E = uqsl2.resolve("K"), uqsl2.resolve("E")
    with pytest.raises(NotClosedError):
        build_qlie(uqsl2, [K, E])
    with pytest.raises(InputError):
        build_qlie(uqsl2, [uqsl2.unit()])
    _, basis = standard_basis(uqsl2, ["K"])
    with pytest.raises(InputError):
        build_qlie(uqsl2, basis, ["a", "b"])
    with pytest.raises(InputError):
        build_qlie(uqsl2, basis + [K], check_closed=False)


def test_standard_basis_lookup(uqsl2):
    assert standard_basis(uqsl2, ["E"]) is None
    assert standard_basis(uqsl2, ["K", "E"]) is None
    labels, _ = standard_basis(uqsl2, ["K"])
    assert labels == ["υ00", "υ10", "υ01", "υ11"]


def test_sweedler_left_and_right_qlie(sweedler):
    left = generate_yd_submodule(sweedler, [parse_element(sweedler, "g")])
    Q = build_qlie(sweedler, left.basis(), ["a", "b"])
    assert certify_identities(Q).ok
    right = generate_yd_submodule(sweedler, [parse_element(sweedler, "g")], side="right")
    assert right.dim == 2
    assert right.contains(parse_element(sweedler, "X"))
    R = build_qlie(sweedler, right.basis(), side="right")
    report = certify_identities(R)
    assert report.ok, report.violations[:3]
    assert "mirror" in report.structure
    data = Q.to_dict()
    assert data["side"] == "left" and len(data["braiding"]) == 4


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_uq_bplus_inverse_powers(n):
    H = uq_bplus(6)
    result = generate_yd_submodule(H, [H.resolve(f"g^-{n}")])
    assert result.certificate.complete
    assert result.dim == n + 1


@pytest.mark.parametrize("generator", ["g^2", "X", "X^2*g^-1"])
def test_uq_bplus_truncation_limited(generator):
    H = uq_bplus(6)
    result = generate_yd_submodule(H, [H.resolve(generator)])
    assert result.certificate.status == "TruncationLimited"
    assert result.certificate.bound == 6


def test_slq2_covariant_comodules():
    H = slq2(4)
    bar = lambda s: H.bar(parse_element(H, s))
    x = right_covariant_comodule(H, [bar("x")])
    assert x.dim == 2 and x.contains(bar("v"))
    y = right_covariant_comodule(H, [bar("y")])
    assert y.dim == 2 and y.contains(bar("u"))
    for gen in ("x^2", "y^2", "x*y"):
        assert right_covariant_comodule(H, [bar(gen)]).dim == 3, gen


@pytest.mark.slow
@pytest.mark.parametrize("generator", ["x", "y", "x*y"])
def test_slq2_bicovariant_generation_grows_with_bound(generator):
    dims = []
    for bound in (3, 4, 5):
        H = slq2(bound)
        result = generate_yd_submodule(H, [parse_element(H, generator)])
        assert result.certificate.status == "TruncationLimited"
        dims.append(result.dim)
    assert dims[0] < dims[1] < dims[2]


@pytest.mark.slow
def test_kappa_module_of_pi0():
    H = kappa_poincare(4)
    labels, basis = standard_basis(H, ["Pi0"])
    result = generate_yd_submodule(H, [H.resolve("Pi0")])
    assert result.certificate.complete
    assert result.dim == 5
    assert all(result.contains(H.bar(v)) for v in basis)
    assert labels[-1] == "Cκ"


@pytest.mark.slow
def test_kappa_module_of_pi0_tables():
    H = kappa_poincare(4)
    f = H.field
    i, kap = f.imag_unit(), f.gen()
    _, (u0, u1, u2, u3, uC) = standard_basis(H, ["Pi0"])
    u = {1: u1, 2: u2, 3: u3}

    def comb(*terms):
        out: dict = {}
        for c, v in terms:
            add_into(out, v, c)
        return H.bar(out)

    def tensor(*pairs):
        out: dict = {}
        for x, v in pairs:
            for p, c in x.items():
                for k, d in H.bar(v).items():
                    add_term(out, (p, k), c * d)
        return out

    def el(text):
        return parse_element(H, text)

    for j in (1, 2, 3):
        M, N = H.resolve(f"M{j}"), H.resolve(f"N{j}")
        assert ad_left(H, M, u0) == {}
        assert ad_left(H, N, u0) == comb((-i / kap, u[j]))
        for k in (1, 2, 3):
            assert ad_left(H, M, u[k]) == comb(*((i * int(LeviCivita(j, k, l)), u[l]) for l in (1, 2, 3)))
            expected = comb((i / (2 * kap), uC), (-i * kap, u0)) if j == k else {}
            assert ad_left(H, N, u[k]) == expected

    assert coaction_left(H, u0) == tensor((el("Pi0"), u0))
    for k in (1, 2, 3):
        assert coaction_left(H, u[k]) == tensor((H.unit(), u[k]), (el(f"P{k}"), u0))
    assert coaction_left(H, uC) == tensor(
        (el("Pi0^-1"), uC),
        (el("kappa^2*Pi0 - kappa^2*Pi0^-1 - P1^2*Pi0^-1 - P2^2*Pi0^-1 - P3^2*Pi0^-1"), u0),
        *((el(f"-2*P{k}*Pi0^-1"), u[k]) for k in (1, 2, 3)),
    )


@pytest.mark.slow
def test_kappa_module_of_pi0_squared_is_large():
    H = kappa_poincare(5)
    result = generate_yd_submodule(H, [H.resolve("Pi0^2")])
    assert result.dim >= 14


def test_cocommutative_left_and_right_agree():
    H = b_plus(4)
    one = H.field.one
    gen = [H.resolve("H")]
    left = generate_yd_submodule(H, gen)
    right = generate_yd_submodule(H, gen, side="right")
    assert left.certificate.complete and right.certificate.complete
    assert left.dim == right.dim == 2
    assert all(right.contains(v) for v in left.basis())
    basis = [H.resolve("H"), H.resolve("E")]
    assert bracket(H, basis)[(0, 1)] == {(1,): one}
    assert bracket_right(H, basis)[(0, 1)] == {(1,): one}
    assert braiding(H, basis)[(0, 1)] == {(1, 0): one}
    assert braiding_right(H, basis)[(0, 1)] == {(1, 0): one}
