import numpy as np
import pytest

from app.bicomodule import (
    build_universal,
    check_coderivation,
    check_functoriality,
    cocommutator,
    decompose_bicomodule,
    delta_image,
    divided_power_conjecture,
    divided_power_vector,
    escapes_kernel,
    find_cointegral,
    flip_class,
    form_vector,
    generate_subbicomodule,
    hat_delta,
    internal_on_C,
    is_simple_probe,
    is_subbicomodule,
    probe_vectors,
    regular_bicomodule,
    simple_decomposition,
    tensor_bicomodule,
    tensor_map,
    validate_bicomodule,
)
from app.coalgebra import convolution, direct_sum, morphism
from app.errors import InputError, NotClosedError, ZeroGeneratorError
from app.linalg import Subspace, identity, kernel, matmul, matvec, rank
from app.presentations import cv_coalgebra, divided_power_coalgebra, set_coalgebra, trivial_hopf
from app.utils import vsum

SAMPLES = (0, 1, 2, -1)


def cls(U, left, right):
    C = U.coalgebra
    return U.cls(C.index(left), C.index(right))


def span(U, *vectors):
    return Subspace.from_vectors([U.dense(v) for v in vectors], U.dim, U.field)


def combo(U, *terms):
    """Σ c·[a⊗b] for terms (c, a, b)."""
    out = {}
    for c, a, b in terms:
        for k, s in cls(U, a, b).items():
            out[k] = out.get(k, U.field.zero) + U.field(c) * s
    return {k: s for k, s in out.items() if s}


@pytest.mark.parametrize(
    "C",
    [
        pytest.param(trivial_hopf().coalgebra, id="trivial"),
        pytest.param(cv_coalgebra(2), id="cv2"),
        pytest.param(set_coalgebra(3), id="set3"),
        pytest.param(divided_power_coalgebra(3), id="divided-power"),
    ],
)
def test_universal_dimensions(C):
    U = build_universal(C)
    n = C.n
    assert U.dim == n * (n - 1)
    assert U.kernel_of_delta().dim == (n - 1) ** 2
    assert validate_bicomodule(U.bicomodule).ok


def test_universal_dimensions_sweedler_and_matrix(universal_sweedler, universal_m2x2):
    for U in (universal_sweedler, universal_m2x2):
        assert U.dim == 12
        assert U.kernel_of_delta().dim == 9


def test_set_coalgebra_universal_basis():
    U = build_universal(set_coalgebra(3))
    assert sorted(U.labels) == sorted(f"[p{a}⊗p{b}]" for a in range(3) for b in range(3) if a != b)


def test_universal_coderivation_is_a_focc(universal_sweedler):
    U = universal_sweedler
    delta = U.coderivation()
    assert check_coderivation(delta, U).ok
    assert hat_delta(U, delta) == identity(U.dim, U.field)


def test_image_of_universal_coderivation_is_kernel_of_counit(universal_m2x2):
    U = universal_m2x2
    C = U.coalgebra
    image = delta_image(U, Subspace.whole(U.dim, U.field))
    ker_eps = Subspace.from_vectors(kernel([list(C.counit)], C.n, C.field), C.n, C.field)
    assert image.dim == C.n - 1
    assert image.is_subset(ker_eps)
    assert all(not C.apply_counit(U.delta({k: U.field.one})) for k in range(U.dim))


def test_splittings(universal_m2x2):
    U = universal_m2x2
    C = U.coalgebra
    one = U.field.one
    for k in range(U.dim):
        assert U.project(U.sigma_R({k: one})) == {k: one}
        assert U.project(U.sigma_L({k: one})) == {k: -one}
    for i in range(C.n):
        assert U.r_epsilon(C.delta(i)) == {i: one}


def test_sigma_R_fixes_counit_free_left_legs(universal_sweedler):
    U = universal_sweedler
    v = cls(U, "X", "Xg")
    assert U.sigma_R(v) == U.section(v)


def test_regular_and_tensor_bicomodules_validate(m2x2, sweedler_coalg):
    for C in (m2x2, sweedler_coalg):
        assert validate_bicomodule(regular_bicomodule(C)).ok
        assert validate_bicomodule(tensor_bicomodule(C)).ok


def test_internal_coderivations(m2x2):
    f = m2x2.field
    eps = list(m2x2.counit)
    assert all(not c for r in internal_on_C(m2x2, eps).rows() for c in r)
    cv = cv_coalgebra(2)
    alpha = [cv.field(c) for c in (3, -1, 2)]
    assert all(not c for r in internal_on_C(cv, alpha).rows() for c in r)

    alpha = [f(c) for c in (1, 2, -1, 3)]
    beta = [f(c) for c in (0, 5, 1, -2)]
    da, db = internal_on_C(m2x2, alpha), internal_on_C(m2x2, beta)
    assert check_coderivation(da).ok and check_coderivation(db).ok
    ab = matmul(da.rows(), db.rows(), f)
    ba = matmul(db.rows(), da.rows(), f)
    commutator = [[x - y for x, y in zip(r, s)] for r, s in zip(ab, ba)]
    bracket = [x - y for x, y in zip(convolution(m2x2, alpha, beta), convolution(m2x2, beta, alpha))]
    assert commutator == internal_on_C(m2x2, bracket).rows()


def test_m2x2_singleton_generates_four_classes(universal_m2x2):
    U = universal_m2x2
    S = generate_subbicomodule(U.bicomodule, [cls(U, "y", "x")])
    expected = span(U, cls(U, "y", "x"), cls(U, "y", "u"), cls(U, "u", "x"), cls(U, "u", "u"))
    assert S == expected
    assert is_simple_probe(U.bicomodule, S, budget=10).verdict == "Simple"


def test_m2x2_splits_into_three_simple_pieces(universal_m2x2):
    U = universal_m2x2
    pieces = [generate_subbicomodule(U.bicomodule, [cls(U, a, b)]) for a, b in (("x", "x"), ("y", "x"), ("x", "y"))]
    assert [p.dim for p in pieces] == [4, 4, 4]
    total = pieces[0].sum(pieces[1]).sum(pieces[2])
    assert total.dim == 12
    C = U.coalgebra
    f = C.field

    def c_vec(**coeffs):
        return [f(coeffs.get(lab, 0)) for lab in C.labels]

    images = {delta_image(U, p) for p in pieces}
    assert images == {
        Subspace.from_vectors([c_vec(u=1), c_vec(v=1)], 4, f),
        Subspace.from_vectors([c_vec(x=1, y=-1), c_vec(u=1)], 4, f),
        Subspace.from_vectors([c_vec(x=1, y=-1), c_vec(v=1)], 4, f),
    }


def test_m2x2_probes_never_give_image_u(universal_m2x2):
    U = universal_m2x2
    C = U.coalgebra
    only_u = Subspace.from_vectors([[C.field.one if lab == "u" else C.field.zero for lab in C.labels]], C.n, C.field)
    for v in probe_vectors(Subspace.whole(U.dim, U.field), 50, seed=7):
        if any(v):
            assert delta_image(U, generate_subbicomodule(U.bicomodule, [v])) != only_u


def test_simple_decomposition_of_m2x2(universal_m2x2):
    pieces = simple_decomposition(universal_m2x2.bicomodule, budget=20, seed=3)
    assert sorted(p.dim for p in pieces) == [4, 4, 4]


@pytest.mark.parametrize("a, b", [(a, b) for a in SAMPLES for b in SAMPLES if (a, b) != (0, 0)])
def test_sweedler_one_dimensional_family(universal_sweedler, a, b):
    U = universal_sweedler
    v = combo(U, (a, "g", "1"), (b, "X", "1"))
    assert generate_subbicomodule(U.bicomodule, [v]) == span(U, v)


def test_sweedler_two_dimensional(universal_sweedler):
    U = universal_sweedler
    M = U.bicomodule
    assert generate_subbicomodule(M, [cls(U, "1", "X")]) == span(U, cls(U, "1", "X"), cls(U, "1", "g"))
    assert generate_subbicomodule(M, [cls(U, "Xg", "1")]) == span(U, cls(U, "Xg", "1"), cls(U, "g", "1"))


@pytest.mark.parametrize("gamma", [1, 2, -1])
def test_sweedler_three_dimensional_first_family(universal_sweedler, gamma):
    U = universal_sweedler
    v = combo(U, (1, "1", "X"), (U.field(1) / U.field(gamma), "Xg", "1"))
    S = generate_subbicomodule(U.bicomodule, [v])
    assert S == span(U, v, cls(U, "1", "g"), cls(U, "g", "1"))


@pytest.mark.parametrize("a, b", [(a, b) for a in SAMPLES for b in SAMPLES])
def test_sweedler_three_dimensional_second_family(universal_sweedler, a, b):
    U = universal_sweedler
    v = combo(U, (1, "Xg", "X"), (a, "1", "X"), (b, "Xg", "1"))
    S = generate_subbicomodule(U.bicomodule, [v])
    assert S == span(U, v, combo(U, (1, "1", "Xg"), (-a, "1", "g")), combo(U, (1, "X", "1"), (-b, "g", "1")))


@pytest.mark.parametrize("a, b", [(a, b) for a in SAMPLES for b in SAMPLES])
def test_sweedler_four_dimensional_family(universal_sweedler, a, b):
    U = universal_sweedler
    v = combo(U, (1, "X", "X"), (a, "g", "1"), (b, "X", "1"))
    S = generate_subbicomodule(U.bicomodule, [v])
    assert S.dim == 4
    assert S == span(U, v, cls(U, "X", "g"), cls(U, "1", "X"), cls(U, "1", "g"))


def test_sweedler_four_dimensional_is_not_simple(universal_sweedler):
    U = universal_sweedler
    S = generate_subbicomodule(U.bicomodule, [cls(U, "X", "X")])
    verdict = is_simple_probe(U.bicomodule, S, budget=5)
    assert verdict.verdict == "HasProperSub"
    assert verdict.witness.dim < 4
    assert is_subbicomodule(U.bicomodule, verdict.witness)


def test_sweedler_automorphism_commutes_with_generation(universal_sweedler):
    U = universal_sweedler
    C = U.coalgebra
    f = C.field
    swap = {"1": "g", "g": "1", "X": "Xg", "Xg": "X"}
    rows = [[f.zero] * 4 for _ in range(4)]
    for src, tgt in swap.items():
        rows[C.index(tgt)][C.index(src)] = f.one
    phi = morphism(C, C, rows)
    T = tensor_map(U, phi)
    v = cls(U, "1", "X")
    S = generate_subbicomodule(U.bicomodule, [v])
    image = S.map(T, U.dim)
    moved = {k: c for k, c in enumerate(matvec(T, U.dense(v), f)) if c}
    assert image == generate_subbicomodule(U.bicomodule, [moved])
    assert image.dim == S.dim
    delta = U.coderivation()
    assert check_functoriality(U, phi, delta, delta, T)


def test_generation_sum_rule_and_monotonicity(universal_sweedler):
    U = universal_sweedler
    M = U.bicomodule
    v1, v2 = cls(U, "1", "X"), cls(U, "Xg", "1")
    both = generate_subbicomodule(M, [v1, v2])
    g1, g2 = generate_subbicomodule(M, [v1]), generate_subbicomodule(M, [v2])
    assert both == g1.sum(g2)
    assert g1.is_subset(both)
    mixed = combo(U, (2, "1", "X"), (-3, "Xg", "1"))
    assert generate_subbicomodule(M, [mixed]).is_subset(both)


def test_generation_rejects_zero(universal_sweedler):
    with pytest.raises(ZeroGeneratorError):
        generate_subbicomodule(universal_sweedler.bicomodule, [{}])
    with pytest.raises(InputError):
        is_simple_probe(universal_sweedler.bicomodule, Subspace.zero(12, universal_sweedler.field))
    not_closed = span(universal_sweedler, cls(universal_sweedler, "1", "X"))
    with pytest.raises(NotClosedError):
        is_simple_probe(universal_sweedler.bicomodule, not_closed)


@pytest.mark.parametrize("U_name", ["universal_sweedler", "universal_m2x2"])
def test_kernel_of_delta_has_no_one_sided_subcomodules(request, U_name):
    U = request.getfixturevalue(U_name)
    K = U.kernel_of_delta()
    for v in probe_vectors(K, 100, seed=11):
        if any(v):
            assert escapes_kernel(U, v, "right")
            assert escapes_kernel(U, v, "left")


def test_cocommutator_of_tensor_square_is_image_of_coproduct():
    C = cv_coalgebra(2)
    M = tensor_bicomodule(C)
    nat = cocommutator(M)
    assert nat.dim == C.n
    image = Subspace.from_vectors([[r[i] for r in C.delta_matrix()] for i in range(C.n)], C.n * C.n, C.field)
    assert nat == image


def test_set_coalgebra_has_no_cocommutative_calculi():
    U = build_universal(set_coalgebra(3))
    assert cocommutator(U.bicomodule).dim == 0


def test_divided_power_antisymmetric_vectors():
    U = build_universal(divided_power_coalgebra(5))
    for n in range(1, 6):
        v = divided_power_vector(U, n)
        assert v
        assert vsum([v, flip_class(U, v)]) == {}
    report = divided_power_conjecture(U)
    assert report["contained"]
    assert report["span_dim"] == 5
    with pytest.raises(InputError):
        divided_power_vector(U, 6)


@pytest.mark.parametrize("n, m", [(n, m) for n in (1, 2, 3) for m in (1, 2, 3)])
def test_divided_power_singleton_dimensions(n, m):
    U = build_universal(divided_power_coalgebra(6))
    S = generate_subbicomodule(U.bicomodule, [U.cls(n, m)])
    assert S.dim == n * m + max(n, m)


FORMS = [
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]],
    [[2, 1, 0, 0], [1, 2, 0, 0], [0, 0, 3, 0], [0, 0, 0, 0]],
    [[1, 1, 1, 1], [1, 1, 1, 1], [1, 1, 1, 1], [1, 1, 1, 1]],
    [[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]],
    [[0, 1, 2, 0], [-1, 0, 0, 3], [-2, 0, 0, 1], [0, -3, -1, 0]],
    [[0, 2, 0, 0], [-2, 0, 0, 0], [0, 0, 0, 5], [0, 0, -5, 0]],
]


def random_forms(count, seed, sign):
    """Seeded integer 4x4 forms with w[b][a] == sign * w[a][b]; never zero."""
    rng = np.random.default_rng(seed)
    forms = []
    for _ in range(count):
        upper = np.triu(rng.integers(-2, 3, size=(4, 4)), k=0 if sign == 1 else 1)
        w = upper + sign * np.triu(upper, k=1).T
        if not w.any():
            w[0, 1], w[1, 0] = 1, sign
        forms.append(w.tolist())
    return forms


@pytest.mark.parametrize("omega", FORMS + random_forms(10, 5, 1) + random_forms(10, 6, -1))
def test_cv_forms_generate_one_plus_rank(omega):
    U = build_universal(cv_coalgebra(4))
    f = U.field
    w = [[f(c) for c in r] for r in omega]
    S = generate_subbicomodule(U.bicomodule, [form_vector(U, w)])
    assert S.dim == 1 + rank(w, 4, f)


def test_decompose_regular_bicomodule_is_diagonal():
    C = set_coalgebra(3)
    f = C.field
    summands = [Subspace.from_vectors([[f.one if j == i else f.zero for j in range(3)]], 3, f) for i in range(3)]
    blocks = decompose_bicomodule(regular_bicomodule(C), summands)
    for i, j, S in blocks:
        assert S.dim == (1 if i == j else 0)


def test_decompose_universal_over_direct_sum():
    C, _ = direct_sum([cv_coalgebra(1), cv_coalgebra(1)])
    f = C.field
    U = build_universal(C)
    first = Subspace.from_vectors([[f.one, f.zero, f.zero, f.zero], [f.zero, f.one, f.zero, f.zero]], 4, f)
    second = Subspace.from_vectors([[f.zero, f.zero, f.one, f.zero], [f.zero, f.zero, f.zero, f.one]], 4, f)
    dims = {(i, j): S.dim for i, j, S in decompose_bicomodule(U.bicomodule, [first, second])}
    assert dims == {(0, 0): 2, (1, 1): 2, (0, 1): 4, (1, 0): 4}
    with pytest.raises(InputError):
        decompose_bicomodule(U.bicomodule, [first])


def test_cointegrals(m2x2, sweedler_coalg):
    omega = find_cointegral(m2x2)
    assert omega is not None
    n = m2x2.n
    for i in range(n):
        value = sum((c * omega[j][k] for (j, k), c in m2x2.delta(i).items()), m2x2.field.zero)
        assert value == m2x2.counit[i]
    assert find_cointegral(sweedler_coalg) is None
    trivial = trivial_hopf().coalgebra
    assert find_cointegral(trivial) == [[trivial.field.one]]
