from fractions import Fraction

import numpy as np
import pytest

from app.errors import FieldMismatchError, InputError, PoleError, ScalarParseError
from app.scalar import ScalarField, format_scalar, parse_scalar, specialize, unify_fields

QQ_Q = ScalarField("QQ", "q")
QQ_I = ScalarField("QQ_I")


def rational_functions(count: int, seed: int) -> list:
    """(a0 + a1 q + a2 q²) / (b0 + q) with small rational coefficients and b0 ≥ 1."""
    rng = np.random.default_rng(seed)
    q = QQ_Q.gen()
    out = []
    for _ in range(count):
        a0, a1, a2 = (QQ_Q(Fraction(int(n), int(d))) for n, d in zip(rng.integers(-4, 5, 3), rng.integers(1, 5, 3)))
        b0 = QQ_Q(int(rng.integers(1, 6)))
        out.append((a0 + a1 * q + a2 * q * q) / (b0 + q))
    return out


TRIPLES = list(zip(rational_functions(20, 1), rational_functions(20, 2), rational_functions(20, 3)))


@pytest.mark.parametrize("a, b, c", TRIPLES)
def test_field_axioms_hold_canonically(a, b, c):
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == QQ_Q.zero
    if a:
        assert a * (QQ_Q.one / a) == QQ_Q.one


@pytest.mark.parametrize("a", rational_functions(20, 4))
def test_printed_scalars_parse_back(a):
    assert parse_scalar(format_scalar(a, QQ_Q), QQ_Q) == a


def test_parse_canonicalizes():
    q = QQ_Q.gen()
    assert parse_scalar("(q^2 - 1)/(q - 1)", QQ_Q) == q + QQ_Q.one
    assert parse_scalar("q*q^-1", QQ_Q) == QQ_Q.one
    assert parse_scalar("3/6", ScalarField()) == ScalarField()(Fraction(1, 2))


def test_gaussian_unit():
    i = QQ_I.imag_unit()
    assert i * i == -QQ_I.one
    assert parse_scalar("(1 + i)^2", QQ_I) == QQ_I(2) * i
    assert format_scalar(i, QQ_I) == "i"


@pytest.mark.parametrize(
    "text, field",
    [
        ("1.5", ScalarField()),
        ("1/0", ScalarField()),
        ("q", ScalarField()),
        ("i", ScalarField()),
        ("x + 1", QQ_Q),
        ("", QQ_Q),
        ("q +* 2", QQ_Q),
        ("2 $ 3", QQ_Q),
    ],
)
def test_parse_rejects(text, field):
    with pytest.raises(ScalarParseError):
        parse_scalar(text, field)


def test_parse_errors_are_input_errors():
    with pytest.raises(InputError):
        parse_scalar("1.0", QQ_Q)


def test_bindings_substitute_family_parameters():
    f = ScalarField()
    assert parse_scalar("a^2 + 1", f, {"a": 2}) == f(5)


def test_specialize_removable_singularity():
    s = parse_scalar("(q^2 - 1)/(q - 1)", QQ_Q)
    assert specialize(s, QQ_Q, 1) == ScalarField()(2)


def test_specialize_pole():
    s = parse_scalar("1/(q - 1)", QQ_Q)
    with pytest.raises(PoleError):
        specialize(s, QQ_Q, 1)
    with pytest.raises(ZeroDivisionError):
        specialize(s, QQ_Q, 1)


def test_specialize_needs_parameter():
    with pytest.raises(InputError):
        specialize(ScalarField().one, ScalarField(), 1)


def test_descriptors():
    f = ScalarField.from_descriptor("QQ_I(kappa)")
    assert f.gaussian and f.parameter == "kappa"
    assert f.descriptor == "QQ_I(kappa)"
    assert ScalarField.from_descriptor(" QQ ") == ScalarField()
    with pytest.raises(InputError):
        ScalarField.from_descriptor("RR")
    with pytest.raises(InputError):
        ScalarField("QQ", "t")


def test_unify_fields():
    assert unify_fields(ScalarField(), QQ_Q) == QQ_Q
    assert unify_fields(QQ_I, QQ_Q) == ScalarField("QQ_I", "q")
    with pytest.raises(FieldMismatchError):
        unify_fields(QQ_Q, ScalarField("QQ", "kappa"))
