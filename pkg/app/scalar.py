"""Exact scalar fields.

Every computation runs over one of four kinds of field, all backed by sympy
polynomial domains so that elements are always kept in canonical form:

    QQ            rationals
    QQ_I          Gaussian rationals
    QQ(t)         rational functions in one parameter t over QQ
    QQ_I(t)       rational functions in one parameter t over QQ_I

The parameter t is one of ``q``, ``Q`` or ``kappa``. Elements are the domain's
own element type (hashable, immutable); a ``ScalarField`` knows how to build,
parse, print and specialize them.
"""
from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from typing import Any, Mapping, Optional

import sympy as sp
from sympy.parsing.sympy_parser import parse_expr
from sympy.polys.domains import QQ, QQ_I
from sympy.polys.polyerrors import CoercionFailed
from tokenize import TokenError

from .errors import FieldMismatchError, InputError, PoleError, ScalarParseError

logger = logging.getLogger("codiff.scalar")

PARAMETERS = ("q", "Q", "kappa")
_BASES = {"QQ": QQ, "QQ_I": QQ_I}

_DESCRIPTOR_RE = re.compile(r"^\s*(QQ_I|QQ)\s*(?:\(\s*([A-Za-z]+)\s*\))?\s*$")
_IDENT_RE = re.compile(r"[A-Za-z_]\w*")
_ALLOWED_RE = re.compile(r"^[0-9A-Za-z_+\-*/^()\s]*$")


@dataclass(frozen=True)
class ScalarField:
    base: str = "QQ"
    parameter: Optional[str] = None

    def __post_init__(self):
        if self.base not in _BASES:
            raise InputError(f"unknown base field {self.base!r}")
        if self.parameter is not None and self.parameter not in PARAMETERS:
            raise InputError(f"unsupported parameter {self.parameter!r}; expected one of {PARAMETERS}")

    @classmethod
    def from_descriptor(cls, text: str) -> "ScalarField":
        m = _DESCRIPTOR_RE.match(text or "")
        if not m:
            raise InputError(f"bad field descriptor {text!r}")
        return cls(m.group(1), m.group(2))

    @property
    def descriptor(self) -> str:
        return f"{self.base}({self.parameter})" if self.parameter else self.base

    def __str__(self) -> str:
        return self.descriptor

    @property
    def gaussian(self) -> bool:
        return self.base == "QQ_I"

    @cached_property
    def symbol(self) -> Optional[sp.Symbol]:
        return sp.Symbol(self.parameter) if self.parameter else None

    @cached_property
    def ground(self):
        return _BASES[self.base]

    @cached_property
    def domain(self):
        if self.parameter is None:
            return self.ground
        return self.ground.frac_field(self.symbol)

    @property
    def zero(self):
        return self.domain.zero

    @property
    def one(self):
        return self.domain.one

    def gen(self):
        """The parameter itself as a field element."""
        if self.symbol is None:
            raise InputError(f"field {self} has no parameter")
        return self.domain.from_sympy(self.symbol)

    def imag_unit(self):
        if not self.gaussian:
            raise InputError(f"field {self} does not contain i")
        return self.from_sympy(sp.I)

    def __call__(self, value: Any):
        """Coerce ints, Fractions, strings or elements of a subfield."""
        if isinstance(value, str):
            return parse_scalar(value, self)
        if isinstance(value, bool):
            value = int(value)
        if isinstance(value, int):
            return self.domain.convert(value)
        if isinstance(value, Fraction):
            return self.domain.convert(QQ(value.numerator, value.denominator))
        try:
            return self.domain.convert(value)
        except (CoercionFailed, TypeError):
            return self.from_sympy(_to_sympy_any(value))

    def from_sympy(self, expr):
        expr = sp.sympify(expr)
        try:
            if self.parameter is None:
                if self.gaussian:
                    re_part, im_part = sp.expand(expr).as_real_imag()
                    return self.domain.new(QQ.from_sympy(sp.nsimplify(re_part)), QQ.from_sympy(sp.nsimplify(im_part)))
                return self.domain.from_sympy(expr)
            return self.domain.from_sympy(expr)
        except (CoercionFailed, ValueError, TypeError) as exc:
            raise ScalarParseError(f"{expr} is not an element of {self}") from exc

    def to_sympy(self, a):
        return self.domain.to_sympy(a)

    def format(self, a) -> str:
        return format_scalar(a, self)

    def is_zero(self, a) -> bool:
        return not a


def _to_sympy_any(value):
    for dom in (QQ, QQ_I):
        try:
            return dom.to_sympy(value)
        except Exception:  # noqa: BLE001 - probing domains
            continue
    if hasattr(value, "as_expr"):
        return value.as_expr()
    return sp.sympify(value)


def field_from_descriptor(text: str) -> ScalarField:
    return ScalarField.from_descriptor(text)


def unify_fields(a: ScalarField, b: ScalarField) -> ScalarField:
    if a.parameter and b.parameter and a.parameter != b.parameter:
        raise FieldMismatchError(f"cannot combine {a} and {b}")
    base = "QQ_I" if (a.gaussian or b.gaussian) else "QQ"
    return ScalarField(base, a.parameter or b.parameter)


def parse_scalar(text: str, field: ScalarField, bindings: Optional[Mapping[str, Any]] = None):
    """Parse ``text`` in the scalar grammar into a canonical element of ``field``.

    ``bindings`` maps extra identifiers (family parameters such as ``a``) to
    values; they are substituted before conversion.
    """
    if text is None or not str(text).strip():
        raise ScalarParseError("empty scalar")
    text = str(text)
    if not _ALLOWED_RE.match(text):
        raise ScalarParseError(f"unexpected character in scalar {text!r}")
    bindings = dict(bindings or {})

    local: dict[str, Any] = {}
    for name in set(_IDENT_RE.findall(text)):
        if name in bindings:
            local[name] = sp.sympify(field.to_sympy(field(bindings[name])))
        elif name == "i":
            if not field.gaussian:
                raise ScalarParseError(f"'i' is not in field {field}")
            local[name] = sp.I
        elif name == field.parameter:
            local[name] = field.symbol
        else:
            raise ScalarParseError(f"unexpected symbol {name!r} in {text!r} for field {field}")

    try:
        expr = parse_expr(text.replace("^", "**"), local_dict=local, evaluate=True)
    except (SyntaxError, TokenError, TypeError, ValueError, AttributeError) as exc:
        raise ScalarParseError(f"cannot parse scalar {text!r}") from exc
    except ZeroDivisionError as exc:
        raise ScalarParseError(f"division by zero in {text!r}") from exc

    if expr.has(sp.zoo, sp.nan, sp.oo, -sp.oo):
        raise ScalarParseError(f"division by zero in {text!r}")
    if expr.has(sp.Float):
        raise ScalarParseError(f"floating point literal in {text!r}")
    return field.from_sympy(expr)


def format_scalar(a, field: ScalarField) -> str:
    expr = field.to_sympy(a)
    return str(expr).replace("**", "^").replace("I", "i")


def specialize(s, field: ScalarField, value) -> Any:
    """Substitute the parameter of ``field`` by ``value`` (an element of the base field).

    Elements are stored cancelled, so removable singularities disappear before
    substitution; a vanishing denominator is a genuine pole.
    """
    if field.parameter is None:
        raise InputError(f"field {field} has no parameter to specialize")
    base = ScalarField(field.base)
    value = base(value)
    value_expr = base.to_sympy(value)
    numer = s.numer.as_expr()
    denom = s.denom.as_expr()
    d = sp.expand(denom.subs(field.symbol, value_expr))
    if d == 0:
        raise PoleError(f"{format_scalar(s, field)} has a pole at {field.parameter}={format_scalar(value, base)}")
    n = sp.expand(numer.subs(field.symbol, value_expr))
    return base.from_sympy(n / d)
