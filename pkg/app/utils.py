from typing import Any, Callable, Hashable, Iterable, Mapping, Optional

from .errors import InputError

# Sparse vectors are plain dicts {basis key: nonzero field element}.
Vector = dict


def add_into(acc: dict, vec: Mapping, coeff: Any = None) -> dict:
    """acc += coeff * vec, dropping entries that cancel."""
    for k, c in vec.items():
        if coeff is not None:
            c = coeff * c
        if not c:
            continue
        s = acc.get(k)
        s = c if s is None else s + c
        if s:
            acc[k] = s
        else:
            acc.pop(k, None)
    return acc


def add_term(acc: dict, key: Hashable, c: Any) -> dict:
    if not c:
        return acc
    s = acc.get(key)
    s = c if s is None else s + c
    if s:
        acc[key] = s
    else:
        acc.pop(key, None)
    return acc


def scale(vec: Mapping, c: Any) -> dict:
    if not c:
        return {}
    return {k: c * v for k, v in vec.items() if c * v}


def vsum(vectors: Iterable[Mapping]) -> dict:
    out: dict = {}
    for v in vectors:
        add_into(out, v)
    return out


def vsub(a: Mapping, b: Mapping) -> dict:
    out = dict(a)
    for k, c in b.items():
        add_term(out, k, -c)
    return out


def clean(vec: Mapping) -> dict:
    return {k: c for k, c in vec.items() if c}


def to_dense(vec: Mapping, index: Mapping[Hashable, int], n: int, zero: Any) -> list:
    row = [zero] * n
    for k, c in vec.items():
        row[index[k]] = c
    return row


def from_dense(row: Iterable, keys: Optional[list] = None) -> dict:
    out = {}
    for i, c in enumerate(row):
        if c:
            out[keys[i] if keys is not None else i] = c
    return out


def split_terms(text: str) -> list[tuple[int, str]]:
    """Split a vector expression into signed terms at top-level + and -.

    A sign directly after ``^``, ``*``, ``/`` or ``(`` belongs to the operand,
    so ``K^-1`` and ``2*-x`` stay whole.
    """
    terms: list[tuple[int, str]] = []
    depth = 0
    sign = 1
    buf: list[str] = []
    prev = ""
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
            if depth < 0:
                raise InputError(f"unbalanced brackets in {text!r}")
        if depth == 0 and ch in "+-" and prev not in ("^", "*", "/", "(", "["):
            body = "".join(buf).strip()
            if body:
                terms.append((sign, body))
                sign = 1 if ch == "+" else -1
            else:
                sign = sign * (1 if ch == "+" else -1)
            buf = []
            prev = ch
            continue
        buf.append(ch)
        if not ch.isspace():
            prev = ch
    if depth != 0:
        raise InputError(f"unbalanced brackets in {text!r}")
    body = "".join(buf).strip()
    if body:
        terms.append((sign, body))
    elif text.rstrip()[-1:] in ("+", "-"):
        raise InputError(f"dangling sign in {text!r}")
    return terms


def split_factors(term: str) -> list[str]:
    factors, depth, buf = [], 0, []
    for ch in term:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == "*" and depth == 0:
            factors.append("".join(buf).strip())
            buf = []
            continue
        buf.append(ch)
    factors.append("".join(buf).strip())
    if any(not f for f in factors):
        raise InputError(f"empty factor in {term!r}")
    return factors


def parse_vector(
    text: str,
    resolve: Callable[[str], Optional[dict]],
    parse_coeff: Callable[[str], Any],
    one: Any,
) -> dict:
    """Parse ``coeff*label + ...`` into a sparse vector.

    ``resolve`` maps a label (or bracketed tensor) to a sparse vector, or None
    when it does not name one. The coefficient of a term is the shortest
    prefix of ``*``-factors whose remainder resolves.
    """
    if text is None or not text.strip():
        raise InputError("empty vector expression")
    if text.strip() == "0":
        return {}
    out: dict = {}
    for sign, term in split_terms(text):
        factors = split_factors(term)
        vec = None
        for k in range(len(factors)):
            vec = resolve("*".join(factors[k:]))
            if vec is not None:
                coeff = parse_coeff("*".join(factors[:k])) if k else one
                break
        if vec is None:
            raise InputError(f"unknown label in term {term!r}")
        if sign < 0:
            coeff = -coeff
        add_into(out, vec, coeff)
    return out
