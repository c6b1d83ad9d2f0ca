"""JSON formats for elements, matrices, Lie algebras and symmetric forms.

Rationals are written as "num/den" strings (or "num" when the denominator is
1); decimal notation is rejected so that every value stays exact.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Any

from .graded import Element, Monomial, indices_to_mask, mask_to_indices
from .lie import LieAlgebraData
from .linalg import RationalMatrix

_RATIONAL = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


class FormatError(ValueError):
    pass


def parse_rational(x: Any) -> Fraction:
    if isinstance(x, bool):
        raise FormatError(f"not a rational: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        m = _RATIONAL.match(x.replace("−", "-"))
        if m:
            num, den = m.groups()
            if den is not None and int(den) == 0:
                raise FormatError(f"zero denominator in {x!r}")
            return Fraction(int(num), int(den) if den else 1)
    raise FormatError(f"not an exact rational (use 'num/den'): {x!r}")


def format_rational(x: Fraction) -> str:
    return str(Fraction(x))


def element_to_json(el: Element) -> dict:
    terms = []
    for m, c in el.sorted_terms():
        I, J = m.indices()
        terms.append({"coeff": format_rational(c), "I": list(I), "J": list(J)})
    return {"terms": terms}


def _subset(value: Any, label: str) -> tuple[int, ...]:
    if not isinstance(value, list) or not all(isinstance(i, int) and not isinstance(i, bool) for i in value):
        raise FormatError(f"{label} must be a list of integers")
    if list(value) != sorted(set(value)):
        raise FormatError(f"{label} must be strictly ascending, got {value}")
    return tuple(value)


def element_from_json(obj: Any) -> Element:
    if not isinstance(obj, dict) or not isinstance(obj.get("terms"), list):
        raise FormatError('element JSON must be an object with a "terms" list')
    out: dict[Monomial, Fraction] = {}
    for k, t in enumerate(obj["terms"]):
        if not isinstance(t, dict):
            raise FormatError(f"term {k} is not an object")
        try:
            I = _subset(t.get("I", []), f"term {k}: I")
            J = _subset(t.get("J", []), f"term {k}: J")
            m = Monomial(indices_to_mask(I), indices_to_mask(J))
        except ValueError as exc:
            raise FormatError(str(exc)) from None
        out[m] = out.get(m, 0) + parse_rational(t.get("coeff"))
    return Element(out)


def matrix_to_json(M: RationalMatrix) -> dict:
    return {"rows": M.rows, "cols": M.cols, "entries": [[r, c, format_rational(v)] for r, c, v in M.entries()]}


def matrix_from_json(obj: Any) -> RationalMatrix:
    try:
        rows, cols = int(obj["rows"]), int(obj["cols"])
        entries = {}
        for r, c, v in obj["entries"]:
            entries[int(r), int(c)] = parse_rational(v)
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad matrix JSON: {exc}") from None
    return RationalMatrix(rows, cols, entries)


def lie_to_json(g: LieAlgebraData) -> dict:
    return {"d": g.d, "c": [[i, j, k, format_rational(v)] for i, j, k, v in g.triples()]}


def lie_from_json(obj: Any, check: bool = True) -> LieAlgebraData:
    try:
        d = int(obj["d"])
        consts = []
        for i, j, k, v in obj["c"]:
            if not int(i) < int(j):
                raise FormatError(f"structure constants must list i < j only, got ({i}, {j})")
            consts.append((int(i), int(j), int(k), parse_rational(v)))
    except (KeyError, TypeError) as exc:
        raise FormatError(f"bad Lie algebra JSON: {exc}") from None
    return LieAlgebraData(d, consts, check=check)


def form_from_json(obj: Any) -> RationalMatrix:
    """A square matrix written as nested arrays of rationals."""
    if isinstance(obj, dict) and "form" in obj:
        obj = obj["form"]
    if not isinstance(obj, list) or not all(isinstance(r, list) for r in obj):
        raise FormatError("form must be a nested array")
    n = len(obj)
    if any(len(r) != n for r in obj):
        raise FormatError("form must be square")
    return RationalMatrix.from_dense([[parse_rational(v) for v in r] for r in obj])


def form_to_json(M: RationalMatrix) -> list:
    return [[format_rational(v) for v in row] for row in M.to_dense()]


def dumps(obj: Any) -> str:
    """Canonical JSON text: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def hom_to_json(entries: dict) -> list:
    return [
        {"src": list(mask_to_indices(s)), "tgt": list(mask_to_indices(t)), "coeff": format_rational(v)}
        for (s, t), v in sorted(entries.items(), key=lambda kv: (mask_to_indices(kv[0][0]), mask_to_indices(kv[0][1])))
    ]
