"""Finite-dimensional Lie algebras given by structure constants."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping

from .graded import Element, Monomial, check_dim, indices_to_mask


class JacobiError(ValueError):
    pass


def _normalize_constants(d: int, c) -> dict[tuple[int, int], dict[int, Fraction]]:
    """Accept {(i, j): {k: c}} or an iterable of (i, j, k, c); keep i < j only."""
    out: dict[tuple[int, int], dict[int, Fraction]] = {}
    items: Iterable
    if isinstance(c, Mapping):
        items = ((i, j, k, v) for (i, j), row in c.items() for k, v in row.items())
    else:
        items = c
    for i, j, k, v in items:
        i, j, k = int(i), int(j), int(k)
        if not all(1 <= x <= d for x in (i, j, k)):
            raise ValueError(f"structure constant index out of range: ({i}, {j}, {k})")
        if i == j:
            raise ValueError(f"[x_{i}, x_{i}] must vanish")
        v = Fraction(v)
        if i > j:
            i, j, v = j, i, -v
        row = out.setdefault((i, j), {})
        row[k] = row.get(k, 0) + v
        if not row[k]:
            del row[k]
    return {key: row for key, row in out.items() if row}


@dataclass(frozen=True)
class LieAlgebraData:
    """Structure constants [x_i, x_j] = sum_k c[i, j][k] x_k (1-based, i < j)."""

    d: int
    c: dict

    def __init__(self, d: int, c=(), check: bool = True):
        check_dim(d)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "c", _normalize_constants(d, c))
        if check:
            jac = jacobiator(self)
            if jac:
                (i, j, k), _ = next(iter(sorted(jac.items())))
                raise JacobiError(f"Jacobi identity fails on (x_{i}, x_{j}, x_{k})")

    def bracket(self, i: int, j: int) -> dict[int, Fraction]:
        """[x_i, x_j] as a sparse vector."""
        if i == j:
            return {}
        if i < j:
            return dict(self.c.get((i, j), {}))
        return {k: -v for k, v in self.c.get((j, i), {}).items()}

    def bracket_vec(self, u: Mapping[int, Fraction], v: Mapping[int, Fraction]) -> dict[int, Fraction]:
        out: dict[int, Fraction] = {}
        for i, a in u.items():
            for j, b in v.items():
                for k, c in self.bracket(i, j).items():
                    out[k] = out.get(k, 0) + a * b * c
        return {k: x for k, x in out.items() if x}

    @property
    def is_abelian(self) -> bool:
        return not self.c

    def triples(self) -> list[tuple[int, int, int, Fraction]]:
        return [(i, j, k, v) for (i, j), row in sorted(self.c.items()) for k, v in sorted(row.items())]


def jacobiator(g: LieAlgebraData) -> dict[tuple[int, int, int], dict[int, Fraction]]:
    """Nonzero values of [[x_i,x_j],x_k] + [[x_j,x_k],x_i] + [[x_k,x_i],x_j], i<j<k."""
    out = {}
    e = lambda i: {i: Fraction(1)}
    for i, j, k in combinations(range(1, g.d + 1), 3):
        acc: dict[int, Fraction] = {}
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            for m, v in g.bracket_vec(g.bracket(a, b), e(c)).items():
                acc[m] = acc.get(m, 0) + v
        acc = {m: v for m, v in acc.items() if v}
        if acc:
            out[i, j, k] = acc
    return out


def satisfies_jacobi(g: LieAlgebraData) -> bool:
    return not jacobiator(g)


def lambda_element(g: LieAlgebraData) -> Element:
    """lambda = sum_{i<j,k} c^k_ij e_k f_i f_j, of bidegree (1, 2)."""
    terms = {}
    for (i, j), row in g.c.items():
        for k, v in row.items():
            terms[Monomial(indices_to_mask([k]), indices_to_mask([i, j]))] = v
    return Element(terms)


def abelian(d: int) -> LieAlgebraData:
    return LieAlgebraData(d, {})


def nonabelian2() -> LieAlgebraData:
    """The 2-dimensional Lie algebra [x1, x2] = x2."""
    return LieAlgebraData(2, [(1, 2, 2, 1)])


def heisenberg3() -> LieAlgebraData:
    """[x1, x2] = x3."""
    return LieAlgebraData(3, [(1, 2, 3, 1)])


def sl2() -> LieAlgebraData:
    """sl_2 with basis (e, h, f) = (x1, x2, x3): [h,e]=2e, [h,f]=-2f, [e,f]=h."""
    return LieAlgebraData(3, [(1, 2, 1, -2), (2, 3, 3, -2), (1, 3, 2, 1)])


BUILTIN_LIE = {
    "abelian1": lambda: abelian(1),
    "abelian2": lambda: abelian(2),
    "abelian3": lambda: abelian(3),
    "nonabelian2": nonabelian2,
    "heisenberg3": heisenberg3,
    "sl2": sl2,
}


def builtin_lie(name: str) -> LieAlgebraData:
    try:
        return BUILTIN_LIE[name]()
    except KeyError:
        raise ValueError(f"unknown Lie algebra {name!r}; choose from {sorted(BUILTIN_LIE)}") from None
