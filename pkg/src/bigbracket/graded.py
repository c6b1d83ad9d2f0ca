"""Basis, grading and graded-commutative product for H = S(W), W = (V + V*)[-1].

A basis monomial e_I f_J is stored as a pair of bitmasks: bit ``i - 1`` of
``I`` is set when e_i occurs, likewise for ``J`` and f_j.  Every generator has
degree 1, and the normal order is all e's ascending followed by all f's
ascending.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterable, Iterator, Mapping, NamedTuple

MAX_DIM = 6


def popcount(x: int) -> int:
    return bin(x).count("1")


def mask_to_indices(mask: int) -> tuple[int, ...]:
    """Ascending 1-based indices of the set bits of ``mask``."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def indices_to_mask(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        if i < 1:
            raise ValueError(f"indices are 1-based, got {i}")
        bit = 1 << (i - 1)
        if mask & bit:
            raise ValueError(f"repeated index {i}")
        mask |= bit
    return mask


def inversions(a: int, b: int) -> int:
    """Number of pairs (x in a, y in b) with x > y, for bitmasks a and b."""
    n = 0
    while b:
        low = b & -b
        # bits of a strictly above this bit of b
        n += popcount(a & ~((low << 1) - 1))
        b ^= low
    return n


def check_dim(d: int, max_dim: int = MAX_DIM) -> int:
    if not isinstance(d, int) or d < 1 or d > max_dim:
        raise ValueError(f"dimension must be an integer in [1, {max_dim}], got {d!r}")
    return d


class Monomial(NamedTuple):
    I: int
    J: int

    @classmethod
    def from_indices(cls, I: Iterable[int] = (), J: Iterable[int] = ()) -> "Monomial":
        return cls(indices_to_mask(I), indices_to_mask(J))

    @property
    def degree(self) -> int:
        return popcount(self.I) + popcount(self.J)

    @property
    def bidegree(self) -> tuple[int, int]:
        return popcount(self.I), popcount(self.J)

    def indices(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return mask_to_indices(self.I), mask_to_indices(self.J)

    def generators(self) -> tuple[tuple[str, int], ...]:
        """The generators in normal order, e.g. (('e', 1), ('f', 2))."""
        I, J = self.indices()
        return tuple(("e", i) for i in I) + tuple(("f", j) for j in J)

    def sort_key(self) -> tuple:
        """Lexicographic on the normal-ordered word, with e < f."""
        return self.generators()

    def __str__(self) -> str:
        gens = self.generators()
        if not gens:
            return "1"
        return "".join(f"{k}{i}" for k, i in gens)


UNIT = Monomial(0, 0)


def monomial_product(a: Monomial, b: Monomial) -> tuple[int, Monomial | None]:
    """Product of two basis monomials as (sign, monomial); (0, None) if it vanishes."""
    if a.I & b.I or a.J & b.J:
        return 0, None
    # e_{I1} f_{J1} e_{I2} f_{J2}: move e_{I2} left past f_{J1}, then merge
    n = popcount(a.J) * popcount(b.I) + inversions(a.I, b.I) + inversions(a.J, b.J)
    return (-1 if n & 1 else 1), Monomial(a.I | b.I, a.J | b.J)


def koszul_sign(src: Iterable, dst: Iterable) -> int:
    """Sign of reordering odd generators ``src`` into ``dst``.

    All generators have degree 1, so this is the parity of the permutation.
    """
    src = list(src)
    dst = list(dst)
    if len(set(src)) != len(src):
        raise ValueError("generator sequence has repeats")
    if sorted(src) != sorted(dst):
        raise ValueError("dst is not a permutation of src")
    pos = {g: k for k, g in enumerate(src)}
    perm = [pos[g] for g in dst]
    n = sum(1 for x, y in combinations(perm, 2) if x > y)
    return -1 if n & 1 else 1


def enumerate_basis(d: int, n: int) -> list[Monomial]:
    """All monomials of degree ``n``, in lexicographic order of their words (e < f)."""
    if n < 0 or n > 2 * d:
        return []
    out = []
    for p in range(max(0, n - d), min(d, n) + 1):
        for I in combinations(range(1, d + 1), p):
            for J in combinations(range(1, d + 1), n - p):
                out.append(Monomial.from_indices(I, J))
    out.sort(key=Monomial.sort_key)
    return out


def full_basis(d: int) -> list[Monomial]:
    return [m for n in range(2 * d + 1) for m in enumerate_basis(d, n)]


def dim_by_degree(d: int, n: int) -> int:
    return sum(comb(d, p) * comb(d, n - p) for p in range(0, n + 1))


def _fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floating point coefficients are not allowed")
    return Fraction(x)


class Element:
    """A finite rational combination of monomials.

    Instances are treated as immutable; arithmetic returns new elements.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, object] | None = None):
        clean = {}
        if terms:
            for m, c in terms.items():
                c = _fraction(c)
                if c:
                    clean[Monomial(*m)] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "Element":
        el = cls.__new__(cls)
        el._terms = terms
        el._hash = None
        return el

    @classmethod
    def monomial(cls, I: Iterable[int] = (), J: Iterable[int] = (), coeff=1) -> "Element":
        return cls({Monomial.from_indices(I, J): coeff})

    @classmethod
    def e(cls, i: int) -> "Element":
        return cls.monomial(I=(i,))

    @classmethod
    def f(cls, j: int) -> "Element":
        return cls.monomial(J=(j,))

    @classmethod
    def scalar(cls, c) -> "Element":
        return cls({UNIT: c})

    @property
    def terms(self) -> dict[Monomial, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coeff(self, m: Monomial) -> Fraction:
        return self._terms.get(m, Fraction(0))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def degrees(self) -> set[int]:
        return {m.degree for m in self._terms}

    def degree(self) -> int | None:
        """The common degree of all terms; None for the zero element.

        Raises ValueError when the element is inhomogeneous.
        """
        degs = self.degrees()
        if not degs:
            return None
        if len(degs) > 1:
            raise ValueError(f"element is not homogeneous (degrees {sorted(degs)})")
        return degs.pop()

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def project(self, p: int, q: int) -> "Element":
        """The bidegree (p, q) part."""
        return Element._raw({m: c for m, c in self._terms.items() if m.bidegree == (p, q)})

    def degree_part(self, n: int) -> "Element":
        return Element._raw({m: c for m, c in self._terms.items() if m.degree == n})

    def __eq__(self, other) -> bool:
        if isinstance(other, Element):
            return self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other: "Element") -> "Element":
        if not isinstance(other, Element):
            return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Element._raw(out)

    def __neg__(self) -> "Element":
        return Element._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other: "Element") -> "Element":
        if not isinstance(other, Element):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "Element":
        c = _fraction(c)
        if not c:
            return Element._raw({})
        return Element._raw({m: c * v for m, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, Element):
            return multiply(self, other)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        return sorted(self._terms.items(), key=lambda t: (t[0].degree, t[0].sort_key()))

    def __repr__(self) -> str:
        if not self._terms:
            return "Element(0)"
        parts = []
        for m, c in self.sorted_terms():
            parts.append(f"{c}*{m}" if m != UNIT else str(c))
        return "Element(" + " + ".join(parts) + ")"


ZERO = Element()
ONE = Element.scalar(1)


def accumulate(out: dict, m: Monomial, c) -> None:
    v = out.get(m, 0) + c
    if v:
        out[m] = v
    else:
        out.pop(m, None)


def multiply(a: Element, b: Element) -> Element:
    """Graded-commutative product in S(W)."""
    out: dict[Monomial, Fraction] = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            sign, m = monomial_product(ma, mb)
            if sign:
                accumulate(out, m, sign * ca * cb)
    return Element._raw(out)


def from_vector(vec: Mapping[int, object], basis: list[Monomial]) -> Element:
    return Element({basis[i]: c for i, c in vec.items()})


def to_vector(el: Element, index: Mapping[Monomial, int]) -> dict[int, Fraction]:
    return {index[m]: c for m, c in el.items()}


def iter_monomials(d: int) -> Iterator[Monomial]:
    yield from full_basis(d)
