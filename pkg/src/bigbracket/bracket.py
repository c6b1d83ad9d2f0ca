"""The big bracket on H, Maurer-Cartan checks and the deformation complex (H, ad_h).

On generators ``[e_i, f_j] = [f_j, e_i] = delta_ij`` and all other generator
brackets vanish.  The bracket has degree -2, satisfies

    [a, bc] = [a, b] c + (-1)^{(|a| - 2)|b|} b [a, c]
    [a, b]  = -(-1)^{|a||b|} [b, a]

and makes H[2] a graded Lie algebra.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from .graded import (
    UNIT,
    Element,
    Monomial,
    accumulate,
    check_dim,
    full_basis,
    enumerate_basis,
    monomial_product,
    popcount,
)
from .linalg import ChainComplex, RationalMatrix, cohomology_dims

BracketFn = Callable[[Element, Element], Element]


# -- Leibniz recursion ------------------------------------------------------


def _first_generator(m: Monomial) -> tuple[Monomial, Monomial]:
    """Split m = x * rest with x the first generator in normal order."""
    if m.I:
        low = m.I & -m.I
        return Monomial(low, 0), Monomial(m.I ^ low, m.J)
    low = m.J & -m.J
    return Monomial(0, low), Monomial(0, m.J ^ low)


def _mul_into(out: dict, left: dict, right: dict, c: Fraction) -> None:
    for ma, ca in left.items():
        for mb, cb in right.items():
            s, m = monomial_product(ma, mb)
            if s:
                accumulate(out, m, s * c * ca * cb)


@lru_cache(maxsize=None)
def _bracket_monomials(a: Monomial, b: Monomial) -> tuple:
    """[a, b] for basis monomials, as a tuple of (monomial, coeff) pairs."""
    if a == UNIT or b == UNIT:
        return ()
    da, db = a.degree, b.degree
    out: dict = {}
    if da == 1 and db == 1:
        if (a.I and a.I == b.J) or (a.J and a.J == b.I):
            return ((UNIT, Fraction(1)),)
        return ()
    if da == 1:
        # [x, y R] = [x, y] R - y [x, R]
        y, rest = _first_generator(b)
        xy = dict(_bracket_monomials(a, y))
        if xy:
            _mul_into(out, xy, {rest: Fraction(1)}, Fraction(1))
        xr = dict(_bracket_monomials(a, rest))
        if xr:
            _mul_into(out, {y: Fraction(1)}, xr, Fraction(-1))
        return tuple(out.items())
    # [x L, G] = x [L, G] + (-1)^{|L||G|} [x, G] L
    x, rest = _first_generator(a)
    lg = dict(_bracket_monomials(rest, b))
    if lg:
        _mul_into(out, {x: Fraction(1)}, lg, Fraction(1))
    xg = dict(_bracket_monomials(x, b))
    if xg:
        sign = -1 if (rest.degree * db) & 1 else 1
        _mul_into(out, xg, {rest: Fraction(1)}, Fraction(sign))
    return tuple(out.items())


def bracket(a: Element, b: Element, scale=1) -> Element:
    """The big bracket [a, b].

    ``scale`` rescales the pairing of V with V*; every bracket value is then
    multiplied by the same factor.
    """
    out: dict = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            for m, c in _bracket_monomials(ma, mb):
                accumulate(out, m, c * ca * cb)
    el = Element._raw(out)
    return el if scale == 1 else el.scale(scale)


# -- derivative oracle ------------------------------------------------------


def _left_derivative(m: Monomial, gen: Monomial) -> tuple[int, Monomial | None]:
    """d/dx acting from the left: move x to the front, then drop it."""
    if gen.I:
        if not m.I & gen.I:
            return 0, None
        before = popcount(m.I & (gen.I - 1))
        return (-1 if before & 1 else 1), Monomial(m.I ^ gen.I, m.J)
    if not m.J & gen.J:
        return 0, None
    before = popcount(m.I) + popcount(m.J & (gen.J - 1))
    return (-1 if before & 1 else 1), Monomial(m.I, m.J ^ gen.J)


def _right_derivative(m: Monomial, gen: Monomial) -> tuple[int, Monomial | None]:
    """d/dx acting from the right: move x to the back, then drop it."""
    if gen.I:
        if not m.I & gen.I:
            return 0, None
        after = popcount(m.I & ~((gen.I << 1) - 1)) + popcount(m.J)
        return (-1 if after & 1 else 1), Monomial(m.I ^ gen.I, m.J)
    if not m.J & gen.J:
        return 0, None
    after = popcount(m.J & ~((gen.J << 1) - 1))
    return (-1 if after & 1 else 1), Monomial(m.I, m.J ^ gen.J)


def bracket_oracle(a: Element, b: Element) -> Element:
    """Independent evaluation of [a, b] as a bi-derivation.

    [a, b] = sum_i (a d<-/de_i)(d->/df_i b) + (a d<-/df_i)(d->/de_i b), with right
    derivatives on the left factor and left derivatives on the right factor.
    """
    out: dict = {}
    mask = 0
    for m, _ in list(a.items()) + list(b.items()):
        mask |= m.I | m.J
    i = 0
    while mask >> i:
        bit = 1 << i
        i += 1
        if not mask & bit:
            continue
        e, f = Monomial(bit, 0), Monomial(0, bit)
        for x, y in ((e, f), (f, e)):
            for ma, ca in a.items():
                sa, ra = _right_derivative(ma, x)
                if not sa:
                    continue
                for mb, cb in b.items():
                    sb, rb = _left_derivative(mb, y)
                    if not sb:
                        continue
                    s, m = monomial_product(ra, rb)
                    if s:
                        accumulate(out, m, s * sa * sb * ca * cb)
    return Element._raw(out)


# -- Poisson verification ---------------------------------------------------


@dataclass
class Violation:
    identity: str
    witness: tuple[str, ...]

    def to_json(self) -> dict:
        return {"identity": self.identity, "witness": list(self.witness)}


@dataclass
class PoissonReport:
    dim: int
    checked: dict[str, int] = field(default_factory=dict)
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "checked": dict(sorted(self.checked.items())),
            "violations": [v.to_json() for v in self.violations],
        }


def _sgn(n: int) -> int:
    return -1 if n & 1 else 1


def verify_poisson(
    d: int,
    bracket_fn: BracketFn = bracket,
    random_triples: int | None = None,
    seed: int = 0,
    max_violations: int = 20,
) -> PoissonReport:
    """Check Leibniz, shifted antisymmetry and shifted Jacobi on basis elements.

    Pairs are always checked exhaustively.  Triples are exhaustive when
    ``random_triples`` is None (the default for d <= 2); for d = 3 the default
    is 10**4 random triples.
    """
    check_dim(d, max_dim=3)
    if random_triples is None and d >= 3:
        random_triples = 10_000
    basis = [Element({m: 1}) for m in full_basis(d)]
    degs = [next(iter(b.degrees())) for b in basis]
    report = PoissonReport(dim=d)
    counts = {"antisymmetry": 0, "leibniz": 0, "jacobi": 0}

    def violate(name, *idx):
        if len(report.violations) < max_violations:
            report.violations.append(Violation(name, tuple(repr(basis[i]) for i in idx)))

    br: dict[tuple[int, int], Element] = {}
    N = len(basis)
    for i in range(N):
        for j in range(N):
            br[i, j] = bracket_fn(basis[i], basis[j])
    for i in range(N):
        for j in range(N):
            counts["antisymmetry"] += 1
            rhs = br[j, i].scale(-_sgn(degs[i] * degs[j]))
            if br[i, j] != rhs:
                violate("antisymmetry", i, j)

    def check_triple(i, j, k):
        a, b, c = basis[i], basis[j], basis[k]
        da, db = degs[i], degs[j]
        # Leibniz
        lhs = bracket_fn(a, b * c)
        rhs = br[i, j] * c + (b * br[i, k]).scale(_sgn((da - 2) * db))
        counts["leibniz"] += 1
        if lhs != rhs:
            violate("leibniz", i, j, k)
        # Jacobi on H[2]
        lhs = bracket_fn(a, br[j, k])
        rhs = bracket_fn(br[i, j], c) + bracket_fn(b, br[i, k]).scale(_sgn((da - 2) * (db - 2)))
        counts["jacobi"] += 1
        if lhs != rhs:
            violate("jacobi", i, j, k)

    if random_triples is None:
        for i in range(N):
            for j in range(N):
                for k in range(N):
                    check_triple(i, j, k)
    else:
        rng = random.Random(seed)
        for _ in range(random_triples):
            check_triple(rng.randrange(N), rng.randrange(N), rng.randrange(N))
    report.checked = counts
    return report


def pairing_gram(d: int, bracket_fn: BracketFn = bracket) -> RationalMatrix:
    """Gram matrix of the bracket on W in the basis e_1..e_d, f_1..f_d."""
    gens = [Element.e(i) for i in range(1, d + 1)] + [Element.f(i) for i in range(1, d + 1)]
    entries = {}
    for a, x in enumerate(gens):
        for b, y in enumerate(gens):
            v = bracket_fn(x, y).coeff(UNIT)
            if v:
                entries[a, b] = v
    return RationalMatrix(2 * d, 2 * d, entries)


# -- proto-Lie bialgebras ---------------------------------------------------


class Classification(str, Enum):
    LIE_BIALGEBRA = "LieBialgebra"
    LIE_QUASI_BIALGEBRA = "LieQuasiBialgebra"
    LIE_COQUASI_BIALGEBRA = "LieCoquasiBialgebra"
    PROTO_BIALGEBRA = "ProtoBialgebra"
    NOT_MC = "NotMC"


@dataclass(frozen=True)
class ProtoStructure:
    """A degree-3 element h = lambda + delta + alpha + beta of H."""

    h: Element
    dim: int

    def __post_init__(self):
        check_dim(self.dim)
        deg = self.h.degree()  # raises on inhomogeneous input
        if deg not in (None, 3):
            raise ValueError(f"proto structure must have degree 3, got {deg}")
        top = 1 << self.dim
        for m, _ in self.h.items():
            if m.I >= top or m.J >= top:
                raise ValueError(f"monomial {m} uses an index above dim={self.dim}")

    @property
    def lam(self) -> Element:
        """Bidegree (1, 2): an element of V (x) wedge^2 V*."""
        return self.h.project(1, 2)

    @property
    def delta(self) -> Element:
        return self.h.project(2, 1)

    @property
    def alpha(self) -> Element:
        return self.h.project(3, 0)

    @property
    def beta(self) -> Element:
        return self.h.project(0, 3)


def _as_proto(h, dim: int | None = None) -> ProtoStructure:
    if isinstance(h, ProtoStructure):
        return h
    if dim is None:
        top = 0
        for m, _ in h.items():
            top = max(top, m.I.bit_length(), m.J.bit_length())
        dim = max(top, 1)
    return ProtoStructure(h, dim)


def mc_check(h) -> tuple[Element, bool]:
    """Return ([h, h], [h, h] == 0)."""
    h = _as_proto(h)
    hh = bracket(h.h, h.h)
    return hh, hh.is_zero()


def classify_proto(h) -> Classification:
    h = _as_proto(h)
    _, ok = mc_check(h)
    if not ok:
        return Classification.NOT_MC
    a0, b0 = h.alpha.is_zero(), h.beta.is_zero()
    if a0 and b0:
        return Classification.LIE_BIALGEBRA
    if b0:
        return Classification.LIE_QUASI_BIALGEBRA
    if a0:
        return Classification.LIE_COQUASI_BIALGEBRA
    return Classification.PROTO_BIALGEBRA


class NotMaurerCartan(ValueError):
    pass


def ad_matrices(h: Element, d: int) -> dict[int, RationalMatrix]:
    """Matrices of a -> [h, a] from H^n to H^{n + deg h - 2}, for n = 0..2d."""
    deg = h.degree() or 3
    shift = deg - 2
    bases = {n: enumerate_basis(d, n) for n in range(-2, 2 * d + 4)}
    index = {n: {m: k for k, m in enumerate(b)} for n, b in bases.items()}
    out = {}
    for n in range(0, 2 * d + 1):
        src, tgt = bases[n], bases.get(n + shift, [])
        data: dict[int, dict[int, Fraction]] = {}
        for c, m in enumerate(src):
            img = bracket(h, Element({m: 1}))
            for mm, v in img.items():
                data.setdefault(index[n + shift][mm], {})[c] = v
        out[n] = RationalMatrix.from_rows(len(tgt), len(src), data)
    return out


def ad_unchecked(h, dim: int | None = None) -> ChainComplex:
    """(H, ad_h) without the Maurer-Cartan precondition; d^2 may fail."""
    h = _as_proto(h, dim)
    d = h.dim
    dims = {n: len(enumerate_basis(d, n)) for n in range(0, 2 * d + 1)}
    return ChainComplex(dims, ad_matrices(h.h, d))


def ad(h, dim: int | None = None) -> ChainComplex:
    """The deformation complex (H, d_h = ad_h) of a Maurer-Cartan element."""
    h = _as_proto(h, dim)
    hh, ok = mc_check(h)
    if not ok:
        raise NotMaurerCartan(f"[h, h] = {hh!r} is nonzero")
    C = ad_unchecked(h)
    C.check_square_zero()
    return C


def deformation_cohomology(h, dim: int | None = None) -> dict[int, int]:
    return cohomology_dims(ad(h, dim))


def random_degree3(d: int, rng: random.Random, pool=range(-3, 4), density: float = 1.0) -> Element:
    """Random degree-3 element with integer coefficients from ``pool``."""
    terms = {}
    for m in enumerate_basis(d, 3):
        if rng.random() < density:
            terms[m] = rng.choice(list(pool))
    return Element(terms)
