"""Linear-algebra core of the intrinsic formality argument for H.

One-cochains on the E_1 page are maps f_p: S^{p+1}(W[3]) -> S^k(W) with
k = total_degree + 1 - 2p.  W[3] is even, so sources are spanned by
multisets of generators of W; the targets are the degree-k part of H.

Generators of W are indexed 0..2d-1 as e_1..e_d, f_1..f_d.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Callable, Sequence

from .bracket import BracketFn, bracket, pairing_gram
from .graded import UNIT, Element, check_dim, enumerate_basis
from .linalg import RationalMatrix, kernel_basis, rank, solve

SHIFTED_GENERATOR_DEGREE = -2  # degree of a generator of W[3]


def w_generators(d: int) -> list[Element]:
    return [Element.e(i) for i in range(1, d + 1)] + [Element.f(i) for i in range(1, d + 1)]


def degree_census(p: int) -> dict:
    """Target symmetric power of a total-degree-1 cochain with p + 1 inputs."""
    if p < 0:
        raise ValueError("p must be nonnegative")
    power = 4 - 2 * (p + 1)
    return {"p": p, "target_power": power, "vanishes": power < 0}


def target_power(p: int, total_degree: int) -> int:
    return total_degree + 1 - 2 * p


def source_basis(d: int, p: int) -> list[tuple[int, ...]]:
    """Multisets of size p + 1 over the 2d generators of W."""
    return list(combinations_with_replacement(range(2 * d), p + 1))


@dataclass(frozen=True)
class E1Cochain:
    """A map S^{p+1}(W[3]) -> S^k(W); matrix rows index H^k, columns index multisets."""

    p: int
    k: int
    d: int
    matrix: RationalMatrix

    @property
    def total_degree(self) -> int:
        return self.k + 2 * self.p - 1

    def __call__(self, args: Sequence[int]) -> Element:
        col = source_basis(self.d, self.p).index(tuple(sorted(args)))
        basis = enumerate_basis(self.d, self.k)
        return Element({basis[r]: v for r, v in self.matrix.column(col).items()})

    def vector(self) -> dict[int, Fraction]:
        ns = self.matrix.cols
        return {r * ns + c: v for r, c, v in self.matrix.entries()}


def ce_differential(p: int, total_degree: int, d: int, bracket_fn: BracketFn = bracket) -> RationalMatrix:
    """Matrix of Q_l from E_1^{p,0} to E_1^{p+1,0} at the given total degree.

    (Q f)(a_1 ... a_{p+2}) = sum_i (-1)^{|a_i|(|a_1| + ... + |a_{i-1}|)} [a_i, f(a_1 .. a_i^ .. a_{p+2})]

    with |a| the degree in W[3].  Cochains are vectorized row-major:
    index = target_row * n_sources + source_col.
    """
    check_dim(d)
    k = target_power(p, total_degree)
    src_in, tgt_in = source_basis(d, p), source_basis(d, p + 1)
    src_out, tgt_out = enumerate_basis(d, k), enumerate_basis(d, k - 1)
    n_src_in, n_tgt_in = len(src_in), len(tgt_in)
    rows, cols = len(tgt_out) * n_tgt_in, len(src_out) * n_src_in
    if not rows or not cols:
        return RationalMatrix(rows, cols)
    gens = w_generators(d)
    src_index = {m: i for i, m in enumerate(src_in)}
    out_index = {m: i for i, m in enumerate(tgt_out)}
    br_cache: dict = {}
    data: dict[int, dict[int, Fraction]] = {}
    for t_col, args in enumerate(tgt_in):
        prefix = 0
        for i, a in enumerate(args):
            sign = -1 if (SHIFTED_GENERATOR_DEGREE * prefix) % 2 else 1
            prefix += SHIFTED_GENERATOR_DEGREE
            s_col = src_index[args[:i] + args[i + 1:]]
            for y_idx, y in enumerate(src_out):
                key = (a, y_idx)
                if key not in br_cache:
                    br_cache[key] = bracket_fn(gens[a], Element({y: 1}))
                for m, v in br_cache[key].items():
                    r = out_index[m] * n_tgt_in + t_col
                    c = y_idx * n_src_in + s_col
                    row = data.setdefault(r, {})
                    row[c] = row.get(c, 0) + sign * v
    data = {r: {c: v for c, v in row.items() if v} for r, row in data.items()}
    return RationalMatrix.from_rows(rows, cols, data)


def apply_ce(f: E1Cochain, bracket_fn: BracketFn = bracket) -> E1Cochain:
    M = ce_differential(f.p, f.total_degree, f.d, bracket_fn)
    vec = M.apply(f.vector())
    n = len(source_basis(f.d, f.p + 1))
    rows = len(enumerate_basis(f.d, f.k - 1))
    return E1Cochain(f.p + 1, f.k - 1, f.d, RationalMatrix(rows, n, {divmod(i, n): v for i, v in vec.items()}))


# -- the boundary g with Q_l(g) = f_1 -----------------------------------------


class BoundaryError(ArithmeticError):
    pass


def _as_matrix(F, size: int) -> RationalMatrix:
    if isinstance(F, RationalMatrix):
        M = F
    else:
        M = RationalMatrix.from_dense([[Fraction(x) for x in row] for row in F])
    if M.shape != (size, size):
        raise ValueError(f"form must be {size}x{size}, got {M.shape[0]}x{M.shape[1]}")
    return M


def boundary_residual(g: RationalMatrix, F: RationalMatrix, d: int, pairing: Callable[[int, int], Fraction]) -> list[tuple[int, int]]:
    """Generator pairs (a, b) where [w_a, g(w_b)] + [w_b, g(w_a)] != F(a, b)."""
    n = 2 * d
    bad = []
    cols = [g.column(b) for b in range(n)]
    for a in range(n):
        for b in range(a, n):
            lhs = sum((v * pairing(a, c) for c, v in cols[b].items()), Fraction(0))
            lhs += sum((v * pairing(b, c) for c, v in cols[a].items()), Fraction(0))
            if lhs != F[a, b]:
                bad.append((a, b))
    return bad


def bracket_pairing(d: int) -> Callable[[int, int], Fraction]:
    gens = w_generators(d)
    cache: dict = {}

    def pairing(a: int, b: int) -> Fraction:
        if (a, b) not in cache:
            cache[a, b] = bracket(gens[a], gens[b]).coeff(UNIT)
        return cache[a, b]

    return pairing


def boundary_construct(F, d: int, gram: RationalMatrix | None = None) -> RationalMatrix:
    """Solve Q_l(g) = F for g: W -> W, i.e. g = B^{-1} F / 2 with B the pairing on W.

    The result is verified by substituting into [a, g(b)] + [b, g(a)] before it is
    returned.  ``gram`` replaces the pairing (substitution then uses it too).
    """
    check_dim(d)
    n = 2 * d
    F = _as_matrix(F, n)
    if F != F.transpose():
        raise ValueError("form is not symmetric")
    if gram is None:
        B = pairing_gram(d)
        pairing = bracket_pairing(d)
    else:
        B = _as_matrix(gram, n)
        pairing = lambda a, b: B[a, b]
    columns = []
    for b in range(n):
        rhs = {r: v / 2 for r, v in F.column(b).items()}
        x = solve(B, rhs)
        if x is None:
            raise BoundaryError(f"no g solves the boundary equation for column {b}")
        columns.append({i: v for i, v in enumerate(x) if v})
    g = RationalMatrix.from_columns(n, columns)
    bad = boundary_residual(g, F, d, pairing)
    if bad:
        raise BoundaryError(f"substitution check fails at generator pairs {bad[:5]}")
    return g


def random_symmetric(d: int, rng: random.Random, pool: Sequence = tuple(range(-3, 4)), dens: Sequence = (1, 2, 3)) -> RationalMatrix:
    n = 2 * d
    ent = {}
    for a in range(n):
        for b in range(a, n):
            v = Fraction(rng.choice(pool), rng.choice(dens))
            ent[a, b] = v
            ent[b, a] = v
    return RationalMatrix(n, n, ent)


# -- the E_1-level hypothesis ------------------------------------------------


@dataclass
class FormalityReport:
    dim: int
    census: list = field(default_factory=list)
    forms_checked: int = 0
    failures: list = field(default_factory=list)
    ce_rank: int | None = None
    sym2_dim: int = 0

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "census": self.census,
            "forms_checked": self.forms_checked,
            "ce_rank": self.ce_rank,
            "sym2_dim": self.sym2_dim,
            "failures": self.failures,
        }


def h1_vanishing_check(d: int, gram: RationalMatrix | None = None, census_range: int = 4) -> FormalityReport:
    """Every one-cochain from g_{>=1} is a Q_l-boundary.

    Such cochains have f_p = 0 for p > 1 by the census and f_0 = 0, so only
    f_1: S^2(W) -> k remains.  Each elementary symmetric form is shown to be
    Q_l(g) via :func:`boundary_construct`; with the true pairing the rank of
    Q_l: E_1^{0,0} -> E_1^{1,0} in total degree 0 is also checked to equal
    dim S^2(W).
    """
    check_dim(d, max_dim=4)
    n = 2 * d
    rep = FormalityReport(dim=d)
    rep.census = [degree_census(p) for p in range(census_range)]
    for c in rep.census:
        if c["vanishes"] != (c["p"] > 1):
            rep.failures.append({"kind": "census", "p": c["p"]})
    rep.sym2_dim = n * (n + 1) // 2
    for a in range(n):
        for b in range(a, n):
            F = RationalMatrix(n, n, {(a, b): 1, (b, a): 1})
            rep.forms_checked += 1
            try:
                boundary_construct(F, d, gram)
            except BoundaryError as exc:
                rep.failures.append({"kind": "boundary", "form": [a, b], "reason": str(exc)})
    if gram is None:
        rep.ce_rank = rank(ce_differential(0, 0, d))
        if rep.ce_rank != rep.sym2_dim:
            rep.failures.append({"kind": "ce_rank", "rank": rep.ce_rank, "expected": rep.sym2_dim})
    return rep


# -- GL(V)-invariant symmetric forms on V + V* ---------------------------------


def gl_action(d: int, i: int, j: int) -> RationalMatrix:
    """The elementary matrix E_ij of gl(V) acting on W = V + V* (dual action on V*)."""
    ent = {(i - 1, j - 1): 1, (d + j - 1, d + i - 1): -1}
    return RationalMatrix(2 * d, 2 * d, ent)


def invariant_form_space(d: int) -> tuple[int, list[RationalMatrix]]:
    """Symmetric forms F on W with F(Xu, v) + F(u, Xv) = 0 for all X in gl(V)."""
    check_dim(d)
    n = 2 * d
    unknowns = [(a, b) for a in range(n) for b in range(a, n)]
    uidx = {ab: k for k, ab in enumerate(unknowns)}

    def var(a, b):
        return uidx[(a, b) if a <= b else (b, a)]

    rows: dict[int, dict[int, Fraction]] = {}
    r = 0
    for i in range(1, d + 1):
        for j in range(1, d + 1):
            X = gl_action(d, i, j)
            # (X^T F + F X)[u, v] = sum_w X[w, u] F[w, v] + F[u, w] X[w, v]
            for u in range(n):
                for v in range(u, n):
                    eq: dict[int, Fraction] = {}
                    for w, x in X.column(u).items():
                        k = var(w, v)
                        eq[k] = eq.get(k, 0) + x
                    for w, x in X.column(v).items():
                        k = var(u, w)
                        eq[k] = eq.get(k, 0) + x
                    eq = {k: x for k, x in eq.items() if x}
                    if eq:
                        rows[r] = eq
                    r += 1
    system = RationalMatrix.from_rows(r, len(unknowns), rows)
    basis = []
    for vec in kernel_basis(system):
        ent = {}
        for k, v in vec.items():
            a, b = unknowns[k]
            ent[a, b] = v
            ent[b, a] = v
        basis.append(RationalMatrix(n, n, ent))
    return len(basis), basis


def proportionality(F: RationalMatrix, B: RationalMatrix) -> Fraction | None:
    """c with F = c B, or None."""
    if B.is_zero():
        return Fraction(0) if F.is_zero() else None
    r, c, v = next(iter(B.entries()))
    ratio = F[r, c] / v
    return ratio if F == B.scale(ratio) else None
