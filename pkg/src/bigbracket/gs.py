"""Gerstenhaber-Schack complex of a finite-dimensional bialgebra.

Cochains are linear maps A^{(x)p} -> A^{(x)q} with p, q >= 1, stored as
``n**q x n**p`` matrices.  A basis tensor b_{i1} (x) ... (x) b_{ip} has index
``i1 * n**(p-1) + ... + ip`` (first factor most significant).

Hochschild direction (p -> p + 1)::

    d1 phi = Delta^{q-1}(a0) . phi(a1..ap)
             + sum_{i=0}^{p-1} (-1)^{i+1} phi(.., a_i a_{i+1}, ..)
             + (-1)^{p-1} phi(a0..a_{p-1}) . Delta^{q-1}(ap)

coHochschild direction (q -> q + 1)::

    d2 phi = (-1)^p [ (mu_{p-1} (x) phi) Delta^{(x)p}
                      + sum_{i=1}^{q} (-1)^i Delta_i phi
                      + (-1)^{q+1} (phi (x) mu_{p-1}) Delta^{(x)p} ]

The bracketed part is the usual cobar differential; the outer (-1)^p makes
d1 and d2 anticommute, so d = d1 + d2 squares to zero.  The sign choices are
exposed through :class:`SignConvention` so alternatives can be tested.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Mapping, Sequence

from .linalg import ChainComplex, RationalMatrix, SquareZeroError, block_matrix, cohomology_dims

Tensor = dict  # tuple[int, ...] -> Fraction


class AxiomError(ValueError):
    def __init__(self, axiom: str, detail: str = ""):
        self.axiom = axiom
        super().__init__(f"bialgebra axiom fails: {axiom}" + (f" ({detail})" if detail else ""))


def _add(out: dict, key, v) -> None:
    s = out.get(key, 0) + v
    if s:
        out[key] = s
    else:
        out.pop(key, None)


class FiniteBialgebra:
    """Bialgebra given by structure constants on a basis b_0..b_{n-1}.

    ``mu[i, j]`` is the product b_i b_j as {k: coeff}; ``delta[i]`` is the
    coproduct of b_i as {(j, k): coeff}; ``unit`` is {k: coeff}; ``counit`` is
    a length-n sequence.  All axioms are verified at construction.
    """

    def __init__(self, n: int, mu: Mapping, delta: Mapping, unit: Mapping, counit: Sequence, name: str = "custom", check: bool = True):
        if n < 1:
            raise ValueError("bialgebra dimension must be positive")
        self.n = n
        self.name = name
        self.mu = {(i, j): {k: Fraction(v) for k, v in mu.get((i, j), {}).items() if v} for i in range(n) for j in range(n)}
        self.delta = {i: {tuple(jk): Fraction(v) for jk, v in delta.get(i, {}).items() if v} for i in range(n)}
        self.unit = {k: Fraction(v) for k, v in unit.items() if v}
        if len(counit) != n:
            raise ValueError("counit has the wrong length")
        self.counit = [Fraction(v) for v in counit]
        self._cache: dict = {}
        if check:
            self.verify()

    # -- basic operations on sparse tensors ---------------------------------

    def mult(self, x: Mapping[int, Fraction], y: Mapping[int, Fraction]) -> dict[int, Fraction]:
        out: dict[int, Fraction] = {}
        for i, a in x.items():
            for j, b in y.items():
                for k, c in self.mu[i, j].items():
                    _add(out, k, a * b * c)
        return out

    def comult(self, x: Mapping[int, Fraction]) -> dict[tuple[int, int], Fraction]:
        out: dict = {}
        for i, a in x.items():
            for jk, c in self.delta[i].items():
                _add(out, jk, a * c)
        return out

    def eps(self, x: Mapping[int, Fraction]) -> Fraction:
        return sum((a * self.counit[i] for i, a in x.items()), Fraction(0))

    def tensor_mult(self, x: Tensor, y: Tensor) -> Tensor:
        """Factorwise product in the algebra A^{(x)q}."""
        out: Tensor = {}
        for s, a in x.items():
            for t, b in y.items():
                partial: dict = {(): a * b}
                for si, ti in zip(s, t):
                    nxt: dict = {}
                    prod_ = self.mu[si, ti]
                    if not prod_:
                        partial = {}
                        break
                    for key, v in partial.items():
                        for k, c in prod_.items():
                            _add(nxt, key + (k,), v * c)
                    partial = nxt
                for key, v in partial.items():
                    _add(out, key, v)
        return out

    def iterated_comult(self, i: int, q: int) -> Tensor:
        """Delta^{q-1}(b_i) in A^{(x)q}."""
        key = ("itcomult", i, q)
        if key not in self._cache:
            if q == 1:
                res = {(i,): Fraction(1)}
            else:
                res = {}
                for t, v in self.iterated_comult(i, q - 1).items():
                    for jk, c in self.delta[t[-1]].items():
                        _add(res, t[:-1] + jk, v * c)
            self._cache[key] = res
        return self._cache[key]

    def iterated_mult(self, t: tuple[int, ...]) -> dict[int, Fraction]:
        """mu_{p-1}: A^{(x)p} -> A."""
        key = ("itmult", t)
        if key not in self._cache:
            acc = {t[0]: Fraction(1)}
            for s in t[1:]:
                acc = self.mult(acc, {s: Fraction(1)})
            self._cache[key] = acc
        return self._cache[key]

    def tensor_comult(self, t: tuple[int, ...]) -> dict[tuple[tuple[int, ...], tuple[int, ...]], Fraction]:
        """Delta^{(x)p}: A^{(x)p} -> A^{(x)p} (x) A^{(x)p}."""
        key = ("tcomult", t)
        if key not in self._cache:
            partial = {((), ()): Fraction(1)}
            for s in t:
                nxt: dict = {}
                for (l, r), v in partial.items():
                    for (j, k), c in self.delta[s].items():
                        _add(nxt, (l + (j,), r + (k,)), v * c)
                partial = nxt
            self._cache[key] = partial
        return self._cache[key]

    # -- axioms --------------------------------------------------------------

    def verify(self) -> None:
        n = self.n
        e = lambda i: {i: Fraction(1)}
        for i, j, k in product(range(n), repeat=3):
            if self.mult(self.mult(e(i), e(j)), e(k)) != self.mult(e(i), self.mult(e(j), e(k))):
                raise AxiomError("associativity", f"b{i} b{j} b{k}")
        for i in range(n):
            if self.mult(self.unit, e(i)) != e(i) or self.mult(e(i), self.unit) != e(i):
                raise AxiomError("unit", f"b{i}")
        for i in range(n):
            left: dict = {}
            right: dict = {}
            for (j, k), c in self.delta[i].items():
                for (a, b), c2 in self.delta[j].items():
                    _add(left, (a, b, k), c * c2)
                for (a, b), c2 in self.delta[k].items():
                    _add(right, (j, a, b), c * c2)
            if left != right:
                raise AxiomError("coassociativity", f"b{i}")
            l1: dict = {}
            r1: dict = {}
            for (j, k), c in self.delta[i].items():
                _add(l1, k, c * self.counit[j])
                _add(r1, j, c * self.counit[k])
            if l1 != e(i) or r1 != e(i):
                raise AxiomError("counit", f"b{i}")
        unit_sq = {}
        for a, x in self.unit.items():
            for b, y in self.unit.items():
                _add(unit_sq, (a, b), x * y)
        if self.comult(self.unit) != unit_sq:
            raise AxiomError("coproduct of unit", "Delta(1) != 1 (x) 1")
        if self.eps(self.unit) != 1:
            raise AxiomError("counit of unit", "eps(1) != 1")
        for i, j in product(range(n), repeat=2):
            ab = self.mult(e(i), e(j))
            if self.comult(ab) != self.tensor_mult(self.comult(e(i)), self.comult(e(j))):
                raise AxiomError("compatibility", f"Delta(b{i} b{j}) != Delta(b{i}) Delta(b{j})")
            if self.eps(ab) != self.counit[i] * self.counit[j]:
                raise AxiomError("counit multiplicativity", f"b{i} b{j}")

    def to_json(self) -> dict:
        n = self.n
        mu = [[[str(self.mu[i, j].get(k, 0)) for k in range(n)] for j in range(n)] for i in range(n)]
        delta = [[[str(self.delta[i].get((j, k), 0)) for k in range(n)] for j in range(n)] for i in range(n)]
        return {
            "n": n,
            "mu": mu,
            "delta": delta,
            "unit": [str(self.unit.get(k, 0)) for k in range(n)],
            "counit": [str(v) for v in self.counit],
        }

    def __repr__(self) -> str:
        return f"FiniteBialgebra({self.name!r}, n={self.n})"


# -- built-in bialgebras ----------------------------------------------------


def group_algebra(m: int, name: str | None = None) -> FiniteBialgebra:
    mu = {(i, j): {(i + j) % m: 1} for i in range(m) for j in range(m)}
    delta = {i: {(i, i): 1} for i in range(m)}
    return FiniteBialgebra(m, mu, delta, {0: 1}, [1] * m, name=name or f"group_z{m}")


def dual_group_algebra(m: int, name: str | None = None) -> FiniteBialgebra:
    """Functions on Z/m with delta-function basis."""
    mu = {(i, i): {i: 1} for i in range(m)}
    delta = {k: {(i, (k - i) % m): 1 for i in range(m)} for k in range(m)}
    counit = [1] + [0] * (m - 1)
    return FiniteBialgebra(m, mu, delta, {i: 1 for i in range(m)}, counit, name=name or f"dual_group_z{m}")


def sweedler4() -> FiniteBialgebra:
    """Basis (1, g, x, gx) with g^2 = 1, x^2 = 0, xg = -gx, Delta(x) = x (x) 1 + g (x) x."""
    # an element g^a x^b is stored as index a + 2b
    def word(a, b):
        return a + 2 * b

    mu = {}
    for a1, b1, a2, b2 in product((0, 1), repeat=4):
        if b1 and b2:
            continue
        sign = -1 if (b1 and a2) else 1  # x g = -g x
        mu[word(a1, b1), word(a2, b2)] = {word((a1 + a2) % 2, b1 + b2): sign}
    delta = {
        0: {(0, 0): 1},
        1: {(1, 1): 1},
        2: {(2, 0): 1, (1, 2): 1},
        3: {(3, 1): 1, (0, 3): 1},
    }
    return FiniteBialgebra(4, mu, delta, {0: 1}, [1, 1, 0, 0], name="sweedler4")


def trivial() -> FiniteBialgebra:
    return FiniteBialgebra(1, {(0, 0): {0: 1}}, {0: {(0, 0): 1}}, {0: 1}, [1], name="trivial")


BUILTIN_BIALGEBRAS = {
    "trivial": trivial,
    "group_z2": lambda: group_algebra(2),
    "group_z3": lambda: group_algebra(3),
    "sweedler4": sweedler4,
    "dual_group_z2": lambda: dual_group_algebra(2),
}


def builtin_bialgebra(name: str) -> FiniteBialgebra:
    try:
        return BUILTIN_BIALGEBRAS[name]()
    except KeyError:
        raise ValueError(f"unknown bialgebra {name!r}; choose from {sorted(BUILTIN_BIALGEBRAS)}") from None


# -- cochains and differentials ---------------------------------------------


@dataclass(frozen=True)
class SignConvention:
    """Sign choices for d2.

    ``middle_offset``: the middle terms carry (-1)^{i + middle_offset}.
    ``last``: exponent source of the last term's sign, "q" for (-1)^{q+1}
    or "p" for (-1)^{p-1}.
    ``twist``: overall factor on d2, one of "none", "p", "q".
    """

    middle_offset: int = 0
    last: str = "q"
    twist: str = "p"

    def middle(self, i: int) -> int:
        return -1 if (i + self.middle_offset) % 2 else 1

    def last_sign(self, p: int, q: int) -> int:
        k = q + 1 if self.last == "q" else p - 1
        return -1 if k % 2 else 1

    def overall(self, p: int, q: int) -> int:
        k = {"none": 0, "p": p, "q": q}[self.twist]
        return -1 if k % 2 else 1


DEFAULT_SIGNS = SignConvention()


@dataclass(frozen=True)
class GSCochain:
    p: int
    q: int
    phi: RationalMatrix

    def __post_init__(self):
        if self.p < 1 or self.q < 1:
            raise ValueError("cochains need p, q >= 1")

    def check(self, A: FiniteBialgebra) -> None:
        if self.phi.shape != (A.n ** self.q, A.n ** self.p):
            raise ValueError(f"cochain ({self.p},{self.q}) must be {A.n ** self.q}x{A.n ** self.p}, got {self.phi.shape}")

    def vector(self, A: FiniteBialgebra) -> dict[int, Fraction]:
        np_ = A.n ** self.p
        return {r * np_ + c: v for r, c, v in self.phi.entries()}

    @classmethod
    def from_vector(cls, p: int, q: int, vec: Mapping[int, Fraction], A: FiniteBialgebra) -> "GSCochain":
        np_ = A.n ** p
        return cls(p, q, RationalMatrix(A.n ** q, np_, {divmod(k, np_): v for k, v in vec.items()}))


def _digits(idx: int, length: int, n: int) -> tuple[int, ...]:
    out = []
    for _ in range(length):
        idx, r = divmod(idx, n)
        out.append(r)
    return tuple(reversed(out))


def _index(t: Sequence[int], n: int) -> int:
    idx = 0
    for x in t:
        idx = idx * n + x
    return idx


def d1_matrix(A: FiniteBialgebra, p: int, q: int) -> RationalMatrix:
    """Matrix of d1 from Hom(A^p, A^q) to Hom(A^{p+1}, A^q), vectorized row-major."""
    key = ("d1", p, q)
    if key in A._cache:
        return A._cache[key]
    n = A.n
    np0, np1, nq = n ** p, n ** (p + 1), n ** q
    outs = [_digits(o, q, n) for o in range(nq)]
    data: dict[int, dict[int, Fraction]] = {}

    def put(tgt_out: int, a_idx: int, src_out: int, src_in: int, v):
        row = data.setdefault(tgt_out * np1 + a_idx, {})
        _add(row, src_out * np0 + src_in, v)

    last_sign = -1 if (p - 1) % 2 else 1
    for a_idx in range(np1):
        a = _digits(a_idx, p + 1, n)
        head = _index(a[1:], n)
        tail = _index(a[:-1], n)
        left = A.iterated_comult(a[0], q)
        right = A.iterated_comult(a[-1], q)
        for o_idx, o in enumerate(outs):
            for t, v in A.tensor_mult(left, {o: Fraction(1)}).items():
                put(_index(t, n), a_idx, o_idx, head, v)
            for t, v in A.tensor_mult({o: Fraction(1)}, right).items():
                put(_index(t, n), a_idx, o_idx, tail, last_sign * v)
        for i in range(p):
            sign = -1 if (i + 1) % 2 else 1
            for k, c in A.mu[a[i], a[i + 1]].items():
                src_in = _index(a[:i] + (k,) + a[i + 2:], n)
                for o_idx in range(nq):
                    put(o_idx, a_idx, o_idx, src_in, sign * c)
    M = RationalMatrix.from_rows(np1 * nq, np0 * nq, {r: {c: v for c, v in row.items() if v} for r, row in data.items()})
    A._cache[key] = M
    return M


def d2_matrix(A: FiniteBialgebra, p: int, q: int, signs: SignConvention = DEFAULT_SIGNS) -> RationalMatrix:
    """Matrix of d2 from Hom(A^p, A^q) to Hom(A^p, A^{q+1})."""
    key = ("d2", p, q, signs)
    if key in A._cache:
        return A._cache[key]
    n = A.n
    np_, nq0, nq1 = n ** p, n ** q, n ** (q + 1)
    data: dict[int, dict[int, Fraction]] = {}
    overall = signs.overall(p, q)
    last = signs.last_sign(p, q) * overall

    def put(tgt_out: tuple, a_idx: int, src_out: int, src_in: int, v):
        row = data.setdefault(_index(tgt_out, n) * np_ + a_idx, {})
        _add(row, src_out * np_ + src_in, v)

    for a_idx in range(np_):
        a = _digits(a_idx, p, n)
        for (l, r), c in A.tensor_comult(a).items():
            l_idx, r_idx = _index(l, n), _index(r, n)
            ml, mr = A.iterated_mult(l), A.iterated_mult(r)
            for o_idx in range(nq0):
                o = _digits(o_idx, q, n)
                for k, v in ml.items():
                    # (mu (x) phi): phi applied to the right half
                    put((k,) + o, a_idx, o_idx, r_idx, overall * c * v)
                for k, v in mr.items():
                    put(o + (k,), a_idx, o_idx, l_idx, last * c * v)
        for o_idx in range(nq0):
            o = _digits(o_idx, q, n)
            for i in range(1, q + 1):
                sign = signs.middle(i) * overall
                for (j, k), c in A.delta[o[i - 1]].items():
                    put(o[: i - 1] + (j, k) + o[i:], a_idx, o_idx, a_idx, sign * c)
    M = RationalMatrix.from_rows(nq1 * np_, nq0 * np_, {r: {c: v for c, v in row.items() if v} for r, row in data.items()})
    A._cache[key] = M
    return M


def gs_d1(c: GSCochain, A: FiniteBialgebra) -> GSCochain:
    c.check(A)
    vec = d1_matrix(A, c.p, c.q).apply(c.vector(A))
    return GSCochain.from_vector(c.p + 1, c.q, vec, A)


def gs_d2(c: GSCochain, A: FiniteBialgebra, signs: SignConvention = DEFAULT_SIGNS) -> GSCochain:
    c.check(A)
    vec = d2_matrix(A, c.p, c.q, signs).apply(c.vector(A))
    return GSCochain.from_vector(c.p, c.q + 1, vec, A)


def gs_differential(c: GSCochain, A: FiniteBialgebra, signs: SignConvention = DEFAULT_SIGNS) -> tuple[GSCochain, GSCochain]:
    return gs_d1(c, A), gs_d2(c, A, signs)


@dataclass
class SquareCheck:
    """Outcome of the d^2 = 0 checks, one entry per failing (identity, p, q)."""

    failures: list[tuple[str, int, int]] = field(default_factory=list)
    checked: int = 0

    @property
    def ok(self) -> bool:
        return not self.failures


def check_square_zero(A: FiniteBialgebra, max_total: int, signs: SignConvention = DEFAULT_SIGNS) -> SquareCheck:
    """Check d1^2, d2^2 and d1 d2 + d2 d1 on every source block with p + q <= max_total."""
    res = SquareCheck()
    for total in range(2, max_total + 1):
        for p in range(1, total):
            q = total - p
            d11 = d1_matrix(A, p + 1, q) @ d1_matrix(A, p, q)
            d22 = d2_matrix(A, p, q + 1, signs) @ d2_matrix(A, p, q, signs)
            d12 = d1_matrix(A, p, q + 1) @ d2_matrix(A, p, q, signs) + d2_matrix(A, p + 1, q, signs) @ d1_matrix(A, p, q)
            for name, M in (("d1d1", d11), ("d2d2", d22), ("d1d2+d2d1", d12)):
                res.checked += 1
                if not M.is_zero():
                    res.failures.append((name, p, q))
    return res


def total_complex(A: FiniteBialgebra, max_total: int, signs: SignConvention = DEFAULT_SIGNS) -> ChainComplex:
    """C^n = sum_{p+q=n, p,q>=1} Hom(A^p, A^q) for 2 <= n <= max_total.

    The differential out of C^{max_total} is omitted.
    """
    n = A.n
    blocks_of = {t: [(p, t - p) for p in range(1, t)] for t in range(2, max_total + 1)}
    dims = {t: sum(n ** (p + q) for p, q in blocks_of[t]) for t in blocks_of}
    diffs = {}
    for t in range(2, max_total):
        src, tgt = blocks_of[t], blocks_of[t + 1]
        blocks = {}
        for j, (p, q) in enumerate(src):
            blocks[tgt.index((p + 1, q)), j] = d1_matrix(A, p, q)
            blocks[tgt.index((p, q + 1)), j] = d2_matrix(A, p, q, signs)
        diffs[t] = block_matrix([n ** (p + q) for p, q in tgt], [n ** (p + q) for p, q in src], blocks)
    return ChainComplex(dims, diffs)


class GSSignError(ArithmeticError):
    def __init__(self, failures):
        self.failures = failures
        name, p, q = failures[0]
        super().__init__(f"{name} != 0 on the ({p},{q}) block")


def gs_cohomology(A: FiniteBialgebra, max_total: int, signs: SignConvention = DEFAULT_SIGNS) -> dict[int, int]:
    """dim H^n_GS(A) for n <= max_total - 1 (zero below degree 2)."""
    if max_total < 2:
        raise ValueError("max_total must be at least 2")
    sq = check_square_zero(A, max_total - 2, signs)
    if not sq.ok:
        raise GSSignError(sq.failures)
    C = total_complex(A, max_total, signs)
    try:
        dims = cohomology_dims(C)
    except SquareZeroError as exc:
        raise GSSignError([("d", exc.degree, 0)]) from exc
    out = {k: 0 for k in range(0, 2)}
    out.update({k: v for k, v in dims.items() if k <= max_total - 1})
    return out


def bialgebra_from_json(obj: Mapping, name: str = "custom") -> FiniteBialgebra:
    """Build (and verify) a bialgebra from {"n", "mu", "delta", "unit", "counit"}.

    ``mu[i][j][k]`` is the coefficient of b_k in b_i b_j and ``delta[i][j][k]``
    the coefficient of b_j (x) b_k in Delta(b_i).
    """
    from .serialize import parse_rational

    n = int(obj["n"])
    mu_raw, delta_raw = obj["mu"], obj["delta"]
    for label, arr in (("mu", mu_raw), ("delta", delta_raw)):
        if len(arr) != n or any(len(r) != n or any(len(x) != n for x in r) for r in arr):
            raise ValueError(f"{label} must be an n x n x n array")
    mu = {(i, j): {k: parse_rational(mu_raw[i][j][k]) for k in range(n)} for i in range(n) for j in range(n)}
    delta = {i: {(j, k): parse_rational(delta_raw[i][j][k]) for j in range(n) for k in range(n)} for i in range(n)}
    unit = {k: parse_rational(v) for k, v in enumerate(obj["unit"])}
    counit = [parse_rational(v) for v in obj["counit"]]
    return FiniteBialgebra(n, mu, delta, unit, counit, name=name)
