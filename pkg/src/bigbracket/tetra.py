"""Induced and coinduced resolutions of U(g), and the hom-complex computing H_GS(U g).

Elements of P_n = U (x) wedge^n g (x) U and of Q^n (same underlying space) are
sparse dicts keyed by ``(alpha, N, beta)``: PBW exponent tuples for the outer
slots and a bitmask for the wedge factor.  Truncation keeps basis elements
with ``|alpha| + n + |beta| <= cap``; both differentials preserve this
filtration, so the truncated pieces are genuine subcomplexes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb, prod
from typing import Callable, Mapping

from .bracket import ProtoStructure, ad, bracket, mc_check
from .graded import Element, Monomial, check_dim, indices_to_mask, inversions, mask_to_indices, monomial_product, popcount
from .lie import LieAlgebraData, lambda_element
from .linalg import ChainComplex, RationalMatrix

Exp = tuple[int, ...]
Key = tuple[Exp, int, Exp]


def _add(out: dict, key, v) -> None:
    s = out.get(key, 0) + v
    if s:
        out[key] = s
    else:
        out.pop(key, None)


# -- U(g) in the PBW basis --------------------------------------------------


def pbw_basis(d: int, max_degree: int) -> list[Exp]:
    """Exponent vectors of total degree <= max_degree, by degree then lexicographically."""
    out = [a for a in product(range(max_degree + 1), repeat=d) if sum(a) <= max_degree]
    out.sort(key=lambda a: (sum(a), tuple(-x for x in a)))
    return out


def _bump(a: Exp, i: int, by: int = 1) -> Exp:
    return a[: i - 1] + (a[i - 1] + by,) + a[i:]


class Enveloping:
    """U(g) with products straightened against the ordered basis x_1 < ... < x_d."""

    def __init__(self, g: LieAlgebraData):
        self.g = g
        self.d = g.d
        self._left = lru_cache(maxsize=None)(self._left_gen)
        self._right = lru_cache(maxsize=None)(self._right_gen)

    def one(self) -> Exp:
        return (0,) * self.d

    def gen(self, i: int) -> Exp:
        return _bump(self.one(), i)

    def _left_gen(self, i: int, a: Exp) -> tuple:
        """x_i * x^a."""
        j = next((k + 1 for k, e in enumerate(a) if e), None)
        if j is None or i <= j:
            return ((_bump(a, i), Fraction(1)),)
        rest = _bump(a, j, -1)
        out: dict = {}
        # x_i x_j R = x_j (x_i R) + [x_i, x_j] R
        for m, c in self._left(i, rest):
            for m2, c2 in self._left(j, m):
                _add(out, m2, c * c2)
        for k, c in self.g.bracket(i, j).items():
            for m2, c2 in self._left(k, rest):
                _add(out, m2, c * c2)
        return tuple(out.items())

    def _right_gen(self, a: Exp, i: int) -> tuple:
        """x^a * x_i."""
        k = next((t + 1 for t in range(self.d - 1, -1, -1) if a[t]), None)
        if k is None or i >= k:
            return ((_bump(a, i), Fraction(1)),)
        rest = _bump(a, k, -1)
        out: dict = {}
        # R x_k x_i = (R x_i) x_k + R [x_k, x_i]
        for m, c in self._right(rest, i):
            for m2, c2 in self._right(m, k):
                _add(out, m2, c * c2)
        for l, c in self.g.bracket(k, i).items():
            for m2, c2 in self._right(rest, l):
                _add(out, m2, c * c2)
        return tuple(out.items())

    def left_gen(self, i: int, a: Exp) -> dict[Exp, Fraction]:
        return dict(self._left(i, a))

    def right_gen(self, a: Exp, i: int) -> dict[Exp, Fraction]:
        return dict(self._right(a, i))

    def mul(self, a: Exp, b: Exp) -> dict[Exp, Fraction]:
        """x^a * x^b."""
        out = {b: Fraction(1)}
        for i in range(self.d, 0, -1):
            for _ in range(a[i - 1]):
                nxt: dict = {}
                for m, c in out.items():
                    for m2, c2 in self._left(i, m):
                        _add(nxt, m2, c * c2)
                out = nxt
        return out

    @staticmethod
    def coproduct(a: Exp) -> dict[tuple[Exp, Exp], Fraction]:
        """Delta(x^a) = sum_b C(a, b) x^b (x) x^{a-b} (generators primitive)."""
        out = {}
        for b in product(*(range(e + 1) for e in a)):
            rest = tuple(x - y for x, y in zip(a, b))
            out[b, rest] = Fraction(prod(comb(x, y) for x, y in zip(a, b)))
        return out

    @staticmethod
    def counit(a: Exp) -> int:
        return 0 if any(a) else 1


# -- wedge helpers ----------------------------------------------------------


def wedge_left(k: int, S: int) -> tuple[int, int]:
    """x_k ^ x_S as (sign, mask); sign 0 when k is in S."""
    bit = 1 << (k - 1)
    if S & bit:
        return 0, 0
    return (-1 if popcount(S & (bit - 1)) & 1 else 1), S | bit


def wedge_right(S: int, k: int) -> tuple[int, int]:
    """x_S ^ x_k."""
    bit = 1 << (k - 1)
    if S & bit:
        return 0, 0
    return (-1 if popcount(S & ~((bit << 1) - 1)) & 1 else 1), S | bit


def wedge(S: int, T: int) -> tuple[int, int]:
    """x_S ^ x_T."""
    if S & T:
        return 0, 0
    return (-1 if inversions(S, T) & 1 else 1), S | T


def wedge_basis(d: int, n: int) -> list[int]:
    return sorted((m for m in range(1 << d) if popcount(m) == n), key=lambda m: mask_to_indices(m))


def resolution_basis(d: int, n: int, cap: int) -> list[Key]:
    """Basis (alpha, N, beta) of the cap-truncated piece of U (x) wedge^n (x) U."""
    if n < 0 or n > d or n > cap:
        return []
    pb = pbw_basis(d, cap - n)
    return [
        (a, N, b)
        for a in pb
        for N in wedge_basis(d, n)
        for b in pb
        if sum(a) + sum(b) + n <= cap
    ]


# -- the two differentials --------------------------------------------------


def induced_boundary(U: Enveloping, x: Mapping[Key, Fraction], mid_sign: int = -1) -> dict[Key, Fraction]:
    """The differential of the induced resolution P_n -> P_{n-1}.

    d(a x_N b) = sum_i (-1)^{i-1} (a x_i (x) x_{N-i} (x) b + mid_sign a (x) x_{N-i} (x) x_i b)
                 + sum_{i<j} (-1)^{i+j} a (x) [x_i, x_j] ^ x_{N-{i,j}} (x) b

    ``mid_sign`` is -1 for the true differential; other values exist only to
    exercise the checks.
    """
    g = U.g
    out: dict = {}
    for (a, N, b), c in x.items():
        idx = mask_to_indices(N)
        for pos, k in enumerate(idx, start=1):
            s = c if pos % 2 else -c
            rest = N ^ (1 << (k - 1))
            for m, v in U.right_gen(a, k).items():
                _add(out, (m, rest, b), s * v)
            for m, v in U.left_gen(k, b).items():
                _add(out, (a, rest, m), mid_sign * s * v)
        for pi in range(len(idx)):
            for pj in range(pi + 1, len(idx)):
                s = c if (pi + pj) % 2 == 0 else -c  # (-1)^{(pi+1)+(pj+1)}
                ki, kj = idx[pi], idx[pj]
                rest = N ^ (1 << (ki - 1)) ^ (1 << (kj - 1))
                for l, v in g.bracket(ki, kj).items():
                    ws, W = wedge_left(l, rest)
                    if ws:
                        _add(out, (a, W, b), s * v * ws)
    return out


def coinduced_coboundary(U: Enveloping, x: Mapping[Key, Fraction], drop_twist: bool = False) -> dict[Key, Fraction]:
    """The differential of the coinduced resolution Q^n -> Q^{n+1}.

    d(a x_N b) = a' (x) a'' ^ x_N (x) b - (-1)^n a (x) x_N ^ b' (x) b''

    where a' (x) a'' is the part of Delta(a) in U (x) g and b' (x) b'' the part
    of Delta(b) in g (x) U.  ``drop_twist=True`` drops the (-1)^n, which does not
    square to zero; it is kept for comparison.
    """
    out: dict = {}
    for (a, N, b), c in x.items():
        n = popcount(N)
        for i, e in enumerate(a, start=1):
            if not e:
                continue
            ws, W = wedge_left(i, N)
            if ws:
                _add(out, (_bump(a, i, -1), W, b), c * e * ws)
        sb = -1 if drop_twist or n % 2 == 0 else 1
        for j, e in enumerate(b, start=1):
            if not e:
                continue
            ws, W = wedge_right(N, j)
            if ws:
                _add(out, (a, W, _bump(b, j, -1)), sb * c * e * ws)
    return out


def _matrix(fn: Callable, src: list[Key], tgt: list[Key]) -> RationalMatrix:
    index = {k: i for i, k in enumerate(tgt)}
    data: dict[int, dict[int, Fraction]] = {}
    for col, key in enumerate(src):
        for k, v in fn({key: Fraction(1)}).items():
            try:
                r = index[k]
            except KeyError:
                raise ValueError(f"image term {k} leaves the truncated target") from None
            data.setdefault(r, {})[col] = v
    return RationalMatrix.from_rows(len(tgt), len(src), data)


def induced_differential(g: LieAlgebraData, n: int, cap: int, mid_sign: int = -1) -> RationalMatrix:
    """Matrix of P_n -> P_{n-1} on cap-truncated bases (see :func:`resolution_basis`)."""
    U = Enveloping(g)
    return _matrix(
        lambda x: induced_boundary(U, x, mid_sign),
        resolution_basis(g.d, n, cap),
        resolution_basis(g.d, n - 1, cap),
    )


def coinduced_differential(g: LieAlgebraData, n: int, cap: int, drop_twist: bool = False) -> RationalMatrix:
    """Matrix of Q^n -> Q^{n+1} on cap-truncated bases."""
    U = Enveloping(g)
    return _matrix(
        lambda x: coinduced_coboundary(U, x, drop_twist),
        resolution_basis(g.d, n, cap),
        resolution_basis(g.d, n + 1, cap),
    )


def induced_complex(g: LieAlgebraData, cap: int) -> ChainComplex:
    """Truncated P_. written cohomologically: P_n sits in degree -n."""
    dims = {-n: len(resolution_basis(g.d, n, cap)) for n in range(0, g.d + 1)}
    diffs = {-n: induced_differential(g, n, cap) for n in range(1, g.d + 1)}
    return ChainComplex(dims, diffs)


def coinduced_complex(g: LieAlgebraData, cap: int) -> ChainComplex:
    dims = {n: len(resolution_basis(g.d, n, cap)) for n in range(0, g.d + 1)}
    diffs = {n: coinduced_differential(g, n, cap) for n in range(0, g.d)}
    return ChainComplex(dims, diffs)


# -- the hom-complex (wedge g (x) wedge g*, ad_lambda) ------------------------


def hom_complex(g: LieAlgebraData) -> ChainComplex:
    """(H, ad_lambda) for H = wedge g (x) wedge g*; zero differential for abelian g."""
    lam = lambda_element(g)
    hh, ok = mc_check(ProtoStructure(lam, g.d))
    if not ok:
        raise ValueError(f"[lambda, lambda] = {hh!r}: structure constants violate Jacobi")
    return ad(ProtoStructure(lam, g.d))


# -- Yoneda product in the abelian case -------------------------------------


@dataclass(frozen=True)
class HomElement:
    """A linear map wedge V -> wedge V: entries[(src, tgt)] sends x_src to coeff * x_tgt."""

    d: int
    entries: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {(int(s), int(t)): Fraction(v) for (s, t), v in self.entries.items() if v}
        object.__setattr__(self, "entries", clean)

    def component(self, p: int, q: int) -> RationalMatrix:
        """The part wedge^p -> wedge^q as a matrix in the subset bases."""
        src, tgt = wedge_basis(self.d, p), wedge_basis(self.d, q)
        si = {m: i for i, m in enumerate(src)}
        ti = {m: i for i, m in enumerate(tgt)}
        ent = {(ti[t], si[s]): v for (s, t), v in self.entries.items() if popcount(s) == p and popcount(t) == q}
        return RationalMatrix(len(tgt), len(src), ent)

    def __call__(self, src: int) -> dict[int, Fraction]:
        return {t: v for (s, t), v in self.entries.items() if s == src}

    def __add__(self, other: "HomElement") -> "HomElement":
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out.get(k, 0) + v
        return HomElement(self.d, out)

    def scale(self, c) -> "HomElement":
        return HomElement(self.d, {k: c * v for k, v in self.entries.items()})


def hom_from_h(x: Element, d: int) -> HomElement:
    """Identify e_I f_J in H with (-1)^{|J|(|J|-1)/2} times the map x_J -> x_I."""
    out = {}
    for m, c in x.items():
        j = popcount(m.J)
        s = -1 if (j * (j - 1) // 2) % 2 else 1
        out[m.J, m.I] = s * c
    return HomElement(d, out)


def h_from_hom(u: HomElement) -> Element:
    terms = {}
    for (s, t), c in u.entries.items():
        j = popcount(s)
        sg = -1 if (j * (j - 1) // 2) % 2 else 1
        terms[Monomial(t, s)] = sg * c
    return Element(terms)


def convolution(u: HomElement, v: HomElement) -> HomElement:
    """wedge o (u (x) v) o (co-wedge), with the Koszul sign of moving v past its input."""
    out: dict = {}
    for (S, U_), a in u.entries.items():
        for (T, V_), b in v.entries.items():
            s1, N = wedge(S, T)
            if not s1:
                continue
            s2, M = wedge(U_, V_)
            if not s2:
                continue
            koszul = -1 if ((popcount(T) + popcount(V_)) * popcount(S)) % 2 else 1
            _add(out, (N, M), s1 * s2 * koszul * a * b)
    return HomElement(u.d, out)


def yoneda_product(u: HomElement, v: HomElement, g: LieAlgebraData) -> HomElement:
    """Product of classes in H_GS(S(V)) = Hom(wedge V, wedge V), abelian g only."""
    if not g.is_abelian:
        raise NotImplementedError("the Yoneda product is only implemented for abelian g")
    if u.d != g.d or v.d != g.d:
        raise ValueError("dimension mismatch")
    return convolution(u, v)


# -- transport through the adjunction, abelian case -------------------------


@dataclass
class TransportReport:
    dim: int
    cap: int
    maps_checked: int = 0
    nonzero_full: list = field(default_factory=list)
    nonzero_transported: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.nonzero_full and not self.nonzero_transported

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "cap": self.cap,
            "maps_checked": self.maps_checked,
            "nonzero_full": self.nonzero_full[:20],
            "nonzero_transported": self.nonzero_transported[:20],
        }


def _extend(U: Enveloping, K: int, I: int, x: Mapping[Key, Fraction]) -> dict[Key, Fraction]:
    """The tetramodule map Ind(wedge^p) -> Coind(wedge^q) adjoint to x_K -> x_I.

    a (x) x_K (x) b  ->  sum (ab)' (x) x_I (x) (ab)''   (A commutative).
    """
    out: dict = {}
    for (a, N, b), c in x.items():
        if N != K:
            continue
        for ab, v in U.mul(a, b).items():
            for (l, r), w in U.coproduct(ab).items():
                _add(out, (l, I, r), c * v * w)
    return out


def _project(x: Mapping[Key, Fraction], one: Exp) -> dict[int, Fraction]:
    """(counit (x) id (x) counit) applied to an element of Q."""
    return {N: v for (a, N, b), v in x.items() if a == one and b == one}


def abelian_transport_check(
    d: int,
    cap: int,
    boundary: Callable | None = None,
    coboundary: Callable | None = None,
) -> TransportReport:
    """Transport the hom-complex differential through Hom(Ind X, Coind Y) = Hom(X, Y).

    For every basis map f: wedge^p -> wedge^q, the adjoint tetramodule map F is
    composed with both resolution differentials on the cap-truncated pieces.
    Both composites, and their images back under the adjunction, must vanish.
    """
    check_dim(d, max_dim=4)
    g = LieAlgebraData(d, {})
    U = Enveloping(g)
    boundary = boundary or (lambda x: induced_boundary(U, x))
    coboundary = coboundary or (lambda x: coinduced_coboundary(U, x))
    one = U.one()
    report = TransportReport(dim=d, cap=cap)
    for p in range(d + 1):
        for q in range(d + 1):
            for K in wedge_basis(d, p):
                for I in wedge_basis(d, q):
                    report.maps_checked += 1
                    F = lambda x: _extend(U, K, I, x)
                    tag = [list(mask_to_indices(K)), list(mask_to_indices(I))]
                    # F o boundary, on P_{p+1}
                    for key in resolution_basis(d, p + 1, cap):
                        img = F(boundary({key: Fraction(1)}))
                        if img:
                            report.nonzero_full.append({"map": tag, "kind": "F.boundary", "at": _key_json(key)})
                            if key[0] == one and key[2] == one and _project(img, one):
                                report.nonzero_transported.append({"map": tag, "kind": "F.boundary", "at": _key_json(key)})
                    # coboundary o F, on P_p
                    for key in resolution_basis(d, p, cap):
                        img = coboundary(F({key: Fraction(1)}))
                        if img:
                            report.nonzero_full.append({"map": tag, "kind": "coboundary.F", "at": _key_json(key)})
                            if key[0] == one and key[2] == one and _project(img, one):
                                report.nonzero_transported.append({"map": tag, "kind": "coboundary.F", "at": _key_json(key)})
    return report


def _key_json(key: Key) -> list:
    a, N, b = key
    return [list(a), list(mask_to_indices(N)), list(b)]
