"""Exact sparse linear algebra over the rationals.

Elimination is fraction-free: rows are scaled to integers, combined with
integer multipliers and divided by their content, so no Fraction arithmetic
happens inside the inner loop.  Pivots are chosen deterministically (the
first nonzero column of each row, rows taken in order), which makes kernel
bases reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence


class DimensionError(ValueError):
    pass


class RationalMatrix:
    """Sparse matrix with exact rational entries, stored row-wise.

    Treated as immutable once built.
    """

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows: int, cols: int, entries: Mapping[tuple[int, int], object] | None = None):
        if rows < 0 or cols < 0:
            raise DimensionError("negative matrix dimensions")
        self.rows = rows
        self.cols = cols
        data: dict[int, dict[int, Fraction]] = {}
        if entries:
            for (r, c), v in entries.items():
                if not (0 <= r < rows and 0 <= c < cols):
                    raise DimensionError(f"entry ({r}, {c}) outside {rows}x{cols}")
                if isinstance(v, float):
                    raise TypeError("floating point entries are not allowed")
                v = Fraction(v)
                if v:
                    data.setdefault(r, {})[c] = v
        self._data = data

    @classmethod
    def from_rows(cls, rows: int, cols: int, data: dict[int, dict[int, Fraction]]) -> "RationalMatrix":
        """Wrap row dictionaries without copying; zero entries must already be absent."""
        m = cls.__new__(cls)
        m.rows, m.cols = rows, cols
        m._data = {r: row for r, row in data.items() if row}
        return m

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[object]], cols: int | None = None) -> "RationalMatrix":
        nrows = len(rows)
        ncols = cols if cols is not None else (len(rows[0]) if rows else 0)
        entries = {}
        for r, row in enumerate(rows):
            if len(row) != ncols:
                raise DimensionError("ragged dense matrix")
            for c, v in enumerate(row):
                if v:
                    entries[r, c] = v
        return cls(nrows, ncols, entries)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls.from_rows(n, n, {i: {i: Fraction(1)} for i in range(n)})

    @classmethod
    def from_columns(cls, rows: int, columns: Sequence[Mapping[int, Fraction]]) -> "RationalMatrix":
        data: dict[int, dict[int, Fraction]] = {}
        for c, col in enumerate(columns):
            for r, v in col.items():
                if v:
                    data.setdefault(r, {})[c] = Fraction(v)
        return cls.from_rows(rows, len(columns), data)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, rc: tuple[int, int]) -> Fraction:
        r, c = rc
        return self._data.get(r, {}).get(c, Fraction(0))

    def entries(self) -> Iterable[tuple[int, int, Fraction]]:
        for r in sorted(self._data):
            row = self._data[r]
            for c in sorted(row):
                yield r, c, row[c]

    def row(self, r: int) -> dict[int, Fraction]:
        return dict(self._data.get(r, {}))

    def nnz(self) -> int:
        return sum(len(row) for row in self._data.values())

    def is_zero(self) -> bool:
        return not self._data

    def to_dense(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for r, c, v in self.entries():
            out[r][c] = v
        return out

    def transpose(self) -> "RationalMatrix":
        data: dict[int, dict[int, Fraction]] = {}
        for r, row in self._data.items():
            for c, v in row.items():
                data.setdefault(c, {})[r] = v
        return RationalMatrix.from_rows(self.cols, self.rows, data)

    def column(self, c: int) -> dict[int, Fraction]:
        return {r: row[c] for r, row in self._data.items() if c in row}

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        data: dict[int, dict[int, Fraction]] = {}
        odata = other._data
        for r, row in self._data.items():
            acc: dict[int, Fraction] = {}
            for k, a in row.items():
                orow = odata.get(k)
                if not orow:
                    continue
                for c, b in orow.items():
                    acc[c] = acc.get(c, 0) + a * b
            acc = {c: v for c, v in acc.items() if v}
            if acc:
                data[r] = acc
        return RationalMatrix.from_rows(self.rows, other.cols, data)

    def apply(self, vec: Mapping[int, object]) -> dict[int, Fraction]:
        """Matrix times a sparse column vector."""
        out = {}
        for r, row in self._data.items():
            s = sum((v * vec[c] for c, v in row.items() if c in vec), Fraction(0))
            if s:
                out[r] = s
        return out

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.shape != other.shape:
            raise DimensionError(f"cannot add {self.shape} and {other.shape}")
        data = {r: dict(row) for r, row in self._data.items()}
        for r, row in other._data.items():
            tgt = data.setdefault(r, {})
            for c, v in row.items():
                s = tgt.get(c, 0) + v
                if s:
                    tgt[c] = s
                else:
                    tgt.pop(c, None)
        return RationalMatrix.from_rows(self.rows, self.cols, data)

    def __neg__(self) -> "RationalMatrix":
        return self.scale(-1)

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        return self + (-other)

    def scale(self, s) -> "RationalMatrix":
        s = Fraction(s)
        if not s:
            return RationalMatrix(self.rows, self.cols)
        return RationalMatrix.from_rows(
            self.rows, self.cols, {r: {c: s * v for c, v in row.items()} for r, row in self._data.items()}
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __repr__(self) -> str:
        return f"RationalMatrix({self.rows}x{self.cols}, nnz={self.nnz()})"


def block_matrix(row_sizes: Sequence[int], col_sizes: Sequence[int], blocks: Mapping[tuple[int, int], RationalMatrix]) -> RationalMatrix:
    """Assemble a matrix from blocks keyed by (block_row, block_col)."""
    roff = [0]
    for s in row_sizes:
        roff.append(roff[-1] + s)
    coff = [0]
    for s in col_sizes:
        coff.append(coff[-1] + s)
    data: dict[int, dict[int, Fraction]] = {}
    for (bi, bj), blk in blocks.items():
        if blk.shape != (row_sizes[bi], col_sizes[bj]):
            raise DimensionError(f"block ({bi}, {bj}) has shape {blk.shape}")
        for r, c, v in blk.entries():
            data.setdefault(roff[bi] + r, {})[coff[bj] + c] = v
    return RationalMatrix.from_rows(roff[-1], coff[-1], data)


# -- elimination ------------------------------------------------------------


def _integer_row(row: Mapping[int, Fraction]) -> dict[int, int]:
    den = reduce(lcm, (v.denominator for v in row.values()), 1)
    return {c: int(v * den) for c, v in row.items()}


def _normalize(row: dict[int, int]) -> dict[int, int]:
    g = reduce(gcd, row.values(), 0)
    if g > 1:
        row = {c: v // g for c, v in row.items()}
    return row


def _eliminate(row: dict[int, int], pivot_col: int, prow: dict[int, int]) -> dict[int, int]:
    """Clear ``pivot_col`` from ``row`` using the pivot row ``prow``."""
    a = row.get(pivot_col)
    if not a:
        return row
    p = prow[pivot_col]
    g = gcd(a, p)
    mr, mp = p // g, a // g
    if mr < 0:
        mr, mp = -mr, -mp
    out = {c: mr * v for c, v in row.items()} if mr != 1 else dict(row)
    for c, v in prow.items():
        s = out.get(c, 0) - mp * v
        if s:
            out[c] = s
        else:
            out.pop(c, None)
    return _normalize(out)


class _Echelon:
    """Reduced echelon form built one row at a time (Gauss-Jordan, integer rows)."""

    def __init__(self):
        self.pivots: dict[int, dict[int, int]] = {}  # pivot column -> reduced row
        self.order: list[int] = []

    def reduce(self, row: dict[int, int]) -> dict[int, int]:
        for pc in self.order:
            if pc in row:
                row = _eliminate(row, pc, self.pivots[pc])
        return row

    def add(self, row: dict[int, int], limit: int | None = None) -> int | None:
        """Insert a row; returns its pivot column, or None if it reduced to zero.

        Columns >= ``limit`` are never chosen as pivots unless no smaller column
        is present (used for augmented systems).
        """
        row = self.reduce(row)
        if not row:
            return None
        pc = min(row)
        if limit is not None and pc >= limit:
            return pc
        for other in self.order:
            prow = self.pivots[other]
            if pc in prow:
                self.pivots[other] = _eliminate(prow, pc, row)
        self.pivots[pc] = row
        self.order.append(pc)
        return pc


def _echelon(M: RationalMatrix) -> _Echelon:
    ech = _Echelon()
    for r in sorted(M._data):
        ech.add(_integer_row(M._data[r]))
    return ech


def rank(M: RationalMatrix) -> int:
    return len(_echelon(M).pivots)


def kernel_basis(M: RationalMatrix) -> list[dict[int, Fraction]]:
    """Basis of the null space as sparse vectors, one per free column."""
    ech = _echelon(M)
    pivots = ech.pivots
    free = [c for c in range(M.cols) if c not in pivots]
    free_set = set(free)
    # for each free column: pivot rows that mention it
    touching: dict[int, list[int]] = {}
    for pc, row in pivots.items():
        for c in row:
            if c in free_set:
                touching.setdefault(c, []).append(pc)
    basis = []
    for f in free:
        vec = {f: Fraction(1)}
        for pc in touching.get(f, ()):
            row = pivots[pc]
            vec[pc] = Fraction(-row[f], row[pc])
        basis.append(vec)
    return basis


def kernel_matrix(M: RationalMatrix) -> RationalMatrix:
    """Kernel basis as the columns of a cols x k matrix."""
    return RationalMatrix.from_columns(M.cols, kernel_basis(M))


def solve(M: RationalMatrix, b: Sequence[object] | Mapping[int, object]) -> list[Fraction] | None:
    """Some x with M x = b, or None when b is not in the image of M.

    Free variables are set to zero.
    """
    if isinstance(b, Mapping):
        bvec = {int(k): Fraction(v) for k, v in b.items()}
        if any(not 0 <= k < M.rows for k in bvec):
            raise DimensionError("right-hand side index out of range")
    else:
        if len(b) != M.rows:
            raise DimensionError(f"right-hand side has length {len(b)}, expected {M.rows}")
        bvec = {k: Fraction(v) for k, v in enumerate(b) if v}
    n = M.cols
    ech = _Echelon()
    for r in range(M.rows):
        row = dict(M._data.get(r, {}))
        if r in bvec:
            row[n] = bvec[r]
        if not row:
            continue
        pc = ech.add(_integer_row(row), limit=n)
        if pc is not None and pc >= n:
            return None
    x = [Fraction(0)] * n
    for pc, row in ech.pivots.items():
        x[pc] = Fraction(row.get(n, 0), row[pc])
    return x


def is_in_image(M: RationalMatrix, b) -> bool:
    return solve(M, b) is not None


# -- complexes --------------------------------------------------------------


class SquareZeroError(ArithmeticError):
    """A composition d_{n+1} d_n is nonzero."""

    def __init__(self, degree: int, product: RationalMatrix):
        self.degree = degree
        self.product = product
        super().__init__(f"d_{degree + 1} * d_{degree} != 0 ({product.nnz()} nonzero entries)")


@dataclass(frozen=True)
class ChainComplex:
    """A cochain complex of finite-dimensional spaces.

    ``dims[n]`` is the dimension of the degree-n space for n in [lo, hi];
    ``diffs[n]`` maps degree n to degree n + 1.  Missing differentials are
    zero maps.
    """

    dims: dict[int, int]
    diffs: dict[int, RationalMatrix] = field(default_factory=dict)

    def __post_init__(self):
        for n, M in self.diffs.items():
            src = self.dims.get(n, 0)
            tgt = self.dims.get(n + 1, 0)
            if M.shape != (tgt, src):
                raise DimensionError(f"d_{n} has shape {M.shape}, expected {(tgt, src)}")

    @property
    def lo(self) -> int:
        return min(self.dims)

    @property
    def hi(self) -> int:
        return max(self.dims)

    def differential(self, n: int) -> RationalMatrix:
        M = self.diffs.get(n)
        if M is None:
            return RationalMatrix(self.dims.get(n + 1, 0), self.dims.get(n, 0))
        return M

    def check_square_zero(self) -> None:
        for n in range(self.lo, self.hi):
            prod = self.differential(n + 1) @ self.differential(n)
            if not prod.is_zero():
                raise SquareZeroError(n, prod)

    def is_square_zero(self) -> bool:
        try:
            self.check_square_zero()
        except SquareZeroError:
            return False
        return True


def cohomology_dims(C: ChainComplex) -> dict[int, int]:
    """dim H^n = dim ker d_n - rank d_{n-1}, for every degree of ``C``."""
    C.check_square_zero()
    ranks = {n: rank(C.differential(n)) for n in range(C.lo - 1, C.hi + 1)}
    return {n: C.dims.get(n, 0) - ranks[n] - ranks[n - 1] for n in range(C.lo, C.hi + 1)}


def euler_characteristic(dims: Mapping[int, int]) -> int:
    return sum((-1) ** (n % 2) * v for n, v in dims.items())
