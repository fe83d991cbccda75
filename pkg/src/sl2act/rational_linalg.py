"""Exact rational matrices: row reduction, rank, kernels and linear solves.

Scalars are :class:`fractions.Fraction`, which is always kept in lowest
terms with a positive denominator.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Sequence

Rational = Fraction


def to_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise TypeError("floats are not accepted as exact scalars")
    return Fraction(x)


def format_rational(q: Fraction) -> str:
    """Render as ``"p/q"``, or ``"p"`` when the denominator is 1."""
    q = to_rational(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(s) -> Fraction:
    if isinstance(s, str):
        return Fraction(s)
    if isinstance(s, int):
        return Fraction(s)
    raise ValueError(f"cannot parse rational from {s!r}")


class RatMatrix:
    """Dense immutable matrix over the rationals."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, data: Iterable[Iterable] = (), rows: Optional[int] = None,
                 cols: Optional[int] = None):
        entries = tuple(tuple(to_rational(x) for x in row) for row in data)
        if rows is None:
            rows = len(entries)
        if cols is None:
            cols = len(entries[0]) if entries else 0
        if len(entries) != rows:
            raise ValueError(f"expected {rows} rows, got {len(entries)}")
        for row in entries:
            if len(row) != cols:
                raise ValueError("ragged matrix rows")
        self.rows = rows
        self.cols = cols
        self._data = entries

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RatMatrix":
        z = Fraction(0)
        return cls._raw(tuple((z,) * cols for _ in range(rows)), rows, cols)

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        one, z = Fraction(1), Fraction(0)
        return cls._raw(tuple(tuple(one if i == j else z for j in range(n)) for i in range(n)), n, n)

    @classmethod
    def _raw(cls, data, rows, cols) -> "RatMatrix":
        m = cls.__new__(cls)
        m.rows, m.cols, m._data = rows, cols, data
        return m

    @classmethod
    def column(cls, vec: Sequence) -> "RatMatrix":
        return cls([[x] for x in vec], rows=len(vec), cols=1)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return self._data[i][j]

    def row(self, i: int) -> tuple:
        return self._data[i]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self._data)

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self._data]

    def __iter__(self):
        return iter(self._data)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self._data))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(format_rational(x) for x in r) for r in self._data)
        return f"RatMatrix({self.rows}x{self.cols}: [{body}])"

    def is_zero(self) -> bool:
        return all(x == 0 for r in self._data for x in r)

    def transpose(self) -> "RatMatrix":
        data = self._data
        return RatMatrix._raw(tuple(tuple(data[i][j] for i in range(self.rows)) for j in range(self.cols)),
                              self.cols, self.rows)

    @property
    def T(self) -> "RatMatrix":
        return self.transpose()

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        self._check_same(other)
        return RatMatrix._raw(tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._data, other._data)),
                              self.rows, self.cols)

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        self._check_same(other)
        return RatMatrix._raw(tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self._data, other._data)),
                              self.rows, self.cols)

    def __neg__(self) -> "RatMatrix":
        return self.scale(-1)

    def scale(self, c) -> "RatMatrix":
        c = to_rational(c)
        return RatMatrix._raw(tuple(tuple(c * x for x in r) for r in self._data), self.rows, self.cols)

    def __rmul__(self, c) -> "RatMatrix":
        return self.scale(c)

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        z = Fraction(0)
        out = []
        bdata = other._data
        for r in self._data:
            acc = [z] * other.cols
            for k, a in enumerate(r):
                if a:
                    brow = bdata[k]
                    for j, b in enumerate(brow):
                        if b:
                            acc[j] += a * b
            out.append(tuple(acc))
        return RatMatrix._raw(tuple(out), self.rows, other.cols)

    def apply(self, vec: Sequence) -> list[Fraction]:
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        return [sum((a * to_rational(v) for a, v in zip(r, vec) if a), Fraction(0)) for r in self._data]

    def _check_same(self, other: "RatMatrix") -> None:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def kron(self, other: "RatMatrix") -> "RatMatrix":
        rows = []
        for r in self._data:
            for s in other._data:
                rows.append(tuple(a * b for a in r for b in s))
        return RatMatrix._raw(tuple(rows), self.rows * other.rows, self.cols * other.cols)

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "RatMatrix":
        return RatMatrix._raw(tuple(tuple(self._data[i][j] for j in col_idx) for i in row_idx),
                              len(row_idx), len(col_idx))


def hstack(blocks: Sequence[RatMatrix], rows: Optional[int] = None) -> RatMatrix:
    if not blocks:
        return RatMatrix.zeros(rows or 0, 0)
    n = blocks[0].rows
    if any(b.rows != n for b in blocks):
        raise ValueError("hstack row mismatch")
    data = tuple(tuple(x for b in blocks for x in b.row(i)) for i in range(n))
    return RatMatrix._raw(data, n, sum(b.cols for b in blocks))


def vstack(blocks: Sequence[RatMatrix], cols: Optional[int] = None) -> RatMatrix:
    if not blocks:
        return RatMatrix.zeros(0, cols or 0)
    n = blocks[0].cols
    if any(b.cols != n for b in blocks):
        raise ValueError("vstack column mismatch")
    data = tuple(r for b in blocks for r in b)
    return RatMatrix._raw(data, sum(b.rows for b in blocks), n)


def block_diag(blocks: Sequence[RatMatrix]) -> RatMatrix:
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    z = Fraction(0)
    data = []
    offset = 0
    for b in blocks:
        for r in b:
            data.append((z,) * offset + tuple(r) + (z,) * (cols - offset - b.cols))
        offset += b.cols
    return RatMatrix._raw(tuple(data), rows, cols)


def rref(M: RatMatrix) -> tuple[RatMatrix, list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    a = [list(r) for r in M]
    nrows, ncols = M.rows, M.cols
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        pr = a[r]
        for i in range(nrows):
            if i != r and a[i][c] != 0:
                factor = a[i][c]
                a[i] = [x - factor * y for x, y in zip(a[i], pr)]
        pivots.append(c)
        r += 1
    return RatMatrix._raw(tuple(tuple(row) for row in a), nrows, ncols), pivots


def rank(M: RatMatrix) -> int:
    return len(rref(M)[1])


def kernel_basis(M: RatMatrix) -> list[list[Fraction]]:
    """Basis of ``{x : M x = 0}`` as a list of column vectors (plain lists)."""
    R, pivots = rref(M)
    pivot_set = set(pivots)
    free = [j for j in range(M.cols) if j not in pivot_set]
    basis = []
    for fcol in free:
        v = [Fraction(0)] * M.cols
        v[fcol] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -R[i, fcol]
        basis.append(v)
    return basis


def image_basis(M: RatMatrix) -> list[list[Fraction]]:
    """Columns of ``M`` at the pivot positions; a basis of the column space."""
    _, pivots = rref(M)
    return [list(M.col(j)) for j in pivots]


def solve_linear(A: RatMatrix, b: Sequence) -> Optional[list[Fraction]]:
    """One exact solution of ``A x = b``, or ``None`` when ``b`` is not in the image."""
    if len(b) != A.rows:
        raise ValueError(f"right-hand side has length {len(b)}, expected {A.rows}")
    aug = RatMatrix._raw(tuple(tuple(r) + (to_rational(bi),) for r, bi in zip(A, b)), A.rows, A.cols + 1)
    R, pivots = rref(aug)
    if pivots and pivots[-1] == A.cols:
        return None
    x = [Fraction(0)] * A.cols
    for i, pc in enumerate(pivots):
        x[pc] = R[i, A.cols]
    return x


def det(M: RatMatrix) -> Fraction:
    """Determinant by fraction-exact elimination."""
    if M.rows != M.cols:
        raise ValueError("determinant of a non-square matrix")
    a = [list(r) for r in M]
    n = M.rows
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            d = -d
        d *= a[c][c]
        for i in range(c + 1, n):
            if a[i][c]:
                f = a[i][c] / a[c][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return d


def matrix_to_json(M: RatMatrix) -> list[list[str]]:
    return [[format_rational(x) for x in r] for r in M]


def matrix_from_json(rows: list, ncols: Optional[int] = None) -> RatMatrix:
    data = [[parse_rational(x) for x in r] for r in rows]
    if not data:
        return RatMatrix.zeros(0, ncols or 0)
    return RatMatrix(data)
