"""Dense matrices over GF(2^m).

Elimination is deterministic: in the leftmost unresolved column the pivot is
the first nonzero entry scanning top to bottom. Pivot-column lists are
therefore reproducible, which matters when they select an invertible column
submatrix of T for message recovery.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import DimensionMismatch, IndexOutOfRange, Singular
from .gf import GF


class Matrix:
    """A rows x cols matrix stored as a list of row lists."""

    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field: GF, rows: Iterable[Sequence[int]], ncols: int | None = None):
        rows = [[field.check(v) for v in row] for row in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        for row in rows:
            if len(row) != ncols:
                raise DimensionMismatch("ragged matrix rows")
        self.field = field
        self.nrows = len(rows)
        self.ncols = ncols
        self.rows = rows

    @classmethod
    def identity(cls, field: GF, n: int) -> "Matrix":
        return cls(field, [[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, field: GF, nrows: int, ncols: int) -> "Matrix":
        return cls(field, [[0] * ncols for _ in range(nrows)], ncols)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.shape == other.shape
            and self.rows == other.rows
        )

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols}, {self.rows})"

    def copy(self) -> "Matrix":
        return Matrix(self.field, [list(r) for r in self.rows], self.ncols)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def column(self, j: int) -> list[int]:
        return [row[j] for row in self.rows]

    def transpose(self) -> "Matrix":
        return Matrix(self.field, [self.column(j) for j in range(self.ncols)], self.nrows)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        return mat_mul(self, other)

    def vecmul(self, v: Sequence[int]) -> list[int]:
        """Row vector times matrix: v @ self."""
        if len(v) != self.nrows:
            raise DimensionMismatch(f"vector of length {len(v)} against {self.nrows} rows")
        f = self.field
        out = [0] * self.ncols
        for a, row in zip(v, self.rows):
            if a:
                for j, b in enumerate(row):
                    if b:
                        out[j] ^= f.mul(a, b)
        return out

    def vstack(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.ncols and self.nrows and other.nrows:
            raise DimensionMismatch("column counts differ")
        ncols = self.ncols if self.nrows else other.ncols
        return Matrix(self.field, self.tolist() + other.tolist(), ncols)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if a.ncols != b.nrows:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
    return Matrix(a.field, [b.vecmul(row) for row in a.rows], b.ncols)


def row_echelon_pivots(a: Matrix) -> tuple[Matrix, list[int]]:
    """Row echelon form (pivots scaled to 1) and the ascending pivot columns."""
    f = a.field
    rows = [list(r) for r in a.rows]
    pivots: list[int] = []
    r = 0
    for col in range(a.ncols):
        if r == len(rows):
            break
        found = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if found is None:
            continue
        rows[r], rows[found] = rows[found], rows[r]
        inv = f.inv(rows[r][col])
        rows[r] = [f.mul(v, inv) for v in rows[r]]
        pivot_row = rows[r]
        for i in range(r + 1, len(rows)):
            c = rows[i][col]
            if c:
                rows[i] = [v ^ f.mul(c, p) for v, p in zip(rows[i], pivot_row)]
        pivots.append(col)
        r += 1
    return Matrix(f, rows, a.ncols), pivots


def rank(a: Matrix) -> int:
    return len(row_echelon_pivots(a)[1])


def invert(a: Matrix) -> Matrix:
    """Gauss-Jordan inverse of a square matrix."""
    f = a.field
    n = a.nrows
    if n != a.ncols:
        raise DimensionMismatch(f"cannot invert non-square {a.shape} matrix")
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(a.rows)]
    for col in range(n):
        found = next((i for i in range(col, n) if aug[i][col]), None)
        if found is None:
            raise Singular("matrix is singular")
        aug[col], aug[found] = aug[found], aug[col]
        inv = f.inv(aug[col][col])
        aug[col] = [f.mul(v, inv) for v in aug[col]]
        pivot_row = aug[col]
        for i in range(n):
            c = aug[i][col]
            if i != col and c:
                aug[i] = [v ^ f.mul(c, p) for v, p in zip(aug[i], pivot_row)]
    return Matrix(f, [row[n:] for row in aug], n)


def select_columns(a: Matrix, idx: Sequence[int]) -> Matrix:
    for j in idx:
        if not 0 <= j < a.ncols:
            raise IndexOutOfRange(f"column {j} out of range for {a.ncols} columns")
    return Matrix(a.field, [[row[j] for j in idx] for row in a.rows], len(idx))


def solve(a: Matrix, b: Sequence[int]) -> list[int] | None:
    """One solution x of a @ x = b (free variables set to 0), or None if inconsistent."""
    f = a.field
    if len(b) != a.nrows:
        raise DimensionMismatch("right-hand side length differs from row count")
    n = a.ncols
    aug = [list(row) + [bi] for row, bi in zip(a.rows, b)]
    pivots = []
    r = 0
    for col in range(n):
        found = next((i for i in range(r, len(aug)) if aug[i][col]), None)
        if found is None:
            continue
        aug[r], aug[found] = aug[found], aug[r]
        inv = f.inv(aug[r][col])
        aug[r] = [f.mul(v, inv) for v in aug[r]]
        pivot_row = aug[r]
        for i in range(len(aug)):
            c = aug[i][col]
            if i != r and c:
                aug[i] = [v ^ f.mul(c, p) for v, p in zip(aug[i], pivot_row)]
        pivots.append(col)
        r += 1
        if r == len(aug):
            break
    if any(row[n] for row in aug[r:]):
        return None
    x = [0] * n
    for i, col in enumerate(pivots):
        x[col] = aug[i][n]
    return x
