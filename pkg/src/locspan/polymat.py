"""Exact linear algebra over polynomial rings, their fraction fields, and base fields.

Polynomial matrices get fraction-free (Bareiss) determinants, minors and
rank over the fraction field; scalar matrices get Gaussian elimination with
a fixed pivot rule so solutions and nullspace bases are reproducible
bit-exactly.
"""

from __future__ import annotations

import itertools
from typing import Optional, Sequence

from .exactalg import Field, Polynomial, exact_div


class ScalarMatrix:
    """Immutable rectangular matrix over an exact field."""

    __slots__ = ("rows", "cols", "field", "entries")

    def __init__(self, entries: Sequence[Sequence], field: Field, cols: Optional[int] = None):
        rows = len(entries)
        if rows:
            width = len(entries[0])
        else:
            width = cols or 0
        normalized = []
        for row in entries:
            if len(row) != width:
                raise ValueError("matrix rows have inconsistent lengths")
            normalized.append(tuple(field.normalize(x) for x in row))
        self.rows = rows
        self.cols = width
        self.field = field
        self.entries = tuple(normalized)

    @classmethod
    def identity(cls, n: int, field: Field) -> "ScalarMatrix":
        return cls([[field.one if i == j else field.zero for j in range(n)]
                    for i in range(n)], field)

    @classmethod
    def zeros(cls, rows: int, cols: int, field: Field) -> "ScalarMatrix":
        return cls([[field.zero] * cols for _ in range(rows)], field, cols=cols)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], field: Field) -> "ScalarMatrix":
        rows = len(columns[0])
        return cls([[columns[j][i] for j in range(len(columns))]
                    for i in range(rows)], field)

    def __getitem__(self, pos):
        i, j = pos
        return self.entries[i][j]

    def row(self, i: int) -> tuple:
        return self.entries[i]

    def column(self, j: int) -> tuple:
        return tuple(self.entries[i][j] for i in range(self.rows))

    def transpose(self) -> "ScalarMatrix":
        return ScalarMatrix(
            [[self.entries[i][j] for i in range(self.rows)]
             for j in range(self.cols)], self.field, cols=self.rows)

    def trace(self):
        if self.rows != self.cols:
            raise ValueError("trace of a non-square matrix")
        total = self.field.zero
        for i in range(self.rows):
            total = self.field.add(total, self.entries[i][i])
        return total

    def __matmul__(self, other: "ScalarMatrix") -> "ScalarMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch in matrix product")
        f = self.field
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = f.zero
                for k in range(self.cols):
                    acc = f.add(acc, f.mul(self.entries[i][k], other.entries[k][j]))
                row.append(acc)
            out.append(row)
        return ScalarMatrix(out, f, cols=other.cols)

    def matvec(self, vec: Sequence) -> tuple:
        if len(vec) != self.cols:
            raise ValueError("dimension mismatch in matrix-vector product")
        f = self.field
        vec = [f.normalize(v) for v in vec]
        out = []
        for i in range(self.rows):
            acc = f.zero
            for k in range(self.cols):
                acc = f.add(acc, f.mul(self.entries[i][k], vec[k]))
            out.append(acc)
        return tuple(out)

    def scale(self, value) -> "ScalarMatrix":
        f = self.field
        v = f.normalize(value)
        return ScalarMatrix([[f.mul(x, v) for x in row] for row in self.entries],
                            f, cols=self.cols)

    def __add__(self, other: "ScalarMatrix") -> "ScalarMatrix":
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("dimension mismatch in matrix sum")
        f = self.field
        return ScalarMatrix(
            [[f.add(a, b) for a, b in zip(r1, r2)]
             for r1, r2 in zip(self.entries, other.entries)], f, cols=self.cols)

    def __sub__(self, other: "ScalarMatrix") -> "ScalarMatrix":
        return self + other.scale(self.field.neg(self.field.one))

    def __eq__(self, other):
        return (isinstance(other, ScalarMatrix) and self.field == other.field
                and self.cols == other.cols and self.entries == other.entries)

    def __hash__(self):
        return hash((self.field, self.cols, self.entries))

    def __repr__(self):
        body = "; ".join(" ".join(self.field.format(x) for x in row)
                         for row in self.entries)
        return f"ScalarMatrix[{body}]"


def outer_product(u: Sequence, v: Sequence, field: Field) -> ScalarMatrix:
    """The rank <= 1 matrix ``u * v^T``."""
    u = [field.normalize(x) for x in u]
    v = [field.normalize(x) for x in v]
    return ScalarMatrix([[field.mul(a, b) for b in v] for a in u], field,
                        cols=len(v))


def _rref(rows: list, field: Field):
    """In-place reduced row echelon form; returns the pivot column list."""
    m = len(rows)
    ncols = len(rows[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, m) if rows[i][c] != field.zero), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = field.inv(rows[r][c])
        rows[r] = [field.mul(inv, x) for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][c] != field.zero:
                factor = rows[i][c]
                rows[i] = [field.sub(x, field.mul(factor, y))
                           for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return pivots


def rref(matrix: ScalarMatrix):
    """Reduced row echelon form and pivot columns."""
    rows = [list(row) for row in matrix.entries]
    pivots = _rref(rows, matrix.field)
    return ScalarMatrix(rows, matrix.field, cols=matrix.cols), tuple(pivots)


def rank(matrix: ScalarMatrix) -> int:
    rows = [list(row) for row in matrix.entries]
    return len(_rref(rows, matrix.field))


def solve_over_field(matrix: ScalarMatrix, rhs: Sequence) -> Optional[tuple]:
    """Some solution of ``A x = b`` (free variables set to 0), or None."""
    if len(rhs) != matrix.rows:
        raise ValueError("right-hand side length does not match row count")
    field = matrix.field
    rhs = [field.normalize(v) for v in rhs]
    rows = [list(row) + [rhs[i]] for i, row in enumerate(matrix.entries)]
    pivots = _rref(rows, field)
    if matrix.cols in pivots:
        return None
    solution = [field.zero] * matrix.cols
    for r, c in enumerate(pivots):
        solution[c] = rows[r][matrix.cols]
    return tuple(solution)


def nullspace_over_field(matrix: ScalarMatrix) -> list:
    """Basis of the right nullspace in the reduced-echelon convention."""
    field = matrix.field
    rows = [list(row) for row in matrix.entries]
    pivots = _rref(rows, field)
    pivot_set = set(pivots)
    basis = []
    for free in range(matrix.cols):
        if free in pivot_set:
            continue
        vec = [field.zero] * matrix.cols
        vec[free] = field.one
        for r, c in enumerate(pivots):
            vec[c] = field.neg(rows[r][free])
        basis.append(tuple(vec))
    return basis


class PolyMatrix:
    """Immutable rectangular matrix of polynomials over one ambient ring."""

    __slots__ = ("rows", "cols", "nvars", "field", "entries")

    def __init__(self, entries: Sequence[Sequence[Polynomial]]):
        if not entries or not entries[0]:
            raise ValueError("polynomial matrix must be non-empty")
        width = len(entries[0])
        first = entries[0][0]
        normalized = []
        for row in entries:
            if len(row) != width:
                raise ValueError("matrix rows have inconsistent lengths")
            for p in row:
                first._check(p)
            normalized.append(tuple(row))
        self.rows = len(entries)
        self.cols = width
        self.nvars = first.nvars
        self.field = first.field
        self.entries = tuple(normalized)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[Polynomial]]) -> "PolyMatrix":
        rows = len(columns[0])
        return cls([[columns[j][i] for j in range(len(columns))]
                    for i in range(rows)])

    def __getitem__(self, pos):
        i, j = pos
        return self.entries[i][j]

    def column(self, j: int) -> tuple:
        return tuple(self.entries[i][j] for i in range(self.rows))

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "PolyMatrix":
        return PolyMatrix([[self.entries[i][j] for j in col_idx] for i in row_idx])

    def with_column(self, j: int, column: Sequence[Polynomial]) -> "PolyMatrix":
        if len(column) != self.rows:
            raise ValueError("replacement column has wrong length")
        return PolyMatrix([
            [column[i] if c == j else self.entries[i][c] for c in range(self.cols)]
            for i in range(self.rows)])

    def augment(self, column: Sequence[Polynomial]) -> "PolyMatrix":
        if len(column) != self.rows:
            raise ValueError("augmenting column has wrong length")
        return PolyMatrix([list(row) + [column[i]]
                           for i, row in enumerate(self.entries)])

    def evaluate(self, point: Sequence) -> ScalarMatrix:
        """Entrywise evaluation at a point of the coefficient field."""
        return ScalarMatrix(
            [[p.evaluate(point) for p in row] for row in self.entries],
            self.field, cols=self.cols)

    def det(self) -> Polynomial:
        """Exact determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        zero = Polynomial.zero(self.nvars, self.field)
        one = Polynomial.one(self.nvars, self.field)
        if n == 1:
            return self.entries[0][0]
        a = [list(row) for row in self.entries]
        sign = 1
        prev = one
        for k in range(n - 1):
            pivot = next((i for i in range(k, n) if not a[i][k].is_zero()), None)
            if pivot is None:
                return zero
            if pivot != k:
                a[k], a[pivot] = a[pivot], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    num = a[k][k] * a[i][j] - a[i][k] * a[k][j]
                    # exact by the Bareiss/Sylvester identity
                    a[i][j] = exact_div(num, prev)
                a[i][k] = zero
            prev = a[k][k]
        result = a[n - 1][n - 1]
        return -result if sign < 0 else result

    def minors(self, s: int) -> list:
        """All s x s minors with their index sets, lexicographic in (rows, cols)."""
        if not 1 <= s <= min(self.rows, self.cols):
            raise ValueError(
                f"minor size {s} out of range for a {self.rows}x{self.cols} matrix")
        out = []
        for row_idx in itertools.combinations(range(self.rows), s):
            for col_idx in itertools.combinations(range(self.cols), s):
                out.append((row_idx, col_idx,
                            self.submatrix(row_idx, col_idx).det()))
        return out

    def rank_over_fractions(self) -> int:
        """Rank over the fraction field, by fraction-free elimination.

        Pivot rule: first nonzero entry in a row-major scan of the
        remaining submatrix, so runs are reproducible.
        """
        a = [list(row) for row in self.entries]
        one = Polynomial.one(self.nvars, self.field)
        zero = Polynomial.zero(self.nvars, self.field)
        prev = one
        r = 0
        for c in range(self.cols):
            pivot = next((i for i in range(r, self.rows) if not a[i][c].is_zero()),
                         None)
            if pivot is None:
                continue
            if pivot != r:
                a[r], a[pivot] = a[pivot], a[r]
            for i in range(r + 1, self.rows):
                for j in range(c + 1, self.cols):
                    num = a[r][c] * a[i][j] - a[i][c] * a[r][j]
                    a[i][j] = exact_div(num, prev)
                a[i][c] = zero
            prev = a[r][c]
            r += 1
            if r == self.rows:
                break
        return r

    def __eq__(self, other):
        return (isinstance(other, PolyMatrix) and self.entries == other.entries)

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        body = "; ".join(" ".join(str(p) for p in row) for row in self.entries)
        return f"PolyMatrix[{body}]"
