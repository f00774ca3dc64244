"""Exact dense matrices over Q and Q(i) with fraction-free elimination."""
from __future__ import annotations

from math import lcm

from gmpy2 import mpq

from .coeff import ONE, ZERO, QQi, cnorm, coerce, conj, format_coeff, is_real


class ExactMatrix:
    """Immutable ``rows x cols`` matrix of exact coefficients."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data, rows=None, cols=None):
        data = [[coerce(x) for x in row] for row in data]
        if rows is None:
            rows = len(data)
        if cols is None:
            cols = len(data[0]) if data else 0
        if len(data) != rows or any(len(r) != cols for r in data):
            raise ValueError("ragged or mis-sized matrix data")
        self.rows = rows
        self.cols = cols
        self.data = tuple(tuple(r) for r in data)

    @classmethod
    def zeros(cls, rows, cols):
        return cls([[ZERO] * cols for _ in range(rows)], rows, cols)

    @classmethod
    def identity(cls, n):
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)], n, n)

    @classmethod
    def column(cls, vec):
        return cls([[x] for x in vec], len(vec), 1)

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.data) == (other.rows, other.cols, other.data)

    def __hash__(self):
        return hash((self.rows, self.cols, self.data))

    def __repr__(self):
        body = "; ".join(", ".join(format_coeff(x) for x in r) for r in self.data)
        return f"ExactMatrix({self.rows}x{self.cols}: [{body}])"

    @property
    def shape(self):
        return (self.rows, self.cols)

    def is_real(self):
        return all(is_real(x) for r in self.data for x in r)

    def is_zero(self):
        return not any(x for r in self.data for x in r)

    def transpose(self):
        return ExactMatrix([list(c) for c in zip(*self.data)] if self.rows else [[] for _ in range(self.cols)],
                           self.cols, self.rows)

    @property
    def T(self):
        return self.transpose()

    def conj_transpose(self):
        return ExactMatrix([[conj(x) for x in c] for c in zip(*self.data)] if self.rows else [[] for _ in range(self.cols)],
                           self.cols, self.rows)

    @property
    def H(self):
        return self.conj_transpose()

    def __add__(self, other):
        self._same_shape(other)
        return ExactMatrix([[cnorm(a + b) for a, b in zip(r, s)] for r, s in zip(self.data, other.data)],
                           self.rows, self.cols)

    def __sub__(self, other):
        self._same_shape(other)
        return ExactMatrix([[cnorm(a - b) for a, b in zip(r, s)] for r, s in zip(self.data, other.data)],
                           self.rows, self.cols)

    def __neg__(self):
        return ExactMatrix([[-a for a in r] for r in self.data], self.rows, self.cols)

    def scale(self, c):
        c = coerce(c)
        return ExactMatrix([[cnorm(a * c) for a in r] for r in self.data], self.rows, self.cols)

    def _same_shape(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __matmul__(self, other):
        if isinstance(other, (list, tuple)):
            if len(other) != self.cols:
                raise ValueError("dimension mismatch in matrix-vector product")
            return [cnorm(sum((a * b for a, b in zip(r, other)), ZERO)) for r in self.data]
        if self.cols != other.rows:
            raise ValueError(f"dimension mismatch {self.shape} @ {other.shape}")
        cols = list(zip(*other.data)) if other.rows else [()] * other.cols
        return ExactMatrix(
            [[cnorm(sum((a * b for a, b in zip(r, c)), ZERO)) for c in cols] for r in self.data],
            self.rows, other.cols)

    def trace(self):
        return cnorm(sum((self.data[i][i] for i in range(min(self.rows, self.cols))), ZERO))

    def submatrix(self, rows, cols):
        return ExactMatrix([[self.data[i][j] for j in cols] for i in rows], len(rows), len(cols))

    # -- elimination ----------------------------------------------------

    def _integral_rows(self):
        """Rows scaled by their denominator lcm (real case only)."""
        out = []
        for r in self.data:
            m = lcm(*(int(mpq(x).denominator) for x in r)) if r else 1
            out.append([int(mpq(x) * m) for x in r])
        return out

    def rank(self) -> int:
        return exact_rank(self)

    def det(self):
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        return bareiss_det(self.data)

    def rref(self):
        """Reduced row echelon form and pivot columns (Gauss-Jordan, exact)."""
        a = [list(r) for r in self.data]
        pivots = []
        row = 0
        for col in range(self.cols):
            piv = next((i for i in range(row, self.rows) if a[i][col]), None)
            if piv is None:
                continue
            a[row], a[piv] = a[piv], a[row]
            inv = ONE / a[row][col]
            a[row] = [cnorm(x * inv) for x in a[row]]
            for i in range(self.rows):
                if i != row and a[i][col]:
                    f = a[i][col]
                    a[i] = [cnorm(x - f * y) for x, y in zip(a[i], a[row])]
            pivots.append(col)
            row += 1
            if row == self.rows:
                break
        return ExactMatrix(a, self.rows, self.cols), pivots

    def kernel_basis(self) -> list[list]:
        """Exact basis of the right kernel as a list of vectors."""
        red, pivots = self.rref()
        free = [j for j in range(self.cols) if j not in pivots]
        basis = []
        for f in free:
            v = [ZERO] * self.cols
            v[f] = ONE
            for i, p in enumerate(pivots):
                v[p] = cnorm(-red.data[i][f])
            basis.append(v)
        return basis

    def image_basis(self) -> list[list]:
        """Pivot columns of the matrix: an exact basis of its column span."""
        _, pivots = self.rref()
        return [[self.data[i][j] for i in range(self.rows)] for j in pivots]


def bareiss_det(a: list[list]):
    """Fraction-free determinant of a square list-of-rows matrix."""
    a = [list(r) for r in a]
    n = len(a)
    if n == 0:
        return ONE
    sign = ONE
    prev = ONE
    for k in range(n - 1):
        if not a[k][k]:
            piv = next((i for i in range(k + 1, n) if a[i][k]), None)
            if piv is None:
                return ZERO
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = cnorm((row_i[j] * akk - aik * row_k[j]) / prev)
        prev = akk
    return cnorm(sign * a[n - 1][n - 1])


def _bareiss_rank_int(a: list[list[int]]) -> int:
    rows = len(a)
    cols = len(a[0]) if rows else 0
    rank = 0
    prev = 1
    for col in range(cols):
        piv = next((i for i in range(rank, rows) if a[i][col]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        p = a[rank][col]
        for i in range(rank + 1, rows):
            f = a[i][col]
            ri, rr = a[i], a[rank]
            for j in range(col + 1, cols):
                ri[j] = (ri[j] * p - f * rr[j]) // prev
            ri[col] = 0
        prev = p
        rank += 1
        if rank == rows:
            break
    return rank


def _bareiss_rank_field(a: list[list]) -> int:
    rows = len(a)
    cols = len(a[0]) if rows else 0
    rank = 0
    prev = ONE
    for col in range(cols):
        piv = next((i for i in range(rank, rows) if a[i][col]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        p = a[rank][col]
        for i in range(rank + 1, rows):
            f = a[i][col]
            ri, rr = a[i], a[rank]
            for j in range(col + 1, cols):
                ri[j] = cnorm((ri[j] * p - f * rr[j]) / prev)
            ri[col] = ZERO
        prev = p
        rank += 1
        if rank == rows:
            break
    return rank


def exact_rank(m: ExactMatrix) -> int:
    """Rank by fraction-free (Bareiss) elimination."""
    if m.rows == 0 or m.cols == 0:
        return 0
    if m.is_real():
        return _bareiss_rank_int(m._integral_rows())
    return _bareiss_rank_field([list(r) for r in m.data])


def int_matrix_rank(rows: list[list[int]]) -> int:
    """Rank of an integer matrix given as nested lists (copied)."""
    if not rows or not rows[0]:
        return 0
    return _bareiss_rank_int([list(r) for r in rows])


def same_span(vectors_a, vectors_b, dim) -> bool:
    """Whether two finite vector families span the same subspace of ``K^dim``."""
    ra = exact_rank(ExactMatrix(vectors_a, len(vectors_a), dim)) if vectors_a else 0
    rb = exact_rank(ExactMatrix(vectors_b, len(vectors_b), dim)) if vectors_b else 0
    both = list(vectors_a) + list(vectors_b)
    rab = exact_rank(ExactMatrix(both, len(both), dim)) if both else 0
    return ra == rb == rab


def in_kernel(m: ExactMatrix, vec) -> bool:
    return not any(m @ list(vec))


__all__ = ["ExactMatrix", "exact_rank", "bareiss_det", "same_span", "in_kernel", "int_matrix_rank", "QQi"]
