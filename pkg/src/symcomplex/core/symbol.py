"""Polynomial matrices and homogeneous operator symbols."""
from __future__ import annotations

from itertools import combinations

from .coeff import ONE, coerce
from .linalg import ExactMatrix
from .poly import Poly


class PolyMatrix:
    """Immutable matrix of :class:`Poly` entries in ``nvars`` variables."""

    __slots__ = ("rows", "cols", "nvars", "entries")

    def __init__(self, entries, nvars: int, rows=None, cols=None):
        ent = []
        for r in entries:
            row = []
            for p in r:
                if not isinstance(p, Poly):
                    p = Poly.const(nvars, p)
                elif p.nvars != nvars:
                    raise ValueError(f"entry has {p.nvars} variables, expected {nvars}")
                row.append(p)
            ent.append(tuple(row))
        if rows is None:
            rows = len(ent)
        if cols is None:
            cols = len(ent[0]) if ent else 0
        if len(ent) != rows or any(len(r) != cols for r in ent):
            raise ValueError("ragged or mis-sized polynomial matrix")
        self.rows = rows
        self.cols = cols
        self.nvars = nvars
        self.entries = tuple(ent)

    @classmethod
    def zeros(cls, rows, cols, nvars):
        z = Poly.zero(nvars)
        return cls([[z] * cols for _ in range(rows)], nvars, rows=rows, cols=cols)

    @classmethod
    def identity(cls, n, nvars):
        one, z = Poly.const(nvars, ONE), Poly.zero(nvars)
        return cls([[one if i == j else z for j in range(n)] for i in range(n)], nvars, rows=n, cols=n)

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return (self.shape, self.nvars, self.entries) == (other.shape, other.nvars, other.entries)

    def __hash__(self):
        return hash((self.shape, self.nvars, self.entries))

    def __repr__(self):
        return f"{type(self).__name__}({self.rows}x{self.cols}, d={self.nvars})"

    def is_zero(self):
        return all(p.is_zero() for r in self.entries for p in r)

    def is_real(self):
        return all(p.is_real() for r in self.entries for p in r)

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix([list(c) for c in zip(*self.entries)] if self.rows else [[] for _ in range(self.cols)],
                          self.nvars, self.cols, self.rows)

    @property
    def T(self):
        return self.transpose()

    def conj_transpose(self) -> "PolyMatrix":
        return PolyMatrix([[p.conjugate() for p in c] for c in zip(*self.entries)] if self.rows else [[] for _ in range(self.cols)],
                          self.nvars, self.cols, self.rows)

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        return poly_matrix_mul(self, other)

    def __add__(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return PolyMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)],
                          self.nvars, self.rows, self.cols)

    def __sub__(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return PolyMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)],
                          self.nvars, self.rows, self.cols)

    def scale(self, c) -> "PolyMatrix":
        if not isinstance(c, Poly):
            c = coerce(c)
        return PolyMatrix([[p * c for p in r] for r in self.entries], self.nvars, self.rows, self.cols)

    def evaluate(self, point) -> ExactMatrix:
        if len(point) != self.nvars:
            raise ValueError(
                f"dimension mismatch: point has {len(point)} coordinates, symbol has {self.nvars} variables"
            )
        return ExactMatrix([[p.eval(point) for p in r] for r in self.entries], self.rows, self.cols)

    def submatrix(self, rows, cols) -> "PolyMatrix":
        return PolyMatrix([[self.entries[i][j] for j in cols] for i in rows], self.nvars, len(rows), len(cols))

    def stack(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.cols != other.cols or self.nvars != other.nvars:
            raise ValueError("cannot stack matrices with different column counts")
        return PolyMatrix(list(self.entries) + list(other.entries), self.nvars,
                          self.rows + other.rows, self.cols)

    def subs_linear(self, forms) -> "PolyMatrix":
        nv = forms[0].nvars
        return PolyMatrix([[p.subs_linear(forms) for p in r] for r in self.entries], nv, self.rows, self.cols)

    def trace(self) -> Poly:
        out = Poly.zero(self.nvars)
        for i in range(min(self.rows, self.cols)):
            out = out + self.entries[i][i]
        return out


def poly_matrix_mul(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    if a.cols != b.rows:
        raise ValueError(f"dimension mismatch {a.shape} @ {b.shape}")
    if a.nvars != b.nvars:
        raise ValueError(f"variable count mismatch {a.nvars} vs {b.nvars}")
    zero = Poly.zero(a.nvars)
    bcols = list(zip(*b.entries)) if b.rows else [()] * b.cols
    out = []
    for r in a.entries:
        row = []
        for c in bcols:
            s = zero
            for x, y in zip(r, c):
                if x.terms and y.terms:
                    s = s + x * y
            row.append(s)
        out.append(row)
    result = PolyMatrix(out, a.nvars, a.rows, b.cols)
    if isinstance(a, Symbol) and isinstance(b, Symbol) and a.degree is not None and b.degree is not None:
        return Symbol.from_matrix(result, degree=a.degree + b.degree)
    return result


def poly_det(entries: list[list[Poly]], nvars: int) -> Poly:
    """Fraction-free (Bareiss) determinant of a square polynomial matrix."""
    n = len(entries)
    if n == 0:
        return Poly.const(nvars, ONE)
    a = [list(r) for r in entries]
    sign = 1
    prev = Poly.const(nvars, ONE)
    for k in range(n - 1):
        if not a[k][k]:
            piv = next((i for i in range(k + 1, n) if a[i][k]), None)
            if piv is None:
                return Poly.zero(nvars)
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                num = a[i][j] * akk - aik * a[k][j]
                a[i][j] = num.exact_div(prev) if k else num
        prev = akk
    det = a[n - 1][n - 1]
    return -det if sign < 0 else det


def poly_rank(m: PolyMatrix) -> int:
    """Rank over the fraction field Q(x) by fraction-free elimination."""
    a = [list(r) for r in m.entries]
    rows, cols = m.rows, m.cols
    rank = 0
    prev = None
    for col in range(cols):
        piv = None
        best = None
        for i in range(rank, rows):
            p = a[i][col]
            if p.terms and (best is None or len(p.terms) < best):
                piv, best = i, len(p.terms)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        p = a[rank][col]
        for i in range(rank + 1, rows):
            f = a[i][col]
            ri, rr = a[i], a[rank]
            for j in range(col + 1, cols):
                num = ri[j] * p - f * rr[j]
                ri[j] = num.exact_div(prev) if prev is not None else num
            ri[col] = Poly.zero(m.nvars)
        prev = p
        rank += 1
        if rank == rows:
            break
    return rank


class Symbol(PolyMatrix):
    """``M x N`` polynomial symbol ``A(xi)`` whose nonzero entries are homogeneous.

    ``degree`` is the common order ``k``; it is ``None`` only for row
    systems of mixed order (e.g. after monomial-content stripping).
    ``source_labels``/``target_labels`` name the coordinates of ``V``/``W``.
    """

    __slots__ = ("degree", "source_labels", "target_labels")

    def __init__(self, entries, nvars, degree=None, rows=None, cols=None,
                 source_labels=None, target_labels=None, allow_mixed=False):
        super().__init__(entries, nvars, rows, cols)
        degs = set()
        for i, r in enumerate(self.entries):
            for j, p in enumerate(r):
                if not p.is_homogeneous():
                    raise ValueError(f"entry ({i + 1},{j + 1}) is not homogeneous: {p}")
                if p.terms:
                    degs.add(p.degree())
        if degree is None:
            if len(degs) > 1:
                if not allow_mixed:
                    raise ValueError(f"entries have mixed degrees {sorted(degs)}")
            else:
                degree = degs.pop() if degs else 0
        elif degs - {degree}:
            bad = sorted(degs - {degree})
            raise ValueError(f"entries of degree {bad} in a symbol of degree {degree}")
        self.degree = degree
        self.source_labels = tuple(source_labels) if source_labels else None
        self.target_labels = tuple(target_labels) if target_labels else None

    @classmethod
    def from_matrix(cls, m: PolyMatrix, degree=None, allow_mixed=False, **labels):
        return cls(m.entries, m.nvars, degree, m.rows, m.cols, allow_mixed=allow_mixed, **labels)

    @property
    def M(self):
        return self.rows

    @property
    def N(self):
        return self.cols

    @property
    def d(self):
        return self.nvars

    def column(self, j) -> list[Poly]:
        return [r[j] for r in self.entries]

    def transpose(self) -> "Symbol":
        t = super().transpose()
        return Symbol(t.entries, t.nvars, self.degree, t.rows, t.cols,
                      source_labels=self.target_labels, target_labels=self.source_labels,
                      allow_mixed=self.degree is None)

    def row_degrees(self) -> list[int | None]:
        out = []
        for r in self.entries:
            degs = {p.degree() for p in r if p.terms}
            out.append(degs.pop() if len(degs) == 1 else (None if not degs else -2))
        return out

    def require_degree(self) -> int:
        if self.degree is None:
            raise ValueError("operation needs a symbol of a single order")
        return self.degree


def symbol_eval(a: PolyMatrix, point) -> ExactMatrix:
    return a.evaluate(point)


def minor(a: PolyMatrix, row_set, col_set) -> Poly:
    """Exact determinant of the ``row_set x col_set`` submatrix."""
    row_set, col_set = list(row_set), list(col_set)
    if len(row_set) != len(col_set):
        raise ValueError("minor needs equally many rows and columns")
    for i in row_set:
        if not 0 <= i < a.rows:
            raise IndexError(f"row index {i} out of range for {a.rows} rows")
    for j in col_set:
        if not 0 <= j < a.cols:
            raise IndexError(f"column index {j} out of range for {a.cols} columns")
    sub = [[a.entries[i][j] for j in col_set] for i in row_set]
    return poly_det(sub, a.nvars)


def all_minors(a: PolyMatrix, r: int) -> dict:
    """``{(rows, cols): minor}`` over all ``r``-subsets (lexicographic)."""
    return {(R, C): minor(a, R, C)
            for C in combinations(range(a.cols), r)
            for R in combinations(range(a.rows), r)}


__all__ = ["PolyMatrix", "Symbol", "poly_matrix_mul", "poly_det", "poly_rank",
           "symbol_eval", "minor", "all_minors"]
