"""Rational Moore-Penrose symbols.

For a matrix of rank ``r`` with Gram matrix ``G`` (the smaller of ``A^T A``
and ``A A^T``), let ``c_1..c_r`` be the leading characteristic-polynomial
coefficients of ``G`` and ``P = G^{r-1} + c_1 G^{r-2} + ... + c_{r-1} I``.
Then ``A^+ = -P A^T / c_r`` (or ``-A^T P / c_r``).  Since
``(-1)^r c_r`` is the sum of squared ``r``-minors, the shared denominator is
the minor form, positive off the rank-drop set.
"""
from __future__ import annotations

from dataclasses import dataclass

from .core.coeff import ONE, ZERO, cnorm
from .core.linalg import ExactMatrix, exact_rank
from .core.poly import Poly
from .core.serialize import SCHEMA, matrix_to_json, poly_to_json
from .core.symbol import PolyMatrix, Symbol, poly_matrix_mul
from .homology import RankInconsistencyError


# -- characteristic polynomial --------------------------------------------------

def _square(entries):
    n = len(entries)
    if any(len(r) != n for r in entries):
        raise ValueError("characteristic polynomial of a non-square matrix")
    return n


def _faddeev_core(s, zero, one, upto):
    """Generic Faddeev-LeVerrier on nested lists; returns ``(coeffs, M_last)``."""
    n = len(s)
    upto = n if upto is None else upto
    m = [[one if i == j else zero for j in range(n)] for i in range(n)]
    coeffs = []
    for k in range(1, upto + 1):
        if k > 1:
            sm = [[sum((a * b for a, b in zip(row, col)), zero) for col in zip(*m)] for row in s]
            c = coeffs[-1]
            m = [[sm[i][j] + (c if i == j else zero) for j in range(n)] for i in range(n)]
        tr = zero
        for i in range(n):
            for j in range(n):
                tr = tr + s[i][j] * m[j][i]
        coeffs.append(tr * (-ONE / k))
    return coeffs, m


def faddeev_leverrier(s, upto: int | None = None) -> list:
    """Coefficients ``c_1..c_n`` of ``det(lambda I - S) = lambda^n + c_1 lambda^{n-1} + ... + c_n``.

    ``S`` is a square :class:`PolyMatrix` (polynomial coefficients returned)
    or :class:`ExactMatrix`; ``upto`` truncates the list.
    """
    if isinstance(s, PolyMatrix):
        _square(s.entries)
        zero, one = Poly.zero(s.nvars), Poly.const(s.nvars, ONE)
        rows = [list(r) for r in s.entries]
    else:
        _square(s.data)
        zero, one = ZERO, ONE
        rows = [list(r) for r in s.data]
    coeffs, _ = _faddeev_core(rows, zero, one, upto)
    if not isinstance(s, PolyMatrix):
        coeffs = [cnorm(c) for c in coeffs]
    return coeffs


# -- rational matrices -----------------------------------------------------------

@dataclass(frozen=True)
class RatFunMatrix:
    """``numerator / denominator`` with a single scalar polynomial denominator."""

    numerator: PolyMatrix
    denominator: Poly
    degree: int

    def __post_init__(self):
        if self.denominator.is_zero():
            raise ZeroDivisionError("rational matrix with zero denominator")

    @property
    def shape(self):
        return self.numerator.shape

    def evaluate(self, point) -> ExactMatrix:
        den = self.denominator.eval(point)
        if not den:
            raise ZeroDivisionError(f"denominator vanishes at {[str(x) for x in point]}")
        return self.numerator.evaluate(point).scale(ONE / den)

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "kind": "rational_matrix",
            "rows": self.numerator.rows,
            "cols": self.numerator.cols,
            "degree": self.degree,
            "numerator": matrix_to_json(self.numerator),
            "denominator": poly_to_json(self.denominator),
        }


def _sym_pinv_parts(a: PolyMatrix, r: int):
    at = a.transpose()
    left = a.cols <= a.rows
    g = poly_matrix_mul(at, a) if left else poly_matrix_mul(a, at)
    coeffs, p = _faddeev_core([list(x) for x in g.entries], Poly.zero(a.nvars), Poly.const(a.nvars, ONE), r)
    c_r = coeffs[r - 1]
    if c_r.is_zero():
        raise RankInconsistencyError(f"c_{r} vanishes identically: rank below {r}")
    pm = PolyMatrix(p, a.nvars)
    num = poly_matrix_mul(pm, at) if left else poly_matrix_mul(at, pm)
    # A^+ = -num / c_r; rewrite over the minor form (-1)^r c_r
    sign = -ONE if r % 2 == 0 else ONE
    return num.scale(sign), c_r * (-ONE if r % 2 else ONE)


def pseudoinverse_symbol(a: Symbol, r: int) -> RatFunMatrix:
    """Closed-form rational ``A(xi)^+`` of homogeneity degree ``-k``."""
    k = a.require_degree()
    if not a.is_real():
        raise ValueError("closed-form pseudoinverse symbols need real coefficients")
    if r == 0:
        return RatFunMatrix(PolyMatrix.zeros(a.cols, a.rows, a.nvars), Poly.const(a.nvars, ONE), -k)
    num, den = _sym_pinv_parts(a, r)
    return RatFunMatrix(num, den, -k)


def projection_symbol(a: Symbol, r: int) -> RatFunMatrix:
    """``pi = A^+ A``, the orthogonal projection onto ``(ker A)^perp``; degree 0."""
    a.require_degree()
    if r == 0:
        return RatFunMatrix(PolyMatrix.zeros(a.cols, a.cols, a.nvars), Poly.const(a.nvars, ONE), 0)
    pinv = pseudoinverse_symbol(a, r)
    return RatFunMatrix(poly_matrix_mul(pinv.numerator, a), pinv.denominator, 0)


# -- pointwise ---------------------------------------------------------------------

def pointwise_pseudoinverse(m: ExactMatrix) -> ExactMatrix:
    """Exact Moore-Penrose inverse of a rational or Gaussian-rational matrix."""
    r = exact_rank(m)
    if r == 0:
        return ExactMatrix.zeros(m.cols, m.rows)
    mh = m.H
    left = m.cols <= m.rows
    g = mh @ m if left else m @ mh
    coeffs, p = _faddeev_core([list(x) for x in g.data], ZERO, ONE, r)
    c_r = cnorm(coeffs[r - 1])
    pm = ExactMatrix(p, g.rows, g.cols)
    num = pm @ mh if left else mh @ pm
    return num.scale(-ONE / c_r)


def mp_axioms(a: ExactMatrix, ap: ExactMatrix) -> dict:
    """Which of the four Moore-Penrose identities hold exactly."""
    aap = a @ ap
    apa = ap @ a
    return {
        "A A+ A = A": aap @ a == a,
        "A+ A A+ = A+": apa @ ap == ap,
        "(A A+)^H = A A+": aap.H == aap,
        "(A+ A)^H = A+ A": apa.H == apa,
    }


def pseudoinverse_report(a: Symbol, r: int) -> dict:
    pinv = pseudoinverse_symbol(a, r)
    proj = projection_symbol(a, r)
    out = pinv.to_json()
    out["kind"] = "pseudoinverse"
    out["projection"] = {"numerator": matrix_to_json(proj.numerator), "degree": proj.degree}
    return out
