"""Exact annihilators and potentials of constant-rank symbols.

Row ``(I, J)`` of the annihilator, for column subset ``I`` (``|I| = r``) and
row subset ``J`` (``|J| = r + 1``), is the coordinate of
``a_{i_1} ^ ... ^ a_{i_r} ^ w`` on the basis vector ``f_J`` of the
``(r+1)``-th exterior power of ``W``.  Expanding along ``w`` gives the entry
``(-1)^pos(p in J) * minor(A; J - {p}, I)`` at coordinate ``p``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .core.coeff import imag_part, real_part
from .core.linalg import exact_rank
from .core.poly import Poly, pooled_content
from .core.serialize import SCHEMA, matrix_to_json
from .core.symbol import PolyMatrix, Symbol, minor, poly_matrix_mul


class RankInconsistencyError(ValueError):
    """The rank handed to a construction is not the generic rank of the symbol."""


class DegreeMismatchError(ValueError):
    pass


@dataclass
class AnnihilatorResult:
    Q: Symbol
    provenance: list  # row -> (I, J), zero-based
    r: int
    signs: str = "(-1)^position of p in J (zero-based)"

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "kind": "annihilator",
            "r": self.r,
            "rows": self.Q.rows,
            "cols": self.Q.cols,
            "degree": self.Q.degree,
            "symbol": matrix_to_json(self.Q),
            "provenance": [{"I": [i + 1 for i in I], "J": [j + 1 for j in J]} for I, J in self.provenance],
        }


@dataclass
class PotentialResult:
    B: Symbol
    raw: Symbol
    r: int
    provenance: list = field(default_factory=list)

    @property
    def dim_u(self) -> int:
        return self.B.cols

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "kind": "potential",
            "r": self.r,
            "rows": self.B.rows,
            "cols": self.B.cols,
            "dim_u": self.dim_u,
            "degree": self.B.degree,
            "raw_degree": self.raw.degree,
            "symbol": matrix_to_json(self.B),
            "provenance": [{"I": [i + 1 for i in I], "J": [j + 1 for j in J]} for I, J in self.provenance],
        }


def is_zero_product(q: PolyMatrix, a: PolyMatrix) -> bool:
    return poly_matrix_mul(q, a).is_zero()


def build_annihilator(a: Symbol, r: int, check: bool = True) -> AnnihilatorResult:
    """Wedge-row annihilator ``Q`` of ``A`` with ``ker Q = im A`` off the rank-drop set."""
    M, N = a.rows, a.cols
    if r < 0 or r > min(M, N):
        raise ValueError(f"r = {r} is not in [0, min(M, N) = {min(M, N)}]")
    k = a.require_degree()
    zero = Poly.zero(a.nvars)
    rows, prov = [], []
    for I in combinations(range(N), r):
        cache = {}
        for J in combinations(range(M), r + 1):
            row = [zero] * M
            for pos, p in enumerate(J):
                K = J[:pos] + J[pos + 1:]
                m = cache.get(K)
                if m is None:
                    m = cache[K] = minor(a, K, I)
                row[p] = -m if pos % 2 else m
            rows.append(row)
            prov.append((I, J))
    q = Symbol(rows, a.nvars, r * k, len(rows), M)
    if rows and q.is_zero():
        raise RankInconsistencyError(f"all annihilator rows vanish: r = {r} exceeds the generic rank")
    if check and rows and not is_zero_product(q, a):
        raise RankInconsistencyError(f"Q*A != 0: r = {r} is below the generic rank")
    return AnnihilatorResult(q, prov, r)


def _normalize_row(row: list[Poly]):
    nz = [p for p in row if p.terms]
    mono = tuple(min(col) for col in zip(*(p.monomial_content() for p in nz)))
    if any(mono):
        div = Poly.monomial(mono)
        row = [p.exact_div(div) for p in row]
    content = pooled_content(row)
    lead = next(p for p in row if p.terms).leading_coeff()
    if real_part(lead) < 0 or (real_part(lead) == 0 and imag_part(lead) < 0):
        content = -content
    return [p / content for p in row]


def simplify_rows(q, a: PolyMatrix | None = None) -> Symbol:
    """Drop zero rows, strip integer and monomial content, drop repeated rows.

    Every row of the input is a polynomial multiple of an output row, so
    ``Q' * A = 0`` and ``ker Q'(xi) = ker Q(xi)`` wherever ``Q`` is exact.
    """
    sym = q.Q if isinstance(q, AnnihilatorResult) else q
    if a is not None and sym.rows and not is_zero_product(sym, a):
        raise ValueError("simplify_rows needs an annihilating pair (Q*A != 0)")
    seen = set()
    out = []
    for row in sym.entries:
        if all(p.is_zero() for p in row):
            continue
        nrow = tuple(_normalize_row(list(row)))
        if nrow in seen:
            continue
        seen.add(nrow)
        out.append(list(nrow))
    res = Symbol(out, sym.nvars, None if out else sym.degree, len(out), sym.cols, allow_mixed=True)
    return res


def simplify_with_provenance(q: AnnihilatorResult):
    """Simplified rows together with the ``(I, J)`` of the first raw row each came from."""
    seen = {}
    prov = []
    out = []
    for row, pv in zip(q.Q.entries, q.provenance):
        if all(p.is_zero() for p in row):
            continue
        nrow = tuple(_normalize_row(list(row)))
        if nrow in seen:
            continue
        seen[nrow] = len(out)
        out.append(list(nrow))
        prov.append(pv)
    return Symbol(out, q.Q.nvars, None if out else q.Q.degree, len(out), q.Q.cols, allow_mixed=True), prov


def build_potential(a: Symbol, r: int, simplify: bool = True) -> PotentialResult:
    """Potential ``B`` with ``im B = ker A``: the transpose of the annihilator of ``A^T``."""
    ann = build_annihilator(a.transpose(), r)
    raw = ann.Q.transpose()
    if simplify:
        simp, prov = simplify_with_provenance(ann)
        b = simp.transpose()
    else:
        b, prov = raw, ann.provenance
    if check_needed(a, raw):
        raise RankInconsistencyError("A*B != 0")
    return PotentialResult(b, raw, r, prov)


def check_needed(a: PolyMatrix, b: PolyMatrix) -> bool:
    return bool(b.cols) and not is_zero_product(a, b)


@dataclass
class ExactnessReport:
    identity: bool
    points: int
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.identity and not self.failures

    def to_json(self) -> dict:
        return {"schema": SCHEMA, "kind": "verify", "ok": self.ok, "identity": self.identity,
                "points": self.points, "failures": self.failures}


def verify_exact_pair(a: PolyMatrix, q: PolyMatrix, points) -> ExactnessReport:
    """Check ``Q*A = 0`` identically and ``ker Q(xi) = im A(xi)`` at each point."""
    if q.cols != a.rows:
        raise ValueError(f"cannot compose Q ({q.rows}x{q.cols}) with A ({a.rows}x{a.cols})")
    identity = q.rows == 0 or is_zero_product(q, a)
    failures = []
    for pt in points:
        if not any(pt):
            raise ValueError("verify_exact_pair needs nonzero points")
        av = a.evaluate(pt)
        qv = q.evaluate(pt)
        ra = exact_rank(av)
        rq = exact_rank(qv)
        reasons = []
        if ra + rq != a.rows:
            reasons.append(f"rank A + rank Q = {ra} + {rq} != {a.rows}")
        for v in av.image_basis():
            if q.rows and any(qv @ v):
                reasons.append("image of A not in kernel of Q")
                break
        if reasons:
            failures.append({"point": [str(x) for x in pt], "reasons": reasons})
    return ExactnessReport(identity, len(points), failures)


def build_elliptic_augmentation(a: Symbol, r: int) -> Symbol:
    """Elliptic stack ``H``: ``[B^T; A (A^T A)^m]`` for ``r = 2m+1``,
    ``[Q; (A A^T)^m]`` for ``r = 2m`` (``Q`` the raw annihilator)."""
    if not a.is_real():
        raise ValueError("elliptic augmentation needs a real-coefficient symbol")
    k = a.require_degree()
    m, odd = divmod(r, 2)
    if odd:
        top = build_potential(a, r, simplify=False).raw.transpose()
        gram = poly_matrix_mul(a.transpose(), a)
        bottom = a
        for _ in range(m):
            bottom = poly_matrix_mul(bottom, gram)
    else:
        top = build_annihilator(a, r).Q
        gram = poly_matrix_mul(a, a.transpose())
        bottom = PolyMatrix.identity(a.rows, a.nvars)
        for _ in range(m):
            bottom = poly_matrix_mul(bottom, gram)
    bottom = Symbol.from_matrix(bottom, allow_mixed=True)
    if bottom.degree != r * k and not bottom.is_zero():
        raise DegreeMismatchError(f"lower block has degree {bottom.degree}, expected {r * k}")
    if top.rows and top.degree != r * k and not top.is_zero():
        raise DegreeMismatchError(f"upper block has degree {top.degree}, expected {r * k}")
    return Symbol(list(top.entries) + list(bottom.entries), a.nvars, r * k, top.rows + bottom.rows, top.cols)
