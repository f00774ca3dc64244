"""JSON encodings of coefficients, polynomials and matrices."""
from __future__ import annotations

from .coeff import QQi, Q, cnorm, format_rational, is_real
from .poly import Poly
from .symbol import PolyMatrix, Symbol

SCHEMA = 1


def coeff_to_json(c):
    if is_real(c):
        return format_rational(c)
    return {"re": format_rational(c.re), "im": format_rational(c.im)}


def coeff_from_json(obj):
    if isinstance(obj, dict):
        return cnorm(QQi(Q(obj["re"]), Q(obj["im"])))
    return Q(str(obj))


def poly_to_json(p: Poly) -> list:
    return [[list(e), coeff_to_json(c)] for e, c in p.sorted_terms()]


def poly_from_json(obj, nvars: int) -> Poly:
    return Poly(nvars, {tuple(e): coeff_from_json(c) for e, c in obj})


def matrix_to_json(m: PolyMatrix) -> dict:
    out = {"rows": m.rows, "cols": m.cols, "d": m.nvars}
    if isinstance(m, Symbol):
        out["degree"] = m.degree
    out["entries"] = [[poly_to_json(p) for p in row] for row in m.entries]
    return out


def symbol_from_json(obj) -> Symbol:
    d = obj["d"]
    entries = [[poly_from_json(p, d) for p in row] for row in obj["entries"]]
    return Symbol(entries, d, obj.get("degree"), obj["rows"], obj["cols"], allow_mixed=obj.get("degree") is None)


def matrix_to_text(m: PolyMatrix) -> list[str]:
    """Row-per-line plain text with entries in ``x1..xd``."""
    return ["[" + ", ".join(p.format() for p in row) + "]" for row in m.entries]
