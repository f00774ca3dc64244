"""Built-in operator symbols.

Conventions:

* ``grad:d,m`` acts on ``u: R^d -> R^m``; its target ``R^{m x d}`` is
  flattened row-major, coordinate ``(i, q)`` at index ``i*d + q``.  Column
  ``j`` is ``e_j (x) xi``.
* Symmetric ``3 x 3`` targets use the basis ``S_ij`` (``i <= j``) flattened
  upper-triangle row-major: ``11, 12, 13, 22, 23, 33``.  Column ``i`` of the
  symmetric gradient is ``sum_j (1 + delta_ij) xi_j S_ij``, so a coordinate
  ``w_ij`` equals the ``(i, j)`` entry of ``u xi^T + xi u^T``.
* ``curl:d,m,p`` is the row-wise curl ``xi_r w_{i,s} - xi_s w_{i,r}``
  (``r < s``) on ``R^{m x d}``; ``p > 0`` composes ``p`` full gradients on
  the left (the operator ``D^p Curl``).
"""
from __future__ import annotations

from itertools import combinations, product

from .core.coeff import ONE
from .core.poly import Poly, variables
from .core.symbol import Symbol


class CatalogError(ValueError):
    pass


SYM_INDEX = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)]
SYM_LABELS = ["w11", "w12", "w13", "w22", "w23", "w33"]


def sym_pos(i, j, n=3):
    i, j = min(i, j), max(i, j)
    return SYM_INDEX.index((i, j)) if n == 3 else _sym_index(n).index((i, j))


def _sym_index(n):
    return [(i, j) for i in range(n) for j in range(i, n)]


def grad(d: int = 3, m: int = 1) -> Symbol:
    xi = variables(d)
    z = Poly.zero(d)
    rows = [[z] * m for _ in range(m * d)]
    for j in range(m):
        for q in range(d):
            rows[j * d + q][j] = xi[q]
    labels = [f"u{j + 1}" for j in range(m)]
    tlabels = [f"w{i + 1},{q + 1}" for i in range(m) for q in range(d)]
    return Symbol(rows, d, 1, m * d, m, source_labels=labels, target_labels=tlabels)


def div(d: int = 3) -> Symbol:
    return Symbol([variables(d)], d, 1, 1, d)


def curl(d: int = 3, m: int = 1, p: int = 0) -> Symbol:
    xi = variables(d)
    z = Poly.zero(d)
    base = []
    for i in range(m):
        for r, s in combinations(range(d), 2):
            row = [z] * (m * d)
            row[i * d + s] = xi[r]
            row[i * d + r] = -xi[s]
            base.append(row)
    rows = []
    for row in base:
        for qs in product(range(d), repeat=p):
            f = Poly.const(d, ONE)
            for q in qs:
                f = f * xi[q]
            rows.append([e * f for e in row])
    return Symbol(rows, d, 1 + p, len(rows), m * d)


def cauchy_riemann() -> Symbol:
    x1, x2 = variables(2)
    return Symbol([[x1, -x2], [x2, x1]], 2, 1)


def ddt() -> Symbol:
    return Symbol([[Poly.var(1, 0)]], 1, 1)


def laplacian(d: int = 2) -> Symbol:
    xi = variables(d)
    return Symbol([[sum((x * x for x in xi), Poly.zero(d))]], d, 2)


def sym_grad(d: int = 3) -> Symbol:
    xi = variables(d)
    idx = _sym_index(d)
    z = Poly.zero(d)
    rows = [[z] * d for _ in idx]
    for i in range(d):
        for j in range(d):
            w = 2 if i == j else 1
            rows[idx.index((min(i, j), max(i, j)))][i] = rows[idx.index((min(i, j), max(i, j)))][i] + w * xi[j]
    labels = [f"w{i + 1}{j + 1}" for i, j in idx]
    return Symbol(rows, d, 1, len(idx), d, source_labels=[f"u{i + 1}" for i in range(d)], target_labels=labels)


def st_venant() -> Symbol:
    """Saint-Venant compatibility rows ``(j, k)``, ``j <= k``:
    ``sum_i (xi_j xi_i w_ik + xi_k xi_i w_ij - xi_j xi_k w_ii - xi_i^2 w_jk)``."""
    xi = variables(3)
    z = Poly.zero(3)
    rows = []
    for j, k in SYM_INDEX:
        row = [z] * 6
        for i in range(3):
            for coeff, (a, b) in (
                (xi[j] * xi[i], (i, k)),
                (xi[k] * xi[i], (i, j)),
                (-(xi[j] * xi[k]), (i, i)),
                (-(xi[i] * xi[i]), (j, k)),
            ):
                pos = sym_pos(a, b)
                row[pos] = row[pos] + coeff
        rows.append(row)
    return Symbol(rows, 3, 2, 6, 6, source_labels=SYM_LABELS, target_labels=[f"e{j + 1}{k + 1}" for j, k in SYM_INDEX])


def pi_surrogate() -> Symbol:
    """``diag(2 xi_2 - xi_1, 2 xi_1 - xi_2)``: rational stand-in for the
    coefficient pi; drops rank along the integer direction (2, 1)."""
    x1, x2 = variables(2)
    z = Poly.zero(2)
    return Symbol([[2 * x2 - x1, z], [z, 2 * x1 - x2]], 2, 1)


def sqrt2_surrogate() -> Symbol:
    """``diag(xi_1^2 - 2 xi_2^2, xi_1^2 + xi_2^2)``: drops rank only along the
    irrational directions ``xi_1 = +-sqrt(2) xi_2``."""
    x1, x2 = variables(2)
    z = Poly.zero(2)
    return Symbol([[x1 * x1 - 2 * x2 * x2, z], [z, x1 * x1 + x2 * x2]], 2, 2)


CATALOG = {
    "grad": (grad, {"d": 3, "m": 1}),
    "div": (div, {"d": 3}),
    "curl": (curl, {"d": 3, "m": 1, "p": 0}),
    "cr": (cauchy_riemann, {}),
    "cauchy_riemann": (cauchy_riemann, {}),
    "ddt": (ddt, {}),
    "laplacian": (laplacian, {"d": 2}),
    "sym_grad": (sym_grad, {"d": 3}),
    "st_venant": (st_venant, {}),
    "pi_surrogate": (pi_surrogate, {}),
    "sqrt2_surrogate": (sqrt2_surrogate, {}),
}

# known exact annihilators: operator -> annihilator (None when not catalogued)
COMPANIONS = {
    "grad:d=2,m=1": "curl:d=2,m=1",
    "grad:d=3,m=1": "curl:d=3,m=1",
    "grad:d=3,m=2": "curl:d=3,m=2",
    "sym_grad": "st_venant",
    "div:d=3": None,
}


def catalog(name: str, **params) -> Symbol:
    if name not in CATALOG:
        raise CatalogError(f"unknown operator {name!r}; known: {', '.join(sorted(CATALOG))}")
    fn, defaults = CATALOG[name]
    bad = set(params) - set(defaults)
    if bad:
        raise CatalogError(f"invalid parameter(s) {sorted(bad)} for {name!r}")
    args = {**defaults, **params}
    for k, v in args.items():
        if not isinstance(v, int) or v < (0 if k == "p" else 1):
            raise CatalogError(f"invalid value {k}={v!r} for {name!r}")
    if name == "sym_grad" and args["d"] < 1:
        raise CatalogError("sym_grad needs d >= 1")
    return fn(**args)


def parse_spec(spec: str) -> tuple[str, dict]:
    """``'grad:d=3,m=2'`` -> ``('grad', {'d': 3, 'm': 2})``."""
    name, _, rest = spec.partition(":")
    params = {}
    if rest:
        for item in rest.split(","):
            k, eq, v = item.partition("=")
            if not eq:
                raise CatalogError(f"malformed parameter {item!r} in {spec!r}")
            try:
                params[k.strip()] = int(v)
            except ValueError:
                raise CatalogError(f"parameter {k.strip()!r} must be an integer") from None
    return name.strip(), params


def from_spec(spec: str) -> Symbol:
    name, params = parse_spec(spec)
    return catalog(name, **params)


def names() -> list[str]:
    return sorted(CATALOG)
