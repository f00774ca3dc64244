"""Generic rank and constant-rank verdicts over R^d, C^d and Z^d minus the origin."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import combinations, product
from math import gcd as igcd
from math import lcm

from gmpy2 import mpq

from ..core.coeff import ONE, ZERO, QQi, cnorm, format_coeff, format_rational
from ..core.linalg import exact_rank, int_matrix_rank
from ..core.poly import Poly
from ..core.sampling import random_point, rng
from ..core.symbol import PolyMatrix, Symbol, all_minors, poly_rank
from . import univariate as U
from .intervals import DEFAULT_BUDGET, certify_cube_boundary

log = logging.getLogger(__name__)

REAL, COMPLEX, INTEGER = "real", "complex", "integer"
CONSTANT, NOT_CONSTANT, UNKNOWN = "constant", "not_constant", "unknown"
DEFAULT_BOX_RADIUS = 25
RANDOM_PROBES = 20
PLANE_PROBES = 4


@dataclass
class RankVerdict:
    """Outcome of a constant-rank analysis.

    ``witness`` is an exact nonzero point where the rank drops.  When the drop
    only happens at irrational points, ``algebraic_witness`` describes the
    point instead: ``xi = s*u + t*v`` (or ``xi = (t, 1)`` in two variables)
    with ``t`` the unique root of ``poly`` in ``(lo, hi]``.
    """

    ground: str
    outcome: str
    rank: int
    witness: list | None = None
    witness_rank: int | None = None
    algebraic_witness: dict | None = None
    box_radius: int | None = None
    certificate: dict = field(default_factory=dict)
    budget_spent: int = 0

    @property
    def is_constant(self):
        return self.outcome == CONSTANT

    def to_json(self) -> dict:
        out = {
            "ground": self.ground,
            "outcome": self.outcome,
            "rank": self.rank,
            "witness": [format_coeff(x) for x in self.witness] if self.witness is not None else None,
            "witness_rank": self.witness_rank,
            "certificate": self.certificate,
            "budget_spent": self.budget_spent,
        }
        if self.algebraic_witness is not None:
            out["algebraic_witness"] = self.algebraic_witness
        if self.box_radius is not None:
            out["box_radius"] = self.box_radius
        return out

    def __str__(self):
        ground = self.ground if self.box_radius is None else f"{self.ground}(R={self.box_radius})"
        if self.outcome == CONSTANT:
            return f"{ground}: ConstantRank({self.rank})"
        if self.outcome == NOT_CONSTANT:
            if self.witness is not None:
                w = ", ".join(format_coeff(x) for x in self.witness)
                return f"{ground}: NotConstant(generic rank {self.rank}, witness ({w}), rank {self.witness_rank} there)"
            return f"{ground}: NotConstant(generic rank {self.rank}, algebraic witness)"
        return f"{ground}: Unknown(generic rank {self.rank})"


# -- generic rank and minor forms ------------------------------------------

def generic_rank(a: PolyMatrix) -> int:
    """Rank of ``A`` over the rational function field Q(xi)."""
    return poly_rank(a)


def minor_sum_of_squares(a: PolyMatrix, r: int) -> Poly:
    """``c_r = sum |m|^2`` over all ``r x r`` minors (coefficientwise conjugate)."""
    if r == 0:
        return Poly.const(a.nvars, ONE)
    if r > min(a.rows, a.cols):
        return Poly.zero(a.nvars)  # no r x r minors: empty sum
    out = Poly.zero(a.nvars)
    real = a.is_real()
    for m in all_minors(a, r).values():
        if m.terms:
            out = out + (m * m if real else m.norm2())
    return out


def minors_gcd_2d(a: PolyMatrix, r: int) -> Poly:
    """Gcd of all ``r x r`` minors of a two-variable symbol."""
    return U.homogeneous_gcd(list(all_minors(a, r).values()))


def rank_at(a: PolyMatrix, point) -> int:
    return exact_rank(a.evaluate(point))


def _restrict_to_plane(a: PolyMatrix, u, v) -> PolyMatrix:
    forms = [Poly(2, {(1, 0): ui, (0, 1): vi}) for ui, vi in zip(u, v)]
    return a.subs_linear(forms)


def _from_plane(u, v, s, t):
    return [cnorm(s * ui + t * vi) for ui, vi in zip(u, v)]


def _integral_point(pt):
    """Scale a rational point to a primitive integer point (same direction)."""
    dens = [int(mpq(x).denominator) for x in pt]
    m = lcm(*dens)
    ints = [int(mpq(x) * m) for x in pt]
    g = 0
    for x in ints:
        g = igcd(g, x)
    return [mpq(x // g) for x in ints]


# -- exact two-variable routes -------------------------------------------------

def _rank_at_algebraic_2d(a: PolyMatrix, r: int, sqf, interval) -> int:
    """Rank of ``A(t, 1)`` at the root of ``sqf`` isolated by ``interval``."""
    for s in range(r - 1, 0, -1):
        cs = U.dehomogenize(minor_sum_of_squares(a, s), 1)
        g = U.gcd(sqf, cs)
        if U.deg(g) < 1:
            return s
        lo, hi = interval
        if lo == hi:
            if U.evaluate(g, lo) != 0:
                return s
        elif U.count_roots(U.sturm_sequence(g), lo, hi) == 0:
            return s
    return 0


def _real_drop_2d(a: PolyMatrix, r: int):
    """Search for a real direction of rank drop of a two-variable symbol.

    Returns ``(witness, witness_rank, algebraic, certificate)``; everything is
    ``None`` except the certificate when the rank is constant.
    """
    c = minor_sum_of_squares(a, r)
    cert = {"method": "sturm_2d", "minor_form_degree": c.degree()}
    for axis in ([ONE, ZERO], [ZERO, ONE]):
        if c.eval(axis) == 0:
            return axis, rank_at(a, axis), None, cert
    for chart in (0, 1):
        f = U.dehomogenize(c, chart)
        sqf = U.squarefree(f)
        roots = U.rational_roots(sqf)
        if roots:
            t = roots[0]
            pt = _integral_point([t, ONE] if chart == 1 else [ONE, t])
            return pt, rank_at(a, pt), None, cert
        isolated = U.isolate_real_roots(sqf)
        if isolated:
            lo, hi = isolated[0]
            alg = {
                "chart": "(t, 1)" if chart == 1 else "(1, t)",
                "poly": [format_rational(x) for x in sqf],
                "interval": [format_rational(lo), format_rational(hi)],
                "rank": _rank_at_algebraic_2d(_chart_symbol(a, chart), r, sqf, (lo, hi)),
            }
            return None, alg["rank"], alg, cert
        cert[f"chart_{chart}_real_roots"] = 0
    return None, None, None, cert


def _chart_symbol(a: PolyMatrix, chart: int) -> PolyMatrix:
    """Put the chart variable first so that ``dehomogenize(., 1)`` applies."""
    if chart == 1:
        return a
    swap = [Poly(2, {(0, 1): ONE}), Poly(2, {(1, 0): ONE})]
    return a.subs_linear(swap)


def _gaussian_roots(coeffs):
    """Gaussian-rational roots of a univariate polynomial (via sympy factoring)."""
    import sympy

    t = sympy.Symbol("t")

    def to_sym(c):
        if isinstance(c, QQi):
            return sympy.Rational(str(c.re)) + sympy.I * sympy.Rational(str(c.im))
        return sympy.Rational(str(c))

    expr = sum(to_sym(c) * t ** i for i, c in enumerate(coeffs))
    _, factors = sympy.factor_list(sympy.expand(expr), t, gaussian=True)
    roots = []
    for f, _ in factors:
        poly = sympy.Poly(f, t)
        if poly.degree() == 1:
            a1, a0 = poly.all_coeffs()
            root = sympy.nsimplify(-a0 / a1)
            re, im = sympy.re(root), sympy.im(root)
            roots.append(cnorm(QQi(mpq(str(re)), mpq(str(im)))))
    roots.sort(key=lambda z: (-(z.im if isinstance(z, QQi) else 0), z.re if isinstance(z, QQi) else z))
    return roots


def _complex_drop_2d(a: PolyMatrix, r: int):
    g = minors_gcd_2d(a, r)
    cert = {"method": "minor_gcd_2d", "gcd": g.format(), "gcd_degree": g.degree()}
    if g.degree() < 1:
        return None, None, None, cert
    for axis in ([ONE, ZERO], [ZERO, ONE]):
        if g.eval(axis) == 0:
            return axis, rank_at(a, axis), None, cert
    f = U.dehomogenize(g, 0)
    for root in _gaussian_roots(f):
        pt = [ONE, root]
        return pt, rank_at(a, pt), None, cert
    alg = {"chart": "(1, t)", "poly": [format_coeff(x) for x in f],
           "note": "common complex zero of all minors exists (gcd of positive degree)"}
    return None, None, alg, cert


# -- verdicts ------------------------------------------------------------------

def _trivial_verdict(a, ground, r):
    return RankVerdict(ground, CONSTANT, r, certificate={"method": "trivial"})


def constant_rank_real(a: PolyMatrix, budget: int = DEFAULT_BUDGET, seed=0) -> RankVerdict:
    """Decide whether ``rank A(xi)`` is constant on ``R^d - {0}``.

    Exact for ``d <= 2``; for ``d >= 3`` refutes by probing and plane
    restrictions, and certifies positivity of ``c_r`` on the cube boundary.
    """
    r = generic_rank(a)
    d = a.nvars
    if r == 0 or d == 1:
        return _trivial_verdict(a, REAL, r)
    if d == 2:
        w, wr, alg, cert = _real_drop_2d(a, r)
        if w is None and alg is None:
            return RankVerdict(REAL, CONSTANT, r, certificate=cert)
        return RankVerdict(REAL, NOT_CONSTANT, r, w, wr, alg, certificate=cert)

    gen = rng(seed)
    for i in range(d):
        e = [ONE if j == i else ZERO for j in range(d)]
        if rank_at(a, e) < r:
            return RankVerdict(REAL, NOT_CONSTANT, r, e, rank_at(a, e), certificate={"method": "axis_probe"})
    for _ in range(RANDOM_PROBES):
        pt = random_point(gen, d)
        k = rank_at(a, pt)
        if k < r:
            return RankVerdict(REAL, NOT_CONSTANT, r, pt, k, certificate={"method": "random_probe"})
    for _ in range(PLANE_PROBES):
        u, v = random_point(gen, d), random_point(gen, d)
        ar = _restrict_to_plane(a, u, v)
        if generic_rank(ar) < r:
            continue
        w, wr, alg, _ = _real_drop_2d(ar, r)
        if w is not None:
            pt = _from_plane(u, v, *w)
            return RankVerdict(REAL, NOT_CONSTANT, r, pt, rank_at(a, pt),
                               certificate={"method": "plane_sturm"})
        if alg is not None:
            alg = dict(alg, plane=[[format_rational(x) for x in u], [format_rational(x) for x in v]])
            return RankVerdict(REAL, NOT_CONSTANT, r, None, alg["rank"], alg,
                               certificate={"method": "plane_sturm"})

    c = minor_sum_of_squares(a, r)
    cube = certify_cube_boundary(c, budget)
    cert = {"method": "interval_cube_boundary", **cube.to_json()}
    if cube.status == "certified":
        return RankVerdict(REAL, CONSTANT, r, certificate=cert, budget_spent=cube.boxes)
    if cube.status == "zero_found":
        pt = cube.zero
        return RankVerdict(REAL, NOT_CONSTANT, r, pt, rank_at(a, pt), certificate=cert,
                           budget_spent=cube.boxes)
    return RankVerdict(REAL, UNKNOWN, r, certificate=cert, budget_spent=cube.boxes)


def constant_rank_complex(a: PolyMatrix, budget: int = DEFAULT_BUDGET, seed=0) -> RankVerdict:
    """Decide whether ``rank A(xi)`` is constant on ``C^d - {0}``.

    Exact for ``d <= 2`` via the gcd of the ``r``-minors; for ``d >= 3`` only
    refutation (Gaussian probes and plane restrictions) is attempted.
    """
    r = generic_rank(a)
    d = a.nvars
    if r == 0 or d == 1:
        return _trivial_verdict(a, COMPLEX, r)
    if d == 2:
        w, wr, alg, cert = _complex_drop_2d(a, r)
        if w is None and alg is None:
            return RankVerdict(COMPLEX, CONSTANT, r, certificate=cert)
        return RankVerdict(COMPLEX, NOT_CONSTANT, r, w, wr, alg, certificate=cert)

    gen = rng(seed)
    spent = 0
    for _ in range(min(RANDOM_PROBES, budget)):
        spent += 1
        pt = random_point(gen, d, complex_=True)
        k = rank_at(a, pt)
        if k < r:
            return RankVerdict(COMPLEX, NOT_CONSTANT, r, pt, k, certificate={"method": "random_probe"},
                               budget_spent=spent)
    for _ in range(PLANE_PROBES):
        u, v = random_point(gen, d), random_point(gen, d)
        ar = _restrict_to_plane(a, u, v)
        if generic_rank(ar) < r:
            continue
        w, wr, alg, cert = _complex_drop_2d(ar, r)
        if w is not None:
            pt = _from_plane(u, v, *w)
            return RankVerdict(COMPLEX, NOT_CONSTANT, r, pt, rank_at(a, pt),
                               certificate={"method": "plane_minor_gcd", **cert}, budget_spent=spent)
        if alg is not None:
            alg = dict(alg, plane=[[format_rational(x) for x in u], [format_rational(x) for x in v]])
            return RankVerdict(COMPLEX, NOT_CONSTANT, r, None, None, alg,
                               certificate={"method": "plane_minor_gcd", **cert}, budget_spent=spent)
    return RankVerdict(COMPLEX, UNKNOWN, r,
                       certificate={"method": "probes", "random_probes": spent, "plane_probes": PLANE_PROBES},
                       budget_spent=spent)


def _integer_evaluator(a: PolyMatrix):
    """Fast evaluation of a rational symbol at integer points (scaled to Z)."""
    den = 1
    for row in a.entries:
        for p in row:
            for c in p.terms.values():
                den = lcm(den, int(mpq(c).denominator))
    compiled = [[[(int(c * den), e) for e, c in p.terms.items()] for p in row] for row in a.entries]

    def ev(m):
        out = []
        for row in compiled:
            vals = []
            for terms in row:
                s = 0
                for c, e in terms:
                    v = c
                    for x, k in zip(m, e):
                        if k:
                            v *= x ** k
                    s += v
                vals.append(s)
            out.append(vals)
        return out

    return ev


def _primitive_half_box(d: int, radius: int):
    """Primitive lattice points of ``[-R, R]^d`` with first nonzero coordinate > 0.

    Visited by increasing sup-norm, lexicographically descending within a shell.
    """
    pts = []
    for m in product(range(-radius, radius + 1), repeat=d):
        first = next((x for x in m if x), 0)
        if first <= 0:
            continue
        g = 0
        for x in m:
            g = igcd(g, x)
        if g == 1:
            pts.append(m)
    pts.sort(key=lambda m: (max(abs(x) for x in m), tuple(-x for x in m)))
    return pts


def constant_rank_integer(a: PolyMatrix, box_radius: int = DEFAULT_BOX_RADIUS,
                          budget: int = DEFAULT_BUDGET, seed=0) -> RankVerdict:
    """Check ``rank A(m)`` on ``Z^d - {0}``.

    Scans the box ``[-R, R]^d`` (primitive points suffice by homogeneity),
    then tries to rule out drops outside it: exactly for ``d <= 2`` through
    the rational roots of the minor form, and for ``d >= 3`` through real
    certification.
    """
    if box_radius < 1:
        raise ValueError("box radius must be at least 1")
    r = generic_rank(a)
    d = a.nvars
    if a.is_real():
        ev = _integer_evaluator(a)

        def rank_int(m):
            return int_matrix_rank(ev(m))
    else:
        def rank_int(m):
            return rank_at(a, [mpq(x) for x in m])

    scanned = 0
    for m in _primitive_half_box(d, box_radius):
        scanned += 1
        k = rank_int(m)
        if k != r:
            return RankVerdict(INTEGER, NOT_CONSTANT, r, [mpq(x) for x in m], k, box_radius=box_radius,
                               certificate={"method": "box_scan", "points_scanned": scanned})
    report = {"method": "box_scan", "points_scanned": scanned}
    if r == 0 or d == 1:
        return RankVerdict(INTEGER, CONSTANT, r, box_radius=box_radius, certificate={**report, "beyond_box": "trivial"})
    if d == 2:
        c = minor_sum_of_squares(a, r)
        roots = [] if c.eval([ONE, ZERO]) else [None]
        roots += U.rational_roots(U.squarefree(U.dehomogenize(c, 1)))
        for t in roots:
            pt = [ONE, ZERO] if t is None else _integral_point([t, ONE])
            return RankVerdict(INTEGER, NOT_CONSTANT, r, pt, rank_at(a, pt), box_radius=box_radius,
                               certificate={**report, "beyond_box": "rational_root_2d"})
        return RankVerdict(INTEGER, CONSTANT, r, box_radius=box_radius,
                           certificate={**report, "beyond_box": "no_rational_roots_2d"})
    real = constant_rank_real(a, budget=budget, seed=seed)
    if real.outcome == CONSTANT:
        return RankVerdict(INTEGER, CONSTANT, r, box_radius=box_radius,
                           certificate={**report, "beyond_box": "real_certificate", "real": real.certificate},
                           budget_spent=real.budget_spent)
    if real.outcome == NOT_CONSTANT and real.witness is not None and all(
            not isinstance(x, QQi) for x in real.witness):
        pt = _integral_point(real.witness)
        return RankVerdict(INTEGER, NOT_CONSTANT, r, pt, rank_at(a, pt), box_radius=box_radius,
                           certificate={**report, "beyond_box": "rational_real_witness"})
    return RankVerdict(INTEGER, UNKNOWN, r, box_radius=box_radius,
                       certificate={**report, "beyond_box": "not_certified", "real_outcome": real.outcome},
                       budget_spent=real.budget_spent)


def recheck_witness(a: PolyMatrix, verdict: RankVerdict) -> bool:
    """Independently confirm a NotConstant verdict's witness."""
    if verdict.outcome != NOT_CONSTANT:
        return False
    if verdict.witness is not None:
        return any(verdict.witness) and rank_at(a, verdict.witness) < verdict.rank
    alg = verdict.algebraic_witness
    if alg is None or "interval" not in alg:
        if a.nvars == 2 and verdict.ground == COMPLEX:
            return minors_gcd_2d(a, verdict.rank).degree() > 0
        return False
    if "plane" in alg:
        u, v = ([mpq(x) for x in vec] for vec in alg["plane"])
        a = _restrict_to_plane(a, u, v)
    chart = 1 if alg["chart"] == "(t, 1)" else 0
    sqf = [mpq(x) for x in alg["poly"]]
    lo, hi = (mpq(x) for x in alg["interval"])
    c = U.dehomogenize(minor_sum_of_squares(a, verdict.rank), chart)
    g = U.gcd(sqf, c)
    return U.deg(g) >= 1 and U.count_roots(U.sturm_sequence(g), lo, hi) == 1


def analyze(a: PolyMatrix, ground: str, *, box_radius=DEFAULT_BOX_RADIUS, budget=DEFAULT_BUDGET, seed=0):
    if ground == REAL:
        return constant_rank_real(a, budget=budget, seed=seed)
    if ground == COMPLEX:
        return constant_rank_complex(a, budget=budget, seed=seed)
    if ground == INTEGER:
        return constant_rank_integer(a, box_radius=box_radius, budget=budget, seed=seed)
    raise ValueError(f"unknown ground set {ground!r}")
