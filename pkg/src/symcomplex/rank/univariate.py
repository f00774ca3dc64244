"""Dense univariate polynomials (coefficient lists, constant term first).

Used for the exact two-variable routes: gcds of dehomogenized minors, Sturm
sequences, real root isolation with rational endpoints and rational roots.
"""
from __future__ import annotations

from math import lcm

from gmpy2 import mpq

from ..core.coeff import ONE, ZERO, cnorm
from ..core.poly import Poly


def trim(p):
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return p


def deg(p) -> int:
    return len(p) - 1


def add(p, q):
    n = max(len(p), len(q))
    return trim([cnorm((p[i] if i < len(p) else ZERO) + (q[i] if i < len(q) else ZERO)) for i in range(n)])


def scale(p, c):
    return trim([cnorm(a * c) for a in p])


def sub(p, q):
    return add(p, scale(q, -ONE))


def mul(p, q):
    if not p or not q:
        return []
    out = [ZERO] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] = out[i + j] + a * b
    return trim([cnorm(c) for c in out])


def divmod_(p, q):
    q = trim(q)
    if not q:
        raise ZeroDivisionError("division by zero polynomial")
    r = trim(p)
    if len(r) < len(q):
        return [], r
    quot = [ZERO] * (len(r) - len(q) + 1)
    lc = q[-1]
    while len(r) >= len(q) and r:
        shift = len(r) - len(q)
        c = cnorm(r[-1] / lc)
        quot[shift] = c
        for i, b in enumerate(q):
            r[shift + i] = cnorm(r[shift + i] - c * b)
        r = trim(r[:-1]) if not r[-1] else trim(r)
    return trim(quot), r


def rem(p, q):
    return divmod_(p, q)[1]


def monic(p):
    p = trim(p)
    if not p:
        return p
    return scale(p, ONE / p[-1])


def gcd(p, q):
    p, q = trim(p), trim(q)
    while q:
        p, q = q, rem(p, q)
    return monic(p)


def derivative(p):
    return trim([cnorm(a * i) for i, a in enumerate(p)][1:])


def squarefree(p):
    p = trim(p)
    if len(p) <= 1:
        return monic(p)
    g = gcd(p, derivative(p))
    return monic(divmod_(p, g)[0])


def evaluate(p, x):
    acc = ZERO
    for a in reversed(p):
        acc = acc * x + a
    return cnorm(acc)


def sign(x) -> int:
    return (x > 0) - (x < 0)


def sturm_sequence(p):
    p = trim(p)
    seq = [p, derivative(p)]
    while seq[-1]:
        r = rem(seq[-2], seq[-1])
        seq.append(scale(r, -ONE))
    return [s for s in seq if s]


def sign_changes(seq, x) -> int:
    signs = [sign(evaluate(s, x)) for s in seq]
    signs = [s for s in signs if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots(seq, a, b) -> int:
    """Number of distinct real roots in ``(a, b]`` for a Sturm sequence."""
    return sign_changes(seq, a) - sign_changes(seq, b)


def root_bound(p):
    """Cauchy bound: every real root lies in ``(-B, B)``."""
    p = trim(p)
    lc = abs(p[-1])
    return 1 + max((abs(c) / lc for c in p[:-1]), default=ZERO)


def isolate_real_roots(p, max_steps=200):
    """Disjoint intervals ``(a, b]`` with rational ends, one distinct root each.

    A degenerate interval ``(r, r)`` is an exact rational root hit while
    bisecting.
    """
    p = squarefree(p)
    if deg(p) < 1:
        return []
    seq = sturm_sequence(p)
    bound = mpq(root_bound(p))
    stack = [(-bound, bound, count_roots(seq, -bound, bound))]
    out = []
    budget = max_steps * deg(p)
    while stack:
        a, b, n = stack.pop()
        if n == 0:
            continue
        if n == 1:
            out.append((a, b))
            continue
        budget -= 1
        if budget < 0:
            raise RuntimeError("root isolation did not converge")
        m = (a + b) / 2
        nl = count_roots(seq, a, m)
        stack.append((m, b, n - nl))
        if evaluate(p, m) == 0:
            out.append((m, m))
            m2 = (a + m) / 2
            while count_roots(seq, m2, m) > 1:
                m2 = (m2 + m) / 2
            stack.append((a, m2, nl - 1))
        else:
            stack.append((a, m, nl))
    return sorted(out)


def refine(p, interval, width):
    """Shrink an isolating interval of squarefree ``p`` below ``width``."""
    a, b = interval
    if a == b:
        return interval
    seq = sturm_sequence(squarefree(p))
    while b - a > width:
        m = (a + b) / 2
        if evaluate(p, m) == 0:
            return (m, m)
        if count_roots(seq, a, m):
            b = m
        else:
            a = m
    return (a, b)


def to_integer_coeffs(p):
    """Primitive integer coefficient list proportional to rational ``p``."""
    p = trim(p)
    if not p:
        return []
    m = lcm(*(int(mpq(c).denominator) for c in p))
    ints = [int(mpq(c) * m) for c in p]
    from math import gcd as igcd
    g = 0
    for c in ints:
        g = igcd(g, c)
    return [c // g for c in ints]


def _divisors(n: int, limit=10 ** 6):
    n = abs(n)
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i * i != n:
                large.append(n // i)
        i += 1
        if i > limit:
            raise RuntimeError("leading coefficient too large to enumerate divisors")
    return small + large[::-1]


def rational_roots(p):
    """All rational roots of a rational polynomial, sorted."""
    p = trim(p)
    roots = set()
    if not p:
        raise ValueError("zero polynomial has every root")
    while p and p[0] == 0:
        roots.add(ZERO)
        p = p[1:]
    ints = to_integer_coeffs(p)
    if len(ints) <= 1:
        return sorted(roots)
    sqf = squarefree(p)
    for a, b in isolate_real_roots(sqf):
        if a == b:
            roots.add(a)
            continue
        for q in _divisors(ints[-1]):
            lo, hi = refine(sqf, (a, b), mpq(1, 2 * q))
            if lo == hi:
                roots.add(lo)
                break
            for num in range(int((lo * q).__floor__()), int((hi * q).__ceil__()) + 1):
                cand = mpq(num, q)
                if lo < cand <= hi and evaluate(p, cand) == 0:
                    roots.add(cand)
    return sorted(roots)


# -- bivariate homogeneous helpers -------------------------------------------

def dehomogenize(f: Poly, chart: int) -> list:
    """Univariate ``f(t, 1)`` (chart 1) or ``f(1, t)`` (chart 0)."""
    if f.nvars != 2:
        raise ValueError("dehomogenization needs a bivariate polynomial")
    free = 1 - chart
    out = {}
    for e, c in f.terms.items():
        out[e[free]] = cnorm(out.get(e[free], ZERO) + c)
    n = max(out, default=-1)
    return trim([out.get(i, ZERO) for i in range(n + 1)])


def homogeneous_gcd(polys: list[Poly]) -> Poly:
    """Gcd of homogeneous bivariate polynomials, normalized monic in chart 1."""
    polys = [p for p in polys if p.terms]
    if not polys:
        return Poly.zero(2)
    mult = min(min(e[1] for e in p.terms) for p in polys)
    g = []
    for p in polys:
        g = gcd(g, dehomogenize(p, 1)) if g else monic(dehomogenize(p, 1))
    gdeg = deg(g)
    terms = {(i, gdeg - i + mult): c for i, c in enumerate(g) if c}
    return Poly(2, terms)
