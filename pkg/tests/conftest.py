import itertools
import random

import sympy

from symcomplex.core.coeff import QQi
from symcomplex.core.poly import Poly
from symcomplex.core.symbol import Symbol


def to_sympy(c):
    if isinstance(c, QQi):
        return sympy.Rational(int(c.re.numerator), int(c.re.denominator)) + \
            sympy.I * sympy.Rational(int(c.im.numerator), int(c.im.denominator))
    return sympy.Rational(int(c.numerator), int(c.denominator))


def sympy_matrix(m):
    return sympy.Matrix([[to_sympy(x) for x in row] for row in m.data]) if m.rows else sympy.zeros(0, m.cols)


def sympy_rank(m):
    if m.rows == 0 or m.cols == 0:
        return 0
    return sympy_matrix(m).rank(simplify=True)


def cofactor_det(a):
    """Laplace expansion along the first row; independent of Bareiss."""
    n = len(a)
    if n == 0:
        return 1
    if n == 1:
        return a[0][0]
    total = 0
    for j in range(n):
        sub = [row[:j] + row[j + 1:] for row in a[1:]]
        term = a[0][j] * cofactor_det(sub)
        total = total + term if j % 2 == 0 else total - term
    return total


def brute_rank(a):
    """Largest r with a nonzero r x r minor, by exhaustive cofactor expansion."""
    rows, cols = len(a), len(a[0]) if a else 0
    for r in range(min(rows, cols), 0, -1):
        for rs in itertools.combinations(range(rows), r):
            for cs in itertools.combinations(range(cols), r):
                if cofactor_det([[a[i][j] for j in cs] for i in rs]):
                    return r
    return 0


def random_symbol(gen: random.Random, d, rows, cols, k, rank=None, density=0.7, coeff=3):
    """Random homogeneous symbol; with ``rank`` set, a product of two random factors."""
    def rand_poly(deg):
        terms = {}
        for e in itertools.product(range(deg + 1), repeat=d):
            if sum(e) == deg and gen.random() < density:
                terms[e] = gen.randint(-coeff, coeff)
        return Poly(d, terms)

    if rank is None:
        entries = [[rand_poly(k) for _ in range(cols)] for _ in range(rows)]
        return Symbol(entries, d, k if any(p.terms for r in entries for p in r) else None, rows, cols)
    # left factor carries the degree, right factor is constant
    left = [[rand_poly(k) for _ in range(rank)] for _ in range(rows)]
    right = [[gen.randint(-2, 2) for _ in range(cols)] for _ in range(rank)]
    entries = [[sum((left[i][t] * right[t][j] for t in range(rank)), Poly.zero(d)) for j in range(cols)]
               for i in range(rows)]
    return Symbol(entries, d, None, rows, cols)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[n])
