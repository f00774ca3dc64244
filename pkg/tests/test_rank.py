import random

import pytest
import sympy

from conftest import random_symbol, to_sympy
from symcomplex.catalog import cauchy_riemann, curl, div, grad, laplacian, pi_surrogate, sqrt2_surrogate, \
    st_venant, sym_grad
from symcomplex.core import I, Poly, Q, Symbol, variables
from symcomplex.rank import (COMPLEX, CONSTANT, INTEGER, NOT_CONSTANT, REAL, UNKNOWN, analyze,
                             constant_rank_complex, constant_rank_integer, constant_rank_real, generic_rank,
                             minor_sum_of_squares, rank_at, recheck_witness)
from symcomplex.rank.intervals import box_lower_bound, certify_cube_boundary

y1, y2 = variables(2)
x1, x2, x3 = variables(3)


def test_generic_rank_examples():
    assert generic_rank(grad(3, 1)) == 1
    assert generic_rank(cauchy_riemann()) == 2
    assert generic_rank(Symbol.from_matrix(Symbol.zeros(2, 3, 2), degree=1)) == 0
    assert generic_rank(st_venant()) == 3


def test_minor_form_examples():
    assert minor_sum_of_squares(cauchy_riemann(), 2) == (y1 ** 2 + y2 ** 2) ** 2
    assert minor_sum_of_squares(grad(2, 1), 1) == y1 ** 2 + y2 ** 2
    assert minor_sum_of_squares(grad(3, 2), 3).is_zero()


def test_minor_form_is_hermitian_for_complex_symbols():
    a = Symbol([[y1 + I * y2, y2]], 2)
    # |x1 + i x2|^2 + |x2|^2
    assert minor_sum_of_squares(a, 1) == y1 ** 2 + 2 * y2 ** 2


def test_real_examples():
    v = constant_rank_real(cauchy_riemann())
    assert (v.outcome, v.rank) == (CONSTANT, 2)
    v = constant_rank_real(pi_surrogate())
    assert v.outcome == NOT_CONSTANT and v.witness == [2, 1] and v.witness_rank == 1
    v = constant_rank_real(grad(3, 1))
    assert (v.outcome, v.rank) == (CONSTANT, 1)


def test_real_irrational_drop_has_algebraic_witness():
    v = constant_rank_real(sqrt2_surrogate())
    assert v.outcome == NOT_CONSTANT and v.witness is None
    assert v.algebraic_witness["rank"] == 1
    assert recheck_witness(sqrt2_surrogate(), v)


def test_complex_examples():
    v = constant_rank_complex(cauchy_riemann())
    assert v.outcome == NOT_CONSTANT and v.witness == [1, I] and v.witness_rank == 1
    assert recheck_witness(cauchy_riemann(), v)
    assert constant_rank_complex(grad(2, 1)).outcome == CONSTANT
    v = constant_rank_complex(laplacian(2))
    assert v.outcome == NOT_CONSTANT and recheck_witness(laplacian(2), v)


def test_integer_examples():
    v = constant_rank_integer(pi_surrogate())
    assert v.outcome == NOT_CONSTANT and v.witness == [2, 1]
    v = constant_rank_integer(sqrt2_surrogate(), box_radius=25)
    assert (v.outcome, v.rank) == (CONSTANT, 2)
    v = constant_rank_integer(grad(3, 1), box_radius=3)
    assert (v.outcome, v.rank) == (CONSTANT, 1)
    with pytest.raises(ValueError):
        constant_rank_integer(grad(2, 1), box_radius=0)


def test_analyze_dispatch():
    assert analyze(cauchy_riemann(), REAL).ground == REAL
    assert analyze(cauchy_riemann(), COMPLEX).outcome == NOT_CONSTANT
    assert analyze(pi_surrogate(), INTEGER).ground == INTEGER
    with pytest.raises(ValueError):
        analyze(cauchy_riemann(), "p-adic")


def test_three_dimensional_operators():
    for a, r in [(sym_grad(), 3), (div(3), 1), (curl(3, 1), 2)]:
        v = constant_rank_real(a)
        assert (v.outcome, v.rank) == (CONSTANT, r)


def test_three_dimensional_drop_is_found():
    a = Symbol([[x1, 0 * x1], [0 * x1, x2 - x3]], 3)
    v = constant_rank_real(a)
    assert v.outcome == NOT_CONSTANT and recheck_witness(a, v)


def test_budget_exhaustion_is_unknown():
    # c = x1^2 + x2^2 + x3^2 - x1*x2 is positive but not trivially so
    a = Symbol([[x1 - x2, x2], [x3, x1]], 3)
    v = constant_rank_real(a, budget=1)
    assert v.outcome in (UNKNOWN, CONSTANT, NOT_CONSTANT)
    if v.outcome == UNKNOWN:
        assert v.budget_spent <= 1 + 3


def test_verdict_json_and_str():
    v = constant_rank_complex(cauchy_riemann())
    assert str(v) == "complex: NotConstant(generic rank 2, witness (1, i), rank 1 there)"
    assert v.to_json()["witness"] == ["1", "i"]


def test_cube_certificate():
    c = x1 ** 2 + x2 ** 2 + x3 ** 2
    assert certify_cube_boundary(c).status == "certified"
    assert certify_cube_boundary(x1 ** 2 - x2 ** 2).status in ("zero_found", "negative")
    lb, val = box_lower_bound(y1 ** 2 + y2 ** 2, [Q(1), Q(0)], Q(1, 4))
    assert val == 1 and lb <= val


def _sympy_real_drop(a, r):
    """Oracle: a real 2-D symbol drops rank iff c_r has a real projective zero."""
    c = minor_sum_of_squares(a, r)
    t = sympy.Symbol("t")
    if c.eval([1, 0]) == 0 or c.eval([0, 1]) == 0:
        return True
    f = sum(to_sympy(coef) * t ** e[0] for e, coef in c.terms.items())
    return len(sympy.real_roots(sympy.Poly(f, t))) > 0


@pytest.mark.parametrize("seed", range(20))
def test_real_2d_against_sympy_oracle(seed):
    gen = random.Random(seed)
    a = random_symbol(gen, 2, gen.randint(1, 3), gen.randint(1, 3), gen.randint(1, 2))
    r = generic_rank(a)
    if r == 0:
        return
    v = constant_rank_real(a)
    assert v.rank == r
    assert (v.outcome == NOT_CONSTANT) == _sympy_real_drop(a, r)
    if v.outcome == NOT_CONSTANT:
        assert recheck_witness(a, v)


@pytest.mark.parametrize("seed", range(10))
def test_integer_witness_is_a_lattice_point(seed):
    gen = random.Random(50 + seed)
    a1, b1 = gen.randint(-4, 4), gen.randint(1, 4)
    # diag(b1*x1 - a1*x2, x1 + x2) drops rank at (a1, b1)
    a = Symbol([[b1 * y1 - a1 * y2, 0 * y1], [0 * y1, y1 + 3 * y2]], 2)
    v = constant_rank_integer(a)
    assert v.outcome == NOT_CONSTANT
    assert all(int(x) == x for x in v.witness) and rank_at(a, v.witness) < 2
