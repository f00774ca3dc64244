"""Exact arithmetic foundation: coefficients, polynomials, matrices, symbols."""
from .coeff import I, ONE, ZERO, Q, QQi, cnorm, conj
from .linalg import ExactMatrix, exact_rank, same_span
from .poly import Poly, variables
from .sampling import sample_points
from .symbol import PolyMatrix, Symbol, all_minors, minor, poly_det, poly_matrix_mul, poly_rank, symbol_eval


def poly_eval(p: Poly, point):
    return p.eval(point)


def kernel_basis(m: ExactMatrix):
    return m.kernel_basis()


def image_basis(m: ExactMatrix):
    return m.image_basis()


__all__ = [
    "I", "ONE", "ZERO", "Q", "QQi", "cnorm", "conj",
    "ExactMatrix", "exact_rank", "same_span", "kernel_basis", "image_basis",
    "Poly", "variables", "poly_eval", "sample_points",
    "PolyMatrix", "Symbol", "all_minors", "minor", "poly_det", "poly_matrix_mul", "poly_rank", "symbol_eval",
]
