"""Exact coefficients: rationals (``gmpy2.mpq``) and Gaussian rationals.

A coefficient is always either an ``mpq`` or a :class:`QQi` with a nonzero
imaginary part; :func:`cnorm` enforces this so that equality of
coefficients is structural.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from gmpy2 import mpq

ZERO = mpq(0)
ONE = mpq(1)


def Q(x, den=None):
    """Coerce ints, Fractions, strings like ``'3/4'`` or mpq to ``mpq``."""
    if den is not None:
        return mpq(x, den)
    if isinstance(x, str):
        return mpq(x.strip())
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    return mpq(x)


def _scalar(x) -> bool:
    return isinstance(x, (int, Rational, type(ZERO)))


class QQi:
    """Gaussian rational ``re + im*i`` with exact parts."""

    __slots__ = ("re", "im")

    def __init__(self, re, im=0):
        self.re = Q(re)
        self.im = Q(im)

    def __repr__(self):
        return f"QQi({self.re}, {self.im})"

    def __str__(self):
        return format_coeff(self)

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __eq__(self, other):
        if isinstance(other, QQi):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Rational, type(ZERO))):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __neg__(self):
        return QQi(-self.re, -self.im)

    def __pos__(self):
        return self

    def __add__(self, other):
        if isinstance(other, QQi):
            return cnorm(QQi(self.re + other.re, self.im + other.im))
        if not _scalar(other):
            return NotImplemented
        return cnorm(QQi(self.re + other, self.im))

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, QQi):
            return cnorm(QQi(self.re - other.re, self.im - other.im))
        if not _scalar(other):
            return NotImplemented
        return cnorm(QQi(self.re - other, self.im))

    def __rsub__(self, other):
        if not _scalar(other):
            return NotImplemented
        return cnorm(QQi(other - self.re, -self.im))

    def __mul__(self, other):
        if isinstance(other, QQi):
            return cnorm(QQi(self.re * other.re - self.im * other.im,
                             self.re * other.im + self.im * other.re))
        if not _scalar(other):
            return NotImplemented
        return cnorm(QQi(self.re * other, self.im * other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, QQi):
            n = other.re * other.re + other.im * other.im
            return cnorm(QQi((self.re * other.re + self.im * other.im) / n,
                             (self.im * other.re - self.re * other.im) / n))
        if not _scalar(other):
            return NotImplemented
        return cnorm(QQi(self.re / other, self.im / other))

    def __rtruediv__(self, other):
        if not _scalar(other):
            return NotImplemented
        n = self.re * self.re + self.im * self.im
        return cnorm(QQi(other * self.re / n, -other * self.im / n))

    def __pow__(self, n):
        if n < 0:
            return ONE / (self ** -n)
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conjugate(self):
        return QQi(self.re, -self.im)


I = QQi(0, 1)


def cnorm(x):
    """Canonical form: collapse Gaussian rationals with zero imaginary part."""
    if isinstance(x, QQi):
        if x.im == 0:
            return x.re
        return x
    if isinstance(x, int):
        return mpq(x)
    return x


def coerce(x):
    if isinstance(x, QQi):
        return cnorm(x)
    if isinstance(x, complex):
        raise TypeError("floating complex values are not exact")
    if isinstance(x, float):
        raise TypeError("floating values are not exact")
    return Q(x)


def conj(x):
    return x.conjugate() if isinstance(x, QQi) else x


def is_real(x):
    return not isinstance(x, QQi)


def real_part(x):
    return x.re if isinstance(x, QQi) else x


def imag_part(x):
    return x.im if isinstance(x, QQi) else ZERO


def abs2(x):
    """``|x|^2`` as a rational."""
    if isinstance(x, QQi):
        return x.re * x.re + x.im * x.im
    return x * x


def format_rational(q) -> str:
    q = mpq(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_coeff(x) -> str:
    if not isinstance(x, QQi):
        return format_rational(x)
    re, im = x.re, x.im
    if im == 1:
        ims = "i"
    elif im == -1:
        ims = "-i"
    else:
        ims = f"{format_rational(im)}*i"
    if re == 0:
        return ims
    sign = "-" if im < 0 else "+"
    ims = ims.lstrip("-")
    return f"({format_rational(re)} {sign} {ims})"


def to_pair(x) -> list[str]:
    """JSON-friendly ``[re, im]`` pair of rational strings."""
    return [format_rational(real_part(x)), format_rational(imag_part(x))]


def from_pair(pair) -> object:
    re, im = pair
    return cnorm(QQi(Q(str(re)), Q(str(im))))
