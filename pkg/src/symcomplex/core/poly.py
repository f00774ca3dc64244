"""Sparse multivariate polynomials over Q and Q(i).

Terms are stored as ``{exponent tuple: coefficient}`` with no zero
coefficients, so structural equality is polynomial equality.  Printing and
term iteration use graded-lexicographic order (highest first).
"""
from __future__ import annotations

from functools import reduce
from math import gcd

from gmpy2 import mpq

from .coeff import ONE, ZERO, cnorm, coerce, conj, format_coeff, is_real


def _grlex_key(exp):
    return (sum(exp), exp)


class Poly:
    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms=None):
        self.nvars = nvars
        clean = {}
        if terms:
            for e, c in terms.items():
                if len(e) != nvars:
                    raise ValueError(f"exponent {e} has wrong length for {nvars} variables")
                c = coerce(c)
                if c:
                    clean[tuple(e)] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars, terms):
        p = cls.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls, nvars):
        return cls._raw(nvars, {})

    @classmethod
    def const(cls, nvars, c):
        c = coerce(c)
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def var(cls, nvars, i):
        """The coordinate ``x_{i+1}`` (zero-based index ``i``)."""
        e = [0] * nvars
        e[i] = 1
        return cls._raw(nvars, {tuple(e): ONE})

    @classmethod
    def monomial(cls, exp, c=ONE):
        return cls(len(exp), {tuple(exp): c})

    # -- basic protocol -------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self.terms == other.terms
        if not self.terms:
            return other == 0
        if len(self.terms) == 1:
            (e, c), = self.terms.items()
            return not any(e) and c == other
        return False

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        return f"Poly({self.nvars}, {str(self)!r})"

    def __str__(self):
        return self.format()

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def leading_term(self):
        return max(self.terms.items(), key=lambda t: _grlex_key(t[0]))

    def format(self, names=None) -> str:
        if not self.terms:
            return "0"
        names = names or [f"x{i + 1}" for i in range(self.nvars)]
        out = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(e) if k
            )
            if not mono:
                s = format_coeff(c)
            elif c == 1:
                s = mono
            elif c == -1:
                s = "-" + mono
            else:
                s = f"{format_coeff(c)}*{mono}"
            out.append(s)
        text = out[0]
        for s in out[1:]:
            text += " - " + s[1:] if s.startswith("-") else " + " + s
        return text

    # -- ring operations ------------------------------------------------

    def _check(self, other):
        if other.nvars != self.nvars:
            raise ValueError(f"dimension mismatch: {self.nvars} vs {other.nvars} variables")

    def _lift(self, other):
        if isinstance(other, Poly):
            self._check(other)
            return other
        return Poly.const(self.nvars, other)

    def __add__(self, other):
        other = self._lift(other)
        if len(other.terms) > len(self.terms):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        out = dict(a)
        for e, c in b.items():
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s = cnorm(s + c)
                if s:
                    out[e] = s
                else:
                    del out[e]
        return Poly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = coerce(other)
            if not c:
                return Poly.zero(self.nvars)
            return Poly._raw(self.nvars, {e: cnorm(v * c) for e, v in self.terms.items()})
        self._check(other)
        out = {}
        get = out.get
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = get(e, ZERO) + c1 * c2
        return Poly._raw(self.nvars, {e: cnorm(c) for e, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, c):
        if isinstance(c, Poly):
            return self.exact_div(c)
        c = coerce(c)
        return Poly._raw(self.nvars, {e: cnorm(v / c) for e, v in self.terms.items()})

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = Poly.const(self.nvars, ONE)
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def exact_div(self, other: "Poly") -> "Poly":
        """Quotient of an exact division; raises ``ArithmeticError`` otherwise."""
        self._check(other)
        if not other.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        if len(other.terms) == 1:
            (ed, cd), = other.terms.items()
            out = {}
            for e, c in self.terms.items():
                q = tuple(a - b for a, b in zip(e, ed))
                if min(q, default=0) < 0:
                    raise ArithmeticError("inexact polynomial division")
                out[q] = cnorm(c / cd)
            return Poly._raw(self.nvars, out)
        lt_e, lt_c = other.leading_term()
        rem = dict(self.terms)
        quot = {}
        others = [(e, c) for e, c in other.terms.items() if e != lt_e]
        while rem:
            e, c = max(rem.items(), key=lambda t: _grlex_key(t[0]))
            q = tuple(a - b for a, b in zip(e, lt_e))
            if min(q, default=0) < 0:
                raise ArithmeticError("inexact polynomial division")
            qc = cnorm(c / lt_c)
            quot[q] = qc
            del rem[e]
            for e2, c2 in others:
                t = tuple(a + b for a, b in zip(q, e2))
                v = cnorm(rem.get(t, ZERO) - qc * c2)
                if v:
                    rem[t] = v
                else:
                    rem.pop(t, None)
        return Poly._raw(self.nvars, quot)

    # -- evaluation and structure ---------------------------------------

    def __call__(self, *point):
        return self.eval(point[0] if len(point) == 1 and isinstance(point[0], (list, tuple)) else point)

    def eval(self, point):
        if len(point) != self.nvars:
            raise ValueError(
                f"dimension mismatch: point has {len(point)} coordinates, polynomial has {self.nvars} variables"
            )
        point = [coerce(x) for x in point]
        powers = [dict() for _ in point]
        total = ZERO
        for e, c in self.terms.items():
            v = c
            for i, k in enumerate(e):
                if k:
                    pw = powers[i].get(k)
                    if pw is None:
                        pw = point[i] ** k
                        powers[i][k] = pw
                    v = v * pw
            total = total + v
        return cnorm(total)

    def degree(self) -> int:
        """Total degree; ``-1`` for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def degrees(self) -> set[int]:
        return {sum(e) for e in self.terms}

    def is_homogeneous(self, k=None) -> bool:
        degs = self.degrees()
        if not degs:
            return True
        return len(degs) == 1 and (k is None or degs == {k})

    def is_real(self) -> bool:
        return all(is_real(c) for c in self.terms.values())

    def conjugate(self) -> "Poly":
        return Poly._raw(self.nvars, {e: conj(c) for e, c in self.terms.items()})

    def norm2(self) -> "Poly":
        """``p * conj(p)`` (coefficientwise conjugation)."""
        return self * self.conjugate()

    def content(self):
        """Positive rational ``c`` such that ``p / c`` has coprime integer
        coefficients (real and imaginary parts pooled)."""
        return pooled_content([self])

    def monomial_content(self) -> tuple:
        if not self.terms:
            return (0,) * self.nvars
        exps = list(self.terms)
        return tuple(min(e[i] for e in exps) for i in range(self.nvars))

    def leading_coeff(self):
        return self.leading_term()[1]

    def subs_linear(self, forms: list["Poly"]) -> "Poly":
        """Compose with ``x_i -> forms[i]`` (all forms share a new arity)."""
        if len(forms) != self.nvars:
            raise ValueError("need one substitution per variable")
        nv = forms[0].nvars if forms else 0
        cache = [dict() for _ in forms]
        out = Poly.zero(nv)
        for e, c in self.terms.items():
            t = Poly.const(nv, c)
            for i, k in enumerate(e):
                if k:
                    pw = cache[i].get(k)
                    if pw is None:
                        pw = forms[i] ** k
                        cache[i][k] = pw
                    t = t * pw
            out = out + t
        return out

    def to_terms(self):
        """Sorted list of ``(exponent, coefficient)`` pairs."""
        return self.sorted_terms()


def pooled_content(polys) -> mpq:
    """Positive rational content shared by all coefficients of ``polys``."""
    parts = []
    for p in polys:
        for c in p.terms.values():
            if is_real(c):
                parts.append(c)
            else:
                parts.extend([c.re, c.im])
    parts = [mpq(x) for x in parts if x]
    if not parts:
        return ONE
    num = reduce(gcd, (int(x.numerator) for x in parts))
    den = reduce(lambda a, b: a * b // gcd(a, b), (int(x.denominator) for x in parts))
    return mpq(num, den)


def abs2_poly(p: Poly) -> Poly:
    return p.norm2() if not p.is_real() else p * p


def variables(nvars: int) -> list[Poly]:
    return [Poly.var(nvars, i) for i in range(nvars)]


__all__ = ["Poly", "variables", "abs2_poly", "pooled_content"]
