"""Fourier-side operators on the torus.

A field is a finite sum ``f(x) = sum_m c_m e^{2 pi i m.x}``.  The factor
``(2 pi i)^s`` produced by differentiation is never expanded: a field stores
``c_m / (2 pi i)^s`` together with the exponent ``s``.  Since
``conj((2 pi i)^s) = (-1)^s (2 pi i)^s``, a field with exponent ``s`` is
real-valued iff ``stored(-m) = (-1)^s conj(stored(m))``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from .core.coeff import ONE, ZERO, Q, cnorm, conj, from_pair, is_real, to_pair
from .core.linalg import ExactMatrix
from .core.serialize import SCHEMA
from .core.symbol import Symbol
from .pseudoinverse import pointwise_pseudoinverse


class SolvabilityError(ArithmeticError):
    """The coefficient at ``m`` is not in the image of ``B(m)``."""

    def __init__(self, m):
        self.m = tuple(m)
        super().__init__(f"coefficient at m = {self.m} is not in the image of B(m)")


class FieldFormatError(ValueError):
    pass


def _neg(m):
    return tuple(-x for x in m)


@dataclass(frozen=True)
class FourierField:
    d: int
    dim: int
    scale: int = 0
    coeffs: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for m, vec in self.coeffs.items():
            m = tuple(int(x) for x in m)
            if len(m) != self.d:
                raise ValueError(f"frequency {m} is not in Z^{self.d}")
            vec = tuple(cnorm(v) for v in vec)
            if len(vec) != self.dim:
                raise ValueError(f"coefficient at {m} has length {len(vec)}, expected {self.dim}")
            if any(vec):
                clean[m] = vec
        object.__setattr__(self, "coeffs", clean)

    @classmethod
    def zero(cls, d, dim, scale=0):
        return cls(d, dim, scale, {})

    @classmethod
    def single(cls, m, vec, scale=0):
        return cls(len(m), len(vec), scale, {tuple(m): vec})

    def is_zero(self):
        return not self.coeffs

    @property
    def support(self):
        return sorted(self.coeffs)

    def is_mean_zero(self):
        return (0,) * self.d not in self.coeffs

    def is_real(self):
        sign = -ONE if self.scale % 2 else ONE
        for m, vec in self.coeffs.items():
            other = self.coeffs.get(_neg(m))
            if other is None:
                return False
            if any(b != sign * conj(a) for a, b in zip(vec, other)):
                return False
        return True

    def with_scale(self, scale):
        """The zero field may be relabelled to any exponent; others may not."""
        if scale != self.scale and not self.is_zero():
            raise ValueError("cannot change the scale of a nonzero field")
        return FourierField(self.d, self.dim, scale, {}) if self.is_zero() else self

    def __eq__(self, other):
        if not isinstance(other, FourierField):
            return NotImplemented
        if (self.d, self.dim) != (other.d, other.dim):
            return False
        if self.is_zero() and other.is_zero():
            return True
        return self.scale == other.scale and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.d, self.dim, frozenset(self.coeffs.items())))

    def _align(self, other):
        if (self.d, self.dim) != (other.d, other.dim):
            raise ValueError("fields live in different spaces")
        if self.is_zero():
            return self.with_scale(other.scale), other
        if other.is_zero():
            return self, other.with_scale(self.scale)
        if self.scale != other.scale:
            raise ValueError(f"scale exponents differ: {self.scale} vs {other.scale}")
        return self, other

    def __add__(self, other):
        a, b = self._align(other)
        out = dict(a.coeffs)
        for m, vec in b.coeffs.items():
            old = out.get(m)
            out[m] = vec if old is None else tuple(x + y for x, y in zip(old, vec))
        return FourierField(a.d, a.dim, a.scale, out)

    def scale_by(self, c):
        return FourierField(self.d, self.dim, self.scale,
                            {m: tuple(c * x for x in v) for m, v in self.coeffs.items()})

    def __neg__(self):
        return self.scale_by(-ONE)

    def __sub__(self, other):
        return self + (-other)

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "kind": "fourier_field",
            "d": self.d,
            "dim": self.dim,
            "scale": self.scale,
            "mean_zero": self.is_mean_zero(),
            "real": self.is_real(),
            "modes": [{"m": list(m), "c": [to_pair(x) for x in self.coeffs[m]]} for m in self.support],
        }

    @classmethod
    def from_json(cls, obj) -> "FourierField":
        try:
            modes = {tuple(e["m"]): [from_pair(p) for p in e["c"]] for e in obj["modes"]}
            return cls(int(obj["d"]), int(obj["dim"]), int(obj.get("scale", 0)), modes)
        except (KeyError, TypeError, ValueError) as exc:
            raise FieldFormatError(f"malformed field JSON: {exc}") from exc

    def to_text(self) -> str:
        lines = [f"scale {self.scale}"] if self.scale else []
        for m in self.support:
            pairs = " ".join(f"{a} {b}" for a, b in (to_pair(x) for x in self.coeffs[m]))
            lines.append(" ".join(str(x) for x in m) + " | " + pairs)
        return "\n".join(lines) + ("\n" if lines else "")

    @classmethod
    def from_text(cls, text: str, d: int | None = None, dim: int | None = None) -> "FourierField":
        """Parse lines ``m1 ... md | re im re im ...``; ``#`` starts a comment."""
        scale = 0
        modes = {}
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if line.startswith("scale"):
                try:
                    scale = int(line.split()[1])
                except (IndexError, ValueError):
                    raise FieldFormatError(f"line {lineno}: expected 'scale <int>'") from None
                continue
            if "|" not in line:
                raise FieldFormatError(f"line {lineno}: missing '|'")
            left, right = line.split("|", 1)
            try:
                m = tuple(int(x) for x in left.split())
                vals = [Q(x) for x in right.split()]
            except ValueError as exc:
                raise FieldFormatError(f"line {lineno}: {exc}") from None
            if len(vals) % 2:
                raise FieldFormatError(f"line {lineno}: odd number of re/im values")
            vec = [cnorm(from_pair((vals[i], vals[i + 1]))) for i in range(0, len(vals), 2)]
            if d is None:
                d = len(m)
            if dim is None:
                dim = len(vec)
            if len(m) != d or len(vec) != dim:
                raise FieldFormatError(f"line {lineno}: expected {d} indices and {dim} components")
            if m in modes:
                raise FieldFormatError(f"line {lineno}: duplicate frequency {m}")
            modes[m] = vec
        if d is None or dim is None:
            raise FieldFormatError("empty field needs explicit d and dim")
        return cls(d, dim, scale, modes)


def load_field(text: str) -> FourierField:
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return FourierField.from_json(json.loads(text))
    return FourierField.from_text(text)


def _check_dims(a: Symbol, v: FourierField):
    if a.d != v.d:
        raise ValueError(f"operator acts on R^{a.d}, field lives on T^{v.d}")
    if a.cols != v.dim:
        raise ValueError(f"operator expects {a.cols} components, field has {v.dim}")


def apply_operator(a: Symbol, v: FourierField) -> FourierField:
    """``F(A v)(m) = (2 pi i)^k A(m) F v(m)``."""
    k = a.require_degree()
    _check_dims(a, v)
    out = {m: a.evaluate(m) @ list(vec) for m, vec in v.coeffs.items()}
    return FourierField(v.d, a.rows, v.scale + k, out)


def kernel_projection(a: Symbol, v: FourierField) -> FourierField:
    """Per-frequency orthogonal projection onto ``ker A(m)``."""
    a.require_degree()
    _check_dims(a, v)
    if not v.is_mean_zero():
        raise ValueError("kernel projection needs a mean-zero field")
    out = {}
    for m, vec in v.coeffs.items():
        am = a.evaluate(m)
        proj = pointwise_pseudoinverse(am) @ am
        out[m] = [x - y for x, y in zip(vec, proj @ list(vec))]
    return FourierField(v.d, v.dim, v.scale, out)


def solve_potential_torus(b: Symbol, v: FourierField, a: Symbol | None = None) -> FourierField:
    """Solve ``B(D) u = v`` with ``F u(m) = (2 pi i)^{-k} B(m)^+ F v(m)``."""
    k = b.require_degree()
    if b.d != v.d or b.rows != v.dim:
        raise ValueError(f"potential has target dimension {b.rows}, field has {v.dim}")
    if not v.is_mean_zero():
        raise ValueError("the periodic potential problem needs a mean-zero field")
    if a is not None and not apply_operator(a, v).is_zero():
        raise ValueError("field is not annihilated by the given operator")
    out = {}
    for m in sorted(v.coeffs):
        vec = list(v.coeffs[m])
        bm = b.evaluate(m)
        u = pointwise_pseudoinverse(bm) @ vec
        if bm @ u != vec:
            raise SolvabilityError(m)
        out[m] = u
    return FourierField(v.d, b.cols, v.scale - k, out)


@dataclass
class RoundtripReport:
    projected: FourierField
    potential: FourierField
    reconstructed: FourierField

    @property
    def ok(self) -> bool:
        return self.reconstructed == self.projected

    @property
    def real_preserved(self) -> bool:
        return not self.projected.is_real() or self.potential.is_real()

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "kind": "roundtrip",
            "exact": self.ok,
            "real_preserved": self.real_preserved,
            "modes": len(self.projected.coeffs),
            "potential": self.potential.to_json(),
        }


def roundtrip_check(a: Symbol, b: Symbol, v: FourierField) -> RoundtripReport:
    p = kernel_projection(a, v)
    u = solve_potential_torus(b, p)
    return RoundtripReport(p, u, apply_operator(b, u))


def random_real_field(d, dim, modes, max_freq, seed, gen=None) -> FourierField:
    """Random real-valued mean-zero field with at most ``modes`` frequencies."""
    import random

    from .core.coeff import QQi

    gen = gen or random.Random(seed)
    out = {}
    while len(out) < modes:
        m = tuple(gen.randint(-max_freq, max_freq) for _ in range(d))
        if not any(m) or m in out:
            continue
        vec = [QQi(Q(gen.randint(-9, 9), gen.randint(1, 5)), Q(gen.randint(-9, 9), gen.randint(1, 5)))
               for _ in range(dim)]
        out[m] = vec
        out[_neg(m)] = [conj(x) for x in vec]
    return FourierField(d, dim, 0, out)
