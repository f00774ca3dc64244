"""Positivity certification on the boundary of the unit sup-norm cube.

Each box is a cube ``center +- h``.  The polynomial is re-expanded at the
center (exact Taylor shift) and bounded below by
``p(center) - sum |a_alpha| h^|alpha|``, where terms with only even exponents
and positive coefficients contribute nothing to the deficit.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from gmpy2 import mpq

from ..core.coeff import ONE, ZERO
from ..core.poly import Poly

DEFAULT_BUDGET = 10 ** 6


@dataclass
class CubeCertificate:
    status: str  # "certified" | "zero_found" | "negative" | "budget"
    boxes: int = 0
    zero: list | None = None
    faces: list = field(default_factory=list)

    def to_json(self):
        out = {"status": self.status, "boxes": self.boxes, "faces": self.faces}
        if self.zero is not None:
            out["zero"] = [str(x) for x in self.zero]
        return out


def _shift(p: Poly, center) -> Poly:
    n = p.nvars
    forms = [Poly.var(n, i) + c for i, c in enumerate(center)]
    return p.subs_linear(forms)


def box_lower_bound(p: Poly, center, h):
    """Lower bound of ``p`` on the cube ``center +- h`` and the value at the center."""
    q = _shift(p, center) if any(center) else p
    const = ZERO
    deficit = ZERO
    for e, c in q.terms.items():
        s = sum(e)
        if s == 0:
            const = c
            continue
        if c > 0 and all(k % 2 == 0 for k in e):
            continue
        deficit += abs(c) * h ** s
    return const - deficit, const


def certify_face(p: Poly, budget: int):
    """Subdivide ``[-1, 1]^n`` until ``p > 0`` is certified on every box.

    Centers and corners of undecided boxes are evaluated exactly, so a
    nonpositive value at a dyadic point (including points on box edges) is
    reported rather than subdivided around forever.
    Returns ``(status, boxes_used, point)``.
    """
    n = p.nvars
    if n == 0:
        v = p.eval([])
        if v > 0:
            return ("certified", 1, None)
        return ("zero_found" if v == 0 else "negative", 1, [])
    seen = {}

    def value(pt):
        v = seen.get(pt)
        if v is None:
            v = seen[pt] = p.eval(list(pt))
        return v

    stack = [((ZERO,) * n, ONE)]
    used = 0
    while stack:
        if used >= budget:
            return ("budget", used, None)
        center, h = stack.pop()
        used += 1
        lo, val = box_lower_bound(p, center, h)
        if val <= 0:
            return ("zero_found" if val == 0 else "negative", used, list(center))
        if lo > 0:
            continue
        for signs in product((-1, 1), repeat=n):
            corner = tuple(c + s * h for c, s in zip(center, signs))
            v = value(corner)
            if v <= 0:
                return ("zero_found" if v == 0 else "negative", used, list(corner))
        h2 = h / 2
        for signs in product((-1, 1), repeat=n):
            stack.append((tuple(c + s * h2 for c, s in zip(center, signs)), h2))
    return ("certified", used, None)


def certify_cube_boundary(c: Poly, budget: int = DEFAULT_BUDGET, even: bool = True) -> CubeCertificate:
    """Certify ``c > 0`` on the boundary of ``[-1, 1]^d``.

    With ``even`` (``c(-x) = c(x)``) only the faces ``x_i = +1`` are visited.
    A rational zero found at a box center is reported as ``zero_found``.
    """
    d = c.nvars
    total = 0
    faces = []
    signs = (1,) if even else (1, -1)
    for i in range(d):
        for s in signs:
            forms = []
            for j in range(d):
                if j == i:
                    forms.append(Poly.const(d - 1, s))
                else:
                    forms.append(Poly.var(d - 1, j if j < i else j - 1))
            face = c.subs_linear(forms)
            status, used, zero = certify_face(face, budget - total)
            total += used
            faces.append({"axis": i + 1, "sign": s, "status": status, "boxes": used})
            if status in ("zero_found", "negative"):
                pt = list(zero)
                pt.insert(i, mpq(s))
                return CubeCertificate(status, total, pt, faces)
            if status == "budget":
                return CubeCertificate("budget", total, None, faces)
    return CubeCertificate("certified", total, None, faces)
