"""Parser and pretty printer for operator definition files.

    operator NAME { dim D; shape MxN; [ [p11, ..., p1N], ..., [pM1, ..., pMN] ] }

Entries are polynomial expressions in ``x1..xD`` built from integer
literals, ``+ - * / ^`` and parentheses; ``i`` is the imaginary unit when
complex coefficients are enabled.  ``#`` starts a comment.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .core.coeff import I, ONE, Q
from .core.poly import Poly
from .core.serialize import SCHEMA, matrix_to_json
from .core.symbol import Symbol


class ParseError(ValueError):
    """Syntax, shape or homogeneity error at ``line:col`` (1-based)."""

    def __init__(self, kind: str, message: str, line: int, col: int):
        self.kind = kind
        self.message = message
        self.line = line
        self.col = col
        super().__init__(f"{line}:{col}: {kind} error: {message}")

    def to_json(self) -> dict:
        return {"schema": SCHEMA, "kind": "error", "error": self.kind,
                "line": self.line, "col": self.col, "message": self.message}


_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+|\#[^\n]*)
  | (?P<nl>\n)
  | (?P<int>[0-9]+)
  | (?P<var>x[0-9]+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>[{}\[\](),;+\-*/^])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    out = []
    line, start, pos = 1, 0, 0
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if mt is None:
            raise ParseError("syntax", f"unexpected character {text[pos]!r}", line, pos - start + 1)
        kind = mt.lastgroup
        if kind == "nl":
            line, start = line + 1, mt.end()
        elif kind != "ws":
            tok = mt.group()
            out.append(Token(kind, tok, line, pos - start + 1))
        pos = mt.end()
    out.append(Token("eof", "", line, pos - start + 1))
    return out


@dataclass(frozen=True)
class OperatorSpec:
    name: str
    d: int
    rows: int
    cols: int
    symbol: Symbol

    @property
    def entries(self):
        return self.symbol.entries

    def to_json(self) -> dict:
        return {"schema": SCHEMA, "kind": "operator", "name": self.name, "d": self.d,
                "shape": [self.rows, self.cols], "symbol": matrix_to_json(self.symbol)}


class _Parser:
    def __init__(self, text: str, complex_: bool):
        self.toks = tokenize(text)
        self.i = 0
        self.complex = complex_
        self.d = None

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, msg, tok=None, kind="syntax"):
        tok = tok or self.tok
        return ParseError(kind, msg, tok.line, tok.col)

    def expect(self, text=None, kind=None) -> Token:
        tok = self.tok
        if (text is not None and tok.text != text) or (kind is not None and tok.kind != kind):
            want = repr(text) if text is not None else kind
            got = repr(tok.text) if tok.kind != "eof" else "end of input"
            raise self.error(f"expected {want}, found {got}")
        self.i += 1
        return tok

    def accept(self, text) -> bool:
        if self.tok.text == text and self.tok.kind != "eof":
            self.i += 1
            return True
        return False

    def integer(self, what) -> int:
        tok = self.tok
        if tok.kind != "int":
            raise self.error(f"expected {what}")
        self.i += 1
        return int(tok.text)

    def operator(self):
        self.expect("operator")
        name = self.expect(kind="ident").text
        self.expect("{")
        self.expect("dim")
        dtok = self.tok
        self.d = self.integer("dimension")
        if self.d < 1:
            raise self.error("dimension must be positive", dtok)
        self.expect(";")
        self.expect("shape")
        stok = self.tok
        rows = self.integer("row count")
        # "3x1" lexes as int followed by var 'x1'
        if self.tok.kind == "var" and self.tok.text != "x":
            cols = int(self.tok.text[1:])
            self.i += 1
        else:
            self.expect("x")
            cols = self.integer("column count")
        if rows < 1 or cols < 1:
            raise self.error("shape must be positive", stok)
        self.expect(";")
        mtok = self.tok
        entries, positions = self.matrix()
        self.accept(";")
        self.expect("}")
        self.expect(kind="eof")
        if len(entries) != rows:
            raise self.error(f"declared {rows} rows, matrix has {len(entries)}", mtok, "shape")
        for r, row in enumerate(entries):
            if len(row) != cols:
                raise self.error(f"declared {cols} columns, row {r + 1} has {len(row)}",
                                 positions[r][0], "shape")
        return name, rows, cols, entries, positions

    def matrix(self):
        self.expect("[")
        entries, positions = [], []
        while True:
            row, pos = self.row()
            entries.append(row)
            positions.append(pos)
            if not self.accept(","):
                break
        self.expect("]")
        return entries, positions

    def row(self):
        start = self.expect("[")
        row, pos = [], [start]
        while True:
            pos.append(self.tok)
            row.append(self.expr())
            if not self.accept(","):
                break
        self.expect("]")
        return row, pos[1:] if row else pos

    def expr(self) -> Poly:
        if self.accept("-"):
            val = -self.term()
        else:
            self.accept("+")
            val = self.term()
        while self.tok.text in ("+", "-") and self.tok.kind == "op":
            op = self.expect(kind="op").text
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self) -> Poly:
        val = self.factor()
        while self.tok.text in ("*", "/") and self.tok.kind == "op":
            op_tok = self.expect(kind="op")
            rhs_tok = self.tok
            rhs = self.factor()
            if op_tok.text == "*":
                val = val * rhs
            else:
                if rhs.degree() > 0:
                    raise self.error("division by a non-constant", rhs_tok)
                c = rhs.terms.get((0,) * self.d)
                if not c:
                    raise self.error("division by zero", rhs_tok)
                val = val * (ONE / c)
        return val

    def factor(self) -> Poly:
        if self.tok.text == "-" and self.tok.kind == "op":
            self.i += 1
            return -self.factor()
        base = self.atom()
        if self.accept("^"):
            exp = self.integer("integer exponent")
            base = base ** exp
        return base

    def atom(self) -> Poly:
        tok = self.tok
        if tok.kind == "int":
            self.i += 1
            return Poly.const(self.d, Q(int(tok.text)))
        if tok.kind == "var":
            k = int(tok.text[1:])
            if not 1 <= k <= self.d:
                raise self.error(f"variable {tok.text} outside x1..x{self.d}")
            self.i += 1
            return Poly.var(self.d, k - 1)
        if tok.kind == "ident" and tok.text == "i":
            if not self.complex:
                raise self.error("imaginary unit 'i' needs complex coefficients")
            self.i += 1
            return Poly.const(self.d, I)
        if self.accept("("):
            val = self.expr()
            self.expect(")")
            return val
        got = repr(tok.text) if tok.kind != "eof" else "end of input"
        raise self.error(f"expected a polynomial term, found {got}")


def parse_operator(text: str, complex_: bool = False) -> OperatorSpec:
    p = _Parser(text, complex_)
    name, rows, cols, entries, positions = p.operator()
    degree = None
    for r, row in enumerate(entries):
        for c, poly in enumerate(row):
            tok = positions[r][c]
            if not poly.is_homogeneous():
                raise ParseError("homogeneity", f"entry ({r + 1},{c + 1}) is not homogeneous",
                                 tok.line, tok.col)
            if poly.terms:
                if degree is None:
                    degree = poly.degree()
                elif poly.degree() != degree:
                    raise ParseError("homogeneity",
                                     f"entry ({r + 1},{c + 1}) has degree {poly.degree()}, expected {degree}",
                                     tok.line, tok.col)
    sym = Symbol(entries, p.d, degree, rows, cols)
    return OperatorSpec(name, p.d, rows, cols, sym)


def format_operator(spec_or_symbol, name: str = "op") -> str:
    """Pretty print in the input syntax; re-parsing gives the same symbol."""
    if isinstance(spec_or_symbol, OperatorSpec):
        name, sym = spec_or_symbol.name, spec_or_symbol.symbol
    else:
        sym = spec_or_symbol
    rows = ",\n    ".join("[" + ", ".join(p.format() for p in row) + "]" for row in sym.entries)
    return (f"operator {name} {{\n  dim {sym.nvars};\n  shape {sym.rows}x{sym.cols};\n"
            f"  [\n    {rows}\n  ]\n}}\n")


def parse_to_json(text: str, complex_: bool = False) -> str:
    """Canonical JSON of a parse result or of the parse error."""
    import json

    try:
        obj = parse_operator(text, complex_).to_json()
    except ParseError as exc:
        obj = exc.to_json()
    return json.dumps(obj, indent=1, sort_keys=True) + "\n"
