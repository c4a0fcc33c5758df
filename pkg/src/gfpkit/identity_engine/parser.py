"""Parser for the line-oriented ``.gfpid`` identity format.

    identity I6
    vars n
    constraints n >= 1
    lhs alpha*Gs[n]*Gp[n]
    rhs Gp[2n]

Additional ``rhs`` lines express a chain ``lhs = rhs1 = rhs2``.  Expressions
are parsed by recursive descent with the usual precedence: ``+ -`` below
``* /`` below unary minus below ``^``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .exprs import (
    SEQUENCES,
    SYMBOLS,
    BinOp,
    Constraint,
    IdentityDef,
    Neg,
    Num,
    Pow,
    Seq,
    Sqrt,
    Sym,
    index_exprs,
)
from .indexexpr import INDEX_VARS, PSEUDO_VARS, IndexExpr


class DslError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.message = message
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


class DslSyntaxError(DslError):
    pass


class UnknownSymbol(DslError):
    pass


class UnboundVariable(DslError):
    pass


_TOKEN = re.compile(
    r"(?P<ws>\s+)|(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9']*)"
    r"|(?P<op>\.\.|>=|<=|!=|[-+*/^()\[\];=<>])"
)


@dataclass(frozen=True)
class Tok:
    kind: str  # num, name, op, end
    text: str
    col: int  # 1-based column within the line


def tokenize(src: str, line: int = 1, col0: int = 1) -> list[Tok]:
    toks, pos = [], 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if not m:
            raise DslSyntaxError(f"unexpected character {src[pos]!r}", line, col0 + pos)
        if m.lastgroup != "ws":
            toks.append(Tok(m.lastgroup, m.group(), col0 + pos))
        pos = m.end()
    toks.append(Tok("end", "", col0 + len(src)))
    return toks


class _Parser:
    def __init__(self, src: str, line: int, col0: int, declared: frozenset):
        self.toks = tokenize(src, line, col0)
        self.pos = 0
        self.line = line
        self.declared = declared

    # -- helpers
    @property
    def tok(self) -> Tok:
        return self.toks[self.pos]

    def peek(self, k: int = 1) -> Tok:
        return self.toks[min(self.pos + k, len(self.toks) - 1)]

    def advance(self) -> Tok:
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def error(self, msg: str, tok: Tok | None = None) -> DslSyntaxError:
        tok = tok or self.tok
        found = "end of line" if tok.kind == "end" else repr(tok.text)
        return DslSyntaxError(f"{msg} (found {found})", self.line, tok.col)

    def expect(self, text: str, opener: Tok | None = None) -> Tok:
        if self.tok.text != text or self.tok.kind == "end":
            if opener is not None:
                raise DslSyntaxError(
                    f"expected {text!r} to close {opener.text!r} opened at column {opener.col}",
                    self.line, self.tok.col)
            raise self.error(f"expected {text!r}")
        return self.advance()

    def at(self, *texts: str) -> bool:
        return self.tok.kind in ("op", "name") and self.tok.text in texts

    def finish(self):
        if self.tok.kind != "end":
            raise self.error("unexpected trailing input")

    # -- index expressions
    def index(self) -> IndexExpr:
        result = self.index_term()
        while self.at("+", "-"):
            op = self.advance().text
            rhs = self.index_term()
            result = result + rhs if op == "+" else result - rhs
        return result

    def index_term(self) -> IndexExpr:
        result = self.index_factor()
        while True:
            if self.at("*"):
                self.advance()
                result = result * self.index_factor()
            elif self.toks[self.pos - 1].kind == "num" and (self.tok.kind == "name" or self.at("(")):
                # implicit multiplication after a literal: 2n, 3(m+1)
                result = result * self.index_factor()
            else:
                return result

    def index_factor(self) -> IndexExpr:
        t = self.tok
        if self.at("-"):
            self.advance()
            return -self.index_factor()
        if t.kind == "num":
            self.advance()
            return IndexExpr.const(int(t.text))
        if t.kind == "name":
            self.advance()
            if t.text not in self.declared:
                if t.text in INDEX_VARS or t.text in PSEUDO_VARS:
                    raise UnboundVariable(f"variable {t.text!r} is not declared in vars", self.line, t.col)
                raise UnknownSymbol(f"unknown index symbol {t.text!r}", self.line, t.col)
            return IndexExpr.var(t.text)
        if self.at("("):
            opener = self.advance()
            inner = self.index()
            self.expect(")", opener)
            return inner
        raise self.error("expected an index expression")

    # -- value expressions
    def expr(self):
        result = self.term()
        while self.at("+", "-"):
            op = self.advance().text
            result = BinOp(op, result, self.term())
        return result

    def term(self):
        result = self.unary()
        while self.at("*", "/"):
            op = self.advance().text
            rhs = self.unary()
            if op == "/" and isinstance(result, Num) and isinstance(rhs, Num) and rhs.value != 0:
                result = Num(_norm(Fraction(result.value) / rhs.value))
            else:
                result = BinOp(op, result, rhs)
        return result

    def unary(self):
        if self.at("-"):
            self.advance()
            arg = self.unary()
            if isinstance(arg, Num):
                return Num(-arg.value)
            return Neg(arg)
        return self.power()

    def power(self):
        base = self.atom()
        if self.at("^"):
            self.advance()
            t = self.tok
            if t.kind == "num":
                self.advance()
                exp = IndexExpr.const(int(t.text))
            elif t.kind == "name":
                exp = self.index_factor()
            elif self.at("("):
                opener = self.advance()
                exp = self.index()
                self.expect(")", opener)
            else:
                raise self.error("expected an exponent")
            return Pow(base, exp)
        return base

    def atom(self):
        t = self.tok
        if t.kind == "num":
            self.advance()
            return Num(int(t.text))
        if self.at("("):
            opener = self.advance()
            inner = self.expr()
            self.expect(")", opener)
            return inner
        if t.kind == "name":
            self.advance()
            if t.text in SEQUENCES:
                opener = self.expect("[")
                idx = self.index()
                self.expect("]", opener)
                return Seq(t.text, idx)
            if t.text == "sqrt":
                opener = self.expect("(")
                inner = self.expr()
                self.expect(")", opener)
                return Sqrt(inner)
            if t.text in SYMBOLS:
                return Sym(t.text)
            if t.text in self.declared:
                raise UnknownSymbol(
                    f"index variable {t.text!r} used as a value; it may only appear in subscripts and exponents",
                    self.line, t.col)
            raise UnknownSymbol(f"unknown symbol {t.text!r}", self.line, t.col)
        raise self.error("expected an expression")

    # -- constraints
    def constraint(self) -> Constraint:
        lhs = self.index()
        t = self.tok
        if not self.at(">=", ">", "=", "<=", "<", "!="):
            raise self.error("expected a comparison operator")
        self.advance()
        rhs = self.index()
        op = t.text
        if op == "<=":
            return Constraint(rhs, ">=", lhs)
        if op == "<":
            return Constraint(rhs, ">", lhs)
        return Constraint(lhs, op, rhs)


def _norm(f: Fraction):
    return f.numerator if f.denominator == 1 else f


def _segments(text: str):
    """(line number, segment, column offset) triples; ``|`` separates directives on one line."""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body, hash_, comment = raw.partition("#")
        offset = 0
        pieces = body.split("|")
        for k, piece in enumerate(pieces):
            tail = hash_ + comment if k == len(pieces) - 1 else ""
            yield lineno, piece + tail, offset
            offset += len(piece) + 1


_KEYWORDS = ("identity", "vars", "constraints", "range", "lhs", "rhs")


def parse_identity(text: str, source: str | None = None) -> IdentityDef:
    """Parse one identity definition; raises DslError subclasses with positions."""
    ident = None
    vars_: tuple = ()
    vars_line = None
    raw_constraints: list = []
    raw_ranges: list = []
    raw_sides: list = []
    notes: list = []
    seen: set = set()

    for lineno, raw, base in _segments(text):
        body, _, comment = raw.partition("#")
        if not body.strip():
            if comment and ident is None:
                notes.append(comment.strip())
            continue
        stripped = body.lstrip()
        indent = base + len(body) - len(stripped)
        keyword, _, rest = stripped.partition(" ")
        keyword = keyword.strip()
        col = indent + len(keyword) + 2
        if keyword not in _KEYWORDS:
            raise DslSyntaxError(f"unknown directive {keyword!r}", lineno, indent + 1)
        if keyword in ("identity", "vars", "constraints", "lhs") and keyword in seen:
            raise DslSyntaxError(f"duplicate {keyword!r} line", lineno, indent + 1)
        seen.add(keyword)
        if keyword == "identity":
            ident = rest.strip()
            if not re.fullmatch(r"[A-Za-z][A-Za-z0-9_.]*", ident):
                raise DslSyntaxError(f"invalid identity id {ident!r}", lineno, col)
        elif keyword == "vars":
            vars_ = tuple(rest.split())
            vars_line = lineno
            for v in vars_:
                if v not in INDEX_VARS:
                    raise UnknownSymbol(f"{v!r} is not an index variable", lineno, col + rest.find(v))
            if len(set(vars_)) != len(vars_):
                raise DslSyntaxError("duplicate variable in vars", lineno, col)
        elif keyword == "constraints":
            offset = col
            for piece in rest.split(";"):
                if piece.strip():
                    raw_constraints.append((piece, lineno, offset))
                offset += len(piece) + 1
        elif keyword == "range":
            raw_ranges.append((rest, lineno, col))
        else:
            if keyword == "rhs" and "lhs" not in seen:
                raise DslSyntaxError("rhs before lhs", lineno, indent + 1)
            raw_sides.append((rest, lineno, col))

    if ident is None:
        raise DslSyntaxError("missing 'identity' line", 1, 1)
    if not raw_sides or len(raw_sides) < 2:
        raise DslSyntaxError("an identity needs an lhs and at least one rhs", None)

    declared = frozenset(vars_)
    constraints = []
    for piece, lineno, offset in raw_constraints:
        p = _Parser(piece, lineno, offset, declared | frozenset(PSEUDO_VARS))
        c = p.constraint()
        p.finish()
        constraints.append(c)

    ranges = []
    for rest, lineno, col in raw_ranges:
        m = re.fullmatch(r"\s*([a-z])\s+(\d+)\s*\.\.\s*(\d+)\s*", rest)
        if not m:
            raise DslSyntaxError("expected 'range <var> <lo>..<hi>'", lineno, col)
        var, lo, hi = m.group(1), int(m.group(2)), int(m.group(3))
        if var not in declared:
            raise UnboundVariable(f"range for undeclared variable {var!r}", lineno, col)
        if lo > hi:
            raise DslSyntaxError(f"empty range {lo}..{hi}", lineno, col)
        ranges.append((var, lo, hi))

    sides = []
    for rest, lineno, col in raw_sides:
        p = _Parser(rest, lineno, col, declared)
        e = p.expr()
        p.finish()
        sides.append(e)

    used = set()
    for side in sides:
        for ix in index_exprs(side):
            used |= ix.variables
    missing = used - declared
    if missing:
        raise UnboundVariable(f"variables {sorted(missing)} used but not declared", vars_line)

    return IdentityDef(ident, vars_, tuple(constraints), tuple(ranges), tuple(sides), tuple(notes))
