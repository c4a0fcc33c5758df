"""Expression trees for identity sides, and their canonical printer."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Union

from .indexexpr import IndexExpr

SYMBOLS = ("d", "g", "alpha", "Delta", "S", "neg_g")
SEQUENCES = ("Gp", "Gs")


@dataclass(frozen=True)
class Num:
    value: Union[int, Fraction]


@dataclass(frozen=True)
class Sym:
    name: str


@dataclass(frozen=True)
class Seq:
    kind: str  # "Gp" (Fibonacci type) or "Gs" (Lucas type)
    index: IndexExpr


@dataclass(frozen=True)
class Neg:
    arg: "Expr"


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - * /
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exp: IndexExpr


@dataclass(frozen=True)
class Sqrt:
    arg: "Expr"


Expr = Union[Num, Sym, Seq, Neg, BinOp, Pow, Sqrt]


@dataclass(frozen=True)
class Constraint:
    lhs: IndexExpr
    op: str  # >=, >, =, !=
    rhs: IndexExpr

    def holds(self, env) -> bool:
        a, b = self.lhs.evaluate(env), self.rhs.evaluate(env)
        if self.op == ">=":
            return a >= b
        if self.op == ">":
            return a > b
        if self.op == "=":
            return a == b
        return a != b

    @property
    def variables(self) -> frozenset:
        return self.lhs.variables | self.rhs.variables

    def __str__(self):
        return f"{self.lhs} {self.op} {self.rhs}"


@dataclass(frozen=True)
class IdentityDef:
    id: str
    vars: tuple
    constraints: tuple
    ranges: tuple  # ((var, lo, hi), ...)
    sides: tuple  # lhs, then one or more right-hand sides that must all agree
    notes: tuple = field(default=(), compare=False)

    @property
    def lhs(self) -> Expr:
        return self.sides[0]

    @property
    def rhs(self) -> Expr:
        return self.sides[-1]


def walk(e: Expr) -> Iterator[Expr]:
    yield e
    if isinstance(e, (Neg, Sqrt)):
        yield from walk(e.arg)
    elif isinstance(e, BinOp):
        yield from walk(e.left)
        yield from walk(e.right)
    elif isinstance(e, Pow):
        yield from walk(e.base)


def index_exprs(e: Expr) -> Iterator[IndexExpr]:
    """Every subscript and exponent in ``e``."""
    for node in walk(e):
        if isinstance(node, Seq):
            yield node.index
        elif isinstance(node, Pow):
            yield node.exp


def map_indices(e: Expr, fn) -> Expr:
    if isinstance(e, Seq):
        return Seq(e.kind, fn(e.index))
    if isinstance(e, Pow):
        return Pow(map_indices(e.base, fn), fn(e.exp))
    if isinstance(e, Neg):
        return Neg(map_indices(e.arg, fn))
    if isinstance(e, Sqrt):
        return Sqrt(map_indices(e.arg, fn))
    if isinstance(e, BinOp):
        return BinOp(e.op, map_indices(e.left, fn), map_indices(e.right, fn))
    return e


# -- printing ------------------------------------------------------------------
# Precedence levels: 1 additive, 2 multiplicative, 3 unary minus, 4 power, 5 atom.

def _prec(e: Expr) -> int:
    if isinstance(e, BinOp):
        return 1 if e.op in "+-" else 2
    if isinstance(e, Neg):
        return 3
    if isinstance(e, Pow):
        return 4
    if isinstance(e, Num):
        # negative and fractional literals re-parse through unary minus and /
        if isinstance(e.value, Fraction) and e.value.denominator != 1:
            return 2
        return 3 if e.value < 0 else 5
    return 5


def _wrap(e: Expr, need: bool) -> str:
    s = to_text(e)
    return f"({s})" if need else s


def to_text(e: Expr) -> str:
    if isinstance(e, Num):
        v = e.value
        if isinstance(v, Fraction) and v.denominator != 1:
            return f"{v.numerator}/{v.denominator}"
        return str(int(v))
    if isinstance(e, Sym):
        return e.name
    if isinstance(e, Seq):
        return f"{e.kind}[{e.index}]"
    if isinstance(e, Sqrt):
        return f"sqrt({to_text(e.arg)})"
    if isinstance(e, Neg):
        return "-" + _wrap(e.arg, _prec(e.arg) < 3 or isinstance(e.arg, Num))
    if isinstance(e, Pow):
        base = _wrap(e.base, _prec(e.base) < 5)
        exp = str(e.exp) if e.exp.is_simple() else f"({e.exp})"
        return f"{base}^{exp}"
    if isinstance(e, BinOp):
        p = _prec(e)
        left = _wrap(e.left, _prec(e.left) < p)
        right = _wrap(e.right, _prec(e.right) <= p)
        return f"{left} {e.op} {right}"
    raise TypeError(f"not an expression node: {e!r}")


def format_identity(idef: IdentityDef) -> str:
    lines = [f"# {n}" if n else "#" for n in idef.notes]
    lines.append(f"identity {idef.id}")
    if idef.vars:
        lines.append("vars " + " ".join(idef.vars))
    if idef.constraints:
        lines.append("constraints " + " ; ".join(str(c) for c in idef.constraints))
    for var, lo, hi in idef.ranges:
        lines.append(f"range {var} {lo}..{hi}")
    lines.append(f"lhs {to_text(idef.sides[0])}")
    for side in idef.sides[1:]:
        lines.append(f"rhs {to_text(side)}")
    return "\n".join(lines) + "\n"
