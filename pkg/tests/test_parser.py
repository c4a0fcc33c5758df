from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gfpkit.identity_engine import (
    DslSyntaxError,
    IndexExpr,
    UnboundVariable,
    UnknownSymbol,
    format_identity,
    load_corpus,
    parse_identity,
    to_text,
)
from gfpkit.identity_engine.exprs import BinOp, Neg, Num, Pow, Seq, Sqrt, Sym

V = IndexExpr.var
C = IndexExpr.const

I6_ONE_LINE = "identity I6 | vars n | constraints n>=1 | lhs alpha*Gs[n]*Gp[n] | rhs Gp[2n]"
I6_LINES = """\
identity I6
vars n
constraints n >= 1
lhs alpha*Gs[n]*Gp[n]
rhs Gp[2n]
"""


def test_one_line_form():
    idef = parse_identity(I6_ONE_LINE)
    assert idef.id == "I6"
    assert idef.vars == ("n",)
    assert [str(c) for c in idef.constraints] == ["n >= 1"]
    assert idef.lhs == BinOp("*", BinOp("*", Sym("alpha"), Seq("Gs", V("n"))), Seq("Gp", V("n")))
    assert idef.rhs == Seq("Gp", C(2) * V("n"))


def test_line_form_equals_one_line_form():
    assert parse_identity(I6_LINES) == parse_identity(I6_ONE_LINE)


def test_precedence():
    idef = parse_identity("identity X | vars n | lhs 1 + 2*Gp[n]^2 - -d | rhs 0")
    two_gp_sq = BinOp("*", Num(2), Pow(Seq("Gp", V("n")), C(2)))
    assert idef.lhs == BinOp("-", BinOp("+", Num(1), two_gp_sq), Neg(Sym("d")))


def test_rational_literal_and_division():
    idef = parse_identity("identity X | vars n | lhs 1/2*Gp[n] | rhs Gp[n]/alpha")
    assert idef.lhs == BinOp("*", Num(Fraction(1, 2)), Seq("Gp", V("n")))
    assert idef.rhs == BinOp("/", Seq("Gp", V("n")), Sym("alpha"))


def test_index_forms():
    idef = parse_identity("identity X | vars j k r u v | lhs Gs[j*(k+u)+r+v] | rhs Gp[2(k+1) - u]")
    assert idef.lhs.index == V("j") * V("k") + V("j") * V("u") + V("r") + V("v")
    assert idef.rhs.index == C(2) * V("k") + C(2) - V("u")


def test_exponent_forms():
    idef = parse_identity("identity X | vars n m | lhs neg_g^(n-m)*g^n*d^3 | rhs sqrt(Delta)^m")
    factors = idef.lhs
    assert factors.right == Pow(Sym("d"), C(3))
    assert idef.rhs == Pow(Sqrt(Sym("Delta")), V("m"))


def test_chain_and_ranges():
    idef = parse_identity(
        "identity X\nvars n m\nconstraints n >= m ; m != 2 ; n <= 5\nrange n 1..4\n"
        "lhs Gp[n]\nrhs Gp[n]\nrhs Gp[n]*1\n")
    assert len(idef.sides) == 3
    assert idef.ranges == (("n", 1, 4),)
    # n <= 5 is stored as 5 >= n
    assert [str(c) for c in idef.constraints] == ["n >= m", "m != 2", "5 >= n"]


def test_alpha_constraint():
    idef = parse_identity("identity X | vars n | constraints alpha = 1 | lhs Gp[n] | rhs Gp[n]")
    assert idef.constraints[0].variables == {"alpha"}


def test_comments_become_notes():
    idef = parse_identity("# first\n# second\nidentity X # trailing\nvars n\nlhs Gp[n] # c\nrhs Gp[n]\n")
    assert idef.notes == ("first", "second")


def test_unclosed_bracket():
    with pytest.raises(DslSyntaxError) as info:
        parse_identity("identity X\nvars n\nlhs Gp[n\nrhs Gp[n]\n")
    err = info.value
    assert err.line == 3
    assert "']'" in str(err) and "column 7" in str(err)


@pytest.mark.parametrize("text, exc, line", [
    ("identity X\nvars n\nlhs Gp[m]\nrhs 1\n", UnboundVariable, 3),
    ("identity X\nvars n\nlhs foo\nrhs 1\n", UnknownSymbol, 3),
    ("identity X\nvars n\nlhs n\nrhs 1\n", UnknownSymbol, 3),
    ("identity X\nvars q\nlhs 1\nrhs 1\n", UnknownSymbol, 2),
    ("identity X\nvars n\nlhs 1 +\nrhs 1\n", DslSyntaxError, 3),
    ("identity X\nvars n\nlhs 1\n", DslSyntaxError, None),
    ("identity X\nvars n\nrhs 1\nlhs 1\n", DslSyntaxError, 3),
    ("identity X\nvars n\nfrobnicate\nlhs 1\nrhs 1\n", DslSyntaxError, 3),
    ("identity X\nvars n\nconstraints n ~ 1\nlhs 1\nrhs 1\n", DslSyntaxError, 3),
    ("identity X\nvars n\nconstraints n 1\nlhs 1\nrhs 1\n", DslSyntaxError, 3),
    ("identity X\nvars n\nrange n 5..2\nlhs 1\nrhs 1\n", DslSyntaxError, 3),
    ("identity X\nvars n\nrange m 0..2\nlhs 1\nrhs 1\n", UnboundVariable, 3),
    ("identity X\nvars n n\nlhs 1\nrhs 1\n", DslSyntaxError, 2),
    ("vars n\nlhs 1\nrhs 1\n", DslSyntaxError, 1),
    ("identity X\nvars n\nlhs Gp[n]^\nrhs 1\n", DslSyntaxError, 3),
])
def test_errors_carry_positions(text, exc, line):
    with pytest.raises(exc) as info:
        parse_identity(text)
    assert info.value.line == line


def test_error_column_points_at_token():
    with pytest.raises(UnknownSymbol) as info:
        parse_identity("identity X\nvars n\nlhs Gp[n] + zeta\nrhs 1\n")
    assert info.value.column == 13


def test_corpus_round_trips():
    for idef in load_corpus():
        text = format_identity(idef)
        again = parse_identity(text)
        assert again == idef, idef.id
        assert again.notes == idef.notes
        assert format_identity(again) == text


# random expression trees for the printer/parser fixpoint
_indices = st.builds(
    lambda a, b, c: C(a) + C(b) * V("n") + C(c) * V("m"),
    st.integers(0, 5), st.integers(-3, 3), st.integers(-3, 3))
_leaves = st.one_of(
    st.builds(Num, st.integers(-9, 9)),
    st.builds(Num, st.builds(Fraction, st.integers(-9, 9), st.integers(2, 7))),
    st.sampled_from([Sym(s) for s in ("d", "g", "alpha", "Delta", "S", "neg_g")]),
    st.builds(Seq, st.sampled_from(["Gp", "Gs"]), _indices),
)
_exprs = st.recursive(
    _leaves,
    lambda sub: st.one_of(
        st.builds(BinOp, st.sampled_from("+-*/"), sub, sub),
        st.builds(Neg, sub.filter(lambda e: not isinstance(e, Num))),
        st.builds(Pow, sub, _indices),
        st.builds(Sqrt, sub),
    ),
    max_leaves=12,
)


def _normalize(e):
    """What the parser folds: Num/Num literals and negated literals."""
    if isinstance(e, Neg):
        arg = _normalize(e.arg)
        return Num(-arg.value) if isinstance(arg, Num) else Neg(arg)
    if isinstance(e, BinOp):
        left, right = _normalize(e.left), _normalize(e.right)
        if e.op == "/" and isinstance(left, Num) and isinstance(right, Num) and right.value != 0:
            v = Fraction(left.value) / right.value
            return Num(v.numerator if v.denominator == 1 else v)
        return BinOp(e.op, left, right)
    if isinstance(e, Pow):
        return Pow(_normalize(e.base), e.exp)
    if isinstance(e, Sqrt):
        return Sqrt(_normalize(e.arg))
    return e


@settings(max_examples=400, deadline=None)
@given(_exprs, _exprs)
def test_printer_parser_fixpoint(lhs, rhs):
    text = f"identity R\nvars n m\nlhs {to_text(lhs)}\nrhs {to_text(rhs)}\n"
    idef = parse_identity(text)
    first = (idef.lhs, idef.rhs)
    # printing what was parsed is a fixpoint
    again = parse_identity(format_identity(idef))
    assert (again.lhs, again.rhs) == first
    # and the parser only folds literal arithmetic
    assert _normalize(idef.lhs) == _normalize(lhs)
    assert _normalize(idef.rhs) == _normalize(rhs)
