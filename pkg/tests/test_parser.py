import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import ProgramGen
from strylus.concrete import run
from strylus.errors import ParseError, UnsupportedSyntax
from strylus.parser import desugar, is_desugared, load, parse
from strylus.primitives import NAN
from strylus.syntax import (
    Assign,
    Binary,
    Block,
    CharAt,
    Eval,
    If,
    IndexOf,
    Length,
    Lit,
    Not,
    Substring,
    Update,
    Var,
    While,
    print_program,
    walk,
)


def only(text):
    return parse(text).root.stmts[0]


def test_string_assignment():
    assert only('x = "42";') == Assign("x", Lit("42"))


def test_if_else_tree():
    got = only('if (y < 5) {x = "42";} else {x = true;}')
    want = If(
        Binary("<", Var("y"), Lit(5)),
        Block((Assign("x", Lit("42")),)),
        Block((Assign("x", Lit(True)),)),
    )
    assert got == want


def test_loop_tree():
    p = parse('str = ""; while (x < 100) { str = str + "a"; }')
    assert p.root.stmts[1] == While(
        Binary("<", Var("x"), Lit(100)), Block((Assign("str", Binary("+", Var("str"), Lit("a"))),))
    )


def test_precedence():
    e = only("z = !a || b && c == d < e + f * g;").value
    mul = Binary("*", Var("f"), Var("g"))
    add = Binary("+", Var("e"), mul)
    lt = Binary("<", Var("d"), add)
    eq = Binary("==", Var("c"), lt)
    assert e == Binary("||", Not(Var("a")), Binary("&&", Var("b"), eq))
    assert only("z = a - b - c;").value == Binary("-", Binary("-", Var("a"), Var("b")), Var("c"))


def test_methods_bind_tightest():
    e = only('z = "ab" + s.substring(1, 2).length;').value
    assert e == Binary("+", Lit("ab"), Length(Substring(Var("s"), Lit(1), Lit(2))))
    assert only("z = s.charAt(0);").value == CharAt(Var("s"), Lit(0))
    assert only('z = s.indexOf("a");').value == IndexOf(Var("s"), Lit("a"))


def test_literals_and_escapes():
    assert only('z = "a\\"b\\\\c";').value == Lit('a"b\\c')
    assert only("z = -3;").value == Lit(-3)
    assert only("z = NaN;").value == Lit(NAN)
    assert only("z = false;").value == Lit(False)
    assert Lit(True) != Lit(1)


@pytest.mark.parametrize(
    "src,line,col",
    [
        ('x = "abc;', 1, 5),
        ("x = 1", 1, 6),
        ("\n  x = s.upper();", 2, 9),
        ("x = 1 +;", 1, 8),
        ("if (x) { y = 1;", 1, 16),
        ("x = #;", 1, 5),
    ],
)
def test_errors_carry_positions(src, line, col):
    with pytest.raises(ParseError) as info:
        parse(src)
    assert (info.value.line, info.value.col) == (line, col)


def test_compound_assignment_desugars():
    p = load('str += "a"; n++;')
    assert p.root.stmts == (
        Assign("str", Binary("+", Var("str"), Lit("a"))),
        Assign("n", Binary("+", Var("n"), Lit(1))),
    )


def test_guard_assignment_hoisted_before_loop_and_after_body():
    p = load("while ((i += 2) < v.length) { vd = vd + v.charAt(i); }")
    inc = Assign("i", Binary("+", Var("i"), Lit(2)))
    loop = p.root.stmts[1]
    assert p.root.stmts[0] == inc
    assert loop.guard == Binary("<", Var("i"), Length(Var("v")))
    assert loop.body.stmts[-1] == inc


def test_unparenthesized_compound_guard_binds_to_arithmetic():
    a = load("i = 0; c = 0; while (i += 2 < 9) { c = c + 1; }")
    b = load("i = 0; c = 0; while ((i = i + 2) < 9) { c = c + 1; }")
    assert a.root == b.root
    assert run(a)[0]["c"] == 4


def test_unsupported_sugar():
    with pytest.raises(UnsupportedSyntax):
        load("x = x++ + x;")
    with pytest.raises(UnsupportedSyntax):
        load("y = (x = 1) + (x = 2);")


def test_desugar_without_sugar_is_identity():
    p = parse('x = 1; if (x) { y = "a"; } eval(y);')
    assert desugar(p).root == p.root
    assert is_desugared(p)
    assert not is_desugared(parse("x += 1;"))


def test_labels_dense_preorder_and_eval_aliases():
    p = load('x = 1; if (x) { eval(x); } else { y = 2; } eval(y);')
    labels = [st.label for st in walk(p.root)]
    assert labels == [f"L{i}" for i in range(1, len(labels) + 1)]
    assert set(p.labels) == set(labels)
    assert p.evals == {"eval1": "L5", "eval2": "L8"}
    assert isinstance(next(st for st in walk(p.root) if st.label == "L5"), Eval)
    assert p.resolve("eval2") == "L8"


def test_else_is_optional_and_single_statement_bodies():
    p = parse("if (x) y = 1;")
    assert p.root.stmts[0] == If(Var("x"), Block((Assign("y", Lit(1)),)), None)


@given(st.integers(0, 10**6))
def test_print_parse_fixpoint(seed):
    src = ProgramGen(random.Random(seed)).program(4)
    p = parse(src)
    again = parse(print_program(p))
    assert again.root == p.root
    assert parse(print_program(again)).root == again.root


def test_sugar_round_trips_through_printer():
    p = parse('while ((i += 2) < 4) { s += "a"; x++; }')
    assert parse(print_program(p)).root == p.root
    assert any(isinstance(st, Update) for st in walk(p.root))
