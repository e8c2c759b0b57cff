"""Lexer, recursive-descent parser, desugaring and labeling for the toy language."""

from __future__ import annotations

import re
from dataclasses import dataclass, replace

from .errors import ParseError, UnsupportedSyntax
from .primitives import NAN
from .syntax import (
    Assign,
    AssignExp,
    Binary,
    Block,
    CharAt,
    Eval,
    Exp,
    If,
    Incr,
    IndexOf,
    Length,
    Lit,
    Not,
    Program,
    Skip,
    Stmt,
    Substring,
    Update,
    Var,
    While,
    subexpressions,
    walk,
)

KEYWORDS = {"if", "else", "while", "eval", "true", "false", "NaN"}
METHODS = {"substring": 2, "charAt": 1, "indexOf": 1, "length": 0}
ASSIGN_OPS = {"=", "+=", "-=", "*=", "/="}

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+|//[^\n]*|/\*.*?\*/)
  | (?P<int>[0-9]+)
  | (?P<id>[A-Za-z_$][A-Za-z0-9_$]*)
  | (?P<str>")
  | (?P<op>\+\+|\+=|-=|\*=|/=|==|&&|\|\||[-+*/<>!=(){};.,])
    """,
    re.VERBOSE | re.DOTALL,
)
_STR_ESCAPES = {"n": "\n", "t": "\t", "r": "\r", '"': '"', "\\": "\\", "'": "'"}


@dataclass(frozen=True)
class Token:
    kind: str  # int, id, str, op, eof
    text: str
    value: object
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        col = pos - line_start + 1
        m = _TOKEN.match(text, pos)
        if m is None:
            if text.startswith("/*", pos):
                raise ParseError("unterminated comment", line, col)
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        if kind == "str":
            value, end = _read_string(text, pos + 1, line, col)
            tokens.append(Token("str", text[pos:end], value, line, col))
        else:
            end = m.end()
            lexeme = m.group()
            if kind == "int":
                tokens.append(Token("int", lexeme, int(lexeme), line, col))
            elif kind in ("id", "op"):
                tokens.append(Token(kind, lexeme, lexeme, line, col))
        chunk = text[pos:end]
        newlines = chunk.count("\n")
        if newlines:
            line += newlines
            line_start = pos + chunk.rindex("\n") + 1
        pos = end
    tokens.append(Token("eof", "", None, line, pos - line_start + 1))
    return tokens


def _read_string(text: str, pos: int, line: int, col: int) -> tuple[str, int]:
    out = []
    while True:
        if pos >= len(text) or text[pos] == "\n":
            raise ParseError("unterminated string literal", line, col)
        ch = text[pos]
        if ch == '"':
            return "".join(out), pos + 1
        if ch == "\\":
            if pos + 1 >= len(text):
                raise ParseError("unterminated string literal", line, col)
            esc = text[pos + 1]
            if esc not in _STR_ESCAPES:
                raise ParseError(f"unknown escape \\{esc}", line, col)
            out.append(_STR_ESCAPES[esc])
            pos += 2
            continue
        out.append(ch)
        pos += 1


class Parser:
    """Precedence, loosest first: ``||``, ``&&``, ``==``, ``< >``, ``+ -``, ``* /``, ``!``, method calls."""

    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0

    # token helpers

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def at(self, text: str) -> bool:
        t = self.tok
        return t.kind in ("op", "id") and t.text == text

    def take(self) -> Token:
        t = self.tok
        self.i += 1
        return t

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.fail(f"expected {text!r}")
        return self.take()

    def fail(self, message: str):
        t = self.tok
        found = "end of input" if t.kind == "eof" else repr(t.text)
        raise ParseError(f"{message}, found {found}", t.line, t.col)

    # statements

    def program(self) -> Block:
        start = self.tok
        stmts = []
        while self.tok.kind != "eof":
            stmts.append(self.statement())
        return Block(tuple(stmts), span=(start.line, start.col))

    def block(self) -> Block:
        t = self.expect("{")
        stmts = []
        while not self.at("}"):
            if self.tok.kind == "eof":
                self.fail("expected '}'")
            stmts.append(self.statement())
        self.take()
        return Block(tuple(stmts), span=(t.line, t.col))

    def body(self) -> Block:
        if self.at("{"):
            return self.block()
        t = self.tok
        return Block((self.statement(),), span=(t.line, t.col))

    def statement(self) -> Stmt:
        t = self.tok
        span = (t.line, t.col)
        if self.at("{"):
            return self.block()
        if self.at(";"):
            self.take()
            return Skip(span=span)
        if self.at("if"):
            self.take()
            self.expect("(")
            guard = self.expression()
            self.expect(")")
            then = self.body()
            orelse = None
            if self.at("else"):
                self.take()
                orelse = self.body()
            return If(guard, then, orelse, span=span)
        if self.at("while"):
            self.take()
            self.expect("(")
            guard = self.expression()
            self.expect(")")
            return While(guard, self.body(), span=span)
        if self.at("eval"):
            self.take()
            self.expect("(")
            arg = self.expression()
            self.expect(")")
            self.expect(";")
            return Eval(arg, span=span)
        if t.kind == "id" and t.text not in KEYWORDS:
            name = self.take().text
            if self.at("++"):
                self.take()
                self.expect(";")
                return Update(name, "+", Lit(1), span=span)
            if self.tok.kind == "op" and self.tok.text in ASSIGN_OPS:
                op = self.take().text
                value = self.expression()
                self.expect(";")
                if op == "=":
                    return Assign(name, value, span=span)
                return Update(name, op[0], value, span=span)
            self.fail(f"expected assignment to {name!r}")
        self.fail("expected a statement")

    # expressions

    def expression(self) -> Exp:
        return self.binary(0)

    _LEVELS = (("||",), ("&&",), ("==",), ("<", ">"), ("+", "-"), ("*", "/"))

    def binary(self, level: int) -> Exp:
        if level == len(self._LEVELS):
            return self.unary()
        left = self.binary(level + 1)
        while self.tok.kind == "op" and self.tok.text in self._LEVELS[level]:
            op = self.take().text
            left = Binary(op, left, self.binary(level + 1))
        return left

    def unary(self) -> Exp:
        if self.at("!"):
            self.take()
            return Not(self.unary())
        return self.postfix()

    def postfix(self) -> Exp:
        e = self.primary()
        while self.at("."):
            self.take()
            t = self.tok
            if t.kind != "id":
                self.fail("expected a method name")
            name = self.take().text
            if name not in METHODS:
                raise ParseError(f"unknown method {name!r}", t.line, t.col)
            if name == "length":
                e = Length(e)
                continue
            self.expect("(")
            args = [self.expression()]
            while self.at(","):
                self.take()
                args.append(self.expression())
            if len(args) != METHODS[name]:
                raise ParseError(f"{name} takes {METHODS[name]} argument(s)", t.line, t.col)
            self.expect(")")
            if name == "substring":
                e = Substring(e, *args)
            elif name == "charAt":
                e = CharAt(e, args[0])
            else:
                e = IndexOf(e, args[0])
        return e

    def primary(self) -> Exp:
        t = self.tok
        if t.kind == "int":
            self.take()
            return Lit(t.value)
        if t.kind == "str":
            self.take()
            return Lit(t.value)
        if self.at("-") and self.tokens[self.i + 1].kind == "int":
            self.take()
            return Lit(-self.take().value)
        if self.at("("):
            self.take()
            e = self.expression()
            self.expect(")")
            return e
        if t.kind == "id":
            if t.text == "true":
                self.take()
                return Lit(True)
            if t.text == "false":
                self.take()
                return Lit(False)
            if t.text == "NaN":
                self.take()
                return Lit(NAN)
            if t.text in KEYWORDS:
                self.fail("unexpected keyword")
            name = self.take().text
            if self.at("++"):
                self.take()
                return Incr(name)
            if self.tok.kind == "op" and self.tok.text in ASSIGN_OPS:
                op = self.take().text
                # the assigned value extends over an additive expression only
                value = self.binary(4)
                return AssignExp(name, None if op == "=" else op[0], value)
            return Var(name)
        self.fail("expected an expression")


# ---------------------------------------------------------------------------
# desugaring


def _has_sugar(e: Exp) -> bool:
    if isinstance(e, (AssignExp, Incr)):
        return True
    return any(_has_sugar(x) for x in subexpressions(e))


def _hoist(e: Exp, span) -> tuple[list[Stmt], Exp]:
    """Pull embedded assignments out of *e*, in evaluation order."""
    pre: list[Stmt] = []

    def go(x: Exp) -> Exp:
        if isinstance(x, Incr):
            pre.append(Assign(x.name, Binary("+", Var(x.name), Lit(1)), span=span))
            return Var(x.name)
        if isinstance(x, AssignExp):
            value = go(x.value)
            if x.op is not None:
                value = Binary(x.op, Var(x.name), value)
            pre.append(Assign(x.name, value, span=span))
            return Var(x.name)
        if isinstance(x, Var | Lit):
            return x
        kids = [go(k) for k in subexpressions(x)]
        if isinstance(x, Binary):
            return Binary(x.op, *kids)
        if isinstance(x, Not):
            return Not(*kids)
        if isinstance(x, Substring):
            return Substring(*kids)
        if isinstance(x, CharAt):
            return CharAt(*kids)
        if isinstance(x, IndexOf):
            return IndexOf(*kids)
        if isinstance(x, Length):
            return Length(*kids)
        raise TypeError(x)

    _check_hoistable(e, span)
    return pre, go(e)


def _check_hoistable(e: Exp, span) -> None:
    """Reject expressions whose meaning would change when assignments are hoisted."""
    targets: list[str] = []
    other_reads: list[str] = []

    def scan(x: Exp, own: str | None = None) -> None:
        # *own* is the target of an enclosing assignment; reading it in its own value is fine
        if isinstance(x, Incr):
            targets.append(x.name)
            return
        if isinstance(x, AssignExp):
            targets.append(x.name)
            scan(x.value, x.name)
            return
        if isinstance(x, Var):
            if x.name != own:
                other_reads.append(x.name)
            return
        for k in subexpressions(x):
            scan(k, own)

    scan(e)
    line, col = span if span else (0, 0)
    if len(set(targets)) != len(targets):
        raise UnsupportedSyntax("a variable is assigned twice in one expression", line, col)
    clash = set(targets) & set(other_reads)
    if clash:
        raise UnsupportedSyntax(
            f"{sorted(clash)[0]!r} is both assigned and read in one expression", line, col
        )


def _desugar_stmt(st: Stmt) -> list[Stmt]:
    span = st.span
    if isinstance(st, Update):
        return _desugar_stmt(Assign(st.name, Binary(st.op, Var(st.name), st.value), span=span))
    if isinstance(st, Assign):
        if not _has_sugar(st.value):
            return [st]
        pre, value = _hoist(st.value, span)
        return pre + [Assign(st.name, value, span=span)]
    if isinstance(st, Eval):
        if not _has_sugar(st.arg):
            return [st]
        pre, arg = _hoist(st.arg, span)
        return pre + [Eval(arg, span=span)]
    if isinstance(st, Block):
        return [_desugar_block(st)]
    if isinstance(st, If):
        pre, guard = _hoist(st.guard, span) if _has_sugar(st.guard) else ([], st.guard)
        orelse = None if st.orelse is None else _desugar_block(st.orelse)
        return pre + [If(guard, _desugar_block(st.then), orelse, span=span)]
    if isinstance(st, While):
        body = _desugar_block(st.body)
        if not _has_sugar(st.guard):
            return [While(st.guard, body, span=span)]
        pre, guard = _hoist(st.guard, span)
        # the guard's side effects run before every test, including re-tests after the body
        body = Block(body.stmts + tuple(pre), span=body.span)
        return pre + [While(guard, body, span=span)]
    return [st]


def _desugar_block(b: Block) -> Block:
    out: list[Stmt] = []
    for st in b.stmts:
        out.extend(_desugar_stmt(st))
    return Block(tuple(out), span=b.span)


# ---------------------------------------------------------------------------
# labeling


def _relabel(st: Stmt, counter: list[int]) -> Stmt:
    counter[0] += 1
    label = f"L{counter[0]}"
    if isinstance(st, Block):
        return replace(st, stmts=tuple(_relabel(s, counter) for s in st.stmts), label=label)
    if isinstance(st, If):
        then = _relabel(st.then, counter)
        orelse = None if st.orelse is None else _relabel(st.orelse, counter)
        return replace(st, then=then, orelse=orelse, label=label)
    if isinstance(st, While):
        return replace(st, body=_relabel(st.body, counter), label=label)
    return replace(st, label=label)


def label_program(root: Block) -> Program:
    """Number statements ``L1..Ln`` in pre-order and alias eval sites ``eval1..``."""
    root = _relabel(root, [0])
    labels = {}
    evals = {}
    for st in walk(root):
        labels[st.label] = st.span
        if isinstance(st, Eval):
            evals[f"eval{len(evals) + 1}"] = st.label
    return Program(root, labels, evals)


def parse(text: str) -> Program:
    """Parse source text into a labeled program (sugar still present)."""
    return label_program(Parser(text).program())


def desugar(p: Program) -> Program:
    return label_program(_desugar_block(p.root))


def is_desugared(p: Program) -> bool:
    for st in walk(p.root):
        if isinstance(st, Update):
            return False
        for e in _stmt_exps(st):
            if _has_sugar(e):
                return False
    return True


def _stmt_exps(st: Stmt) -> tuple:
    if isinstance(st, Assign):
        return (st.value,)
    if isinstance(st, (If, While)):
        return (st.guard,)
    if isinstance(st, Eval):
        return (st.arg,)
    return ()


def load(text: str) -> Program:
    """Parse and desugar."""
    return desugar(parse(text))
