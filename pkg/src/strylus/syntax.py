"""Abstract syntax of the toy imperative language, and a printer for it."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from .primitives import NAN, c_to_str


# ---------------------------------------------------------------------------
# expressions


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Lit:
    value: object  # int, bool, str or NAN

    def __eq__(self, other):
        # True == 1 in Python; literals must also agree on their kind
        return isinstance(other, Lit) and type(self.value) is type(other.value) and self.value == other.value

    def __hash__(self):
        return hash((type(self.value), self.value))


@dataclass(frozen=True)
class Binary:
    op: str  # + - * / && || < > ==
    left: "Exp"
    right: "Exp"


@dataclass(frozen=True)
class Not:
    operand: "Exp"


@dataclass(frozen=True)
class Substring:
    recv: "Exp"
    start: "Exp"
    end: "Exp"


@dataclass(frozen=True)
class CharAt:
    recv: "Exp"
    index: "Exp"


@dataclass(frozen=True)
class IndexOf:
    recv: "Exp"
    arg: "Exp"


@dataclass(frozen=True)
class Length:
    recv: "Exp"


@dataclass(frozen=True)
class AssignExp:
    """``x = e`` / ``x op= e`` used as an expression; removed by desugaring."""

    name: str
    op: Optional[str]  # None for plain '='
    value: "Exp"


@dataclass(frozen=True)
class Incr:
    """``x++`` used as an expression; removed by desugaring."""

    name: str


Exp = Union[Var, Lit, Binary, Not, Substring, CharAt, IndexOf, Length, AssignExp, Incr]


# ---------------------------------------------------------------------------
# statements; label and span never take part in equality

Span = Optional[tuple]


@dataclass(frozen=True)
class Assign:
    name: str
    value: Exp
    label: str = field(default="", compare=False)
    span: Span = field(default=None, compare=False)


@dataclass(frozen=True)
class Update:
    """``x op= e`` or ``x++``; removed by desugaring."""

    name: str
    op: str
    value: Exp
    label: str = field(default="", compare=False)
    span: Span = field(default=None, compare=False)


@dataclass(frozen=True)
class Block:
    stmts: tuple
    label: str = field(default="", compare=False)
    span: Span = field(default=None, compare=False)


@dataclass(frozen=True)
class If:
    guard: Exp
    then: Block
    orelse: Optional[Block] = None
    label: str = field(default="", compare=False)
    span: Span = field(default=None, compare=False)


@dataclass(frozen=True)
class While:
    guard: Exp
    body: Block
    label: str = field(default="", compare=False)
    span: Span = field(default=None, compare=False)


@dataclass(frozen=True)
class Eval:
    arg: Exp
    label: str = field(default="", compare=False)
    span: Span = field(default=None, compare=False)


@dataclass(frozen=True)
class Skip:
    label: str = field(default="", compare=False)
    span: Span = field(default=None, compare=False)


Stmt = Union[Assign, Update, Block, If, While, Eval, Skip]


@dataclass(frozen=True)
class Program:
    root: Block
    labels: dict = field(default_factory=dict, compare=False)  # label -> span
    evals: dict = field(default_factory=dict, compare=False)  # "evalK" -> label

    def resolve(self, label: str) -> str:
        """Accept both ``Lk`` labels and ``evalK`` aliases."""
        if label in self.evals:
            return self.evals[label]
        if label in self.labels:
            return label
        raise KeyError(label)


def substatements(st: Stmt):
    """Direct children of a statement, in source order."""
    if isinstance(st, Block):
        return st.stmts
    if isinstance(st, If):
        return (st.then,) if st.orelse is None else (st.then, st.orelse)
    if isinstance(st, While):
        return (st.body,)
    return ()


def walk(st: Stmt):
    """Pre-order traversal."""
    yield st
    for child in substatements(st):
        yield from walk(child)


def subexpressions(e: Exp):
    if isinstance(e, Binary):
        return (e.left, e.right)
    if isinstance(e, Not):
        return (e.operand,)
    if isinstance(e, Substring):
        return (e.recv, e.start, e.end)
    if isinstance(e, CharAt):
        return (e.recv, e.index)
    if isinstance(e, IndexOf):
        return (e.recv, e.arg)
    if isinstance(e, Length):
        return (e.recv,)
    if isinstance(e, AssignExp):
        return (e.value,)
    return ()


def reads(e: Exp) -> set[str]:
    """Variables read by an expression (assignment targets count as reads of their old value)."""
    out = set()
    stack = [e]
    while stack:
        x = stack.pop()
        if isinstance(x, Var):
            out.add(x.name)
        elif isinstance(x, Incr):
            out.add(x.name)
        elif isinstance(x, AssignExp) and x.op is not None:
            out.add(x.name)
        stack.extend(subexpressions(x))
    return out


# ---------------------------------------------------------------------------
# printing

_ESCAPES = {"\\": "\\\\", '"': '\\"', "\n": "\\n", "\t": "\\t", "\r": "\\r"}


def quote(s: str) -> str:
    return '"' + "".join(_ESCAPES.get(ch, ch) for ch in s) + '"'


def print_exp(e: Exp) -> str:
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Lit):
        if type(e.value) is str:
            return quote(e.value)
        if e.value is NAN:
            return "NaN"
        return c_to_str(e.value)
    if isinstance(e, Binary):
        return f"({print_exp(e.left)} {e.op} {print_exp(e.right)})"
    if isinstance(e, Not):
        return f"!{_atom(e.operand)}"
    if isinstance(e, Substring):
        return f"{_atom(e.recv)}.substring({print_exp(e.start)}, {print_exp(e.end)})"
    if isinstance(e, CharAt):
        return f"{_atom(e.recv)}.charAt({print_exp(e.index)})"
    if isinstance(e, IndexOf):
        return f"{_atom(e.recv)}.indexOf({print_exp(e.arg)})"
    if isinstance(e, Length):
        return f"{_atom(e.recv)}.length"
    if isinstance(e, AssignExp):
        op = "=" if e.op is None else e.op + "="
        return f"({e.name} {op} {print_exp(e.value)})"
    if isinstance(e, Incr):
        return f"({e.name}++)"
    raise TypeError(e)


def _atom(e: Exp) -> str:
    text = print_exp(e)
    if isinstance(e, Lit) and type(e.value) is int and e.value < 0:
        return f"({text})"
    if isinstance(e, Not):
        return f"({text})"
    return text


def print_stmt(st: Stmt, indent: int = 0) -> str:
    pad = "    " * indent
    if isinstance(st, Assign):
        return f"{pad}{st.name} = {print_exp(st.value)};"
    if isinstance(st, Update):
        return f"{pad}{st.name} {st.op}= {print_exp(st.value)};"
    if isinstance(st, Eval):
        return f"{pad}eval({print_exp(st.arg)});"
    if isinstance(st, Skip):
        return f"{pad};"
    if isinstance(st, Block):
        inner = [print_stmt(s, indent + 1) for s in st.stmts]
        return "\n".join([f"{pad}{{", *inner, f"{pad}}}"])
    if isinstance(st, If):
        text = f"{pad}if ({print_exp(st.guard)}) " + print_stmt(st.then, indent).lstrip()
        if st.orelse is not None:
            text += " else " + print_stmt(st.orelse, indent).lstrip()
        return text
    if isinstance(st, While):
        return f"{pad}while ({print_exp(st.guard)}) " + print_stmt(st.body, indent).lstrip()
    raise TypeError(st)


def print_program(p: Program) -> str:
    """Source text; the top-level statements are printed without the outer braces."""
    return "\n".join(print_stmt(s) for s in p.root.stmts) + "\n"
