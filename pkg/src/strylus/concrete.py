"""Big-step concrete semantics; the reference the analysis is tested against."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import BudgetExceeded, UnboundIdentifier
from .primitives import (
    Value,
    c_arith,
    c_ca,
    c_cmp,
    c_eq,
    c_index,
    c_io,
    c_le,
    c_logic,
    c_plus,
    c_ss,
    c_to_bool,
    c_to_str,
)
from .syntax import (
    Assign,
    Binary,
    Block,
    CharAt,
    Eval,
    Exp,
    If,
    IndexOf,
    Length,
    Lit,
    Not,
    Skip,
    Stmt,
    Substring,
    Var,
    While,
)

DEFAULT_STEPS = 10**6
MAX_STRING = 10**6
MAX_INT_BITS = 4096


@dataclass
class Machine:
    """Execution context: the step budget and the eval arguments seen so far."""

    budget: int = DEFAULT_STEPS
    steps: int = 0
    sinks: list = field(default_factory=list)  # (label, value)

    def tick(self) -> None:
        self.steps += 1
        if self.steps > self.budget:
            raise BudgetExceeded(f"step budget of {self.budget} exhausted")


def _guard_size(v: Value) -> Value:
    if type(v) is str and len(v) > MAX_STRING:
        raise BudgetExceeded("string grew beyond the size limit")
    if type(v) is int and v.bit_length() > MAX_INT_BITS:
        raise BudgetExceeded("integer grew beyond the size limit")
    return v


def c_eval(e: Exp, state: dict) -> Value:
    if isinstance(e, Lit):
        return e.value
    if isinstance(e, Var):
        if e.name not in state:
            raise UnboundIdentifier(e.name)
        return state[e.name]
    if isinstance(e, Binary):
        a = c_eval(e.left, state)
        b = c_eval(e.right, state)
        if e.op == "+":
            return _guard_size(c_plus(a, b))
        if e.op in ("-", "*", "/"):
            return _guard_size(c_arith(e.op, a, b))
        if e.op in ("<", ">"):
            return c_cmp(e.op, a, b)
        if e.op == "==":
            return c_eq(a, b)
        return c_logic(e.op, a, b)
    if isinstance(e, Not):
        return c_logic("!", c_eval(e.operand, state))
    if isinstance(e, Substring):
        s = c_to_str(c_eval(e.recv, state))
        return c_ss(s, c_index(c_eval(e.start, state)), c_index(c_eval(e.end, state)))
    if isinstance(e, CharAt):
        s = c_to_str(c_eval(e.recv, state))
        return c_ca(s, c_index(c_eval(e.index, state)))
    if isinstance(e, IndexOf):
        s = c_to_str(c_eval(e.recv, state))
        return c_io(s, c_to_str(c_eval(e.arg, state)))
    if isinstance(e, Length):
        return c_le(c_to_str(c_eval(e.recv, state)))
    raise TypeError(f"cannot evaluate {e!r}; desugar the program first")


def c_exec(st: Stmt, state: dict, machine: Machine | None = None) -> dict:
    """Execute *st*; returns the final state (the input mapping is not modified)."""
    machine = machine or Machine()
    state = dict(state)
    _exec(st, state, machine)
    return state


def _exec(st: Stmt, state: dict, m: Machine) -> None:
    m.tick()
    if isinstance(st, Assign):
        state[st.name] = c_eval(st.value, state)
    elif isinstance(st, Block):
        for s in st.stmts:
            _exec(s, state, m)
    elif isinstance(st, If):
        if c_to_bool(c_eval(st.guard, state)):
            _exec(st.then, state, m)
        elif st.orelse is not None:
            _exec(st.orelse, state, m)
    elif isinstance(st, While):
        while c_to_bool(c_eval(st.guard, state)):
            _exec(st.body, state, m)
            m.tick()
    elif isinstance(st, Eval):
        # opaque sink: record the argument, never run it
        m.sinks.append((st.label, c_eval(st.arg, state)))
    elif isinstance(st, Skip):
        pass
    else:
        raise TypeError(f"cannot execute {st!r}; desugar the program first")


def run(program, init: dict | None = None, budget: int = DEFAULT_STEPS) -> tuple[dict, Machine]:
    m = Machine(budget=budget)
    return c_exec(program.root, init or {}, m), m
