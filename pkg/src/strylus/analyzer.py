"""Abstract interpreter: per-program-point invariants over the product value domain."""

from __future__ import annotations

from dataclasses import dataclass, field

from .alphabet import ASCII, Alphabet
from .errors import ConfigError, PreconditionError
from .interval import Interval, clamp_nonneg, i_lub
from .parser import is_desugared
from .stringops import ca_abs, io_abs, le_abs, ss_abs
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
    Program,
    Skip,
    Stmt,
    Substring,
    Var,
    While,
)
from .values import (
    AbstractValue,
    abs_cmp,
    abs_eq,
    abs_logic,
    abs_num,
    abs_plus,
    alpha,
    to_bool_abs,
    to_int_abs,
    to_str_abs,
    v_leq,
    v_lub,
    v_widen,
)


@dataclass(frozen=True)
class AbstractState:
    """Variable map plus reachability; missing variables are bottom."""

    env: dict = field(default_factory=dict)
    reachable: bool = True

    @classmethod
    def unreachable(cls) -> "AbstractState":
        return cls({}, False)

    def get(self, name: str) -> AbstractValue | None:
        return self.env.get(name)

    def set(self, name: str, value: AbstractValue) -> "AbstractState":
        env = dict(self.env)
        env[name] = value
        return AbstractState(env, self.reachable)


def s_lub(a: AbstractState, b: AbstractState) -> AbstractState:
    if not a.reachable:
        return b
    if not b.reachable:
        return a
    env = dict(a.env)
    for k, v in b.env.items():
        env[k] = v_lub(env[k], v) if k in env else v
    return AbstractState(env, True)


def s_leq(a: AbstractState, b: AbstractState) -> bool:
    if not a.reachable:
        return True
    if not b.reachable:
        return False
    for k, v in a.env.items():
        if k not in b.env:
            if not v.is_bottom:
                return False
        elif not v_leq(v, b.env[k]):
            return False
    return True


def s_widen(a: AbstractState, b: AbstractState, n: int) -> AbstractState:
    if not a.reachable:
        return b
    if not b.reachable:
        return a
    env = dict(a.env)
    for k, v in b.env.items():
        env[k] = v_widen(env[k], v, n) if k in env else v
    return AbstractState(env, True)


@dataclass(frozen=True)
class AnalysisConfig:
    widen_n: int = 3
    widen_delay: int = 1
    max_iters: int = 30
    alphabet: Alphabet = ASCII

    def __post_init__(self):
        if self.widen_n < 1:
            raise ConfigError("widening parameter must be at least 1")
        if self.widen_delay < 0:
            raise ConfigError("widening delay must be non-negative")
        if self.max_iters < self.widen_delay + 2:
            raise ConfigError("max iterations must be at least the widening delay plus 2")


@dataclass
class AnalysisResult:
    program: Program
    pre: dict  # label -> AbstractState
    post: dict  # label -> AbstractState
    sinks: dict  # label -> AbstractValue joined over all visits
    head_iterations: dict  # loop label -> iterations of the last fixpoint computation
    diagnostics: list
    alphabet: Alphabet = ASCII

    def state_at(self, label: str) -> AbstractState:
        return self.pre.get(self.program.resolve(label), AbstractState.unreachable())

    def final_state(self) -> AbstractState:
        return self.post.get(self.program.root.label, AbstractState.unreachable())

    def eval_values(self) -> list[tuple[str, str, AbstractValue]]:
        """``(alias, label, value)`` for every eval site in source order."""
        bottom = AbstractValue.bottom(self.alphabet)
        return [(alias, lab, self.sinks.get(lab, bottom)) for alias, lab in self.program.evals.items()]


class Analyzer:
    def __init__(self, program: Program, cfg: AnalysisConfig):
        self.program = program
        self.cfg = cfg
        self.alphabet = cfg.alphabet
        self.pre: dict[str, AbstractState] = {}
        self.post: dict[str, AbstractState] = {}
        self.sinks: dict[str, AbstractValue] = {}
        self.head_iterations: dict[str, int] = {}
        self.head_history: dict[str, list[AbstractState]] = {}
        self.diagnostics: list[str] = []
        self._label = ""

    def _note(self, message: str) -> None:
        if message not in self.diagnostics:
            self.diagnostics.append(message)

    # expressions

    def eval(self, e: Exp, s: AbstractState) -> AbstractValue:
        if isinstance(e, Lit):
            return alpha(e.value, self.alphabet)
        if isinstance(e, Var):
            v = s.get(e.name)
            if v is None:
                self._note(f"{self._label}: {e.name!r} may be read before assignment; assuming any value")
                return AbstractValue.top(self.alphabet)
            return v
        if isinstance(e, Binary):
            a, b = self.eval(e.left, s), self.eval(e.right, s)
            if e.op == "+":
                return abs_plus(a, b)
            if e.op in ("-", "*", "/"):
                return abs_num(e.op, a, b)
            if e.op in ("<", ">"):
                return abs_cmp(e.op, a, b)
            if e.op == "==":
                return abs_eq(a, b)
            return abs_logic(e.op, a, b)
        if isinstance(e, Not):
            return abs_logic("!", self.eval(e.operand, s))
        if isinstance(e, Substring):
            recv = to_str_abs(self.eval(e.recv, s))
            start = clamp_nonneg(self._index(self.eval(e.start, s)))
            end = clamp_nonneg(self._index(self.eval(e.end, s)))
            return AbstractValue.of_str(ss_abs(recv, start, end))
        if isinstance(e, CharAt):
            recv = to_str_abs(self.eval(e.recv, s))
            return AbstractValue.of_str(ca_abs(recv, self._index(self.eval(e.index, s))))
        if isinstance(e, IndexOf):
            recv = to_str_abs(self.eval(e.recv, s))
            arg = to_str_abs(self.eval(e.arg, s))
            return AbstractValue.of_int(io_abs(recv, arg), self.alphabet)
        if isinstance(e, Length):
            return AbstractValue.of_int(le_abs(to_str_abs(self.eval(e.recv, s))), self.alphabet)
        raise PreconditionError(f"cannot analyze {e!r}; desugar the program first")

    @staticmethod
    def _index(v: AbstractValue) -> Interval:
        # a non-numeric index counts as 0
        n = to_int_abs(v)
        return i_lub(n.interval, Interval.const(0)) if n.nan else n.interval

    # statements

    def exec(self, st: Stmt, s: AbstractState) -> AbstractState:
        label = st.label
        self.pre[label] = s_lub(self.pre.get(label, AbstractState.unreachable()), s)
        out = self._exec(st, s) if s.reachable else s
        self.post[label] = s_lub(self.post.get(label, AbstractState.unreachable()), out)
        return out

    def _exec(self, st: Stmt, s: AbstractState) -> AbstractState:
        self._label = st.label
        if isinstance(st, Assign):
            return s.set(st.name, self.eval(st.value, s))
        if isinstance(st, Block):
            for child in st.stmts:
                s = self.exec(child, s)
            return s
        if isinstance(st, If):
            guard = to_bool_abs(self.eval(st.guard, s))
            out = AbstractState.unreachable()
            if True in guard:
                out = s_lub(out, self.exec(st.then, s))
            if False in guard:
                out = s_lub(out, self.exec(st.orelse, s) if st.orelse is not None else s)
            return out
        if isinstance(st, While):
            return self._loop(st, s)
        if isinstance(st, Eval):
            v = self.eval(st.arg, s)
            old = self.sinks.get(st.label)
            self.sinks[st.label] = v if old is None else v_lub(old, v)
            return s
        if isinstance(st, Skip):
            return s
        raise PreconditionError(f"cannot analyze {st!r}; desugar the program first")

    def _loop(self, st: While, entry: AbstractState) -> AbstractState:
        cfg = self.cfg
        head = entry
        iterations = 0
        history = self.head_history.setdefault(st.label, [])
        while True:
            for m in range(cfg.max_iters):
                iterations += 1
                history.append(head)
                self._label = st.label
                guard = to_bool_abs(self.eval(st.guard, head))
                after = self.exec(st.body, head) if True in guard else AbstractState.unreachable()
                nxt = s_lub(entry, after)
                if s_leq(nxt, head):
                    self.head_iterations[st.label] = iterations
                    self._label = st.label
                    final_guard = to_bool_abs(self.eval(st.guard, head))
                    return head if False in final_guard else AbstractState.unreachable()
                prev = head
                if m < cfg.widen_delay:
                    head = s_lub(head, nxt)
                else:
                    head = s_widen(head, nxt, cfg.widen_n)
            head = self._give_up(st, prev, head)

    def _give_up(self, st: While, prev: AbstractState, head: AbstractState) -> AbstractState:
        """Send every variable that grew in the last round to top."""
        env = dict(head.env)
        for k, v in head.env.items():
            if k not in prev.env or not v_leq(v, prev.env[k]):
                env[k] = AbstractValue.top(self.alphabet)
                self._note(f"{st.label}: no fixpoint within {self.cfg.max_iters} iterations; {k!r} set to any value")
        return AbstractState(env, True)


def analyze(
    program: Program, cfg: AnalysisConfig | None = None, init: AbstractState | None = None
) -> AnalysisResult:
    """Abstract semantics of *program* from *init* (default: the empty state)."""
    cfg = cfg or AnalysisConfig()
    if not is_desugared(program):
        raise PreconditionError("analyze expects a desugared program")
    a = Analyzer(program, cfg)
    a.exec(program.root, init or AbstractState())
    return AnalysisResult(program, a.pre, a.post, a.sinks, a.head_iterations, a.diagnostics, cfg.alphabet)
