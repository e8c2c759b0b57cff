"""Mini regular expressions for queries, compiled to canonical automata.

Supported: literals, backslash escapes, ``.``, classes such as ``[a-z]`` and
``[^0-9]``, the postfix operators ``* + ?``, alternation ``|`` and grouping.
``\\d`` and ``\\w`` stand for digits and word characters.  Matching is
implicitly anchored: a pattern denotes a set of whole strings.
"""

from __future__ import annotations

import string
from functools import lru_cache

from .alphabet import ASCII, Alphabet
from .automata import Dfa, Nfa, determinize
from .errors import PatternError

_SHORTHANDS = {"d": string.digits, "w": string.ascii_letters + string.digits + "_"}

Fragment = tuple[int, int]  # (entry state, exit state)


class _Compiler:
    def __init__(self, text: str, alphabet: Alphabet):
        self.text = text
        self.pos = 0
        self.alphabet = alphabet
        self.nfa = Nfa(alphabet)

    def error(self, message: str):
        raise PatternError(f"{message} at offset {self.pos} in pattern {self.text!r}")

    def peek(self) -> str | None:
        return self.text[self.pos] if self.pos < len(self.text) else None

    def take(self) -> str:
        ch = self.text[self.pos]
        self.pos += 1
        return ch

    def new(self) -> int:
        return self.nfa.add_state()

    def symbols(self, syms) -> Fragment:
        a, b = self.new(), self.new()
        for s in sorted(set(syms)):
            if s not in self.alphabet:
                self.error(f"symbol {s!r} is not in the alphabet")
            self.nfa.add_edge(a, s, b)
        return a, b

    def compile(self) -> Dfa:
        start, end = self.alternation()
        if self.pos != len(self.text):
            self.error("unbalanced ')'")
        self.nfa.initials.add(start)
        self.nfa.finals.add(end)
        return determinize(self.nfa)

    def alternation(self) -> Fragment:
        frags = [self.concatenation()]
        while self.peek() == "|":
            self.take()
            frags.append(self.concatenation())
        if len(frags) == 1:
            return frags[0]
        a, b = self.new(), self.new()
        for x, y in frags:
            self.nfa.add_edge(a, None, x)
            self.nfa.add_edge(y, None, b)
        return a, b

    def concatenation(self) -> Fragment:
        a = b = self.new()
        while self.peek() is not None and self.peek() not in "|)":
            x, y = self.repetition()
            self.nfa.add_edge(b, None, x)
            b = y
        return a, b

    def repetition(self) -> Fragment:
        x, y = self.atom()
        while self.peek() in ("*", "+", "?"):
            op = self.take()
            a, b = self.new(), self.new()
            self.nfa.add_edge(a, None, x)
            self.nfa.add_edge(y, None, b)
            if op in ("*", "?"):
                self.nfa.add_edge(a, None, b)
            if op in ("*", "+"):
                self.nfa.add_edge(y, None, x)
            x, y = a, b
        return x, y

    def atom(self) -> Fragment:
        ch = self.peek()
        if ch is None:
            self.error("unexpected end of pattern")
        if ch == "(":
            self.take()
            frag = self.alternation()
            if self.peek() != ")":
                self.error("missing ')'")
            self.take()
            return frag
        if ch in "*+?":
            self.error(f"nothing to repeat before {ch!r}")
        if ch in ")]":
            self.error(f"unexpected {ch!r}")
        if ch == ".":
            self.take()
            return self.symbols(self.alphabet.symbols)
        if ch == "[":
            return self.symbols(self.char_class())
        return self.symbols(self.escaped())

    def escaped(self) -> str:
        ch = self.take()
        if ch != "\\":
            return ch
        if self.peek() is None:
            self.error("dangling backslash")
        esc = self.take()
        if esc in _SHORTHANDS:
            return _SHORTHANDS[esc]
        return {"n": "\n", "t": "\t"}.get(esc, esc)

    def char_class(self) -> set[str]:
        self.take()  # '['
        negate = self.peek() == "^"
        if negate:
            self.take()
        members: set[str] = set()
        first = True
        while True:
            ch = self.peek()
            if ch is None:
                self.error("missing ']'")
            if ch == "]" and not first:
                self.take()
                break
            first = False
            lo = self.escaped()
            if len(lo) == 1 and self.peek() == "-" and self.text[self.pos + 1:self.pos + 2] not in ("]", ""):
                self.take()
                hi = self.escaped()
                if len(hi) != 1 or ord(hi) < ord(lo):
                    self.error(f"bad range {lo}-{hi}")
                members.update(chr(c) for c in range(ord(lo), ord(hi) + 1))
            else:
                members.update(lo)
        if negate:
            return set(self.alphabet.symbols) - members
        return members


def compile_pattern(text: str, alphabet: Alphabet = ASCII) -> Dfa:
    return _Compiler(text, alphabet).compile()


# ---------------------------------------------------------------------------
# Automaton to pattern, for human-readable summaries.
# Terms: ("eps",) | ("set", frozenset) | ("cat", (t, ...)) | ("alt", frozenset) | ("star", t)

_EPS = ("eps",)
_META = set("\\.[]()*+?|^-")


def _alt(x, y):
    if x is None:
        return y
    if y is None or x == y:
        return x
    if x[0] == "set" and y[0] == "set":
        return ("set", x[1] | y[1])
    parts = set()
    for t in (x, y):
        parts.update(t[1] if t[0] == "alt" else (t,))
    sets = [t for t in parts if t[0] == "set"]
    if len(sets) > 1:
        parts -= set(sets)
        parts.add(("set", frozenset().union(*(t[1] for t in sets))))
    return ("alt", frozenset(parts)) if len(parts) > 1 else parts.pop()


def _cat(x, y):
    if x is None or y is None:
        return None
    if x == _EPS:
        return y
    if y == _EPS:
        return x
    items = (x[1] if x[0] == "cat" else (x,)) + (y[1] if y[0] == "cat" else (y,))
    return ("cat", items)


def _star(x):
    if x is None or x == _EPS:
        return _EPS
    if x[0] == "star":
        return x
    return ("star", x)


def _char(ch: str) -> str:
    return "\\" + ch if ch in _META else ch


def _class(syms: frozenset, alphabet: Alphabet) -> str:
    if len(syms) == 1:
        return _char(next(iter(syms)))
    if syms == frozenset(alphabet.symbols):
        return "."
    codes = sorted(ord(c) for c in syms)
    runs: list[list[int]] = []
    for c in codes:
        if runs and c == runs[-1][1] + 1:
            runs[-1][1] = c
        else:
            runs.append([c, c])
    body = ""
    for lo, hi in runs:
        if hi - lo >= 2:
            body += f"{_char(chr(lo))}-{_char(chr(hi))}"
        else:
            body += "".join(_char(chr(c)) for c in range(lo, hi + 1))
    return f"[{body}]"


@lru_cache(maxsize=4096)
def _show(t, alphabet: Alphabet, ctx: int = 0) -> str:
    # ctx: 0 alternation allowed, 1 inside concatenation, 2 operand of a postfix operator
    kind = t[0]
    if kind == "eps":
        return "()" if ctx else ""
    if kind == "set":
        return _class(t[1], alphabet)
    if kind == "star":
        return _show(t[1], alphabet, 2) + "*"
    if kind == "cat":
        items, out, i = t[1], [], 0
        while i < len(items):
            x = items[i]
            if i + 1 < len(items) and items[i + 1] == ("star", x):
                out.append(_show(x, alphabet, 2) + "+")
                i += 2
            else:
                out.append(_show(x, alphabet, 1))
                i += 1
        text = "".join(out)
        return f"({text})" if ctx == 2 and len(out) > 1 else text
    if _EPS in t[1]:
        rest = t[1] - {_EPS}
        other = next(iter(rest)) if len(rest) == 1 else ("alt", frozenset(rest))
        return _show(other, alphabet, 2) + "?"
    alts = sorted(t[1], key=lambda x: _show(x, alphabet))
    text = "|".join(_show(x, alphabet, 0) for x in alts)
    return f"({text})" if ctx else text


def to_pattern(a: Dfa, max_states: int = 8) -> str | None:
    """A pattern denoting ``L(a)`` by state elimination, or None when *a* is too large.

    The result compiles back to *a* with :func:`compile_pattern`; the empty
    language has no pattern and is rendered as ``∅``.
    """
    if not a.finals:
        return "∅"
    if len(a.delta) > max_states:
        return None
    start, end = len(a.delta), len(a.delta) + 1
    edges: dict[tuple[int, int], tuple] = {}
    for q, row in enumerate(a.delta):
        grouped: dict[int, set[str]] = {}
        for s, t in row.items():
            grouped.setdefault(t, set()).add(s)
        for t, syms in grouped.items():
            edges[q, t] = ("set", frozenset(syms))
    edges[start, 0] = _EPS
    for f in a.finals:
        edges[f, end] = _EPS
    for q in range(len(a.delta)):
        loop = _star(edges.pop((q, q), None))
        ins = [(p, r) for (p, x), r in edges.items() if x == q]
        outs = [(x, r) for (p, x), r in edges.items() if p == q]
        for p, _ in ins:
            edges.pop((p, q))
        for x, _ in outs:
            edges.pop((q, x))
        for p, r_in in ins:
            for x, r_out in outs:
                edges[p, x] = _alt(edges.get((p, x)), _cat(_cat(r_in, loop), r_out))
    return _show(edges.get((start, end)), a.alphabet)
