"""Canonical deterministic automata and the operations the string domain is built on.

Every :class:`Dfa` handed out by this module is canonical: trimmed (each state
reachable from the initial state and able to reach a final state), minimal,
and numbered by a breadth-first walk from the initial state that visits
symbols in code-point order.  Two canonical automata over the same alphabet
recognize the same language iff they are structurally equal, so ``==`` is
language equality.  The empty language is the one-state automaton without
final states.  Missing transitions lead to an implicit, never materialized
sink.
"""

from __future__ import annotations

import math
import re
from collections import defaultdict, deque
from functools import lru_cache
from graphlib import CycleError, TopologicalSorter
from typing import Iterable

from .alphabet import ASCII, Alphabet
from .errors import AlphabetMismatch, ConfigError, PreconditionError

INF = math.inf


class Dfa:
    """A canonical partial DFA.  The initial state is always ``0``.

    Instances are immutable; build them with :func:`min_of`,
    :meth:`from_transitions`, :func:`determinize` or the lattice operations.
    """

    __slots__ = ("alphabet", "delta", "finals", "_key", "_hash")

    def __init__(self, alphabet: Alphabet, delta: tuple[dict[str, int], ...], finals: frozenset[int]):
        # trusted constructor: callers guarantee canonical form
        self.alphabet = alphabet
        self.delta = delta
        self.finals = finals
        self._key = (tuple(tuple(row.items()) for row in delta), finals)
        self._hash = hash(self._key)

    @classmethod
    def from_transitions(
        cls,
        alphabet: Alphabet,
        transitions: Iterable[tuple[object, str, object]],
        initial: object,
        finals: Iterable[object],
        states: Iterable[object] = (),
    ) -> "Dfa":
        """Canonicalize an arbitrary deterministic automaton given as triples."""
        ids: dict[object, int] = {}

        def sid(q: object) -> int:
            if q not in ids:
                ids[q] = len(ids)
                rows.append({})
            return ids[q]

        rows: list[dict[str, int]] = []
        sid(initial)
        for q in states:
            sid(q)
        for src, sym, dst in transitions:
            if sym not in alphabet:
                raise ConfigError(f"symbol {sym!r} is not in the alphabet")
            s, d = sid(src), sid(dst)
            if rows[s].get(sym, d) != d:
                raise ConfigError(f"nondeterministic transition from {src!r} on {sym!r}")
            rows[s][sym] = d
        fin = {sid(q) for q in finals}
        return _canonical(alphabet, rows, 0, fin)

    @property
    def states(self) -> range:
        return range(len(self.delta))

    @property
    def initial(self) -> int:
        return 0

    def __len__(self) -> int:
        return len(self.delta)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Dfa):
            return NotImplemented
        return self._hash == other._hash and self._key == other._key and self.alphabet == other.alphabet

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        if is_empty(self):
            return "Dfa(∅)"
        if not has_cycle(self) and cardinality(self) <= 8:
            return f"Dfa({sorted(enumerate_words(self))!r})"
        return f"Dfa(<{len(self.delta)} states>)"

    def transitions(self) -> Iterable[tuple[int, str, int]]:
        for q, row in enumerate(self.delta):
            for sym, t in row.items():
                yield q, sym, t

    def to_nfa(self) -> "Nfa":
        n = Nfa(self.alphabet)
        n.add_states(len(self.delta))
        for q, sym, t in self.transitions():
            n.add_edge(q, sym, t)
        n.initials.add(0)
        n.finals.update(self.finals)
        return n


class Nfa:
    """Nondeterministic automaton with epsilon moves; a construction scratchpad only."""

    def __init__(self, alphabet: Alphabet):
        self.alphabet = alphabet
        self.edges: list[dict[str, set[int]]] = []
        self.eps: list[set[int]] = []
        self.initials: set[int] = set()
        self.finals: set[int] = set()

    def add_state(self, final: bool = False) -> int:
        self.edges.append({})
        self.eps.append(set())
        q = len(self.edges) - 1
        if final:
            self.finals.add(q)
        return q

    def add_states(self, n: int) -> int:
        """Append *n* states and return the id of the first one."""
        first = len(self.edges)
        for _ in range(n):
            self.add_state()
        return first

    def add_edge(self, src: int, sym: str | None, dst: int) -> None:
        if sym is None:
            self.eps[src].add(dst)
            return
        if sym not in self.alphabet:
            raise ConfigError(f"symbol {sym!r} is not in the alphabet")
        self.edges[src].setdefault(sym, set()).add(dst)

    def embed(self, dfa: Dfa) -> int:
        """Copy *dfa*'s states and edges in; return the offset of its state 0."""
        _check_same(self.alphabet, dfa.alphabet)
        base = self.add_states(len(dfa.delta))
        for q, sym, t in dfa.transitions():
            self.edges[base + q].setdefault(sym, set()).add(base + t)
        return base

    def closure(self, states: Iterable[int]) -> frozenset[int]:
        out = set(states)
        stack = list(out)
        while stack:
            q = stack.pop()
            for t in self.eps[q]:
                if t not in out:
                    out.add(t)
                    stack.append(t)
        return frozenset(out)


# ---------------------------------------------------------------------------
# canonicalization


def _check_same(a: Alphabet, b: Alphabet) -> None:
    if a != b:
        raise AlphabetMismatch("automata are defined over different alphabets")


def _canonical(alphabet: Alphabet, delta: list[dict[str, int]] | tuple, initial: int, finals) -> Dfa:
    """Trim, minimize (Moore partition refinement) and renumber a raw DFA."""
    finals = set(finals)
    seen = {initial}
    order = [initial]
    for q in order:
        for t in delta[q].values():
            if t not in seen:
                seen.add(t)
                order.append(t)
    rev: dict[int, list[int]] = defaultdict(list)
    for q in order:
        for t in delta[q].values():
            rev[t].append(q)
    live = {q for q in order if q in finals}
    stack = list(live)
    while stack:
        q = stack.pop()
        for p in rev[q]:
            if p not in live:
                live.add(p)
                stack.append(p)
    if initial not in live:
        return bottom(alphabet)

    states = [q for q in order if q in live]
    rows = {q: [(s, t) for s, t in sorted(delta[q].items()) if t in live] for q in states}
    cls = {q: int(q in finals) for q in states}
    count = len(set(cls.values()))
    while True:
        sigs: dict[tuple, int] = {}
        new = {}
        for q in states:
            sig = (cls[q], tuple((s, cls[t]) for s, t in rows[q]))
            new[q] = sigs.setdefault(sig, len(sigs))
        cls = new
        if len(sigs) == count:
            break
        count = len(sigs)

    rep: dict[int, int] = {}
    for q in states:
        rep.setdefault(cls[q], q)
    index = {cls[initial]: 0}
    queue = [cls[initial]]
    out: list[dict[str, int]] = []
    for c in queue:
        row = {}
        for s, t in rows[rep[c]]:
            tc = cls[t]
            if tc not in index:
                index[tc] = len(index)
                queue.append(tc)
            row[s] = index[tc]
        out.append(row)
    fin = frozenset(i for c, i in index.items() if rep[c] in finals)
    return Dfa(alphabet, tuple(out), fin)


def determinize(n: Nfa) -> Dfa:
    """Subset construction followed by minimization."""
    start = n.closure(n.initials)
    index = {start: 0}
    queue = [start]
    rows: list[dict[str, int]] = []
    finals = set()
    for i, S in enumerate(queue):
        if S & n.finals:
            finals.add(i)
        moves: dict[str, set[int]] = defaultdict(set)
        for q in S:
            for sym, ts in n.edges[q].items():
                moves[sym] |= ts
        row = {}
        for sym in sorted(moves):
            T = n.closure(moves[sym])
            if T not in index:
                index[T] = len(queue)
                queue.append(T)
            row[sym] = index[T]
        rows.append(row)
    return _canonical(n.alphabet, rows, 0, finals)


def minimize(a: Dfa) -> Dfa:
    """Canonical form of *a*; identity on already canonical automata."""
    return _canonical(a.alphabet, a.delta, 0, a.finals)


# ---------------------------------------------------------------------------
# constants and constructors


@lru_cache(maxsize=None)
def bottom(alphabet: Alphabet = ASCII) -> Dfa:
    return Dfa(alphabet, ({},), frozenset())


@lru_cache(maxsize=None)
def epsilon(alphabet: Alphabet = ASCII) -> Dfa:
    return Dfa(alphabet, ({},), frozenset({0}))


@lru_cache(maxsize=None)
def top(alphabet: Alphabet = ASCII) -> Dfa:
    return Dfa(alphabet, ({s: 0 for s in alphabet.symbols},), frozenset({0}))


def min_of(words: Iterable[str], alphabet: Alphabet = ASCII) -> Dfa:
    """Canonical DFA of a finite language."""
    rows: list[dict[str, int]] = [{}]
    finals = set()
    for w in words:
        alphabet.check_word(w)
        q = 0
        for ch in w:
            nxt = rows[q].get(ch)
            if nxt is None:
                nxt = len(rows)
                rows.append({})
                rows[q][ch] = nxt
            q = nxt
        finals.add(q)
    return _canonical(alphabet, rows, 0, finals)


def word(w: str, alphabet: Alphabet = ASCII) -> Dfa:
    return min_of([w], alphabet)


def symbols_lang(syms: Iterable[str], alphabet: Alphabet = ASCII) -> Dfa:
    """Language of one-letter words drawn from *syms*."""
    row = {}
    for s in sorted(set(syms)):
        if s not in alphabet:
            raise ConfigError(f"symbol {s!r} is not in the alphabet")
        row[s] = 1
    if not row:
        return bottom(alphabet)
    return Dfa(alphabet, (row, {}), frozenset({1}))


@lru_cache(maxsize=256)
def fixed_len_lang(m: int, alphabet: Alphabet = ASCII) -> Dfa:
    """All words of length exactly *m*."""
    full = alphabet.symbols
    rows = tuple({s: q + 1 for s in full} for q in range(m)) + ({},)
    return Dfa(alphabet, rows, frozenset({m}))


@lru_cache(maxsize=256)
def bounded_len_lang(m: int, alphabet: Alphabet = ASCII) -> Dfa:
    """All words of length strictly below *m*."""
    if m <= 0:
        return bottom(alphabet)
    full = alphabet.symbols
    rows = tuple({s: q + 1 for s in full} for q in range(m - 1)) + ({},)
    return Dfa(alphabet, rows, frozenset(range(m)))


# ---------------------------------------------------------------------------
# boolean / lattice operations


def _product(a: Dfa, b: Dfa, mode: str) -> Dfa:
    _check_same(a.alphabet, b.alphabet)
    start = (0, 0)
    index = {start: 0}
    queue = [start]
    rows: list[dict[str, int]] = []
    finals = set()
    empty: dict[str, int] = {}
    for i, (p, q) in enumerate(queue):
        ra = a.delta[p] if p is not None else empty
        rb = b.delta[q] if q is not None else empty
        fa = p in a.finals
        fb = q in b.finals
        if mode == "and":
            syms = ra.keys() & rb.keys()
            acc = fa and fb
        elif mode == "or":
            syms = ra.keys() | rb.keys()
            acc = fa or fb
        else:
            syms = ra.keys()
            acc = fa and not fb
        if acc:
            finals.add(i)
        row = {}
        for s in sorted(syms):
            nxt = (ra.get(s), rb.get(s))
            if nxt not in index:
                index[nxt] = len(queue)
                queue.append(nxt)
            row[s] = index[nxt]
        rows.append(row)
    return _canonical(a.alphabet, rows, 0, finals)


def lub(a: Dfa, b: Dfa) -> Dfa:
    """Union."""
    if a is b:
        return a
    return _product(a, b, "or")


def glb(a: Dfa, b: Dfa) -> Dfa:
    """Intersection."""
    if a is b:
        return a
    return _product(a, b, "and")


def difference(a: Dfa, b: Dfa) -> Dfa:
    """``L(a) minus L(b)``; product with the completed complement of *b*."""
    return _product(a, b, "diff")


def lub_all(autos: Iterable[Dfa], alphabet: Alphabet = ASCII) -> Dfa:
    """Union of many automata through a single determinization."""
    autos = list(autos)
    if not autos:
        return bottom(alphabet)
    if len(autos) == 1:
        return autos[0]
    n = Nfa(autos[0].alphabet)
    for d in autos:
        base = n.embed(d)
        n.initials.add(base)
        n.finals.update(base + f for f in d.finals)
    return determinize(n)


def concat(a: Dfa, b: Dfa) -> Dfa:
    """``L(a) . L(b)``: epsilon-link a's finals to b's initial state."""
    _check_same(a.alphabet, b.alphabet)
    if is_empty(a) or is_empty(b):
        return bottom(a.alphabet)
    n = Nfa(a.alphabet)
    ba = n.embed(a)
    bb = n.embed(b)
    n.initials.add(ba)
    for f in a.finals:
        n.eps[ba + f].add(bb)
    n.finals.update(bb + f for f in b.finals)
    return determinize(n)


def leq(a: Dfa, b: Dfa) -> bool:
    """Language inclusion."""
    return is_empty(difference(a, b))


def is_empty(a: Dfa) -> bool:
    # canonical: the only automaton without finals is bottom
    return not a.finals


def accepts(a: Dfa, w: str) -> bool:
    q = 0
    for ch in w:
        q = a.delta[q].get(ch)
        if q is None:
            return False
    return q in a.finals


def intersects_from(a: Dfa, qa: int, b: Dfa, qb: int = 0, a_all_final: bool = False) -> bool:
    """Whether some word leads *a* from ``qa`` and *b* from ``qb`` both to a final state.

    With ``a_all_final`` every state of *a* counts as final.
    """
    seen = {(qa, qb)}
    stack = [(qa, qb)]
    while stack:
        p, q = stack.pop()
        if q in b.finals and (a_all_final or p in a.finals):
            return True
        ra, rb = a.delta[p], b.delta[q]
        if len(rb) < len(ra):
            pairs = ((ra.get(s), t) for s, t in rb.items())
        else:
            pairs = ((t, rb.get(s)) for s, t in ra.items())
        for nxt in pairs:
            if nxt[0] is not None and nxt[1] is not None and nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return False


# ---------------------------------------------------------------------------
# structural queries


def chars(a: Dfa) -> set[str]:
    return {s for row in a.delta for s in row}


def has_cycle(a: Dfa) -> bool:
    try:
        _topo_order(a)
    except CycleError:
        return True
    return False


def _graph(a: Dfa, nodes: Iterable[int] | None = None) -> dict[int, set[int]]:
    keep = set(range(len(a.delta))) if nodes is None else set(nodes)
    return {q: {t for t in a.delta[q].values() if t in keep} for q in keep}


def _topo_order(a: Dfa, nodes: Iterable[int] | None = None) -> list[int]:
    """States in an order where every state precedes its successors."""
    # TopologicalSorter wants predecessors; feeding successors yields reverse order
    return list(reversed(list(TopologicalSorter(_graph(a, nodes)).static_order())))


def is_finite(a: Dfa) -> bool:
    # canonical automata are trimmed, so any cycle lies on an accepting path
    return not has_cycle(a)


def cardinality(a: Dfa) -> int | float:
    """Number of accepted words, or ``math.inf``."""
    if has_cycle(a):
        return INF
    count: dict[int, int] = {}
    for q in reversed(_topo_order(a)):
        count[q] = int(q in a.finals) + sum(count[t] for t in a.delta[q].values())
    return count[0]


def enumerate_words(a: Dfa) -> set[str]:
    """All accepted words of a finite language."""
    if has_cycle(a):
        raise PreconditionError("cannot enumerate an infinite language")
    out: set[str] = set()
    stack = [(0, "")]
    while stack:
        q, w = stack.pop()
        if q in a.finals:
            out.add(w)
        for s, t in a.delta[q].items():
            stack.append((t, w + s))
    return out


def reachable_from(a: Dfa, q: int) -> set[int]:
    seen = {q}
    stack = [q]
    while stack:
        p = stack.pop()
        for t in a.delta[p].values():
            if t not in seen:
                seen.add(t)
                stack.append(t)
    return seen


def min_path_len(a: Dfa, q: int, q2: int) -> int | None:
    """Shortest edge count from *q* to *q2*; ``None`` if *q2* is unreachable."""
    dist = {q: 0}
    queue = deque([q])
    while queue:
        p = queue.popleft()
        if p == q2:
            return dist[p]
        for t in a.delta[p].values():
            if t not in dist:
                dist[t] = dist[p] + 1
                queue.append(t)
    return None


def max_path_len(a: Dfa, q: int, q2: int) -> int | float | None:
    """Longest edge count from *q* to *q2*.

    ``math.inf`` when some q->q2 path touches a cycle, ``None`` when *q2* is
    unreachable.
    """
    fwd = reachable_from(a, q)
    if q2 not in fwd:
        return None
    rev: dict[int, list[int]] = defaultdict(list)
    for p in fwd:
        for t in a.delta[p].values():
            rev[t].append(p)
    back = {q2}
    stack = [q2]
    while stack:
        p = stack.pop()
        for r in rev[p]:
            if r not in back:
                back.add(r)
                stack.append(r)
    between = fwd & back
    try:
        order = _topo_order(a, between)
    except CycleError:
        return INF
    longest = {q: 0}
    for p in order:
        if p not in longest:
            continue
        for t in a.delta[p].values():
            if t in between:
                longest[t] = max(longest.get(t, 0), longest[p] + 1)
    return longest[q2]


# ---------------------------------------------------------------------------
# DOT emission / reading

_DOT_EDGE = re.compile(r'^\s*(\d+)\s*->\s*(\d+)\s*\[label="((?:[^"\\]|\\.)*)"\];\s*$')
_DOT_FINAL = re.compile(r"^\s*(\d+)\s*\[shape=doublecircle\];\s*$")
_DOT_NODE = re.compile(r"^\s*(\d+)\s*\[shape=circle\];\s*$")


def _dot_escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def to_dot(a: Dfa, name: str = "dfa") -> str:
    """Graphviz rendering; deterministic ordering by state index and symbol code."""
    lines = [f"digraph {name} {{", "  rankdir=LR;", '  __start [shape=none, label=""];']
    for q in a.states:
        shape = "doublecircle" if q in a.finals else "circle"
        lines.append(f"  {q} [shape={shape}];")
    lines.append("  __start -> 0;")
    for q, row in enumerate(a.delta):
        grouped: dict[int, list[str]] = {}
        for s, t in row.items():
            grouped.setdefault(t, []).append(s)
        for t in sorted(grouped):
            label = _dot_escape("".join(sorted(grouped[t])))
            lines.append(f'  {q} -> {t} [label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def from_dot(text: str, alphabet: Alphabet = ASCII) -> Dfa:
    """Read back the format written by :func:`to_dot`."""
    triples = []
    finals = []
    states = []
    for line in text.splitlines():
        m = _DOT_EDGE.match(line)
        if m:
            label = re.sub(r"\\(.)", r"\1", m.group(3))
            triples.extend((int(m.group(1)), s, int(m.group(2))) for s in label)
            continue
        m = _DOT_FINAL.match(line)
        if m:
            finals.append(int(m.group(1)))
            states.append(int(m.group(1)))
            continue
        m = _DOT_NODE.match(line)
        if m:
            states.append(int(m.group(1)))
    return Dfa.from_transitions(alphabet, triples, 0, finals, states)


def transitions_table(a: Dfa) -> list[tuple[int, str, int]]:
    """Sorted transition triples, handy for JSON rendering."""
    return sorted(a.transitions(), key=lambda e: (e[0], ord(e[1]), e[2]))
