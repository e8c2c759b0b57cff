"""Regular-language transformations: suffixes, prefixes, factors, right quotient, widening."""

from __future__ import annotations

from .errors import ConfigError
from .automata import (
    Dfa,
    Nfa,
    _canonical,
    _check_same,
    bottom,
    determinize,
    intersects_from,
    is_empty,
    lub,
)


def suffixes(a: Dfa) -> Dfa:
    """``{y | xy in L(a)}``: every state becomes initial."""
    if is_empty(a):
        return a
    n = a.to_nfa()
    n.initials.update(a.states)
    return determinize(n)


def prefixes(a: Dfa) -> Dfa:
    """``{x | xy in L(a)}``: every state of a trimmed automaton can reach a final one."""
    if is_empty(a):
        return a
    return _canonical(a.alphabet, a.delta, 0, a.states)


def _step(a: Dfa, states: frozenset[int]) -> frozenset[int]:
    return frozenset(t for q in states for t in a.delta[q].values())


def position_states(a: Dfa, i: int) -> frozenset[int]:
    """States reachable from the initial state by exactly *i* symbols.

    The sequence of these subsets is eventually periodic; large *i* are
    resolved through the first repetition instead of stepping *i* times.
    """
    seen: dict[frozenset[int], int] = {}
    seq: list[frozenset[int]] = []
    cur = frozenset({0})
    k = 0
    while k < i:
        if cur in seen:
            start = seen[cur]
            period = k - start
            return seq[start + (i - start) % period]
        seen[cur] = k
        seq.append(cur)
        if not cur:
            return cur
        cur = _step(a, cur)
        k += 1
    return cur


def suffixes_from(a: Dfa, i: int) -> Dfa:
    """``{y | xy in L(a), |x| = i}``."""
    if i == 0 or is_empty(a):
        return a
    start = position_states(a, i)
    if not start:
        return bottom(a.alphabet)
    n = a.to_nfa()
    n.initials = set(start)
    return determinize(n)


def factors(a: Dfa) -> Dfa:
    """``{y | xyz in L(a)}``."""
    return prefixes(suffixes(a))


def right_quotient(a: Dfa, b: Dfa) -> Dfa:
    """``{x | exists y in L(b). xy in L(a)}``.

    A state of *a* becomes final when the language read from it meets ``L(b)``.
    """
    _check_same(a.alphabet, b.alphabet)
    if is_empty(a) or is_empty(b):
        return bottom(a.alphabet)
    finals = [q for q in a.states if intersects_from(a, q, b)]
    return _canonical(a.alphabet, a.delta, 0, finals)


def bounded_residual_classes(a: Dfa, n: int) -> list[int]:
    """Class id per state: equal ids iff the states accept the same words of length <= n.

    Computed as the n-th round of Moore refinement on the automaton completed
    with a sink (the sink is class ``-1`` and never returned).
    """
    SINK = -1
    cls = {q: int(q in a.finals) for q in a.states}
    cls[SINK] = 0
    symbols = sorted({s for row in a.delta for s in row})
    for _ in range(n):
        sigs: dict[tuple, int] = {}
        new = {}
        for q in list(a.states) + [SINK]:
            row = a.delta[q] if q != SINK else {}
            sig = (cls[q],) + tuple(cls[row.get(s, SINK)] for s in symbols)
            new[q] = sigs.setdefault(sig, len(sigs))
        stable = len(sigs) == len(set(cls.values()))
        cls = new
        if stable:
            break
    return [cls[q] for q in a.states]


def widen(a: Dfa, b: Dfa, n: int) -> Dfa:
    """Parametric widening: merge states of ``lub(a, b)`` with equal residuals up to length n."""
    if n < 1:
        raise ConfigError("widening parameter must be >= 1")
    u = lub(a, b)
    if is_empty(u):
        return u
    cls = bounded_residual_classes(u, n)
    ids = {c: i for i, c in enumerate(dict.fromkeys(cls))}
    nfa = Nfa(u.alphabet)
    nfa.add_states(len(ids))
    for q, sym, t in u.transitions():
        nfa.edges[ids[cls[q]]].setdefault(sym, set()).add(ids[cls[t]])
    nfa.initials.add(ids[cls[0]])
    nfa.finals.update(ids[cls[q]] for q in u.finals)
    return determinize(nfa)
