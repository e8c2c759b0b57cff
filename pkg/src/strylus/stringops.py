"""Abstract string operations over automata: substring, charAt, length, indexOf, concat."""

from __future__ import annotations

from functools import lru_cache

from .automata import (
    Dfa,
    bottom,
    bounded_len_lang,
    cardinality,
    chars,
    concat,
    enumerate_words,
    epsilon,
    fixed_len_lang,
    glb,
    has_cycle,
    intersects_from,
    is_empty,
    leq,
    lub,
    lub_all,
    max_path_len,
    min_path_len,
    symbols_lang,
    top,
    word,
)
from .interval import BOTTOM, INF, Interval, clamp_nonneg
from .transforms import factors, right_quotient, suffixes, suffixes_from

# Above these sizes the exact case split is replaced by the factor language,
# which contains every possible substring.
MAX_INDEX_PAIRS = 128
MAX_START_INDEXES = 64
# indexOf only proves "always found" for query languages this small
MAX_QUERY_WORDS = 64


def min_word_len(a: Dfa) -> int:
    return min(min_path_len(a, 0, f) for f in a.finals)


@lru_cache(maxsize=4096)
def _su(a: Dfa, i: int) -> Dfa:
    return suffixes_from(a, i)


def _eps_if_short(a: Dfa, bound: int) -> Dfa:
    # strings shorter than the start index yield the empty substring
    return epsilon(a.alphabet) if min_word_len(a) < bound else bottom(a.alphabet)


def _ss_pair(a: Dfa, s: int, e: int) -> Dfa:
    """Exact substrings for one (start, end) pair with ``s <= e``."""
    alpha = a.alphabet
    head = _su(a, s)
    full = glb(right_quotient(head, _su(a, e)), fixed_len_lang(e - s, alpha))
    short = glb(head, bounded_len_lang(e - s, alpha))
    return lub_all([full, short, _eps_if_short(a, s)], alpha)


def _ss_finite(a: Dfa, start: Interval, end: Interval) -> Dfa:
    pairs = {
        (min(s, e), max(s, e))
        for s in range(start.lo, start.hi + 1)
        for e in range(end.lo, end.hi + 1)
    }
    return lub_all([_ss_pair(a, s, e) for s, e in sorted(pairs)], a.alphabet)


def _ss_right(a: Dfa, start: Interval, m: int) -> Dfa:
    """Starts in a finite range, ends anywhere at or beyond ``m >= start.hi``."""
    alpha = a.alphabet
    tail = suffixes(_su(a, m))
    parts = []
    for s in range(start.lo, start.hi + 1):
        head = _su(a, s)
        parts.append(right_quotient(head, tail))
        # strings ending before m: the substring runs to the end
        parts.append(glb(head, bounded_len_lang(m - s, alpha)))
    parts.append(_eps_if_short(a, start.hi))
    return lub_all(parts, alpha)


def _ss_geq(a: Dfa, m: int) -> Dfa:
    """Both indexes at or beyond ``m``."""
    return lub(factors(_su(a, m)), _eps_if_short(a, m))


def _all_factors(a: Dfa) -> Dfa:
    return lub(factors(a), epsilon(a.alphabet))


def _ss(a: Dfa, start: Interval, end: Interval, depth: int, trace: list[int]) -> Dfa:
    if start.lo < 0 or end.lo < 0:
        return _ss(a, clamp_nonneg(start), clamp_nonneg(end), depth + 1, trace)
    if start.hi == INF and end.hi != INF:
        return _ss(a, end, start, depth + 1, trace)
    trace.append(depth)
    if start.hi != INF:
        if end.hi != INF:
            if start.size * end.size > MAX_INDEX_PAIRS:
                return _all_factors(a)
            return _ss_finite(a, start, end)
        if start.size > MAX_START_INDEXES:
            return _all_factors(a)
        if start.hi <= end.lo:
            return _ss_right(a, start, end.lo)
        head = _ss_finite(a, start, Interval(end.lo, start.hi - 1))
        return lub(head, _ss_right(a, start, start.hi))
    lo, m = sorted((start.lo, end.lo))
    if m - lo + 1 > MAX_START_INDEXES:
        return _all_factors(a)
    return lub(_ss_right(a, Interval(lo, m), m), _ss_geq(a, m))


def ss_abs_traced(a: Dfa, start: Interval, end: Interval) -> tuple[Dfa, int]:
    """``ss_abs`` plus the number of recursive dispatches before the base case."""
    if is_empty(a) or start.is_bottom or end.is_bottom:
        return bottom(a.alphabet), 0
    trace: list[int] = []
    out = _ss(a, start, end, 0, trace)
    return out, max(trace)


def ss_abs(a: Dfa, start: Interval, end: Interval) -> Dfa:
    """Substrings ``s[min(x,y):max(x,y)]`` for s in L(a), x in start, y in end."""
    return ss_abs_traced(a, start, end)[0]


def ca_abs(a: Dfa, idx: Interval) -> Dfa:
    """Characters at positions in *idx*; out-of-range positions give the empty string."""
    alpha = a.alphabet
    if is_empty(a) or idx.is_bottom:
        return bottom(alpha)
    eps = epsilon(alpha)
    if idx.hi < 0:
        return eps
    if idx.hi == INF:
        src = a if idx.lo < 0 else _su(a, idx.lo)
        return lub(symbols_lang(chars(src), alpha), eps)
    lo = max(0, idx.lo)
    if idx.hi - lo + 1 > MAX_START_INDEXES:
        out = lub(symbols_lang(chars(_su(a, lo)), alpha), eps)
    else:
        out = lub_all([ss_abs(a, Interval(x, x), Interval(x + 1, x + 1)) for x in range(lo, idx.hi + 1)], alpha)
    if idx.lo < 0:
        out = lub(out, eps)
    return out


def le_abs(a: Dfa) -> Interval:
    """Interval of word lengths."""
    if is_empty(a):
        return BOTTOM
    lo = min_word_len(a)
    if has_cycle(a):
        return Interval(lo, INF)
    return Interval(lo, max(max_path_len(a, 0, f) for f in a.finals))


def _always_contains(a: Dfa, b: Dfa) -> bool:
    """Whether every word of *a* contains every word of *b* (decided for small finite *b* only)."""
    if has_cycle(b) or cardinality(b) > MAX_QUERY_WORDS:
        return False
    alpha = a.alphabet
    anything = top(alpha)
    return all(
        leq(a, concat(concat(anything, word(w, alpha)), anything)) for w in enumerate_words(b)
    )


def io_abs(a: Dfa, b: Dfa) -> Interval:
    """Interval of first-occurrence indexes of a word of *b* in a word of *a* (``-1`` if absent)."""
    if is_empty(a) or is_empty(b):
        return BOTTOM
    hits: list[float] = []
    missed = False
    for q in a.states:
        if intersects_from(a, q, b, a_all_final=True):
            hits.append(min_path_len(a, 0, q))
            hits.append(max_path_len(a, 0, q))
        else:
            missed = True
    if cardinality(a) == 1 and cardinality(b) == 1:
        return Interval.const(min(hits)) if hits else Interval.const(-1)
    if missed or not _always_contains(a, b):
        hits.append(-1)
    return Interval(min(hits), max(hits))


def cc_abs(a: Dfa, b: Dfa) -> Dfa:
    """Concatenation."""
    return concat(a, b)
