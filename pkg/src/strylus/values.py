"""Abstract values: the product of intervals, boolean sets, automata and a NaN flag."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import lru_cache

from .alphabet import ASCII, Alphabet
from .automata import (
    Dfa,
    accepts,
    bottom,
    cardinality,
    concat,
    difference,
    enumerate_words,
    epsilon,
    glb,
    has_cycle,
    is_empty,
    leq,
    lub,
    lub_all,
    max_path_len,
    min_of,
    transitions_table,
    word,
)
from .automata import top as dfa_top
from .interval import BOTTOM, INF, TOP, Interval, i_arith, i_glb, i_leq, i_lub, i_widen
from .primitives import NAN, Value, c_to_int
from .pattern import to_pattern
from .stringops import cc_abs
from .transforms import widen

BoolSet = frozenset  # subset of {True, False}
NO_BOOLS: frozenset = frozenset()
BOTH_BOOLS: frozenset = frozenset({True, False})

# finite string components up to this many words are listed in JSON output
JSON_WORDS_LIMIT = 32
# numeric languages up to this many words are converted by enumeration
ENUM_LIMIT = 4096

DIGITS = "0123456789"


@dataclass(frozen=True)
class AbstractValue:
    int: Interval = BOTTOM
    bool: frozenset = NO_BOOLS
    str: Dfa = field(default_factory=bottom)
    nan: bool = False

    @classmethod
    def bottom(cls, alphabet: Alphabet = ASCII) -> "AbstractValue":
        return cls(BOTTOM, NO_BOOLS, bottom(alphabet), False)

    @classmethod
    def top(cls, alphabet: Alphabet = ASCII) -> "AbstractValue":
        return cls(TOP, BOTH_BOOLS, dfa_top(alphabet), True)

    @classmethod
    def of_int(cls, iv: Interval, alphabet: Alphabet = ASCII) -> "AbstractValue":
        return cls(iv, NO_BOOLS, bottom(alphabet), False)

    @classmethod
    def of_bools(cls, bs, alphabet: Alphabet = ASCII) -> "AbstractValue":
        return cls(BOTTOM, frozenset(bs), bottom(alphabet), False)

    @classmethod
    def of_str(cls, a: Dfa) -> "AbstractValue":
        return cls(BOTTOM, NO_BOOLS, a, False)

    @classmethod
    def of_nan(cls, alphabet: Alphabet = ASCII) -> "AbstractValue":
        return cls(BOTTOM, NO_BOOLS, bottom(alphabet), True)

    @property
    def alphabet(self) -> Alphabet:
        return self.str.alphabet

    @property
    def is_bottom(self) -> bool:
        return self.int.is_bottom and not self.bool and is_empty(self.str) and not self.nan

    def __str__(self) -> str:
        parts = []
        if not self.int.is_bottom:
            parts.append(f"int {self.int}")
        if self.bool:
            parts.append("bool {" + ", ".join(sorted(str(b).lower() for b in self.bool)) + "}")
        if not is_empty(self.str):
            parts.append(f"str {_str_summary(self.str)}")
        if self.nan:
            parts.append("NaN")
        return "⊥" if not parts else "; ".join(parts)


def _str_summary(a: Dfa) -> str:
    if not has_cycle(a) and cardinality(a) <= 8:
        return "{" + ", ".join(repr(w) for w in sorted(enumerate_words(a))) + "}"
    pat = to_pattern(a)
    if pat is not None and len(pat) <= 60:
        return f"/{pat}/"
    n = len(a)
    return f"<dfa, {n} state{'s' if n != 1 else ''}>"


@dataclass(frozen=True)
class NumOrNaN:
    interval: Interval = BOTTOM
    nan: bool = False

    @property
    def is_bottom(self) -> bool:
        return self.interval.is_bottom and not self.nan


# ---------------------------------------------------------------------------
# lattice


def v_lub(a: AbstractValue, b: AbstractValue) -> AbstractValue:
    return AbstractValue(i_lub(a.int, b.int), a.bool | b.bool, lub(a.str, b.str), a.nan or b.nan)


def v_glb(a: AbstractValue, b: AbstractValue) -> AbstractValue:
    return AbstractValue(i_glb(a.int, b.int), a.bool & b.bool, glb(a.str, b.str), a.nan and b.nan)


def v_leq(a: AbstractValue, b: AbstractValue) -> bool:
    return (
        i_leq(a.int, b.int)
        and a.bool <= b.bool
        and (not a.nan or b.nan)
        and leq(a.str, b.str)
    )


def v_widen(a: AbstractValue, b: AbstractValue, n: int) -> AbstractValue:
    return AbstractValue(i_widen(a.int, b.int), a.bool | b.bool, widen(a.str, b.str, n), a.nan or b.nan)


# ---------------------------------------------------------------------------
# abstraction of concrete values


def alpha(v: Value, alphabet: Alphabet = ASCII) -> AbstractValue:
    if type(v) is bool:
        return AbstractValue.of_bools({v}, alphabet)
    if type(v) is int:
        return AbstractValue.of_int(Interval.const(v), alphabet)
    if type(v) is str:
        return AbstractValue.of_str(word(v, alphabet))
    if v is NAN:
        return AbstractValue.of_nan(alphabet)
    raise TypeError(f"not a concrete value: {v!r}")


def alpha_all(values, alphabet: Alphabet = ASCII) -> AbstractValue:
    out = AbstractValue.bottom(alphabet)
    for v in values:
        out = v_lub(out, alpha(v, alphabet))
    return out


def contains(a: AbstractValue, v: Value) -> bool:
    """Whether concrete *v* is in the concretization of *a*."""
    if type(v) is bool:
        return v in a.bool
    if type(v) is int:
        return v in a.int
    if type(v) is str:
        return accepts(a.str, v)
    return a.nan


# ---------------------------------------------------------------------------
# conversions


def to_bool_abs(v: AbstractValue) -> frozenset:
    out = set(v.bool)
    iv = v.int
    if not iv.is_bottom:
        if iv.lo == 0 and iv.hi == 0:
            out.add(False)
        elif 0 in iv:
            out.update((True, False))
        else:
            out.add(True)
    if v.nan:
        out.add(False)
    if not is_empty(v.str):
        eps = epsilon(v.alphabet)
        if not is_empty(glb(v.str, eps)):
            out.add(False)
        if not is_empty(difference(v.str, eps)):
            out.add(True)
    return frozenset(out)


def _recognizer(alphabet: Alphabet, triples: list, finals: list) -> Dfa:
    # symbols missing from the alphabet cannot occur in any string, so their edges are dropped
    return Dfa.from_transitions(alphabet, [t for t in triples if t[1] in alphabet], 0, finals)


@lru_cache(maxsize=None)
def _digit_plus(alphabet: Alphabet) -> Dfa:
    return _recognizer(alphabet, [(q, d, 1) for q in (0, 1) for d in DIGITS], [1])


@lru_cache(maxsize=None)
def numeric_strings(alphabet: Alphabet = ASCII) -> Dfa:
    """``{+, -, ε} . digits+``."""
    digits = [(q, d, 1) for q in ("s", 0, 1) for d in DIGITS]
    return _recognizer(alphabet, digits + [(0, "+", "s"), (0, "-", "s")], [1])


@lru_cache(maxsize=None)
def nonneg_strings(alphabet: Alphabet = ASCII) -> Dfa:
    """Optional ``+`` then digits: every spelling of a non-negative integer."""
    digits = [(q, d, 1) for q in ("s", 0, 1) for d in DIGITS]
    return _recognizer(alphabet, digits + [(0, "+", "s")], [1])


@lru_cache(maxsize=None)
def nonpos_strings(alphabet: Alphabet = ASCII) -> Dfa:
    """``-`` then digits, plus ``"0"``."""
    zero = _recognizer(alphabet, [(0, "0", 1)], [1])
    if "-" not in alphabet:
        return zero
    return lub(concat(word("-", alphabet), _digit_plus(alphabet)), zero)


def _fixed_width_range(lo: int, hi: int, alphabet: Alphabet) -> Dfa:
    """Decimal spellings of ``lo..hi`` where both have the same number of digits."""
    a, b = str(lo), str(hi)
    n = len(a)
    triples = []
    finals = set()
    start = (0, True, True)
    todo = [start]
    seen = {start}
    while todo:
        pos, tl, th = state = todo.pop()
        if pos == n:
            finals.add(state)
            continue
        low = a[pos] if tl else "0"
        high = b[pos] if th else "9"
        for d in DIGITS[int(low):int(high) + 1]:
            nxt = (pos + 1, tl and d == low, th and d == high)
            triples.append((state, d, nxt))
            if nxt not in seen:
                seen.add(nxt)
                todo.append(nxt)
    return Dfa.from_transitions(alphabet, triples, start, finals)


def _nonneg_range(lo: int, hi: int, alphabet: Alphabet) -> Dfa:
    parts = []
    width = len(str(lo))
    while lo <= hi:
        top_of_width = 10**width - 1
        parts.append(_fixed_width_range(lo, min(hi, top_of_width), alphabet))
        lo = top_of_width + 1
        width += 1
    return lub_all(parts, alphabet)


def _finite_range(lo: int, hi: int, alphabet: Alphabet) -> Dfa:
    parts = []
    if hi >= 0:
        parts.append(_nonneg_range(max(lo, 0), hi, alphabet))
    if lo < 0:
        mags = _nonneg_range(max(-hi, 1), -lo, alphabet)
        parts.append(concat(word("-", alphabet), mags))
    return lub_all(parts, alphabet)


def interval_to_dfa(iv: Interval, alphabet: Alphabet = ASCII) -> Dfa:
    """Automaton containing the canonical spelling of every integer in *iv*."""
    if iv.is_bottom:
        return bottom(alphabet)
    lo, hi = iv.lo, iv.hi
    if lo != -INF and hi != INF:
        return _finite_range(lo, hi, alphabet)
    if lo == -INF and hi == INF:
        return numeric_strings(alphabet)
    if hi == INF:
        if lo == 0:
            return nonneg_strings(alphabet)
        if lo > 0:
            return difference(nonneg_strings(alphabet), _finite_range(0, lo - 1, alphabet))
        return lub(_finite_range(lo, 0, alphabet), nonneg_strings(alphabet))
    if hi == 0:
        return nonpos_strings(alphabet)
    if hi < 0:
        return difference(nonpos_strings(alphabet), _finite_range(hi + 1, 0, alphabet))
    return lub(nonpos_strings(alphabet), _finite_range(0, hi, alphabet))


def to_str_abs(v: AbstractValue) -> Dfa:
    alphabet = v.alphabet
    parts = [v.str]
    if True in v.bool:
        parts.append(word("true", alphabet))
    if False in v.bool:
        parts.append(word("false", alphabet))
    if v.nan:
        parts.append(word("NaN", alphabet))
    if not v.int.is_bottom:
        parts.append(interval_to_dfa(v.int, alphabet))
    return lub_all(parts, alphabet)


def _numeric_part_interval(a: Dfa, negative: bool) -> Interval:
    if is_empty(a):
        return BOTTOM
    if has_cycle(a):
        return Interval(-INF, 0) if negative else Interval(0, INF)
    if cardinality(a) <= ENUM_LIMIT:
        return Interval.hull(c_to_int(w) for w in enumerate_words(a))
    # too many words: bound by the longest spelling
    longest = max(max_path_len(a, 0, f) for f in a.finals)
    bound = 10**longest - 1
    return Interval(-bound, 0) if negative else Interval(0, bound)


def dfa_to_interval(a: Dfa) -> NumOrNaN:
    """Integers spelled by the numeric words of *a*, flagging NaN if some word is not numeric."""
    alphabet = a.alphabet
    numeric = glb(a, numeric_strings(alphabet))
    if is_empty(numeric):
        return NumOrNaN(BOTTOM, not is_empty(a))
    neg = glb(numeric, concat(word("-", alphabet), _digit_plus(alphabet)))
    nonneg = difference(numeric, neg)
    iv = i_lub(_numeric_part_interval(neg, True), _numeric_part_interval(nonneg, False))
    return NumOrNaN(iv, not leq(a, numeric))


def to_int_abs(v: AbstractValue) -> NumOrNaN:
    iv = v.int
    if v.bool:
        iv = i_lub(iv, Interval.hull(int(b) for b in v.bool))
    if v.nan:
        iv = i_lub(iv, Interval.const(0))
    s = dfa_to_interval(v.str)
    return NumOrNaN(i_lub(iv, s.interval), s.nan)


# ---------------------------------------------------------------------------
# operators


def _without_str(v: AbstractValue) -> AbstractValue:
    return replace(v, str=bottom(v.alphabet))


def abs_plus(a: AbstractValue, b: AbstractValue) -> AbstractValue:
    alphabet = a.alphabet
    if a.is_bottom or b.is_bottom:
        return AbstractValue.bottom(alphabet)
    s = lub(cc_abs(a.str, to_str_abs(b)), cc_abs(to_str_abs(a), b.str))
    na, nb = to_int_abs(_without_str(a)), to_int_abs(_without_str(b))
    return AbstractValue(i_arith("+", na.interval, nb.interval), NO_BOOLS, s, na.nan or nb.nan)


def abs_num(op: str, a: AbstractValue, b: AbstractValue) -> AbstractValue:
    alphabet = a.alphabet
    if a.is_bottom or b.is_bottom:
        return AbstractValue.bottom(alphabet)
    na, nb = to_int_abs(a), to_int_abs(b)
    nan = na.nan or nb.nan or (op == "/" and 0 in nb.interval)
    return AbstractValue(i_arith(op, na.interval, nb.interval), NO_BOOLS, bottom(alphabet), nan)


def _bool_value(bs, alphabet: Alphabet) -> AbstractValue:
    return AbstractValue(BOTTOM, frozenset(bs), bottom(alphabet), False)


def abs_logic(op: str, a: AbstractValue, b: AbstractValue | None = None) -> AbstractValue:
    alphabet = a.alphabet
    ba = to_bool_abs(a)
    if op == "!":
        return _bool_value({not x for x in ba}, alphabet)
    bb = to_bool_abs(b)
    if op == "&&":
        return _bool_value({x and y for x in ba for y in bb}, alphabet)
    if op == "||":
        return _bool_value({x or y for x in ba for y in bb}, alphabet)
    raise ValueError(f"unknown logical operator {op!r}")


def _cmp_operand(v: AbstractValue) -> NumOrNaN:
    # a NaN value compares false rather than being read as 0
    n = to_int_abs(replace(v, nan=False))
    return NumOrNaN(n.interval, n.nan or v.nan)


def abs_cmp(op: str, a: AbstractValue, b: AbstractValue) -> AbstractValue:
    alphabet = a.alphabet
    if a.is_bottom or b.is_bottom:
        return _bool_value((), alphabet)
    na, nb = _cmp_operand(a), _cmp_operand(b)
    out = set()
    if na.nan or nb.nan:
        out.add(False)
    x, y = na.interval, nb.interval
    if not x.is_bottom and not y.is_bottom:
        if op == ">":
            x, y = y, x
        # x < y ?
        if x.lo < y.hi:
            out.add(True)
        if x.hi >= y.lo:
            out.add(False)
    return _bool_value(out, alphabet)


def _singleton(v: AbstractValue) -> Value | None:
    """The unique concrete value of *v*, or ``None``."""
    count = v.int.size + len(v.bool) + int(v.nan)
    if count > 1:
        return None
    if not is_empty(v.str):
        if count or has_cycle(v.str) or cardinality(v.str) != 1:
            return None
        return next(iter(enumerate_words(v.str)))
    if count == 0:
        return None
    if v.nan:
        return NAN
    if v.bool:
        return next(iter(v.bool))
    return v.int.lo


def abs_eq(a: AbstractValue, b: AbstractValue) -> AbstractValue:
    alphabet = a.alphabet
    if a.is_bottom or b.is_bottom:
        return _bool_value((), alphabet)
    sa, sb = _singleton(a), _singleton(b)
    if sa is not None and sb is not None and type(sa) is type(sb) and sa == sb:
        return _bool_value({True}, alphabet)
    if v_glb(a, b).is_bottom:
        return _bool_value({False}, alphabet)
    return _bool_value({True, False}, alphabet)


# ---------------------------------------------------------------------------
# JSON


def str_to_json(a: Dfa) -> dict:
    if not has_cycle(a) and cardinality(a) <= JSON_WORDS_LIMIT:
        return {"kind": "finite", "words": sorted(enumerate_words(a))}
    return {
        "kind": "dfa",
        "states": len(a),
        "initial": 0,
        "finals": sorted(a.finals),
        "edges": [[q, s, t] for q, s, t in transitions_table(a)],
    }


def str_from_json(data: dict, alphabet: Alphabet = ASCII) -> Dfa:
    if data["kind"] == "finite":
        return min_of(data["words"], alphabet)
    return Dfa.from_transitions(
        alphabet, [tuple(e) for e in data["edges"]], data["initial"], data["finals"], range(data["states"])
    )


def value_to_json(v: AbstractValue) -> dict:
    return {
        "int": v.int.to_json(),
        "bool": [("true" if b else "false") for b in sorted(v.bool)],
        "string": str_to_json(v.str),
        "nan": v.nan,
    }


def value_from_json(data: dict, alphabet: Alphabet = ASCII) -> AbstractValue:
    return AbstractValue(
        Interval.from_json(data["int"]),
        frozenset(b == "true" for b in data["bool"]),
        str_from_json(data["string"], alphabet),
        bool(data["nan"]),
    )
