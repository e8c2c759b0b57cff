import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import (
    SMALL,
    factors_of,
    lang_of,
    prefixes_of,
    regex_lang,
    right_quotient_of,
    suffixes_from_of,
    suffixes_of,
    words_upto,
)
from strylus.alphabet import Alphabet
from strylus.automata import Dfa, enumerate_words, leq, min_of
from strylus.errors import ConfigError
from strylus.transforms import (
    bounded_residual_classes,
    factors,
    prefixes,
    right_quotient,
    suffixes,
    suffixes_from,
    widen,
)

ALPHA = Alphabet(SMALL)
langs = st.sets(st.text(alphabet=SMALL, max_size=5), min_size=1, max_size=8)


def m(words):
    return min_of(words, ALPHA)


def cyc(pattern_edges, finals):
    return Dfa.from_transitions(ALPHA, pattern_edges, 0, finals)


@given(langs)
def test_suffix_prefix_factor(L):
    a = m(L)
    assert enumerate_words(suffixes(a)) == suffixes_of(L)
    assert enumerate_words(prefixes(a)) == prefixes_of(L)
    assert enumerate_words(factors(a)) == factors_of(L)


@given(langs, st.integers(0, 7))
def test_suffixes_from(L, i):
    assert enumerate_words(suffixes_from(m(L), i)) == suffixes_from_of(L, i)


def test_suffixes_from_examples():
    assert enumerate_words(suffixes_from(min_of(["abc", "hello"]), 2)) == {"c", "llo"}


def test_suffixes_from_uses_periodicity():
    ab_star = cyc([(0, "a", 1), (1, "b", 0)], [0])
    assert suffixes_from(ab_star, 10**9 + 1) == suffixes_from(ab_star, 1)
    assert suffixes_from(ab_star, 10**9) == ab_star
    assert lang_of(suffixes_from(ab_star, 3)) == regex_lang("b(ab)*")


@given(langs, langs)
def test_right_quotient(L, M):
    assert enumerate_words(right_quotient(m(L), m(M))) == right_quotient_of(L, M)


def test_right_quotient_example():
    got = right_quotient(min_of(["xab", "yab"]), min_of(["b", "ab"]))
    assert enumerate_words(got) == {"x", "xa", "y", "ya"}


def test_widening_collapses_to_star():
    a_star = Dfa.from_transitions(ALPHA, [(0, "a", 0)], 0, [0])
    assert widen(m(["", "a"]), m(["a", "aa"]), 1) == a_star


def test_widening_abab():
    w = widen(m(["ab", "abab"]), m(["abab", "ababab"]), 2)
    assert lang_of(w, n=8) == regex_lang("(ab)+", n=8)


@given(langs, langs, st.integers(1, 4))
def test_widening_is_upper_bound(L, M, n):
    a, b = m(L), m(M)
    w = widen(a, b, n)
    assert leq(a, w) and leq(b, w)


def test_widening_rejects_zero():
    with pytest.raises(ConfigError):
        widen(m(["a"]), m(["b"]), 0)


def _residual(a, q, n):
    out = set()
    for w in words_upto(SMALL, n):
        p = q
        for ch in w:
            p = a.delta[p].get(ch)
            if p is None:
                break
        else:
            if p in a.finals:
                out.add(w)
    return frozenset(out)


@given(langs, st.integers(0, 3))
def test_bounded_residual_classes_match_brute_force(L, n):
    a = m(L)
    cls = bounded_residual_classes(a, n)
    res = [_residual(a, q, n) for q in a.states]
    for p in a.states:
        for q in a.states:
            assert (cls[p] == cls[q]) == (res[p] == res[q])
