import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import SMALL, lang_of, random_language, regex_lang
from strylus.alphabet import Alphabet
from strylus.automata import bottom, min_of, top
from strylus.errors import PatternError
from strylus.pattern import compile_pattern, to_pattern

ABC = Alphabet(SMALL)

atoms = st.sampled_from(["a", "b", "c", ".", "[ab]", "[^a]", "[a-c]", "(a)"])
patterns = st.recursive(
    atoms,
    lambda inner: st.one_of(
        st.tuples(inner, inner).map("".join),
        st.tuples(inner, inner).map(lambda t: f"{t[0]}|{t[1]}"),
        inner.map(lambda p: f"({p})*"),
        inner.map(lambda p: f"({p})+"),
        inner.map(lambda p: f"({p})?"),
    ),
    max_leaves=6,
)


@given(patterns)
def test_agrees_with_re(p):
    assert lang_of(compile_pattern(p, ABC), n=5) == regex_lang(p, n=5)


@pytest.mark.parametrize(
    "p, words",
    [
        ("", {""}),
        ("()", {""}),
        ("a|", {"", "a"}),
        (r"\d", set("0123456789")),
        ("[a-]", {"a", "-"}),
        (r"[\]]", {"]"}),
        ("[]]", {"]"}),
        (r"\.", {"."}),
    ],
)
def test_edge_cases(p, words):
    assert compile_pattern(p) == min_of(words)


@pytest.mark.parametrize("p", ["(ab", "ab)", "*a", "a|*", "[ab", "[b-a]", "\\", "x"])
def test_errors(p):
    with pytest.raises(PatternError):
        compile_pattern(p, ABC)


@given(patterns)
def test_to_pattern_round_trip(p):
    d = compile_pattern(p, ABC)
    text = to_pattern(d)
    if text is not None:
        assert compile_pattern(text, ABC) == d


def test_to_pattern_finite_languages():
    rnd = random.Random(7)
    for _ in range(100):
        d = min_of(random_language(rnd), ABC)
        text = to_pattern(d, max_states=64)
        assert compile_pattern(text, ABC) == d


def test_to_pattern_special_cases():
    assert to_pattern(bottom(ABC)) == "∅"
    assert to_pattern(top(ABC)) == ".*"
    assert to_pattern(min_of(["a("])) == r"a\("
    assert to_pattern(compile_pattern("(ab)*", ABC), max_states=1) is None
