"""Acceptance suite: one test per criterion, each printing a PASS or FAIL line."""

import itertools
import random
from contextlib import contextmanager
from pathlib import Path

from oracles import (
    CONCRETE_POOL,
    INPUTS,
    SMALL,
    ProgramGen,
    check_program_soundness,
    random_bound_pair,
    random_concrete,
    random_language,
    ref_ca,
    ref_io,
    ref_ss,
    ref_to_bool,
    ref_to_int,
    ref_to_str,
)
from strylus.alphabet import Alphabet
from strylus.analyzer import AnalysisConfig, analyze
from strylus.automata import Dfa, accepts, enumerate_words, glb, is_empty, lub, min_of
from strylus.interval import INF, Interval
from strylus.parser import load
from strylus.pattern import compile_pattern
from strylus.primitives import NAN, c_arith, c_cmp, c_eq, c_logic, c_plus
from strylus.stringops import ca_abs, cc_abs, io_abs, le_abs, ss_abs, ss_abs_traced
from strylus.transforms import widen
from strylus.values import (
    abs_cmp,
    abs_eq,
    abs_logic,
    abs_num,
    abs_plus,
    alpha_all,
    contains,
    dfa_to_interval,
    interval_to_dfa,
    to_bool_abs,
    to_int_abs,
    to_str_abs,
)

PROGRAMS = Path(__file__).resolve().parent.parent / "programs"
ABC = Alphabet(SMALL)
I = Interval


@contextmanager
def criterion(capsys, n: int, title: str):
    try:
        yield
    except BaseException:
        with capsys.disabled():
            print(f"\ncriterion {n:2d}: FAIL  {title}")
        raise
    with capsys.disabled():
        print(f"\ncriterion {n:2d}: PASS  {title}")


def star(sym: str) -> Dfa:
    return compile_pattern(f"{sym}*")


def test_criterion_01_substring_worked_example(capsys):
    with criterion(capsys, 1, "substring of {a}* | {hello, bc} from [1,1] to [3,3]"):
        a = lub(star("a"), min_of(["hello", "bc"]))
        got = ss_abs(a, I(1, 1), I(3, 3))
        expected = {"", "a", "aa", "el", "c"}
        assert enumerate_words(got) == expected
        for w in expected:
            assert accepts(got, w)
        for w in ["aaa", "b", "ell", "hel", "bc", "l"]:
            assert not accepts(got, w)


def test_criterion_02_substring_unbounded_end(capsys):
    with criterion(capsys, 2, "substring of {lang, hello} from [1,1] to [3,+inf]"):
        got = ss_abs(min_of(["lang", "hello"]), I(1, 1), I(3, INF))
        assert got == min_of(["an", "ang", "el", "ell", "ello"])


def test_criterion_03_length(capsys):
    with criterion(capsys, 3, "length of {abc, hello} and of its (abb)+c extension"):
        assert le_abs(min_of(["abc", "hello"])) == I(3, 5)
        assert le_abs(compile_pattern("abc|hello|(abb)+c")) == I(3, INF)


def test_criterion_04_index_of(capsys):
    with criterion(capsys, 4, "indexOf on {ddd, abc, bc} and {bcd, aaab}"):
        assert io_abs(min_of(["ddd", "abc", "bc"]), min_of(["bc"])) == I(-1, 1)
        got = io_abs(min_of(["bcd", "aaab"]), min_of(["b"]))
        assert got == I(-1, 3)
        concrete = {ref_io(w, "b") for w in ["bcd", "aaab"]}
        assert concrete == {0, 3}
        assert all(k in got for k in concrete)


def test_criterion_05_concat(capsys):
    with criterion(capsys, 5, "concat of a+ | b with c d*, 200 probes"):
        got = cc_abs(compile_pattern("a+|b"), compile_pattern("cd*"))
        rnd = random.Random(5)
        for _ in range(200):
            n, m = rnd.randint(0, 6), rnd.randint(0, 6)
            head = rnd.choice(["a" * n, "b", "ab", "ba", "bb"])
            tail = rnd.choice(["c" + "d" * m, "d" * m, "cc" + "d" * m, "c" + "d" * m + "c"])
            w = head + tail
            member = (head == "b" or set(head) == {"a"}) and tail == "c" + "d" * m
            assert accepts(got, w) == member, w


def test_criterion_06_widening(capsys):
    with criterion(capsys, 6, "widening {e, a} with {a, aa} at n=1"):
        assert widen(min_of(["", "a"]), min_of(["a", "aa"]), 1) == star("a")


def test_criterion_07_loop(capsys):
    with criterion(capsys, 7, "a-appending loop with unknown bound"):
        r = analyze(load((PROGRAMS / "loop_a.imp").read_text()), AnalysisConfig(widen_n=1))
        assert r.final_state().env["str"].str == star("a")
        (iterations,) = r.head_iterations.values()
        assert iterations <= 4


def test_criterion_08_malware_queries(capsys):
    with criterion(capsys, 8, "obfuscated eval argument: ActiveXObject yes, eval no"):
        r = analyze(load((PROGRAMS / "obfuscated.imp").read_text()))
        (_, label, d) = r.eval_values()[0]
        assert label == r.program.evals["eval1"]
        assert not is_empty(glb(d.str, compile_pattern(r"[a-z]+=new ActiveXObject\(.*\)")))
        assert is_empty(glb(d.str, min_of(["eval"])))


def _random_automaton(rnd: random.Random) -> Dfa:
    a = min_of(random_language(rnd), ABC)
    if rnd.random() < 0.4:
        loop = compile_pattern(rnd.choice(["a*", "(ab)*c", "b+a", "c(a|b)*"]), ABC)
        a = lub(a, loop)
    return a


def _random_interval(rnd: random.Random) -> Interval:
    points = [-INF, -3, -1, 0, 1, 2, 3, 5, 8, INF]
    lo, hi = sorted(rnd.sample(points, 2))
    if rnd.random() < 0.2:
        hi = lo
    if lo == INF or hi == -INF:
        return I(0, 0)
    return I(lo, hi)


def test_criterion_09_substring_depth(capsys):
    with criterion(capsys, 9, "substring recursion depth <= 3 on 1000 inputs"):
        rnd = random.Random(9)
        worst = 0
        for _ in range(1000):
            _, depth = ss_abs_traced(_random_automaton(rnd), _random_interval(rnd), _random_interval(rnd))
            worst = max(worst, depth)
        assert worst <= 3


def test_criterion_10_completeness(capsys):
    with criterion(capsys, 10, "substring/charAt/concat exact on 300 finite automata"):
        rnd = random.Random(10)
        for _ in range(300):
            L = random_language(rnd)
            a = min_of(L, ABC)
            (i0, i1), (j0, j1) = random_bound_pair(rnd), random_bound_pair(rnd)
            want = {ref_ss(w, i, j) for w in L for i in range(i0, i1 + 1) for j in range(j0, j1 + 1)}
            assert enumerate_words(ss_abs(a, I(i0, i1), I(j0, j1))) == want
            want = {ref_ca(w, i) for w in L for i in range(i0, i1 + 1)}
            assert enumerate_words(ca_abs(a, I(i0, i1))) == want
            M = random_language(rnd)
            want = {x + y for x in L for y in M}
            assert enumerate_words(cc_abs(a, min_of(M, ABC))) == want


POOL_OPS = ["+", "-", "*", "/", "<", ">", "==", "&&", "||"]


def _concrete(op, a, b):
    if op == "+":
        return c_plus(a, b)
    if op in "-*/":
        return c_arith(op, a, b)
    if op in "<>":
        return c_cmp(op, a, b)
    if op == "==":
        return c_eq(a, b)
    return c_logic(op, a, b)


def _abstract(op, a, b):
    if op == "+":
        return abs_plus(a, b)
    if op in "-*/":
        return abs_num(op, a, b)
    if op in "<>":
        return abs_cmp(op, a, b)
    if op == "==":
        return abs_eq(a, b)
    return abs_logic(op, a, b)


def _check_string_soundness(rnd: random.Random) -> None:
    for _ in range(300):
        L = random_language(rnd)
        a = min_of(L, ABC)
        got = le_abs(a)
        assert all(len(w) in got for w in L)
        M = random_language(rnd, max_words=3, max_len=3)
        got = io_abs(a, min_of(M, ABC))
        assert all(ref_io(w, t) in got for w in L for t in M)


def _check_conversions(rnd: random.Random) -> None:
    for _ in range(300):
        vs = rnd.sample(CONCRETE_POOL, rnd.randint(1, 3))
        a = alpha_all(vs)
        for v in vs:
            assert accepts(to_str_abs(a), ref_to_str(v))
            n, ref = to_int_abs(a), ref_to_int(v)
            assert n.nan if ref is NAN else ref in n.interval
            assert ref_to_bool(v) in to_bool_abs(a)
    for lo, hi in [(-INF, -5), (-INF, 0), (-INF, 7), (-7, INF), (0, INF), (5, INF), (-INF, INF), (-40, 1234)]:
        d = interval_to_dfa(I(lo, hi))
        for _ in range(50):
            k = rnd.randint(max(lo, -10_000), min(hi, 10_000))
            assert accepts(d, str(k))
    for _ in range(100):
        words = rnd.sample(["0", "7", "-12", "+3", "007", "99", "x", "1a", "", "-0"], rnd.randint(1, 4))
        got = dfa_to_interval(min_of(words))
        for w in words:
            ref = ref_to_int(w)
            assert got.nan if ref is NAN else ref in got.interval


def _check_operators(rnd: random.Random) -> None:
    for _ in range(400):
        xs = [random_concrete(rnd) for _ in range(rnd.randint(1, 3))]
        ys = [random_concrete(rnd) for _ in range(rnd.randint(1, 3))]
        op = rnd.choice(POOL_OPS)
        got = _abstract(op, alpha_all(xs), alpha_all(ys))
        for x, y in itertools.product(xs, ys):
            assert contains(got, _concrete(op, x, y)), (x, op, y)
        verdict = abs_eq(alpha_all(xs), alpha_all(ys)).bool
        pairs = {c_eq(x, y) for x, y in itertools.product(xs, ys)}
        assert pairs <= verdict
        not_x = abs_logic("!", alpha_all(xs))
        assert all(contains(not_x, not ref_to_bool(x)) for x in xs)


def _check_programs(rnd: random.Random) -> int:
    checked = 0
    for _ in range(500):
        src = ProgramGen(rnd).program(rnd.randint(1, 5))
        inits = [{n: random_concrete(rnd) for n in INPUTS} for _ in range(3)]
        problems = check_program_soundness(src, inits)
        assert problems == [], (src, problems)
        checked += 1
    return checked


def test_criterion_11_soundness(capsys):
    with criterion(capsys, 11, "soundness of length, indexOf, conversions, operators, 500 programs"):
        rnd = random.Random(11)
        _check_string_soundness(rnd)
        _check_conversions(rnd)
        _check_operators(rnd)
        assert _check_programs(rnd) >= 500
