import json
import random
from pathlib import Path

import pytest

from oracles import INPUTS, ProgramGen, check_program_soundness, random_concrete
from strylus.analyzer import AbstractState, AnalysisConfig, Analyzer, analyze, s_leq, s_lub
from strylus.automata import Dfa, accepts, enumerate_words, glb, is_empty, lub, min_of
from strylus.alphabet import ASCII
from strylus.errors import ConfigError, PreconditionError
from strylus.interval import BOTTOM, Interval
from strylus.parser import load, parse
from strylus.pattern import compile_pattern
from strylus.render import result_to_json
from strylus.values import AbstractValue

PROGRAMS = Path(__file__).resolve().parent.parent / "programs"
V = AbstractValue


def a_star():
    return Dfa.from_transitions(ASCII, [(0, "a", 0)], 0, [0])


def test_expression_examples():
    a = Analyzer(load(""), AnalysisConfig())
    s = AbstractState({"s": V.of_str(lub(a_star(), min_of(["hello", "bc"]))), "v": V.of_str(min_of(["abc", "hello"]))})
    assert a.eval(load('z = "a" + "b";').root.stmts[0].value, s) == V.of_str(min_of(["ab"]))
    got = a.eval(load("z = s.substring(1, 3);").root.stmts[0].value, s)
    assert enumerate_words(got.str) == {"", "a", "aa", "el", "c"}
    assert a.eval(load("z = v.length;").root.stmts[0].value, s) == V.of_int(Interval(3, 5))


def test_branch_join():
    r = analyze(load((PROGRAMS / "branch.imp").read_text()))
    assert r.final_state().env["x"] == V(BOTTOM, frozenset({True}), min_of(["42"]), False)
    assert any("'y'" in d for d in r.diagnostics)


def test_loop_widens_to_star():
    r = analyze(load((PROGRAMS / "loop_a.imp").read_text()), AnalysisConfig(widen_n=1))
    assert r.final_state().env["str"].str == a_star()
    assert r.head_iterations["L3"] <= 4


def test_false_guard_loop():
    r = analyze(load('x = "a"; while (false) { x = 1; }'))
    body = r.program.root.stmts[1].body
    assert not r.pre.get(body.label, AbstractState.unreachable()).reachable
    assert r.final_state().env["x"] == V.of_str(min_of(["a"]))


def test_true_guard_loop_never_exits():
    r = analyze(load("n = 0; while (true) { n = n + 1; } m = 1;"))
    assert not r.final_state().reachable


def test_empty_program():
    r = analyze(load(""))
    assert r.pre["L1"] == AbstractState()
    assert r.final_state() == AbstractState()


def test_requires_desugared_program():
    with pytest.raises(PreconditionError):
        analyze(parse("x += 1;"))


def test_config_validation():
    with pytest.raises(ConfigError):
        AnalysisConfig(widen_n=0)
    with pytest.raises(ConfigError):
        AnalysisConfig(widen_delay=5, max_iters=6)


def test_budget_fallback_is_sound():
    # one iteration only: the loop cannot stabilize by itself
    cfg = AnalysisConfig(widen_delay=0, max_iters=2)
    r = analyze(load("i = 0; s = \"\"; while (i < 50) { i = i + 1; s = s + i; }"), cfg)
    s = r.final_state().env["s"]
    assert accepts(s.str, "12345")
    assert any("no fixpoint" in d for d in r.diagnostics)


def test_obfuscated_predicates():
    r = analyze(load((PROGRAMS / "obfuscated.imp").read_text()))
    (_, label, d) = r.eval_values()[0]
    assert label == r.program.evals["eval1"]
    assert not is_empty(glb(d.str, compile_pattern(r"[a-z]+=new ActiveXObject\(.*\)")))
    assert is_empty(glb(d.str, min_of(["eval"])))


def test_deterministic_json():
    src = (PROGRAMS / "obfuscated.imp").read_text()
    cfg = AnalysisConfig()
    one = json.dumps(result_to_json(analyze(load(src), cfg), cfg))
    two = json.dumps(result_to_json(analyze(load(src), cfg), cfg))
    assert one == two


def test_state_lattice():
    a = AbstractState({"x": V.of_int(Interval(0, 1))})
    b = AbstractState({"y": V.of_int(Interval(2, 2))})
    u = s_lub(a, b)
    assert s_leq(a, u) and s_leq(b, u) and not s_leq(u, a)
    assert s_lub(AbstractState.unreachable(), a) == a


@pytest.mark.parametrize("seed", range(6))
def test_fuzzed_programs_sound_and_terminating(seed):
    rnd = random.Random(1000 + seed)
    for _ in range(10):
        src = ProgramGen(rnd).program(rnd.randint(1, 5))
        inits = [{n: random_concrete(rnd) for n in INPUTS} for _ in range(3)]
        assert check_program_soundness(src, inits) == []


def test_loop_heads_increase():
    src = 'i = 0; s = ""; while (i < 100) { s = s + "ab"; i = i + 1; }'
    a = Analyzer(load(src), AnalysisConfig(widen_n=2))
    a.exec(a.program.root, AbstractState())
    (heads,) = a.head_history.values()
    assert len(heads) >= 3
    for x, y in zip(heads, heads[1:]):
        assert s_leq(x, y)
