import random

import pytest

from atreason.asp import answer_sets
from atreason.logic import PLP, lit, ground_instantiate, parse_plp, parse_program
from atreason.plp import (
    Engine,
    NoAnswerSet,
    is_defeated,
    partition,
    plp_answer_sets,
    plp_entails,
    reducts,
    report,
    strategies_disagree,
    validate_trace,
)
from atreason.reasoner import Reasoner

import oracles
from conftest import domain, plp
from generators import random_plp


def ground(name):
    return ground_instantiate(plp(name))[0]


def texts(sets):
    return [a.text() for a in sets]


def test_tweety():
    g = ground("tweety")
    (r,) = reducts(g)
    assert r.trace == (("N1(Tweety)",),)
    assert texts(plp_answer_sets(g)) == [["-Fly(Tweety)", "Bird(Tweety)", "Penguin(Tweety)"]]
    assert plp_entails(g, lit("-Fly(Tweety)"))


def test_p2_two_reducts():
    g = ground("p2")
    assert [r.rules for r in reducts(g)] == [("N1", "N2", "N3"), ("N1", "N3", "N4")]
    assert texts(plp_answer_sets(g)) == [["A", "B", "D"], ["A", "C", "D"]]


def test_p3_partition_and_answer():
    g = ground("p3")
    assert partition(g).strata == (frozenset({"N1", "N3"}), frozenset({"N2"}), frozenset({"N4"}))
    assert partition(g).stratum_of("N4") == 2
    assert texts(plp_answer_sets(g)) == [["B", "C"]]


def test_defeat():
    p = parse_program("N1: A <- not B.\nN2: B.")
    assert is_defeated(p.rule("N1"), p)
    assert not is_defeated(p.rule("N1"), parse_program("N2: C."))
    # a program without answer sets defeats nothing
    assert not is_defeated(p.rule("N1"), parse_program("N3: C <- not C."))


def test_unordered_program_keeps_all_rules():
    p = PLP(parse_program("N1: A <- not B.\nN2: B <- not A."))
    (r,) = reducts(p)
    assert len(r.rules) == 2 and r.trace == ()
    assert len(plp_answer_sets(p)) == 2


def test_no_answer_set_error():
    p = PLP(parse_program("N1: A <- not A."))
    assert plp_answer_sets(p) == []
    with pytest.raises(NoAnswerSet):
        plp_entails(p, lit("A"))


def test_engine_needs_ground():
    with pytest.raises(Exception):
        Engine(plp("tweety"))


def test_report_shape():
    rep = report(ground("p2"))
    assert rep["answer_sets"] == [["A", "B", "D"], ["A", "C", "D"]]
    assert rep["reducts"][0] == {"rules": ["N1", "N2", "N3"], "eliminated": [["N4"]]}


def test_lit_short_circuit():
    p = parse_plp("N1: A.\nN2: -A.\nN3: B <- not C.\nN4: C <- not B.\norder { N3 < N4. }")
    (a,) = plp_answer_sets(p)
    assert a.inconsistent


def test_strategies_agree_on_examples():
    for name in ("tweety", "p2", "p3"):
        assert not strategies_disagree(ground(name))


def test_traces_validate():
    for name in ("tweety", "p2", "p3"):
        g = ground(name)
        for r in reducts(g):
            assert validate_trace(g, r, check_final=True)


def test_bad_trace_rejected():
    g = ground("p3")
    (r,) = reducts(g)
    from atreason.plp import Reduct
    fake = Reduct(r.program, (("N2",),))
    assert not validate_trace(g, fake)


def test_shooting1_traces_are_exact():
    # both reducts of the depth-2 grounding survive exact re-checking of (a) and (b)
    r = Reasoner(domain("shooting1"), 2)
    rs = reducts(r.engine)
    assert len(rs) == 2
    assert all(validate_trace(r.engine, x) for x in rs)


@pytest.mark.parametrize("seed", range(120))
def test_reducts_match_oracle(seed):
    rng = random.Random(1000 + seed)
    p = random_plp(rng, rng.randint(2, 7))
    got = {frozenset(r.rules) for r in reducts(p, "exact")}
    assert got == oracles.reducts(p.rules, p.order)
    want = oracles.plp_answer_sets(p.rules, p.order)
    assert {(a.literals, a.inconsistent) for a in plp_answer_sets(p, "exact")} == want


@pytest.mark.parametrize("seed", range(80))
def test_answer_sets_are_program_answer_sets(seed):
    p = random_plp(random.Random(5000 + seed))
    base = {(a.literals, a.inconsistent) for a in answer_sets(p.program)}
    assert reducts(p)
    for a in plp_answer_sets(p):
        assert (a.literals, a.inconsistent) in base
