"""Randomized checks of the structural results, driven by seeded generators."""

import random
from dataclasses import replace

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from atreason.analyzer import indefinite_witness
from atreason.asp import answer_sets, is_locally_stratified, positive_form
from atreason.domain import Observation, ValueQuery, fe, parse_domain
from atreason.logic import Const, Literal
from atreason.plp import Engine, reducts
from atreason.reasoner import Reasoner, action_strings
from atreason.translate import result, situation

from generators import random_domain, random_plp, random_program

SETTINGS = settings(max_examples=40, deadline=None, derandomize=True, suppress_health_check=[HealthCheck.too_slow])
seeds = st.integers(0, 10**6)


def holds(f, sit, neg=False):
    return Literal("Holds", (Const(f), sit), neg)


# -- change needs a cause


@SETTINGS
@given(seeds)
def test_at0_change_has_cause(seed):
    d = random_domain(random.Random(seed), "AT0")
    r = Reasoner(d, 1)
    if not r.defined:
        return
    for p in action_strings(d.actions, 0):
        s = situation(p)
        for a in d.actions:
            after = result(a, s)
            for f in d.fluents:
                for neg, sg in ((False, "+"), (True, "-")):
                    if r.program_entails(holds(f, after, neg)) and not r.program_entails(holds(f, s, neg)):
                        causes = [Literal(n + sg, (Const(f), after)) for n in ("Effect", "Caused")]
                        assert any(r.program_entails(c) for c in causes)


def theorem_shape(d):
    """Observations after a nonempty string, each defeasible by its complement."""
    props = []
    for p in d.propositions:
        if isinstance(p, Observation):
            p = replace(p, absent=(p.effect.complement(),), actions=p.actions or (d.actions[0],))
        props.append(p)
    return replace(d, propositions=tuple(props))


@SETTINGS
@given(seeds, st.sampled_from(["AT1", "AT2"]))
def test_observed_change_has_cause(seed, level):
    d = theorem_shape(random_domain(random.Random(seed), level))
    r = Reasoner(d, 2)
    if not r.defined:
        return
    names = ["Effect", "Caused"] + (["AbEffect"] if level == "AT2" else [])
    for p in action_strings(d.actions, 1):
        for a in d.actions:
            for f in d.fluents:
                for neg, sg in ((False, "+"), (True, "-")):
                    now = ValueQuery(fe(f) if not neg else fe("-" + f), p + (a,))
                    before = ValueQuery(now.literal.complement(), p)
                    if r.entails(before) and r.entails(now):
                        after = result(a, situation(p))
                        assert any(r.program_entails(Literal(n + sg, (Const(f), after))) for n in names)


# -- a unique answer set makes a domain temporally definite


@SETTINGS
@given(seeds, st.sampled_from(["AT0", "AT1", "AT2"]))
def test_unique_answer_set_is_definite(seed, level):
    d = random_domain(random.Random(seed), level)
    r = Reasoner(d, 2)
    if r.defined and len(r.answer_sets) == 1:
        assert indefinite_witness(r) is None


# -- entailments up to depth 1 do not depend on the grounding horizon (AT0)


def test_contradiction_beyond_horizon():
    d = parse_domain("domain H\nfluents F1, F2\nactions A1, A2\n"
                     "A2 causes F1\nA2 causes -F1 if F2\nA1 causes F2\n")
    assert Reasoner(d, 1).defined
    assert not Reasoner(d, 2).defined


@SETTINGS
@given(seeds)
def test_at0_horizon_stable(seed):
    d = random_domain(random.Random(seed), "AT0", n_props=4)
    r1, r2 = Reasoner(d, 1), Reasoner(d, 2)
    # a deeper grounding can reach a contradiction, never escape one
    assert r1.defined or not r2.defined
    if not r2.defined:
        return
    for p in action_strings(d.actions, 1):
        for f in d.fluents:
            q = ValueQuery(fe(f), p)
            assert r1.value(q) == r2.value(q)


HORIZON = [
    # a later observation makes the successor set depend on deeper situations
    ("initially -F2 is observed\nF2 is observed after A1\n", "F2 after A1", "true", "unknown"),
    # explanations at deeper situations
    ("A1 causes F2\nA1 causes F2 if F1\ninitially -F1 is observed\n", "F1 after A1", "false", "true"),
]


@pytest.mark.parametrize("body,query,shallow,deep", HORIZON)
def test_at1_horizon_dependence(body, query, shallow, deep):
    d = parse_domain("domain H\nlevel AT1\nfluents F1, F2\nactions A1, A2\n" + body)
    assert Reasoner(d, 1).value(query) == shallow
    assert Reasoner(d, 2).value(query) == deep


# -- programs


@SETTINGS
@given(seeds)
def test_positive_form_preserves_consistent_answer_sets(seed):
    p = random_program(random.Random(seed), n_atoms=3, n_rules=6)
    pp, mapping = positive_form(p)
    orig = {a.literals for a in answer_sets(p) if not a.inconsistent}
    back = set()
    for a in answer_sets(pp):
        lits = frozenset(mapping.get(x, x) for x in a.literals)
        if not any(x.complement() in lits for x in lits):
            back.add(lits)
    assert orig == back


@SETTINGS
@given(seeds)
def test_stratified_positive_form_unique(seed):
    p = random_program(random.Random(seed), n_atoms=3, n_rules=5)
    pp, _ = positive_form(p)
    if is_locally_stratified(pp).ok:
        assert len(answer_sets(pp)) == 1


@SETTINGS
@given(seeds)
def test_elimination_filters_answer_sets(seed):
    plp = random_plp(random.Random(seed))
    eng = Engine(plp)
    full = {a.literals for a in eng.answer_sets_of(eng.full)}
    for r in reducts(eng):
        mask = sum(1 << eng.names.index(n) for n in r.rules)
        assert {a.literals for a in eng.answer_sets_of(mask)} <= full


@SETTINGS
@given(seeds)
def test_translated_domains_strategies_agree(seed):
    d = random_domain(random.Random(seed), "AT0", n_fluents=2, n_actions=1, n_props=3)
    r = Reasoner(d, 1)
    if bin(r.engine.cand).count("1") <= 8:
        assert set(r.engine.reducts("exact")) == set(r.engine.reducts("stratified"))
