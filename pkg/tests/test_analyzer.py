import pytest

from atreason.analyzer import (
    DEFINITE_UNIQUE,
    INDEFINITE,
    UNKNOWN,
    analyze,
    complementary_pairs,
    fluent_sets,
    is_normal,
    mentioned,
    mutually_exclusive,
    o_monotonic_sufficient,
    replay_witness,
    temporal_definiteness,
)
from atreason.domain import fe, parse_domain
from atreason.reasoner import Reasoner

from conftest import domain


def dom(body, level="AT0", fluents="F, G, H", actions="A, B"):
    return parse_domain(f"domain T\nlevel {level}\nfluents {fluents}\nactions {actions}\n" + body)


def conditions(v):
    return sorted({f.condition for f in v.failures})


def test_fluent_sets_switch_power():
    fs = fluent_sets(domain("switch_power"))
    assert fs.pos_initial == {"On", "Power", "Switch"}
    assert fs.neg_effect == {"Power"}
    assert fs.pos_caused == {"On"} and fs.neg_caused == {"On"}
    js = fs.to_json()
    assert js["F-Effect"] == ["Power"] and js["observed_after"] == {}


def test_fluent_sets_by_string():
    fs = fluent_sets(domain("shooting1"))
    assert fs.by_string[()] == (frozenset({"Alive"}), frozenset({"Loaded"}))
    assert fs.to_json()["observed_after"]["Shoot,Wait"] == {"F+": [], "F-": ["Alive"]}


def test_mutual_exclusion():
    d = domain("switch_power")
    assert not mutually_exclusive(d, "On", "-On")
    assert mutually_exclusive(d, "Switch", "-Switch")
    assert fe("-Power") in mentioned(d)


def test_mentioned_includes_effect_preconditions_above_at0():
    assert fe("HasCard") in mentioned(domain("door"))
    assert fe("G") not in mentioned(dom("A causes F if G\n"))
    assert fe("G") in mentioned(dom("A causes F if G\n", "AT1"))


def test_complementary_cases():
    d = dom("c1: F is caused if G\nc2: -F is caused if H\ne1: A causes F\ne2: A causes -F\n"
            "e3: B causes -F\ni1: initially -F\n")
    got = {(c.first, c.second): c.case for c in complementary_pairs(d)}
    assert got[("c1", "c2")] == "i"
    assert got[("c1", "e2")] == "ii" and got[("c2", "e1")] == "ii"
    assert got[("e1", "e2")] == "iii"
    assert ("e2", "e3") not in got and ("e1", "e3") not in got
    assert got[("c1", "i1")] == "v"
    assert ("e1", "i1") not in got
    assert all(c.case != "v" for c in complementary_pairs(d, extended=False))


def test_complementary_abnormal_case():
    d = dom("e1: A abnormally causes F\ne2: A abnormally causes -F\ne3: A normally causes -F\n", "AT2")
    got = {(c.first, c.second): c.case for c in complementary_pairs(d)}
    assert got == {("e1", "e2"): "iv"}


def test_observation_vs_effect_of_last_action():
    d = dom("o1: -F is observed after B, A\ne1: A causes F\ne2: B causes F\n", "AT1")
    got = {(c.first, c.second): c.case for c in complementary_pairs(d)}
    assert got == {("o1", "e1"): "v"}


def test_normal_simple():
    d = dom("initially F\nA causes G if F\nB causes -G if -F\n")
    v = is_normal(d)
    assert v and v.failures == ()
    assert "always have a model" in v.note


def test_condition_i():
    assert conditions(is_normal(dom("initially F\ninitially -F\n"))) == ["i"]
    d = dom("F is observed after A\n-F is observed after A\nF is observed after B\n", "AT1")
    (f,) = is_normal(d).failures
    assert f.condition == "i" and "after A" in f.detail


def test_condition_ii():
    assert conditions(is_normal(dom("F is caused if -F\n"))) == ["ii"]
    assert conditions(is_normal(dom("c1: F is caused with absence G\nc2: G is caused if H\n"))) == ["ii"]


def test_condition_iii_guarded():
    guarded = dom("initially H\nA causes F if H\nA causes -F if -H\n")
    assert is_normal(guarded)
    clash = dom("initially H\ninitially -H\nA causes F if H\nA causes -F if -H\n")
    assert "iii" in conditions(is_normal(clash))


def test_condition_iv():
    d = dom("e1: A normally causes -F if G\na1: A is abnormal if after -F\n", "AT2")
    assert conditions(is_normal(d)) == ["iv"]
    d = dom("e1: A abnormally causes F\na1: A is abnormal if after -F\n", "AT2")
    assert conditions(is_normal(d)) == ["iv"]
    d = dom("e1: A abnormally causes F\na1: A is abnormal if before F\n", "AT2")
    assert conditions(is_normal(d)) == ["iv"]


def test_bundled_normality():
    for name in ("shooting1", "shooting2", "door"):
        assert is_normal(domain(name)), name
    for name in ("switch_power", "fig1", "shooting3"):
        assert not is_normal(domain(name)), name


# Normality is sufficient for AT0.  For AT1 the backward persistence and
# explanation rules can still close off every model.  These domains pin
# that limitation.
LIMITS = [
    "initially -F4 is observed\nA1 causes F3 if -F1\n-F1 is caused if F3\n-F1 is observed after A1\n",
    "A1 causes F2 if F3\nF3 is caused if F2\ninitially -F2 is observed\nF3 is observed after A1\nA2 causes F3\n",
]


@pytest.mark.parametrize("body", LIMITS)
def test_normal_yet_inconsistent_at1(body):
    d = dom(body, "AT1", "F1, F2, F3, F4", "A1, A2")
    assert is_normal(d)
    assert not Reasoner(d, 1).defined
    assert not analyze(d).consistent


def test_o_monotonic():
    good = dom("initially F\nA causes G if F\nG is caused if H\n")
    assert o_monotonic_sufficient(good)
    assert conditions(o_monotonic_sufficient(dom("F is caused with absence G\n"))) == ["i"]
    assert conditions(o_monotonic_sufficient(dom("initially F\nA causes -F\n"))) == ["ii"]
    assert conditions(o_monotonic_sufficient(dom("A causes F\nB causes -F\n"))) == ["ii"]
    with pytest.raises(ValueError):
        o_monotonic_sufficient(domain("door"))


def test_definiteness_verdicts():
    assert temporal_definiteness(domain("switch_power")).verdict == DEFINITE_UNIQUE
    assert temporal_definiteness(domain("shooting3_pref")).verdict == DEFINITE_UNIQUE
    assert temporal_definiteness(domain("fig1")).verdict == UNKNOWN


def test_definiteness_witness_replays():
    d = domain("shooting3")
    t = temporal_definiteness(d)
    assert t.verdict == INDEFINITE and not t.definite
    assert t.witness == (fe("Fly"), (), ("Shoot",))
    assert replay_witness(d, t.witness)
    assert t.to_json()["witness"] == {"literal": "Fly", "entailed_after": [], "unknown_after": ["Shoot"]}


def test_shooting1_indefinite():
    t = temporal_definiteness(domain("shooting1"), 2)
    assert t.verdict == INDEFINITE
    assert replay_witness(domain("shooting1"), t.witness, 2)


def test_report():
    rep = analyze(domain("switch_power"))
    js = rep.to_json()
    assert js["consistent"] and js["temporal_definiteness"]["verdict"] == DEFINITE_UNIQUE
    assert js["o_monotonic"]["holds"] is False
    assert {"pair": ["c1", "c2"], "case": "i"} in js["complementary_pairs"]
    assert "normal: no" in rep.text()
    assert analyze(domain("door")).o_monotonic is None


def test_report_inconsistent_domain():
    rep = analyze(dom("initially F\ninitially -F\n"))
    assert not rep.consistent and rep.definiteness is None
    assert rep.to_json()["temporal_definiteness"] is None
