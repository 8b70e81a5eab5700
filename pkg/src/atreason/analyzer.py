"""Static characterizations of action domains.

Three families of checks are offered:

* normality, a syntactic condition that guarantees a model exists;
* a sufficient condition for monotonicity with respect to added initial
  propositions (AT0 only);
* temporal definiteness: once a fluent value is entailed it stays
  two-valued under every continuation.

The sufficient conditions are exactly that.  A negative verdict only
says the condition failed, not that the property fails, and every
negative verdict carries a witness that can be replayed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .asp import is_locally_stratified, positive_form
from .domain import (
    Causal,
    DomainDescription,
    Effect,
    FluentExpr,
    Initial,
    Observation,
    ValueQuery,
    fe,
)
from .plp import reducts
from .reasoner import NoModel, Reasoner, action_strings


def _names(exprs):
    return sorted(exprs)


@dataclass(frozen=True)
class FluentSets:
    """Fluent names grouped by the kind and sign of the propositions mentioning them."""

    pos_initial: frozenset = frozenset()
    neg_initial: frozenset = frozenset()
    pos_effect: frozenset = frozenset()
    neg_effect: frozenset = frozenset()
    pos_caused: frozenset = frozenset()
    neg_caused: frozenset = frozenset()
    pos_observe: frozenset = frozenset()
    neg_observe: frozenset = frozenset()
    by_string: dict = field(default_factory=dict)

    def to_json(self):
        out = {
            "F+Initial": _names(self.pos_initial),
            "F-Initial": _names(self.neg_initial),
            "F+Effect": _names(self.pos_effect),
            "F-Effect": _names(self.neg_effect),
            "F+Caused": _names(self.pos_caused),
            "F-Caused": _names(self.neg_caused),
            "F+Observe": _names(self.pos_observe),
            "F-Observe": _names(self.neg_observe),
        }
        out["observed_after"] = {
            ",".join(k) or "initially": {"F+": _names(p), "F-": _names(n)}
            for k, (p, n) in sorted(self.by_string.items())
        }
        return out


def fluent_sets(d: DomainDescription) -> FluentSets:
    def split(exprs):
        exprs = list(exprs)
        return (frozenset(x.fluent for x in exprs if not x.negated),
                frozenset(x.fluent for x in exprs if x.negated))

    pi, ni = split(p.literal for p in d.of_kind("initial"))
    # AT2 effect sets cover both normal and abnormal effects
    pe, ne = split(p.effect for p in d.of_kind("effect"))
    pc, nc = split(p.effect for p in d.of_kind("causal"))
    obs = d.of_kind("observation")
    po, no = split(p.effect for p in obs)
    by = {}
    for key in sorted({p.actions for p in obs}):
        by[key] = split(p.effect for p in obs if p.actions == key)
    return FluentSets(pi, ni, pe, ne, pc, nc, po, no, by)


def mentioned(d: DomainDescription) -> frozenset:
    """The union of fluent expressions used by mutual exclusion.

    For AT1 and AT2 the preconditions of effect propositions are added:
    explanation rules can derive them, so they may hold without any
    observation, effect or causal proposition asserting them.
    """
    fs = fluent_sets(d)
    if d.level == "AT0":
        pos = fs.pos_initial | fs.pos_effect | fs.pos_caused
        neg = fs.neg_initial | fs.neg_effect | fs.neg_caused
    else:
        pos = fs.pos_observe | fs.pos_effect | fs.pos_caused
        neg = fs.neg_observe | fs.neg_effect | fs.neg_caused
    out = [FluentExpr(f) for f in pos] + [FluentExpr(f, True) for f in neg]
    if d.level != "AT0":
        out += [x for p in d.of_kind("effect") for x in p.pre]
    return frozenset(out)


def mutually_exclusive(d: DomainDescription, l1, l2) -> bool:
    if isinstance(l1, str):
        l1 = fe(l1)
    if isinstance(l2, str):
        l2 = fe(l2)
    u = mentioned(d)
    return not (l1 in u and l2 in u)


# -- proposition parts

def pre(p) -> tuple:
    return tuple(getattr(p, "pre", ()))


def default(p) -> tuple:
    return tuple(getattr(p, "absent", ()))


def eff(p):
    return p.literal if isinstance(p, Initial) else p.effect


@dataclass(frozen=True)
class ComplementaryPair:
    first: str
    second: str
    case: str

    def to_json(self):
        return {"pair": [self.first, self.second], "case": self.case}


def _fixed_vs_rule(p, q) -> bool:
    """Does a fixed fact p (initial or observation) meet rule q at the same situation?"""
    if isinstance(q, Causal):
        return True
    # effects only apply after their action
    return isinstance(p, Observation) and bool(p.actions) and p.actions[-1] == q.action


def complementary_pairs(d: DomainDescription, extended=True) -> list:
    """Unordered proposition pairs with complementary effects, by case.

    Cases i to iv follow the usual analysis over causal and effect
    propositions.  With ``extended`` an initial or observation proposition
    paired with a causal proposition, or with an effect of the last action
    of its string, is reported as case v: such facts can clash with a rule
    just as two rules can.
    """
    kinds = (Causal, Effect, Initial, Observation) if extended else (Causal, Effect)
    props = [p for p in d.propositions if isinstance(p, kinds)]
    out = []
    for p, q in itertools.combinations(props, 2):
        if eff(p) != eff(q).complement():
            continue
        fixed = [x for x in (p, q) if isinstance(x, (Initial, Observation))]
        case = None
        if fixed:
            if len(fixed) == 1:
                other = q if fixed[0] is p else p
                if _fixed_vs_rule(fixed[0], other):
                    case = "v"
        elif isinstance(p, Causal) and isinstance(q, Causal):
            case = "i"
        elif isinstance(p, Causal) or isinstance(q, Causal):
            case = "ii"
        elif p.action == q.action:
            if p.mode == "abnormal" and q.mode == "abnormal":
                case = "iv"
            elif p.mode != "abnormal" and q.mode != "abnormal":
                case = "iii"
        if case:
            out.append(ComplementaryPair(p.label, q.label, case))
    return out


@dataclass(frozen=True)
class Failure:
    condition: str
    labels: tuple
    detail: str

    def to_json(self):
        return {"condition": self.condition, "labels": list(self.labels), "detail": self.detail}


@dataclass(frozen=True)
class Verdict:
    holds: bool
    failures: tuple = ()
    note: str = ""

    def __bool__(self):
        return self.holds

    def to_json(self):
        return {"holds": self.holds, "failures": [f.to_json() for f in self.failures], "note": self.note}


NORMAL_NOTE = {
    "AT0": "normal AT0 domain descriptions always have a model",
    "AT1": "normality indicates a model exists; backward persistence and explanation rules "
           "admit rare exceptions, so see the consistent field",
}
NORMAL_NOTE["AT2"] = NORMAL_NOTE["AT1"]


def is_normal(d: DomainDescription) -> Verdict:
    fs = fluent_sets(d)
    fails = []
    # (i) no fluent is given both values at the same point
    if d.level == "AT0":
        for f in sorted(fs.pos_initial & fs.neg_initial):
            labels = tuple(p.label for p in d.of_kind("initial") if p.literal.fluent == f)
            fails.append(Failure("i", labels, f"{f} is initially both true and false"))
    else:
        for key, (p, n) in sorted(fs.by_string.items()):
            for f in sorted(p & n):
                labels = tuple(o.label for o in d.of_kind("observation")
                               if o.actions == key and o.effect.fluent == f)
                where = "initially" if not key else "after " + ", ".join(key)
                fails.append(Failure("i", labels, f"{f} is observed both true and false {where}"))
    # (ii) self pairs included
    kinds = (Causal,) if d.level == "AT0" else (Causal, Observation)
    props = [p for p in d.propositions if isinstance(p, kinds)]
    for p in props:
        if eff(p).complement() in pre(p):
            fails.append(Failure("ii", (p.label,), f"the complement of {eff(p)} is a precondition"))
    for p in props:
        for q in props:
            if eff(q) in default(p):
                fails.append(Failure("ii", (p.label, q.label),
                                     f"{eff(q)} is in the absence part of {p.label}"))
    # (iii) complementary pairs need mutually exclusive preconditions
    u = mentioned(d)
    for cp in complementary_pairs(d):
        p, q = d.by_label(cp.first), d.by_label(cp.second)
        guarded = any(not (a in u and b in u) for a in pre(p) for b in pre(q))
        if not guarded:
            fails.append(Failure("iii", (cp.first, cp.second),
                                 f"complementary pair (case {cp.case}) without mutually exclusive preconditions"))
    # (iv) an abnormality must not be triggered by the very effect it cancels
    for c in d.of_kind("abnormal"):
        for e in d.of_kind("effect", "normal"):
            if e.action == c.action and e.effect in c.after:
                fails.append(Failure("iv", (c.label, e.label),
                                     f"{e.effect} after {c.action} both follows from {e.label} and makes it abnormal"))
        for e in d.of_kind("effect", "abnormal"):
            if e.action == c.action and e.effect.complement() in c.after:
                fails.append(Failure("iv", (c.label, e.label),
                                     f"{e.label} undoes {e.effect.complement()}, the condition that enables it"))
            if e.action == c.action and e.effect in c.before:
                fails.append(Failure("iv", (c.label, e.label),
                                     f"{e.label} blocks the backward persistence of {e.effect}, "
                                     f"the condition that enables it"))
    return Verdict(not fails, tuple(fails), NORMAL_NOTE[d.level])


MONOTONIC_NOTE = "sufficient only: adding initial propositions never retracts an entailment"


def o_monotonic_sufficient(d: DomainDescription) -> Verdict:
    if d.level != "AT0":
        raise ValueError("the monotonicity condition is defined for AT0 domains only")
    fs = fluent_sets(d)
    fails = []
    for p in d.of_kind("causal"):
        if p.absent:
            fails.append(Failure("i", (p.label,), "causal proposition has an absence part"))
    pos = fs.pos_effect | fs.pos_caused
    neg = fs.neg_effect | fs.neg_caused
    for f in sorted(fs.pos_initial & neg):
        fails.append(Failure("ii", (), f"{f} is initially true and made false"))
    for f in sorted(fs.neg_initial & pos):
        fails.append(Failure("ii", (), f"{f} is initially false and made true"))
    for f in sorted(pos & neg):
        fails.append(Failure("ii", (), f"{f} is made both true and false"))
    return Verdict(not fails, tuple(fails), MONOTONIC_NOTE)


# -- temporal definiteness

DEFINITE_UNIQUE = "definite-by-unique-answer-set"
DEFINITE_STRATIFIED = "definite-by-stratification"
INDEFINITE = "indefinite"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class Definiteness:
    verdict: str
    depth: int
    witness: tuple | None = None  # (literal, prefix, extension)

    @property
    def definite(self):
        return self.verdict in (DEFINITE_UNIQUE, DEFINITE_STRATIFIED)

    def to_json(self):
        w = None
        if self.witness:
            l, a, b = self.witness
            w = {"literal": str(l), "entailed_after": list(a), "unknown_after": list(b)}
        return {"verdict": self.verdict, "depth": self.depth, "witness": w}


def indefinite_witness(r: Reasoner):
    """First (L, prefix, extension) with L entailed after prefix and unknown after extension."""
    strings = action_strings(r.domain.actions, r.depth)
    values = {}
    for a in strings:
        for f in r.domain.fluents:
            values[a, f] = r.value(ValueQuery(FluentExpr(f), a))
    for a in strings:
        for f in r.domain.fluents:
            v = values[a, f]
            if v == "unknown":
                continue
            lit = FluentExpr(f, v == "false")
            for b in strings:
                if len(b) > len(a) and b[:len(a)] == a and values[b, f] == "unknown":
                    return lit, a, b
    return None


def temporal_definiteness(d: DomainDescription, depth: int = 1, reasoner=None) -> Definiteness:
    """Check the two sufficient conditions, then search for a witness up to depth."""
    r = reasoner or Reasoner(d, depth)
    r.require_defined()
    if len(r.answer_sets) == 1:
        return Definiteness(DEFINITE_UNIQUE, r.depth)
    reds = reducts(r.engine)
    if len(reds) == 1:
        prog, _ = positive_form(reds[0].program)
        if is_locally_stratified(prog).ok:
            return Definiteness(DEFINITE_STRATIFIED, r.depth)
    w = indefinite_witness(r)
    if w:
        return Definiteness(INDEFINITE, r.depth, w)
    return Definiteness(UNKNOWN, r.depth)


def replay_witness(d: DomainDescription, w, depth=None) -> bool:
    """True when the witness still shows an entailed value becoming unknown."""
    lit, a, b = w
    r = Reasoner(d, max(depth or 0, len(b)))
    return r.entails(ValueQuery(lit, tuple(a))) and r.value(ValueQuery(lit, tuple(b))) == "unknown"


# -- report

@dataclass(frozen=True)
class AnalysisReport:
    domain: str
    level: str
    fluent_sets: FluentSets
    complementary: tuple
    normal: Verdict
    o_monotonic: Verdict | None
    consistent: bool
    definiteness: Definiteness | None

    def to_json(self):
        return {
            "domain": self.domain,
            "level": self.level,
            "fluent_sets": self.fluent_sets.to_json(),
            "complementary_pairs": [c.to_json() for c in self.complementary],
            "normal": self.normal.to_json(),
            "o_monotonic": None if self.o_monotonic is None else self.o_monotonic.to_json(),
            "consistent": self.consistent,
            "temporal_definiteness": None if self.definiteness is None else self.definiteness.to_json(),
        }

    def text(self) -> str:
        lines = [f"domain {self.domain} ({self.level})"]
        lines.append("normal: " + ("yes" if self.normal else "no"))
        for f in self.normal.failures:
            lines.append(f"  ({f.condition}) {', '.join(f.labels)}: {f.detail}")
        if self.o_monotonic is not None:
            lines.append("O-monotonic (sufficient condition): " + ("yes" if self.o_monotonic else "no"))
            for f in self.o_monotonic.failures:
                lines.append(f"  ({f.condition}) {', '.join(f.labels) or '-'}: {f.detail}")
        lines.append("consistent: " + ("yes" if self.consistent else "no"))
        t = self.definiteness
        if t is not None:
            lines.append(f"temporal definiteness (depth {t.depth}): {t.verdict}")
            if t.witness:
                l, a, b = t.witness
                where = ("after " + ", ".join(a)) if a else "initially"
                lines.append(f"  {l} holds {where} but is unknown after {', '.join(b)}")
        return "\n".join(lines)


def analyze(d: DomainDescription, depth: int = 1) -> AnalysisReport:
    mono = o_monotonic_sufficient(d) if d.level == "AT0" else None
    try:
        r = Reasoner(d, depth)
        r.require_defined()
        consistent = True
    except NoModel:
        consistent = False
    tdef = temporal_definiteness(d, depth, r) if consistent else None
    return AnalysisReport(d.name, d.level, fluent_sets(d), tuple(complementary_pairs(d)),
                          is_normal(d), mono, consistent, tdef)
