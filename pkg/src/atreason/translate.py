"""Compile domain descriptions into prioritized logic programs.

Domain specific rules are named ``N1, N2, ...`` grouped by category
(initial or observation, causal, effect, explanation, abnormal) in
proposition order; the domain independent schemas follow.  Variables
``f``, ``a`` and ``s`` range over fluents, actions and situations.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .domain import DomainDescription, FluentExpr, validate_domain
from .logic import PLP, Const, Func, LogicError, Literal, Program, Rule, Var, close_order

S, A, F = Var("s"), Var("a"), Var("f")
S0 = Const("S0")


class TranslationError(LogicError):
    pass


def result(action, sit):
    if isinstance(action, str):
        action = Const(action)
    return Func("Result", (action, sit))


def situation(actions) -> object:
    """Situation term reached by performing ``actions`` from S0."""
    s = S0
    for a in actions:
        s = result(a, s)
    return s


def holds(x: FluentExpr | Var, sit, negated=None) -> Literal:
    if isinstance(x, FluentExpr):
        return Literal("Holds", (Const(x.fluent), sit), x.negated if negated is None else negated)
    return Literal("Holds", (x, sit), bool(negated))


def pred(name, x, sit, negated=False) -> Literal:
    arg = Const(x.fluent) if isinstance(x, FluentExpr) else x
    return Literal(name, (arg, sit), negated)


def sign(x: FluentExpr) -> str:
    return "-" if x.negated else "+"


@dataclass(frozen=True)
class TranslationResult:
    plp: PLP
    schema_map: dict
    independent_rules: tuple
    rule_class: dict
    domain: DomainDescription
    origin: dict = field(default_factory=dict)

    def rules_of(self, cls):
        return tuple(n for n, c in self.rule_class.items() if c == cls)

    def to_json(self):
        return {
            "schema_map": {k: list(v) for k, v in self.schema_map.items()},
            "independent_rules": list(self.independent_rules),
            "classes": {n: c for n, c in self.rule_class.items()},
        }


class _Builder:
    def __init__(self):
        self.rules = []
        self.cls = {}
        self.origin = {}
        self.schema_map = {}
        self.k = 0

    def add(self, head, pos=(), naf=(), cls=None, label=None, schema=None):
        self.k += 1
        name = f"N{self.k}"
        self.rules.append(Rule(name, head, tuple(pos), tuple(naf)))
        self.cls[name] = cls
        self.origin[name] = label if label is not None else schema
        if label is not None:
            self.schema_map.setdefault(label, []).append(name)
        return name


def _effect_head(p, sit, ab=False):
    base = "AbEffect" if ab else "Effect"
    return pred(base + sign(p.effect), p.effect, sit)


def _observation(b, p):
    sit = situation(p.actions)
    b.add(holds(p.effect, sit), [holds(x, sit) for x in p.pre], [holds(x, sit) for x in p.absent],
          "o", p.label)


def _causal(b, p):
    b.add(pred("Caused" + sign(p.effect), p.effect, S),
          [holds(x, S) for x in p.pre], [holds(x, S) for x in p.absent], "c", p.label)


def _explanation(b, d, p, normal_ab):
    """Effect identification plus minimal-precondition rules for p."""
    after = result(p.action, S)
    eff = _effect_head(p, after)
    naf = [holds(p.effect, S), pred("Caused" + sign(p.effect), p.effect, after)]
    if normal_ab:
        naf.append(Literal("Ab", (Const(p.action), S)))
    b.add(eff, [holds(p.effect, after)], naf, "ex", p.label)
    others = []
    for q in d.of_kind("effect"):
        if q is p or q.action != p.action or q.effect != p.effect or q.mode != p.mode:
            continue
        for x in q.pre:
            if x not in others and x not in p.pre:
                others.append(x)
    for x in p.pre:
        b.add(holds(x, S), [eff], [holds(x.complement(), S)] + [holds(y, S) for y in others],
              "ex", p.label)


def _independent(b, level):
    ind = []
    R = result(A, S)

    def add(head, pos, naf, cls, schema):
        ind.append(b.add(head, pos, naf, cls, schema=schema))

    add(holds(F, S, False), [pred("Caused+", F, S)], [], "c", "caused+")
    add(holds(F, S, True), [pred("Caused-", F, S)], [], "c", "caused-")
    add(holds(F, S, False), [pred("Effect+", F, S)], [], "eff", "effect+")
    add(holds(F, S, True), [pred("Effect-", F, S)], [], "eff", "effect-")
    ab = Literal("Ab", (A, S))
    if level == "AT2":
        add(ab.complement(), [], [ab], "eff", "not-ab")
        add(holds(F, S, False), [pred("AbEffect+", F, S)], [], "ab", "abeffect+")
        add(holds(F, S, True), [pred("AbEffect-", F, S)], [], "ab", "abeffect-")
    add(holds(F, R, False), [holds(F, S, False)], [holds(F, R, True)], "i", "inertia+")
    add(holds(F, R, True), [holds(F, S, True)], [holds(F, R, False)], "i", "inertia-")
    if level in ("AT1", "AT2"):
        for neg, sg in ((False, "+"), (True, "-")):
            naf = [holds(F, S, not neg), pred("Caused" + sg, F, R), pred("Effect" + sg, F, R)]
            if level == "AT2":
                naf.append(pred("AbEffect" + sg, F, R))
            add(holds(F, S, neg), [holds(F, R, neg)], naf, "i", "backward" + sg)
    return ind


CHAINS = {
    "AT0": [("c", "i")],
    "AT1": [("ex", "c", "i", "o")],
    "AT2": [("ex", "c", "i", "o"), ("eff", "c", "i", "o")],
}


def _order(cls, level):
    members = {}
    for n, c in cls.items():
        members.setdefault(c, []).append(n)
    pairs = set()
    for chain in CHAINS[level]:
        for i, hi in enumerate(chain):
            for lo in chain[i + 1:]:
                for a in members.get(hi, ()):
                    for b in members.get(lo, ()):
                        pairs.add((a, b))
    return pairs


def _check(d, level):
    if d.level != level:
        raise TranslationError(f"domain is {d.level}, expected {level}")
    diags = validate_domain(d)
    if diags:
        raise TranslationError("; ".join(map(str, diags)))


def _finish(b, d, ind, level, pairs=None) -> TranslationResult:
    pairs = _order(b.cls, level) if pairs is None else pairs
    plp = PLP(Program(tuple(b.rules)), frozenset(pairs))
    t = TranslationResult(plp, {k: tuple(v) for k, v in b.schema_map.items()}, tuple(ind),
                          dict(b.cls), d, dict(b.origin))
    return apply_preferences(t, d.of_kind("preference"))


def translate_at0(d: DomainDescription) -> TranslationResult:
    _check(d, "AT0")
    b = _Builder()
    for p in d.of_kind("initial"):
        b.add(holds(p.literal, S0), cls="init", label=p.label)
    for p in d.of_kind("causal"):
        _causal(b, p)
    for p in d.of_kind("effect"):
        b.add(_effect_head(p, result(p.action, S)), [holds(x, S) for x in p.pre], (), "effect", p.label)
    ind = _independent(b, "AT0")
    return _finish(b, d, ind, "AT0")


def translate_at1(d: DomainDescription) -> TranslationResult:
    _check(d, "AT1")
    b = _Builder()
    for p in d.of_kind("observation"):
        _observation(b, p)
    for p in d.of_kind("causal"):
        _causal(b, p)
    effects = d.of_kind("effect")
    for p in effects:
        b.add(_effect_head(p, result(p.action, S)), [holds(x, S) for x in p.pre], (), "effect", p.label)
    for p in effects:
        _explanation(b, d, p, False)
    ind = _independent(b, "AT1")
    return _finish(b, d, ind, "AT1")


def translate_at2(d: DomainDescription) -> TranslationResult:
    _check(d, "AT2")
    b = _Builder()
    for p in d.of_kind("observation"):
        _observation(b, p)
    for p in d.of_kind("causal"):
        _causal(b, p)
    normal = d.of_kind("effect", "normal")
    ab_not = lambda p: [Literal("Ab", (Const(p.action), S))]
    for p in normal:
        b.add(_effect_head(p, result(p.action, S)), [holds(x, S) for x in p.pre], ab_not(p), "eff", p.label)
    for p in normal:
        _explanation(b, d, p, True)
    for p in d.of_kind("effect", "abnormal"):
        b.add(_effect_head(p, result(p.action, S), ab=True),
              [holds(x, S) for x in p.pre] + [Literal("Ab", (Const(p.action), S))], (), "ab", p.label)
    for p in d.of_kind("abnormal"):
        after = result(p.action, S)
        b.add(Literal("Ab", (Const(p.action), S)),
              [holds(x, S) for x in p.before] + [holds(x, after) for x in p.after], (), "ab", p.label)
    ind = _independent(b, "AT2")
    return _finish(b, d, ind, "AT2")


def translate(d: DomainDescription) -> TranslationResult:
    return {"AT0": translate_at0, "AT1": translate_at1, "AT2": translate_at2}[d.level](d)


def apply_preferences(t: TranslationResult, prefs) -> TranslationResult:
    """Add ``rules(l1) < rules(l2)`` for each preference and re-close."""
    prefs = list(prefs)
    if not prefs:
        return t
    pairs = set(t.plp.order)
    for p in prefs:
        for ref in (p.preferred, p.other):
            if ref not in t.schema_map:
                raise TranslationError(f"preference {p.label} refers to unknown label {ref}")
            kind = t.domain.by_label(ref).kind
            if kind not in ("causal", "observation"):
                raise TranslationError(f"preference {p.label}: {ref} is a {kind} proposition")
        for a in t.schema_map[p.preferred]:
            for b in t.schema_map[p.other]:
                pairs.add((a, b))
    smap = dict(t.schema_map)
    for p in prefs:
        smap.setdefault(p.label, ())
    order = close_order(pairs)
    return replace(t, plp=PLP(t.plp.program, order), schema_map=smap)


# ------------------------------------------------------------ grounding

def situations(actions, depth):
    """All situation terms with at most ``depth`` actions, breadth first."""
    out = [S0]
    frontier = [S0]
    for _ in range(depth):
        frontier = [result(a, s) for s in frontier for a in actions]
        out.extend(frontier)
    return out


def ground(t: TranslationResult, depth: int):
    """Depth-bounded instantiation of a translated program."""
    from .logic import ground_instantiate

    d = t.domain
    universe = {
        "fluent": [Const(x) for x in d.fluents],
        "action": [Const(x) for x in d.actions],
        "situation": situations(d.actions, depth),
    }
    return ground_instantiate(t.plp, universe, depth)
