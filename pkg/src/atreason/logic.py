"""Terms, literals, rules, prioritized programs and their text format.

A program is a tuple of named rules.  A prioritized logic program (PLP)
adds a strict partial order on rule names where ``(a, b)`` in the order
means rule ``a`` is more preferred than rule ``b``.

Text format::

    % comment
    N1: Fly(x) <- Bird(x), not -Fly(x).
    N3: Bird(Tweety).
    order { N2 < N1. }

Identifiers starting with a lower-case letter and not followed by ``(``
are variables.  Variables whose name starts with ``s``, ``a`` or ``f``
are sorted (situation, action, fluent); every other variable ranges over
the whole Herbrand universe.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence


class LogicError(Exception):
    pass


class ParseError(LogicError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = f"{line}:{column}: " if line is not None else ""
        super().__init__(where + message)


class CycleInOrder(LogicError):
    def __init__(self, cycle):
        self.cycle = tuple(cycle)
        super().__init__("preference order has a cycle: " + " < ".join(self.cycle))


class NotWellFormed(LogicError):
    def __init__(self, witness, pair):
        self.witness = witness
        self.pair = pair
        super().__init__(f"rules {pair[0]} < {pair[1]} share the ground instance {witness}")


# ---------------------------------------------------------------- terms

SORTS = {"s": "situation", "a": "action", "f": "fluent"}


@dataclass(frozen=True, slots=True)
class Const:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True, slots=True)
class Var:
    name: str

    @property
    def sort(self):
        return SORTS.get(self.name[0])

    def __str__(self):
        return self.name


@dataclass(frozen=True, slots=True)
class Func:
    name: str
    args: tuple

    def __str__(self):
        return f"{self.name}({','.join(map(str, self.args))})"


def term_depth(t) -> int:
    if isinstance(t, Func):
        return 1 + max((term_depth(a) for a in t.args), default=0)
    return 0


def term_vars(t, out=None):
    out = set() if out is None else out
    if isinstance(t, Var):
        out.add(t)
    elif isinstance(t, Func):
        for a in t.args:
            term_vars(a, out)
    return out


def is_ground_term(t) -> bool:
    if isinstance(t, Var):
        return False
    if isinstance(t, Func):
        return all(is_ground_term(a) for a in t.args)
    return True


def substitute(t, theta):
    if isinstance(t, Var):
        return theta.get(t, t)
    if isinstance(t, Func):
        return Func(t.name, tuple(substitute(a, theta) for a in t.args))
    return t


# ------------------------------------------------------------- literals

@dataclass(frozen=True, slots=True)
class Literal:
    predicate: str
    args: tuple = ()
    negative: bool = False

    def complement(self) -> "Literal":
        return Literal(self.predicate, self.args, not self.negative)

    @property
    def atom(self) -> "Literal":
        return Literal(self.predicate, self.args) if self.negative else self

    def substitute(self, theta) -> "Literal":
        return Literal(self.predicate, tuple(substitute(a, theta) for a in self.args), self.negative)

    def variables(self):
        out = set()
        for a in self.args:
            term_vars(a, out)
        return out

    def is_ground(self) -> bool:
        return all(is_ground_term(a) for a in self.args)

    def depth(self) -> int:
        return max((term_depth(a) for a in self.args), default=0)

    def __str__(self):
        sign = "-" if self.negative else ""
        if not self.args:
            return sign + self.predicate
        return f"{sign}{self.predicate}({','.join(map(str, self.args))})"


def lit(text: str) -> Literal:
    """Parse a single literal, e.g. ``lit("-Holds(On,S0)")``."""
    p = _Parser(text)
    out = p.literal()
    p.skip()
    if p.pos != len(p.text):
        p.fail("trailing input after literal")
    return out


# ---------------------------------------------------------------- rules

@dataclass(frozen=True, slots=True)
class Rule:
    name: str
    head: Literal | None
    pos: tuple = ()
    naf: tuple = ()

    @property
    def is_constraint(self) -> bool:
        return self.head is None

    def literals(self):
        if self.head is not None:
            yield self.head
        yield from self.pos
        yield from self.naf

    def variables(self):
        out = set()
        for l in self.literals():
            out |= l.variables()
        return out

    def is_ground(self) -> bool:
        return all(l.is_ground() for l in self.literals())

    def substitute(self, theta, name=None) -> "Rule":
        return Rule(
            self.name if name is None else name,
            None if self.head is None else self.head.substitute(theta),
            tuple(l.substitute(theta) for l in self.pos),
            tuple(l.substitute(theta) for l in self.naf),
        )

    def content(self):
        """Name-free identity of the rule, bodies taken as sets."""
        return (self.head, frozenset(self.pos), frozenset(self.naf))

    def body_text(self) -> str:
        parts = [str(l) for l in self.pos] + ["not " + str(l) for l in self.naf]
        return ", ".join(parts)

    def __str__(self):
        head = "" if self.head is None else str(self.head)
        body = self.body_text()
        if not body:
            return f"{self.name}: {head}."
        if head:
            return f"{self.name}: {head} <- {body}."
        return f"{self.name}: <- {body}."


@dataclass(frozen=True)
class Program:
    rules: tuple

    def __post_init__(self):
        object.__setattr__(self, "rules", tuple(self.rules))
        seen = set()
        for r in self.rules:
            if r.name in seen:
                raise LogicError(f"duplicate rule name {r.name}")
            seen.add(r.name)

    def __iter__(self):
        return iter(self.rules)

    def __len__(self):
        return len(self.rules)

    @property
    def names(self):
        return tuple(r.name for r in self.rules)

    def rule(self, name) -> Rule:
        for r in self.rules:
            if r.name == name:
                return r
        raise KeyError(name)

    def is_ground(self) -> bool:
        return all(r.is_ground() for r in self.rules)

    def subset(self, names) -> "Program":
        keep = set(names)
        return Program(tuple(r for r in self.rules if r.name in keep))

    def literals(self):
        out = set()
        for r in self.rules:
            out.update(r.literals())
        return out

    def __str__(self):
        return "".join(str(r) + "\n" for r in self.rules)


@dataclass(frozen=True)
class PLP:
    """Program plus a transitively closed strict preference order."""

    program: Program
    order: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if not isinstance(self.program, Program):
            object.__setattr__(self, "program", Program(tuple(self.program)))
        names = set(self.program.names)
        for a, b in self.order:
            for n in (a, b):
                if n not in names:
                    raise LogicError(f"order mentions unknown rule {n}")
        object.__setattr__(self, "order", close_order(self.order))

    @property
    def rules(self):
        return self.program.rules

    def less(self, a, b) -> bool:
        return (a, b) in self.order

    def __str__(self):
        return render_plp(self)


def close_order(pairs: Iterable) -> frozenset:
    """Transitive closure of ``pairs``; raises CycleInOrder if not strict."""
    succ = {}
    for a, b in pairs:
        succ.setdefault(a, set()).add(b)
        succ.setdefault(b, set())
    closed = set()
    for start in sorted(succ):
        seen = set()
        stack = list(succ[start])
        while stack:
            n = stack.pop()
            if n in seen:
                continue
            seen.add(n)
            stack.extend(succ[n])
        if start in seen:
            raise CycleInOrder(_find_cycle(succ, start))
        closed.update((start, n) for n in seen)
    return frozenset(closed)


def _find_cycle(succ, start):
    path = [start]
    seen = {start}

    def dfs(n):
        for m in sorted(succ[n]):
            if m == start:
                return True
            if m not in seen:
                seen.add(m)
                path.append(m)
                if dfs(m):
                    return True
                path.pop()
        return False

    dfs(start)
    return path + [start]


# ------------------------------------------------------------ grounding

def program_signature(rules: Iterable[Rule]):
    """Constants and function symbols (name, arity) occurring in rules."""
    consts, funcs = set(), set()

    def walk(t):
        if isinstance(t, Const):
            consts.add(t)
        elif isinstance(t, Func):
            funcs.add((t.name, len(t.args)))
            for a in t.args:
                walk(a)

    for r in rules:
        for l in r.literals():
            for a in l.args:
                walk(a)
    return consts, funcs


def herbrand_universe(consts, funcs, depth: int):
    """All ground terms over consts/funcs with nesting at most depth."""
    consts = sorted(consts, key=str) or [Const("0")]
    levels = [list(consts)]
    allterms = list(consts)
    for _ in range(depth):
        new = []
        for name, arity in sorted(funcs):
            for args in itertools.product(allterms, repeat=arity):
                if any(a in levels[-1] for a in args):
                    new.append(Func(name, tuple(args)))
        levels.append(new)
        allterms = allterms + new
    return allterms


def ground_name(rule: Rule, theta) -> str:
    if not theta:
        return rule.name
    keys = sorted(theta, key=lambda v: v.name)
    return f"{rule.name}({','.join(str(theta[k]) for k in keys)})"


def ground_instantiate(plp: PLP, universe: Mapping | None = None, depth: int = 0):
    """Finite instantiation of ``plp``.

    ``universe`` maps a sort name (or None for unsorted variables) to a
    sequence of ground terms.  Without it the Herbrand universe of the
    program with term nesting up to ``depth`` is used for every sort.
    Instances mentioning a term nested deeper than ``depth`` are dropped.
    Returns ``(ground_plp, origin)`` where origin maps ground to source names.
    """
    if isinstance(plp, Program):
        plp = PLP(plp)
    if universe is None:
        consts, funcs = program_signature(plp.rules)
        terms = herbrand_universe(consts, funcs, depth)
        universe = {None: terms}
    rules, origin, instances = [], {}, {}
    for r in plp.rules:
        vs = sorted(r.variables(), key=lambda v: v.name)
        doms = []
        for v in vs:
            dom = universe.get(v.sort, universe.get(None))
            if dom is None:
                raise LogicError(f"no universe for sort {v.sort} of variable {v.name}")
            doms.append(dom)
        instances[r.name] = []
        for values in itertools.product(*doms):
            theta = dict(zip(vs, values))
            g = r.substitute(theta, ground_name(r, theta))
            if any(l.depth() > depth for l in g.literals()):
                continue
            rules.append(g)
            origin[g.name] = r.name
            instances[r.name].append(g.name)
    order = set()
    for a, b in plp.order:
        for ga in instances[a]:
            for gb in instances[b]:
                order.add((ga, gb))
    ground = PLP(Program(tuple(rules)), frozenset(order))
    _check_ground_well_formed(ground, origin)
    return ground, origin


def _check_ground_well_formed(plp: PLP, origin=None):
    by_content = {}
    for r in plp.rules:
        by_content.setdefault(r.content(), []).append(r.name)
    for names in by_content.values():
        if len(names) < 2:
            continue
        for a in names:
            for b in names:
                if plp.less(a, b):
                    pair = (origin[a], origin[b]) if origin else (a, b)
                    raise NotWellFormed(str(plp.program.rule(a)).split(": ", 1)[1].rstrip("."), pair)


# ------------------------------------------------------ well-formedness

@dataclass(frozen=True)
class WellFormedness:
    ok: bool
    witness: str | None = None
    pair: tuple | None = None


def _walk(t, theta):
    while isinstance(t, Var) and t in theta:
        t = theta[t]
    return t


def _occurs(v, t, theta):
    t = _walk(t, theta)
    if t == v:
        return True
    if isinstance(t, Func):
        return any(_occurs(v, a, theta) for a in t.args)
    return False


def _unify(a, b, theta):
    a, b = _walk(a, theta), _walk(b, theta)
    if a == b:
        return theta
    if isinstance(a, Var):
        if _occurs(a, b, theta):
            return None
        return {**theta, a: b}
    if isinstance(b, Var):
        return _unify(b, a, theta)
    if isinstance(a, Func) and isinstance(b, Func):
        if a.name != b.name or len(a.args) != len(b.args):
            return None
        for x, y in zip(a.args, b.args):
            theta = _unify(x, y, theta)
            if theta is None:
                return None
        return theta
    return None


def _unify_lits(l1, l2, theta):
    if theta is None or l1.predicate != l2.predicate or l1.negative != l2.negative:
        return None
    if len(l1.args) != len(l2.args):
        return None
    for x, y in zip(l1.args, l2.args):
        theta = _unify(x, y, theta)
        if theta is None:
            return None
    return theta


def _unify_bodies(b1, b2, theta):
    if theta is None or len(b1) != len(b2):
        return None
    if not b1:
        return theta
    perms = itertools.permutations(b2) if len(b2) <= 6 else [tuple(b2)]
    for perm in perms:
        t = theta
        for x, y in zip(b1, perm):
            t = _unify_lits(x, y, t)
            if t is None:
                break
        if t is not None:
            return t
    return None


def _rename(rule: Rule, suffix: str) -> Rule:
    theta = {v: Var(v.name + suffix) for v in rule.variables()}
    return rule.substitute(theta)


def _resolve(t, theta):
    t = _walk(t, theta)
    if isinstance(t, Func):
        return Func(t.name, tuple(_resolve(a, theta) for a in t.args))
    return t


def _common_instance(r1: Rule, r2: Rule):
    a, b = _rename(r1, "'1"), _rename(r2, "'2")
    if (a.head is None) != (b.head is None):
        return None
    theta = {}
    if a.head is not None:
        theta = _unify_lits(a.head, b.head, theta)
    theta = _unify_bodies(a.pos, b.pos, theta)
    theta = _unify_bodies(a.naf, b.naf, theta)
    if theta is None:
        return None
    return {v: _resolve(v, theta) for v in a.variables()}


def check_well_formed(plp: PLP) -> WellFormedness:
    """No rule instance may be shared by two rules r1 < r2."""
    consts, _ = program_signature(plp.rules)
    filler = min(consts, key=str) if consts else Const("0")
    for n1, n2 in sorted(plp.order):
        r1, r2 = plp.program.rule(n1), plp.program.rule(n2)
        theta = _common_instance(r1, r2)
        if theta is None:
            continue
        inst = _rename(r1, "'1").substitute(theta)
        rest = {v: filler for v in inst.variables()}
        inst = inst.substitute(rest)
        text = str(inst).split(": ", 1)[1]
        return WellFormedness(False, text.rstrip("."), (n1, n2))
    return WellFormedness(True)


# ---------------------------------------------------------- text format

_IDENT = re.compile(r"[A-Za-z0-9_](?:[A-Za-z0-9_']|-(?=[A-Za-z0-9_]))*(?:[+\-](?=\())?")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def location(self, pos=None):
        pos = self.pos if pos is None else pos
        line = self.text.count("\n", 0, pos) + 1
        col = pos - (self.text.rfind("\n", 0, pos) + 1) + 1
        return line, col

    def fail(self, msg, pos=None):
        raise ParseError(msg, *self.location(pos))

    def skip(self):
        t = self.text
        while self.pos < len(t):
            c = t[self.pos]
            if c.isspace():
                self.pos += 1
            elif c == "%":
                nl = t.find("\n", self.pos)
                self.pos = len(t) if nl < 0 else nl + 1
            else:
                break

    def peek(self, s) -> bool:
        self.skip()
        return self.text.startswith(s, self.pos)

    def expect(self, s):
        if not self.peek(s):
            self.fail(f"expected '{s}'")
        self.pos += len(s)

    def keyword(self, word) -> bool:
        self.skip()
        m = _IDENT.match(self.text, self.pos)
        if m and m.group(0) == word:
            self.pos = m.end()
            return True
        return False

    def ident(self) -> str:
        self.skip()
        m = _IDENT.match(self.text, self.pos)
        if not m:
            self.fail("expected identifier")
        self.pos = m.end()
        return m.group(0)

    def term(self):
        name = self.ident()
        if self.text.startswith("(", self.pos):
            self.pos += 1
            args = [self.term()]
            while self.peek(","):
                self.pos += 1
                args.append(self.term())
            self.expect(")")
            return Func(name, tuple(args))
        if name[0].islower() or name[0] == "_":
            return Var(name)
        return Const(name)

    def literal(self) -> Literal:
        self.skip()
        neg = False
        if self.text.startswith("-", self.pos) or self.text.startswith("¬", self.pos):
            neg = True
            self.pos += 1
        start = self.pos
        name = self.ident()
        args = ()
        if self.text.startswith("(", self.pos):
            self.pos = start
            t = self.term()
            args = t.args
        return Literal(name, args, neg)

    def name(self) -> str:
        # rule names share term syntax so ground names round-trip
        return str(self.term())

    def body(self):
        pos, naf = [], []
        while True:
            if self.keyword("not"):
                naf.append(self.literal())
            else:
                pos.append(self.literal())
            if not self.peek(","):
                return tuple(pos), tuple(naf)
            self.pos += 1

    def rule(self) -> Rule:
        name = self.name()
        self.expect(":")
        head = None
        if not self.peek("<-"):
            head = self.literal()
        pos, naf = (), ()
        if self.peek("<-"):
            self.pos += 2
            if not self.peek("."):
                pos, naf = self.body()
        if head is None and not (pos or naf):
            self.fail("empty rule")
        self.expect(".")
        return Rule(name, head, pos, naf)

    def order_block(self):
        pairs = []
        self.expect("{")
        while not self.peek("}"):
            a = self.name()
            self.expect("<")
            chain = [a, self.name()]
            while self.peek("<"):
                self.pos += 1
                chain.append(self.name())
            self.expect(".")
            pairs.extend(zip(chain, chain[1:]))
        self.expect("}")
        return pairs

    def plp(self) -> PLP:
        rules, pairs = [], []
        self.skip()
        while self.pos < len(self.text):
            save = self.pos
            if self.keyword("order") and self.peek("{"):
                pairs.extend(self.order_block())
            else:
                self.pos = save
                rules.append(self.rule())
            self.skip()
        names = {r.name for r in rules}
        if len(names) != len(rules):
            self.fail("duplicate rule name", 0)
        for a, b in pairs:
            for n in (a, b):
                if n not in names:
                    self.fail(f"order mentions unknown rule {n}", 0)
        return PLP(Program(tuple(rules)), frozenset(pairs))


def parse_plp(text: str) -> PLP:
    return _Parser(text).plp()


def parse_program(text: str) -> Program:
    plp = parse_plp(text)
    if plp.order:
        raise ParseError("unexpected order block in a plain program")
    return plp.program


def render_plp(plp: PLP) -> str:
    out = str(plp.program)
    if plp.order:
        idx = {n: i for i, n in enumerate(plp.program.names)}
        pairs = sorted(plp.order, key=lambda p: (idx[p[0]], idx[p[1]]))
        out += "order {\n" + "".join(f"  {a} < {b}.\n" for a, b in pairs) + "}\n"
    return out


def render_program(program: Program) -> str:
    return str(program)


def lits_text(lits: Iterable[Literal]) -> list:
    return sorted(str(l) for l in lits)
