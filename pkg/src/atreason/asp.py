"""Answer sets of finite ground extended logic programs.

The solver branches on naf literals.  At each node the assumptions
(T true, F false) are propagated with two least-model computations: a
lower bound from the rules whose naf literals are all assumed false, and
an upper bound from the rules not blocked by a literal assumed true.
Every answer set S compatible with the assumptions satisfies
LB <= S <= UB, so pruning on LB & F, T - UB and an inconsistent LB is
sound and the search is exact.
"""

from __future__ import annotations

from dataclasses import dataclass

import networkx as nx

from .logic import LogicError, Literal, Program, Rule


class NonGround(LogicError):
    pass


class NotDefinite(LogicError):
    pass


class ConstraintViolated(LogicError):
    def __init__(self, name):
        self.name = name
        super().__init__(f"constraint {name} is violated")


@dataclass(frozen=True)
class AnswerSet:
    literals: frozenset
    inconsistent: bool = False

    def __contains__(self, l):
        return l in self.literals

    def __iter__(self):
        return iter(sorted(self.literals, key=str))

    def __len__(self):
        return len(self.literals)

    def text(self) -> list:
        return sorted(str(l) for l in self.literals)

    def __str__(self):
        if self.inconsistent:
            return "Lit"
        return "{" + ", ".join(self.text()) + "}"

    def __repr__(self):
        return f"AnswerSet({self})"


def canonical(sets):
    """Deduplicate and sort answer sets (Lit last)."""
    uniq = {(a.inconsistent, a.literals): a for a in sets}
    return sorted(uniq.values(), key=lambda a: (a.inconsistent, len(a.literals), a.text()))


def all_literals(rules) -> frozenset:
    out = set()
    for r in rules:
        for l in r.literals():
            out.add(l)
            out.add(l.complement())
    return frozenset(out)


def is_consistent(lits) -> bool:
    return not any(l.negative and l.complement() in lits for l in lits)


class Compiled:
    """Integer view of a ground program, shared by solver and PLP engine."""

    def __init__(self, rules):
        self.rules = tuple(rules)
        self.lits = []
        self.index = {}
        for r in self.rules:
            if not r.is_ground():
                raise NonGround(f"rule {r.name} is not ground")
            for l in r.literals():
                self._id(l)
                self._id(l.complement())
        self.comp = [self.index[l.complement()] for l in self.lits]
        self.head = []
        self.pos = []
        self.naf = []
        self.watch = [[] for _ in self.lits]
        for i, r in enumerate(self.rules):
            self.head.append(-1 if r.head is None else self.index[r.head])
            p = frozenset(self.index[l] for l in r.pos)
            self.pos.append(p)
            self.naf.append(frozenset(self.index[l] for l in r.naf))
            for x in p:
                self.watch[x].append(i)
        self.all = frozenset(range(len(self.lits)))

    def _id(self, l):
        i = self.index.get(l)
        if i is None:
            i = self.index[l] = len(self.lits)
            self.lits.append(l)
        return i

    def closure(self, rule_ids) -> set:
        need = {}
        derived = set()
        queue = []
        head, pos = self.head, self.pos
        for i in rule_ids:
            n = len(pos[i])
            if n == 0:
                h = head[i]
                if h not in derived:
                    derived.add(h)
                    queue.append(h)
            else:
                need[i] = n
        while queue:
            x = queue.pop()
            for i in self.watch[x]:
                if i in need:
                    need[i] -= 1
                    if need[i] == 0:
                        h = head[i]
                        if h not in derived:
                            derived.add(h)
                            queue.append(h)
        return derived

    def inconsistent(self, s) -> bool:
        comp = self.comp
        return any(comp[x] in s for x in s)

    def solve(self, rule_ids):
        """Answer sets of the rules ``rule_ids`` as frozensets of ids.

        Returns ``(models, lit)``; when lit is True the unique answer set
        is Lit, represented by the set of all literal ids.
        """
        rule_ids = list(rule_ids)
        normal = [i for i in rule_ids if self.head[i] >= 0]
        cons = [i for i in rule_ids if self.head[i] < 0]
        naf = self.naf
        base = self.closure([i for i in normal if not naf[i]])
        if self.inconsistent(base):
            return ([], False) if cons else ([self.all], True)
        atoms = sorted(set().union(*(naf[i] for i in normal)) if normal else ())
        models = []

        def propagate(T, F):
            while True:
                lb = self.closure([i for i in normal if naf[i] <= F])
                ub = self.closure([i for i in normal if not (naf[i] & T)])
                if lb & F or not T <= ub or self.inconsistent(lb):
                    return None
                newT = {x for x in atoms if x in lb and x not in T}
                newF = {x for x in atoms if x not in ub and x not in F}
                if not newT and not newF:
                    return T, F, lb, ub
                T = T | newT
                F = F | newF

        def search(T, F):
            res = propagate(T, F)
            if res is None:
                return
            T, F, lb, ub = res
            for x in atoms:
                if x not in T and x not in F:
                    search(T | {x}, F)
                    search(T, F | {x})
                    return
            s = frozenset(ub)
            if self.inconsistent(s):
                return
            for i in cons:
                if self.pos[i] <= s and not (naf[i] & s):
                    return
            models.append(s)

        search(frozenset(), frozenset())
        return models, False

    def to_answer_set(self, ids, lit=False) -> AnswerSet:
        return AnswerSet(frozenset(self.lits[x] for x in ids), lit)


def _ground_rules(program):
    rules = program.rules if isinstance(program, Program) else tuple(program)
    return rules


def answer_sets(program) -> list:
    """All answer sets of a finite ground program, in canonical order."""
    c = Compiled(_ground_rules(program))
    models, lit = c.solve(range(len(c.rules)))
    return canonical(c.to_answer_set(m, lit) for m in models)


def least_model(program) -> AnswerSet:
    """Answer set of a naf-free ground program (Lit when inconsistent)."""
    rules = _ground_rules(program)
    for r in rules:
        if r.naf:
            raise NotDefinite(f"rule {r.name} has a naf literal")
    c = Compiled(rules)
    s = c.closure([i for i in range(len(rules)) if c.head[i] >= 0])
    out = c.to_answer_set(c.all, True) if c.inconsistent(s) else c.to_answer_set(s)
    for r in rules:
        if r.head is None and all(l in out for l in r.pos):
            raise ConstraintViolated(r.name)
    return out


def gl_transform(program, s) -> Program:
    """Gelfond-Lifschitz reduct of ``program`` with respect to ``s``."""
    s = s.literals if isinstance(s, AnswerSet) else set(s)
    out = []
    for r in _ground_rules(program):
        if any(l in s for l in r.naf):
            continue
        out.append(Rule(r.name, r.head, r.pos, ()))
    return Program(tuple(out))


def is_answer_set(program, s) -> bool:
    """Direct check of the fixpoint condition S = LM(program^S)."""
    rules = _ground_rules(program)
    if isinstance(s, AnswerSet):
        s = s.literals
    s = frozenset(s)
    reduct = gl_transform(rules, s)
    normal = Program(tuple(r for r in reduct.rules if r.head is not None))
    lm = least_model(normal)
    if lm.inconsistent:
        return s >= all_literals(rules) and not any(r.head is None for r in rules)
    if lm.literals != s:
        return False
    return all(not (set(r.pos) <= s and not (set(r.naf) & s)) for r in rules if r.head is None)


# --------------------------------------------------------- positive form

def prime(l: Literal) -> Literal:
    return Literal(l.predicate + "'", l.args) if l.negative else l


def positive_form(program):
    """Replace every ``-P(t)`` by a fresh atom ``P'(t)``.

    Returns ``(positive_program, mapping)`` with mapping from the new
    atoms back to the original negative literals.
    """
    mapping = {}
    for r in _ground_rules(program):
        for l in r.literals():
            if l.negative:
                mapping[prime(l)] = l
    out = []
    for r in _ground_rules(program):
        out.append(Rule(
            r.name,
            None if r.head is None else prime(r.head),
            tuple(prime(l) for l in r.pos),
            tuple(prime(l) for l in r.naf),
        ))
    return Program(tuple(out)), mapping


def from_positive(lits, mapping):
    return frozenset(mapping.get(l, l) for l in lits)


# ------------------------------------------------- local stratification

@dataclass(frozen=True)
class Stratification:
    ok: bool
    levels: dict | None = None
    cycle: tuple | None = None


def dependency_graph(program) -> nx.DiGraph:
    g = nx.DiGraph()
    for r in _ground_rules(program):
        if r.head is None:
            continue
        g.add_node(r.head)
        for l in r.pos:
            if not g.has_edge(r.head, l):
                g.add_edge(r.head, l, naf=False)
        for l in r.naf:
            g.add_edge(r.head, l, naf=True)
    return g


def is_locally_stratified(program) -> Stratification:
    """Level mapping with naf edges pointing strictly down, or a witness.

    For a finite ground program such a mapping exists iff no cycle of the
    dependency graph goes through a naf edge.
    """
    rules = _ground_rules(program)
    for r in rules:
        if not r.is_ground():
            raise NonGround(f"rule {r.name} is not ground")
        if any(l.negative for l in r.literals()):
            raise LogicError("program has classical negation; use positive_form first")
    g = dependency_graph(rules)
    comp_of = {}
    sccs = list(nx.strongly_connected_components(g))
    for k, comp in enumerate(sccs):
        for n in comp:
            comp_of[n] = k
    for u, v, d in sorted(g.edges(data=True), key=lambda e: (str(e[0]), str(e[1]))):
        if d["naf"] and comp_of[u] == comp_of[v]:
            sub = g.subgraph(sccs[comp_of[u]])
            if u == v:
                cycle = (u, u)
            else:
                path = nx.shortest_path(sub, v, u)
                cycle = (u, *path)
            return Stratification(False, None, cycle)
    # longest-path levels over the condensation
    cond = nx.condensation(g, sccs)
    level = {}
    for k in reversed(list(nx.topological_sort(cond))):
        best = 0
        for n in sccs[k]:
            for _, m, d in g.out_edges(n, data=True):
                km = comp_of[m]
                if km == k:
                    continue
                best = max(best, level[km] + (1 if d["naf"] else 0))
        level[k] = best
    levels = {n: level[comp_of[n]] for n in g.nodes}
    return Stratification(True, levels, None)


def check_level_mapping(program, levels) -> bool:
    for r in _ground_rules(program):
        if r.head is None:
            continue
        h = levels.get(r.head, 0)
        if any(levels.get(l, 0) > h for l in r.pos):
            return False
        if any(levels.get(l, 0) + 1 > h for l in r.naf):
            return False
    return True
