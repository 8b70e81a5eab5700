"""Defeat, partitions, reducts and answer sets of prioritized programs.

A set R of rules is *self-defeated* in a program P when P - R has an
answer set and every answer set of P - R contains a naf literal of every
rule in R.  An elimination step removes such an R provided

(a) some remaining rule is more preferred than every rule of R, and
(b) no rule of R has a self-defeated set strictly below it.

A reduct is a state where no step applies; branching over the admissible
sets gives every reduct.  Since each answer set of P - R is then also an
answer set of P, a step can only filter answer sets, never create them.

Two search strategies are provided.  ``exact`` enumerates every subset of
the rules defeated by some answer set and is only practical for small
programs.  ``stratified`` sweeps the preference partition from the least
preferred stratum upward and only tries sets of rules that are defeated
by the same answer sets, plus singletons; it is the one used for
translated action domains.  ``auto`` picks ``exact`` when it is cheap.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .asp import AnswerSet, Compiled, answer_sets, canonical
from .logic import LogicError, PLP, Program, Rule

EXACT_LIMIT = 12


class NoAnswerSet(LogicError):
    pass


class SearchTooLarge(LogicError):
    pass


@dataclass(frozen=True)
class Partition:
    strata: tuple

    def stratum_of(self, name) -> int:
        for i, s in enumerate(self.strata):
            if name in s:
                return i
        raise KeyError(name)


@dataclass(frozen=True)
class Reduct:
    program: Program
    trace: tuple

    @property
    def rules(self):
        return self.program.names

    def to_json(self):
        return {"rules": list(self.rules), "eliminated": [list(s) for s in self.trace]}


def is_defeated(rule: Rule, program) -> bool:
    sets = answer_sets(program)
    if not sets:
        return False
    return all(any(l in s for l in rule.naf) for s in sets)


def partition(plp: PLP) -> Partition:
    names = plp.program.names
    preds = {n: set() for n in names}
    for a, b in plp.order:
        preds[b].add(a)
    placed, strata = set(), []
    remaining = list(names)
    while remaining:
        layer = [n for n in remaining if preds[n] <= placed]
        if not layer:
            raise LogicError("order is not a strict partial order")
        strata.append(frozenset(layer))
        placed.update(layer)
        remaining = [n for n in remaining if n not in placed]
    return Partition(tuple(strata))


def _bits(m):
    while m:
        low = m & -m
        yield low.bit_length() - 1
        m ^= low


def _maximal(sets):
    sets = sorted(set(sets), key=lambda m: (-bin(m).count("1"), m))
    out = []
    for s in sets:
        if not any(s & ~o == 0 for o in out):
            out.append(s)
    return out


class Engine:
    """Reduct search over one ground PLP with cached subprogram solving."""

    def __init__(self, plp: PLP):
        if not plp.program.is_ground():
            raise LogicError("reducts need a ground PLP; call ground_instantiate first")
        self.plp = plp
        self.names = plp.program.names
        self.c = Compiled(plp.rules)
        n = len(self.names)
        idx = {name: i for i, name in enumerate(self.names)}
        self.above = [0] * n
        self.below = [0] * n
        for a, b in plp.order:
            ia, ib = idx[a], idx[b]
            self.below[ia] |= 1 << ib
            self.above[ib] |= 1 << ia
        self.cand = 0
        for i in range(n):
            if self.c.naf[i] and self.c.head[i] >= 0:
                self.cand |= 1 << i
        self.full = (1 << n) - 1
        part = partition(plp)
        self.stratum = [0] * n
        for k, s in enumerate(part.strata):
            for name in s:
                self.stratum[idx[name]] = k
        self.depth = len(part.strata)
        self._as = {}
        self._blocked = {}

    # -- solving

    def models(self, mask):
        got = self._as.get(mask)
        if got is None:
            got = self._as[mask] = self.c.solve(_bits(mask))
        return got

    def self_defeated(self, R, M) -> bool:
        ms, _ = self.models(M & ~R)
        if not ms:
            return False
        naf = self.c.naf
        idx = list(_bits(R))
        return all(all(naf[i] & s for i in idx) for s in ms)

    def signatures(self, M):
        ms, _ = self.models(M)
        naf = self.c.naf
        sig = {}
        for i in _bits(M & self.cand):
            m = 0
            for k, s in enumerate(ms):
                if naf[i] & s:
                    m |= 1 << k
            if m:
                sig[i] = m
        return sig

    def common_dominators(self, R, M):
        dom = M
        for i in _bits(R):
            dom &= self.above[i]
        return dom

    # -- exact strategy

    def sd_sets_exact(self, M):
        ms, _ = self.models(M)
        if not ms:
            return []
        naf = self.c.naf
        pool = list(_bits(M & self.cand))
        found, tried = [], set()
        for s in ms:
            D = [i for i in pool if naf[i] & s]
            if len(D) > EXACT_LIMIT:
                raise SearchTooLarge(f"{len(D)} defeated rules exceed the exact limit")
            for k in range(1, len(D) + 1):
                for combo in itertools.combinations(D, k):
                    R = 0
                    for i in combo:
                        R |= 1 << i
                    if R in tried:
                        continue
                    tried.add(R)
                    if self.self_defeated(R, M):
                        found.append(R)
        return found

    def successors_exact(self, M):
        found = self.sd_sets_exact(M)
        out = []
        for R in found:
            if not self.common_dominators(R, M):
                continue
            if any(any(R2 & ~self.below[i] == 0 for R2 in found) for i in _bits(R)):
                continue
            out.append(R)
        return out

    # -- stratified strategy

    def grouped(self, pool, sig, M, need_dom):
        fam = set(sig[i] for i in pool)
        frontier = set(fam)
        while frontier and len(fam) < 512:
            new = {a & b for a in frontier for b in fam} - fam - {0}
            fam |= new
            frontier = new
        sets = set()
        for F in fam:
            R = 0
            for i in pool:
                if sig[i] & F == F:
                    R |= 1 << i
            if R:
                sets.add(R)
        for i in pool:
            sets.add(1 << i)
        if not need_dom:
            return sets
        out = set()
        for R in sets:
            if self.common_dominators(R, M):
                out.add(R)
                continue
            doms = 0
            for i in _bits(R):
                doms |= self.above[i] & M
            for d in _bits(doms):
                sub = R & self.below[d]
                if sub:
                    out.add(sub)
        return out

    def blocked(self, i, M, sig):
        key = (i, M)
        got = self._blocked.get(key)
        if got is None:
            pool = [j for j in sig if self.below[i] >> j & 1]
            got = False
            if pool:
                for R in sorted(self.grouped(pool, sig, M, False)):
                    if self.self_defeated(R, M):
                        got = True
                        break
            self._blocked[key] = got
        return got

    def successors_stratified(self, M):
        ms, _ = self.models(M)
        if not ms:
            return []
        sig = self.signatures(M)
        last = None
        for t in range(self.depth - 1, 0, -1):
            pool = [i for i in sorted(sig) if self.stratum[i] >= t and self.above[i] & M]
            if not pool or pool == last:
                continue
            last = pool
            adm = []
            for R in sorted(self.grouped(pool, sig, M, True)):
                if not self.self_defeated(R, M):
                    continue
                if any(self.blocked(i, M, sig) for i in _bits(R)):
                    continue
                adm.append(R)
            if adm:
                return _maximal(adm)
        return []

    # -- driver

    def pick_strategy(self):
        n = bin(self.cand).count("1")
        return "exact" if n <= EXACT_LIMIT else "stratified"

    def reducts(self, strategy="auto"):
        if strategy == "auto":
            strategy = self.pick_strategy()
        step = {"exact": self.successors_exact, "stratified": self.successors_stratified}[strategy]
        seen = set()
        found = {}
        stack = [(self.full, ())]
        while stack:
            M, trace = stack.pop()
            if M in seen:
                continue
            seen.add(M)
            succ = step(M)
            if not succ:
                found.setdefault(M, trace)
                continue
            for R in sorted(succ, reverse=True):
                stack.append((M & ~R, trace + (R,)))
        return found

    def base_inconsistent(self) -> bool:
        """True when the naf-free rules alone derive a complementary pair.

        Eliminated rules always carry naf literals, so then every
        subprogram has the same answer sets as the whole program.
        """
        c = self.c
        base = c.closure([i for i in range(len(self.names)) if c.head[i] >= 0 and not c.naf[i]])
        return c.inconsistent(base)

    def names_of(self, mask):
        return tuple(self.names[i] for i in _bits(mask))

    def make_reduct(self, mask, trace) -> Reduct:
        keep = set(_bits(mask))
        prog = Program(tuple(r for i, r in enumerate(self.plp.rules) if i in keep))
        return Reduct(prog, tuple(self.names_of(R) for R in trace))

    def answer_sets_of(self, mask):
        ms, lit = self.models(mask)
        return [self.c.to_answer_set(m, lit) for m in ms]


def _engine(plp):
    if isinstance(plp, Engine):
        return plp
    return Engine(plp)


def reducts(plp, strategy="auto") -> list:
    """All reducts, sorted by their rule lists."""
    eng = _engine(plp)
    found = eng.reducts(strategy)
    out = [eng.make_reduct(m, t) for m, t in found.items()]
    return sorted(out, key=lambda r: (len(r.rules), r.rules))


def plp_answer_sets(plp, strategy="auto") -> list:
    eng = _engine(plp)
    if eng.base_inconsistent():
        return canonical(eng.answer_sets_of(eng.full))
    out = []
    for mask in eng.reducts(strategy):
        out.extend(eng.answer_sets_of(mask))
    return canonical(out)


def plp_entails(plp, literal, strategy="auto") -> bool:
    sets = plp_answer_sets(plp, strategy)
    if not sets:
        raise NoAnswerSet("the program has no answer set")
    return all(literal in s for s in sets)


def report(plp, strategy="auto") -> dict:
    """JSON-ready summary of reducts and answer sets."""
    eng = _engine(plp)
    found = eng.reducts(strategy)
    reds = sorted((eng.make_reduct(m, t) for m, t in found.items()), key=lambda r: (len(r.rules), r.rules))
    sets = []
    for m in found:
        sets.extend(eng.answer_sets_of(m))
    return {
        "reducts": [r.to_json() for r in reds],
        "answer_sets": [["Lit"] if a.inconsistent else a.text() for a in canonical(sets)],
    }


def strategies_disagree(plp) -> bool:
    """True when the exact and stratified searches give different reducts."""
    eng = Engine(plp)
    return set(eng.reducts("exact")) != set(eng.reducts("stratified"))


def _sd_below(eng, i, M, limit=EXACT_LIMIT + 4):
    """Exact search for a self-defeated set strictly below rule i."""
    sig = eng.signatures(M)
    pool = [j for j in sorted(sig) if eng.below[i] >> j & 1]
    if len(pool) > limit:
        raise SearchTooLarge(f"{len(pool)} rules below {eng.names[i]}")
    for k in range(1, len(pool) + 1):
        for combo in itertools.combinations(pool, k):
            R = sum(1 << j for j in combo)
            if eng.self_defeated(R, M):
                return True
    return False


def validate_trace(plp, reduct: Reduct, check_final=False) -> bool:
    """Replay a trace and re-check conditions (a) and (b) exactly.

    Condition (b) is decided by enumerating every subset of the rules
    below each eliminated rule, so this is exact whenever those sets are
    small.  With ``check_final`` the end state is also checked to admit
    no further elimination, which needs the exact enumeration.
    """
    eng = _engine(plp)
    idx = {n: i for i, n in enumerate(eng.names)}
    M = eng.full
    for step in reduct.trace:
        R = 0
        for n in step:
            R |= 1 << idx[n]
        if R & ~M or not R:
            return False
        if not eng.self_defeated(R, M) or not eng.common_dominators(R, M):
            return False
        if any(_sd_below(eng, i, M) for i in _bits(R)):
            return False
        M &= ~R
    if M != sum(1 << idx[n] for n in reduct.rules):
        return False
    return not (check_final and eng.successors_exact(M))
