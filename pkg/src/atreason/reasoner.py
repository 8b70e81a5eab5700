"""Transition function, models and entailment of value propositions.

Everything is computed on a depth bounded grounding.  The effective depth
is at least the length of the query and of the longest observed action
string.  States are partial: a fluent absent from a state is unknown.
A branch whose transition set is empty because the next situation lies
beyond the horizon is treated as truncated, not as a missing model.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .domain import DomainDescription, FluentExpr, ValueQuery, parse_query
from .logic import Const, Literal, LogicError
from .plp import Engine, plp_answer_sets
from .translate import ground, result, situation, translate


class Undefined(LogicError):
    """The translated program has no answer set or an inconsistent one."""


class NoModel(Undefined):
    pass


class NoChangeDetected(LogicError):
    pass


def render_state(state) -> str:
    return "{" + ", ".join(str(x) for x in sorted(state, key=lambda e: (e.fluent, e.negated))) + "}"


def _state_key(state):
    return sorted((e.fluent, e.negated) for e in state)


def action_strings(actions, depth):
    out = [()]
    frontier = [()]
    for _ in range(depth):
        frontier = [p + (a,) for p in frontier for a in actions]
        out.extend(frontier)
    return out


@dataclass(frozen=True)
class ChangeExplanation:
    fluent: str
    positive: bool
    prefix: tuple
    action: str
    causes: tuple

    def __str__(self):
        lit = ("" if self.positive else "-") + self.fluent
        return f"{lit} after {', '.join(self.prefix + (self.action,))}: " + (", ".join(self.causes) or "no cause")


class Reasoner:
    """Solved domain at a fixed depth."""

    def __init__(self, d: DomainDescription, depth: int = 0, strategy: str = "auto"):
        self.domain = d
        obs = [len(p.actions) for p in d.of_kind("observation")]
        self.depth = max([depth] + obs)
        self.translation = translate(d)
        self.ground, self.origin = ground(self.translation, self.depth)
        self.engine = Engine(self.ground)
        self.answer_sets = plp_answer_sets(self.engine, strategy)
        self.strings = action_strings(d.actions, self.depth)
        self.sit = {p: situation(p) for p in self.strings}
        self._proj = {}

    @property
    def defined(self) -> bool:
        return bool(self.answer_sets) and not any(a.inconsistent for a in self.answer_sets)

    def require_defined(self):
        if not self.answer_sets:
            raise NoModel("the translated program has no answer set")
        if any(a.inconsistent for a in self.answer_sets):
            raise NoModel("the translated program has an inconsistent answer set")

    def project(self, k, prefix) -> frozenset:
        key = (k, prefix)
        got = self._proj.get(key)
        if got is None:
            ans = self.answer_sets[k]
            s = self.sit[prefix]
            out = set()
            for f in self.domain.fluents:
                pos = Literal("Holds", (Const(f), s))
                if pos in ans:
                    out.add(FluentExpr(f))
                if pos.complement() in ans:
                    out.add(FluentExpr(f, True))
            got = self._proj[key] = frozenset(out)
        return got

    def initial_states(self) -> list:
        self.require_defined()
        states = {self.project(k, ()) for k in range(len(self.answer_sets))}
        return sorted(states, key=_state_key)

    def transition(self, action: str, state) -> list:
        """Successor states of ``state`` under ``action``."""
        self.require_defined()
        state = frozenset(state)
        out = set()
        for k in range(len(self.answer_sets)):
            for p in self.strings:
                if len(p) >= self.depth:
                    continue
                if self.project(k, p) == state:
                    out.add(self.project(k, p + (action,)))
        return sorted(out, key=_state_key)

    def reachable(self, actions) -> list:
        """Values Psi(actions) over all models."""
        states = set(self.initial_states())
        for a in actions:
            nxt = set()
            for s in states:
                nxt.update(self.transition(a, s))
            states = nxt
        return sorted(states, key=_state_key)

    def entails(self, query) -> bool:
        if isinstance(query, str):
            query = parse_query(query, self.domain)
        if len(query.actions) > self.depth:
            raise ValueError("query is longer than the grounding depth")
        states = self.reachable(query.actions)
        return bool(states) and all(query.literal in s for s in states)

    def value(self, query) -> str:
        """'true', 'false' or 'unknown' for a fluent after an action string."""
        if isinstance(query, str):
            query = parse_query(query, self.domain)
        if self.entails(query):
            return "true"
        if self.entails(ValueQuery(query.literal.complement(), query.actions)):
            return "false"
        return "unknown"

    def count_models(self) -> int:
        self.require_defined()

        @lru_cache(maxsize=None)
        def count(level, state):
            if level == self.depth:
                return 1
            total = 1
            for a in self.domain.actions:
                succ = self.transition(a, state)
                if succ:
                    total *= sum(count(level + 1, s) for s in succ)
            return total

        return sum(count(0, s) for s in self.initial_states())

    def models(self, limit=None):
        """Enumerate models as dicts from action tuples to states."""
        self.require_defined()
        produced = 0
        prefixes = [p for p in self.strings if len(p) < self.depth]

        def extend(psi, queue):
            nonlocal produced
            if limit is not None and produced >= limit:
                return
            if not queue:
                produced += 1
                yield dict(psi)
                return
            p, a = queue[0]
            rest = queue[1:]
            if p not in psi:
                yield from extend(psi, rest)
                return
            succ = self.transition(a, psi[p])
            if not succ:
                yield from extend(psi, rest)
                return
            for s in succ:
                psi[p + (a,)] = s
                yield from extend(psi, rest)
                del psi[p + (a,)]

        queue = [(p, a) for p in prefixes for a in self.domain.actions]
        for s0 in self.initial_states():
            yield from extend({(): s0}, queue)

    def program_entails(self, literal) -> bool:
        self.require_defined()
        return all(literal in a for a in self.answer_sets)

    def explain_change(self, fluent: str, prefix, action: str) -> ChangeExplanation:
        prefix = tuple(prefix)
        after = prefix + (action,)
        for positive in (True, False):
            l = FluentExpr(fluent, not positive)
            if self.entails(ValueQuery(l, after)) and not self.entails(ValueQuery(l, prefix)):
                break
        else:
            raise NoChangeDetected(f"no entailed change of {fluent} across {action}")
        sit = result(action, situation(prefix))
        sg = "+" if positive else "-"
        causes = []
        names = ["Effect", "Caused"]
        if self.domain.level == "AT2":
            names.append("AbEffect")
        for n in names:
            atom = Literal(n + sg, (Const(fluent), sit))
            if self.program_entails(atom):
                causes.append(str(atom))
        return ChangeExplanation(fluent, positive, prefix, action, tuple(causes))


def _reasoner(d, depth=0, needed=0):
    return Reasoner(d, max(depth or 0, needed))


def initial_states(d, depth=0):
    return Reasoner(d, depth).initial_states()


def transition(d, action, state, depth=1):
    return Reasoner(d, max(depth, 1)).transition(action, state)


def enumerate_models(d, depth=1, limit=None):
    return list(Reasoner(d, depth).models(limit))


def entails(d, query, depth=None) -> bool:
    if isinstance(query, str):
        query = parse_query(query, d)
    return _reasoner(d, depth, len(query.actions)).entails(query)


def explain_change(d, fluent, prefix, action, depth=None):
    r = _reasoner(d, depth, len(prefix) + 1)
    return r.explain_change(fluent, prefix, action)
