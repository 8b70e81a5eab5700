"""Domain descriptions of the action languages AT0, AT1 and AT2.

Concrete syntax (``.atd`` files), one proposition per line::

    domain Switch-Power
    level AT0
    fluents On, Power, Switch
    actions Cut-Power

    initially On
    c1: On is caused if Switch with absence -On
    c2: -On is caused if -Power
    Cut-Power causes -Power

Labels (``c1:``) are optional; unlabelled propositions get ``p<i>``
where ``i`` is the 1-based position in the file.  ``%`` and ``#`` start
comments and a trailing ``.`` is ignored.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace

LEVELS = ("AT0", "AT1", "AT2")

RESERVED = {
    "initially", "is", "caused", "if", "with", "absence", "causes", "normally",
    "abnormally", "observed", "after", "abnormal", "before", "more", "preferred",
    "than", "domain", "level", "fluents", "actions",
}


class DomainError(Exception):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = f"{line}:{column}: " if line is not None else ""
        super().__init__(where + message)


@dataclass(frozen=True)
class FluentExpr:
    fluent: str
    negated: bool = False

    def complement(self) -> "FluentExpr":
        return FluentExpr(self.fluent, not self.negated)

    def __str__(self):
        return ("-" if self.negated else "") + self.fluent


def fe(text: str) -> FluentExpr:
    text = text.strip()
    if text.startswith("-") or text.startswith("¬"):
        return FluentExpr(text[1:], True)
    return FluentExpr(text)


def _list(items):
    return ", ".join(map(str, items))


@dataclass(frozen=True)
class Initial:
    label: str
    literal: FluentExpr
    line: int | None = field(default=None, compare=False)
    kind = "initial"

    def text(self):
        return f"initially {self.literal}"


@dataclass(frozen=True)
class Causal:
    label: str
    effect: FluentExpr
    pre: tuple = ()
    absent: tuple = ()
    line: int | None = field(default=None, compare=False)
    kind = "causal"

    def text(self):
        out = f"{self.effect} is caused"
        if self.pre or self.absent:
            out += " if"
        if self.pre:
            out += " " + _list(self.pre)
        if self.absent:
            out += " with absence " + _list(self.absent)
        return out


@dataclass(frozen=True)
class Effect:
    label: str
    action: str
    effect: FluentExpr
    pre: tuple = ()
    mode: str = "plain"  # plain | normal | abnormal
    line: int | None = field(default=None, compare=False)
    kind = "effect"

    def text(self):
        verb = {"plain": "causes", "normal": "normally causes", "abnormal": "abnormally causes"}[self.mode]
        out = f"{self.action} {verb} {self.effect}"
        if self.pre:
            out += " if " + _list(self.pre)
        return out


@dataclass(frozen=True)
class Observation:
    label: str
    effect: FluentExpr
    pre: tuple = ()
    absent: tuple = ()
    actions: tuple = ()
    line: int | None = field(default=None, compare=False)
    kind = "observation"

    def text(self):
        out = f"{self.effect} is observed"
        if self.pre:
            out += " if " + _list(self.pre)
        if self.absent:
            out += " with absence " + _list(self.absent)
        if self.actions:
            return out + " after " + _list(self.actions)
        return "initially " + out


@dataclass(frozen=True)
class AbnormalCondition:
    label: str
    action: str
    before: tuple = ()
    after: tuple = ()
    line: int | None = field(default=None, compare=False)
    kind = "abnormal"

    def text(self):
        out = f"{self.action} is abnormal if"
        if self.before:
            out += " before " + _list(self.before)
        if self.after:
            out += " after " + _list(self.after)
        return out


@dataclass(frozen=True)
class Preference:
    label: str
    preferred: str
    other: str
    line: int | None = field(default=None, compare=False)
    kind = "preference"

    def text(self):
        return f"{self.preferred} is more preferred than {self.other}"


LEGAL = {
    "AT0": {"initial", "causal", "effect:plain", "preference"},
    "AT1": {"observation", "causal", "effect:plain", "preference"},
    "AT2": {"observation", "causal", "effect:normal", "effect:abnormal", "abnormal", "preference"},
}


def kind_key(p) -> str:
    return f"effect:{p.mode}" if p.kind == "effect" else p.kind


@dataclass(frozen=True)
class DomainDescription:
    name: str
    level: str
    fluents: tuple
    actions: tuple
    propositions: tuple = ()

    def __post_init__(self):
        seen = set()
        for p in self.propositions:
            if p.label in seen:
                raise DomainError(f"duplicate label {p.label}", p.line)
            seen.add(p.label)

    def by_label(self, label):
        for p in self.propositions:
            if p.label == label:
                return p
        raise KeyError(label)

    def of_kind(self, kind, mode=None):
        return [p for p in self.propositions
                if p.kind == kind and (mode is None or getattr(p, "mode", None) == mode)]

    def add(self, *props) -> "DomainDescription":
        return replace(self, propositions=self.propositions + tuple(props))

    def with_level(self, level) -> "DomainDescription":
        return replace(self, level=level)

    def __str__(self):
        return render_domain(self)


@dataclass(frozen=True)
class ValueQuery:
    literal: FluentExpr
    actions: tuple = ()

    def __str__(self):
        if not self.actions:
            return f"initially {self.literal}"
        return f"{self.literal} after {_list(self.actions)}"


@dataclass(frozen=True)
class Diagnostic:
    message: str
    label: str | None = None
    line: int | None = None

    def __str__(self):
        where = f"line {self.line}: " if self.line is not None else ""
        return where + self.message


# ---------------------------------------------------------------- parser

_TOKEN = re.compile(r"\s*(?:(?P<word>[A-Za-z0-9_](?:[A-Za-z0-9_']|-(?=[A-Za-z0-9_]))*)|(?P<neg>[-¬])|(?P<punct>[,:]))")


def _tokenize(text, lineno):
    toks = []
    pos = 0
    text = text.rstrip()
    if text.endswith("."):
        text = text[:-1]
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip() == "":
                break
            raise DomainError(f"unexpected character {text[pos]!r}", lineno, pos + 1)
        kind = m.lastgroup
        toks.append((kind, m.group(kind), m.start(kind) + 1))
        pos = m.end()
    return toks


class _Line:
    def __init__(self, toks, lineno):
        self.toks = toks
        self.i = 0
        self.lineno = lineno

    def fail(self, msg):
        col = self.toks[self.i][2] if self.i < len(self.toks) else (self.toks[-1][2] if self.toks else 1)
        raise DomainError(msg, self.lineno, col)

    def at_end(self):
        return self.i >= len(self.toks)

    def peek_words(self, *words):
        for k, w in enumerate(words):
            j = self.i + k
            if j >= len(self.toks) or self.toks[j][0] != "word" or self.toks[j][1] != w:
                return False
        return True

    def take_words(self, *words):
        if not self.peek_words(*words):
            return False
        self.i += len(words)
        return True

    def expect_words(self, *words):
        if not self.take_words(*words):
            self.fail("expected '" + " ".join(words) + "'")

    def word(self, what="identifier"):
        if self.at_end() or self.toks[self.i][0] != "word":
            self.fail(f"expected {what}")
        w = self.toks[self.i][1]
        if w in RESERVED:
            self.fail(f"expected {what}, found keyword '{w}'")
        self.i += 1
        return w

    def literal(self):
        neg = False
        if not self.at_end() and self.toks[self.i][0] == "neg":
            neg = True
            self.i += 1
        return FluentExpr(self.word("fluent"), neg)

    def literal_list(self, stops=()):
        out = []
        if self.at_end() or any(self.peek_words(s) for s in stops):
            return tuple(out)
        out.append(self.literal())
        while not self.at_end() and self.toks[self.i][0] == "punct" and self.toks[self.i][1] == ",":
            self.i += 1
            out.append(self.literal())
        return tuple(out)

    def name_list(self):
        out = [self.word("name")]
        while not self.at_end() and self.toks[self.i][1] == ",":
            self.i += 1
            out.append(self.word("name"))
        return tuple(out)

    def done(self):
        if not self.at_end():
            self.fail(f"unexpected '{self.toks[self.i][1]}'")


def _strip_comment(line):
    for c in ("%", "#"):
        k = line.find(c)
        if k >= 0:
            line = line[:k]
    return line


def _proposition(ln: _Line, label):
    line = ln.lineno
    if ln.take_words("initially"):
        l = ln.literal()
        if ln.take_words("is", "observed"):
            pre = ln.literal_list(("with",)) if ln.take_words("if") else ()
            absent = ln.literal_list() if ln.take_words("with", "absence") else ()
            ln.done()
            return Observation(label, l, pre, absent, (), line)
        ln.done()
        return Initial(label, l, line)
    negated = not ln.at_end() and ln.toks[ln.i][0] == "neg"
    start = ln.i
    first = ln.literal() if negated else FluentExpr(ln.word())
    if ln.take_words("is", "caused"):
        pre = ln.literal_list(("with",)) if ln.take_words("if") else ()
        absent = ln.literal_list() if ln.take_words("with", "absence") else ()
        ln.done()
        return Causal(label, first, pre, absent, line)
    if ln.take_words("is", "observed"):
        pre = ln.literal_list(("with", "after")) if ln.take_words("if") else ()
        absent = ln.literal_list(("after",)) if ln.take_words("with", "absence") else ()
        actions = ln.name_list() if ln.take_words("after") else ()
        ln.done()
        return Observation(label, first, pre, absent, actions, line)
    if negated:
        ln.i = start
        ln.fail("expected 'is caused' or 'is observed' after a negated fluent")
    name = first.fluent
    for words, mode in ((("causes",), "plain"), (("normally", "causes"), "normal"),
                        (("abnormally", "causes"), "abnormal")):
        if ln.take_words(*words):
            eff = ln.literal()
            pre = ln.literal_list() if ln.take_words("if") else ()
            ln.done()
            return Effect(label, name, eff, pre, mode, line)
    if ln.take_words("is", "abnormal", "if"):
        before = ln.literal_list(("after",)) if ln.take_words("before") else ()
        after = ln.literal_list() if ln.take_words("after") else ()
        ln.done()
        return AbnormalCondition(label, name, before, after, line)
    if ln.take_words("is", "more", "preferred", "than"):
        other = ln.word("label")
        ln.done()
        return Preference(label, name, other, line)
    ln.fail("unknown proposition form")


def _infer_level(props):
    kinds = {kind_key(p) for p in props}
    if kinds & {"effect:normal", "effect:abnormal", "abnormal"}:
        return "AT2"
    if "observation" in kinds:
        return "AT1"
    return "AT0"


def parse_domain(text: str) -> DomainDescription:
    name, level = "Domain", None
    fluents, actions = None, None
    props = []
    labels = set()
    raw = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = _strip_comment(line)
        if not line.strip():
            continue
        toks = _tokenize(line, lineno)
        if not toks:
            continue
        ln = _Line(toks, lineno)
        head = toks[0][1]
        if toks[0][0] == "word" and head in ("domain", "level", "fluents", "actions"):
            ln.i = 1
            if head == "domain":
                name = ln.word("domain name")
                if not ln.at_end():
                    level = ln.word("level")
            elif head == "level":
                level = ln.word("level")
            elif head == "fluents":
                fluents = ln.name_list()
            else:
                actions = ln.name_list() if not ln.at_end() else ()
            ln.done()
            continue
        label = None
        if len(toks) > 1 and toks[1] == ("punct", ":", toks[1][2]):
            label = ln.word("label")
            ln.i = 2
        prop = _proposition(ln, label)
        raw.append(prop)
    for k, p in enumerate(raw, 1):
        lab = p.label or f"p{k}"
        if lab in labels:
            raise DomainError(f"duplicate label {lab}", p.line)
        labels.add(lab)
        props.append(replace(p, label=lab))
    if level is None:
        level = _infer_level(props)
    if level not in LEVELS:
        raise DomainError(f"unknown level {level}")
    if fluents is None:
        raise DomainError("missing 'fluents' declaration")
    if actions is None:
        actions = ()
    _check_symbols(props, set(fluents), set(actions))
    return DomainDescription(name, level, tuple(fluents), tuple(actions), tuple(props))


def _check_symbols(props, fluents, actions):
    for p in props:
        lits, acts = [], []
        if p.kind == "initial":
            lits = [p.literal]
        elif p.kind == "causal":
            lits = [p.effect, *p.pre, *p.absent]
        elif p.kind == "effect":
            lits, acts = [p.effect, *p.pre], [p.action]
        elif p.kind == "observation":
            lits, acts = [p.effect, *p.pre, *p.absent], list(p.actions)
        elif p.kind == "abnormal":
            lits, acts = [*p.before, *p.after], [p.action]
        for l in lits:
            if l.fluent not in fluents:
                raise DomainError(f"undeclared fluent {l.fluent}", p.line)
        for a in acts:
            if a not in actions:
                raise DomainError(f"undeclared action {a}", p.line)


def validate_domain(d: DomainDescription) -> list:
    diags = []
    legal = LEGAL[d.level]
    for p in d.propositions:
        if kind_key(p) not in legal:
            what = kind_key(p).replace("effect:", "").replace("plain", "effect")
            diags.append(Diagnostic(f"{p.label}: {what} proposition not allowed in {d.level}", p.label, p.line))
    labels = {p.label: p for p in d.propositions}
    for p in d.propositions:
        if p.kind != "preference":
            continue
        for ref in (p.preferred, p.other):
            target = labels.get(ref)
            if target is None:
                diags.append(Diagnostic(f"{p.label}: unknown label {ref}", p.label, p.line))
            elif target.kind not in ("causal", "observation"):
                diags.append(Diagnostic(
                    f"{p.label}: {ref} is not a causal or observation proposition", p.label, p.line))
    return diags


def render_domain(d: DomainDescription) -> str:
    lines = [f"domain {d.name}", f"level {d.level}", "fluents " + _list(d.fluents)]
    lines.append(("actions " + _list(d.actions)) if d.actions else "actions")
    lines.append("")
    for p in d.propositions:
        lines.append(f"{p.label}: {p.text()}")
    return "\n".join(lines) + "\n"


def parse_query(text: str, d: DomainDescription | None = None) -> ValueQuery:
    toks = _tokenize(_strip_comment(text), 1)
    ln = _Line(toks, 1)
    if ln.take_words("initially"):
        l = ln.literal()
        ln.done()
        q = ValueQuery(l, ())
    else:
        l = ln.literal()
        actions = ln.name_list() if ln.take_words("after") else ()
        ln.done()
        q = ValueQuery(l, actions)
    if d is not None:
        if q.literal.fluent not in d.fluents:
            raise DomainError(f"undeclared fluent {q.literal.fluent}")
        for a in q.actions:
            if a not in d.actions:
                raise DomainError(f"undeclared action {a}")
    return q


def load_domain(path) -> DomainDescription:
    with open(path, encoding="utf-8") as fh:
        return parse_domain(fh.read())
