"""Value types for context-free grammars.

A grammar is a start symbol, declared nonterminal and terminal alphabets and a
duplicate-free, insertion-ordered tuple of rules.  Construction never fails on
grammar-level problems; call :func:`validate` to get the list of violations.
Only malformed symbol names are rejected eagerly.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

RESERVED = ("->", "|", "#", ":")
_WS = re.compile(r"\s")


class Tag(enum.Enum):
    NONTERMINAL = "N"
    TERMINAL = "T"


@dataclass(frozen=True)
class Symbol:
    tag: Tag
    name: str

    def __post_init__(self):
        if not check_name(self.name):
            raise ValueError(f"invalid symbol name {self.name!r}")

    @property
    def is_terminal(self) -> bool:
        return self.tag is Tag.TERMINAL

    @property
    def is_nonterminal(self) -> bool:
        return self.tag is Tag.NONTERMINAL

    def __str__(self):
        return self.name

    def __repr__(self):
        kind = "N" if self.is_nonterminal else "T"
        return f"{kind}({self.name!r})"


def check_name(name) -> bool:
    if not isinstance(name, str) or not name or _WS.search(name):
        return False
    return not any(r in name for r in RESERVED)


def N(name: str) -> Symbol:
    return Symbol(Tag.NONTERMINAL, name)


def T(name: str) -> Symbol:
    return Symbol(Tag.TERMINAL, name)


SententialForm = tuple  # tuple[Symbol, ...]
Sentence = tuple  # tuple[Symbol, ...] with every tag TERMINAL


@dataclass(frozen=True)
class Rule:
    lhs: Symbol
    rhs: tuple[Symbol, ...] = ()

    def __post_init__(self):
        if not isinstance(self.rhs, tuple):
            object.__setattr__(self, "rhs", tuple(self.rhs))

    @property
    def is_empty(self) -> bool:
        return not self.rhs

    @property
    def is_unit(self) -> bool:
        return len(self.rhs) == 1 and self.rhs[0].is_nonterminal

    def __str__(self):
        right = " ".join(s.name for s in self.rhs)
        return f"{self.lhs.name} -> {right}".rstrip()


def dedupe(items: Iterable) -> tuple:
    """Drop repeats, keeping first occurrences in order."""
    return tuple(dict.fromkeys(items))


@dataclass(frozen=True)
class Grammar:
    start: Symbol
    nonterminals: tuple[Symbol, ...]
    terminals: tuple[Symbol, ...]
    rules: tuple[Rule, ...] = ()
    _by_lhs: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        for name in ("nonterminals", "terminals", "rules"):
            value = getattr(self, name)
            if not isinstance(value, tuple):
                object.__setattr__(self, name, tuple(value))

    @classmethod
    def build(cls, start, nonterminals, terminals, rules) -> "Grammar":
        """Build from plain names; rules are ``(lhs, [names...])`` pairs.

        Rhs names are tagged by looking them up in the declared alphabets, so
        an undeclared name raises ``KeyError``.  Duplicate rules and repeated
        declarations are dropped.
        """
        nts = dedupe(N(n) for n in nonterminals)
        ts = dedupe(T(t) for t in terminals)
        lookup = {s.name: s for s in ts}
        lookup.update({s.name: s for s in nts})
        out = []
        for lhs, rhs in rules:
            if isinstance(rhs, str):
                rhs = rhs.split()
            out.append(Rule(N(lhs), tuple(lookup[x] for x in rhs)))
        return cls(N(start), nts, ts, dedupe(out))

    def rules_for(self, lhs: Symbol) -> tuple[Rule, ...]:
        if self._by_lhs is None:
            index: dict[Symbol, list[Rule]] = {}
            for r in self.rules:
                index.setdefault(r.lhs, []).append(r)
            object.__setattr__(self, "_by_lhs", {k: tuple(v) for k, v in index.items()})
        return self._by_lhs.get(lhs, ())

    def with_rules(self, rules: Iterable[Rule]) -> "Grammar":
        return Grammar(self.start, self.nonterminals, self.terminals, dedupe(rules))

    def symbols_in_rules(self) -> tuple[Symbol, ...]:
        seen: dict[Symbol, None] = {}
        for r in self.rules:
            seen[r.lhs] = None
            for s in r.rhs:
                seen[s] = None
        return tuple(seen)

    def __str__(self):
        from .gram_io import serialize_grammar

        return serialize_grammar(self)


@dataclass(frozen=True)
class Violation:
    kind: str
    message: str
    rule: Rule | None = None
    symbol: Symbol | None = None

    def __str__(self):
        return self.message


def validate(g: Grammar) -> list[Violation]:
    """Return every violated grammar invariant; an empty list means valid."""
    out: list[Violation] = []
    nts = set(g.nonterminals)
    ts = set(g.terminals)

    for s in g.nonterminals:
        if not s.is_nonterminal:
            out.append(Violation("bad-tag", f"{s.name} declared as nonterminal but tagged terminal", symbol=s))
    for s in g.terminals:
        if not s.is_terminal:
            out.append(Violation("bad-tag", f"{s.name} declared as terminal but tagged nonterminal", symbol=s))
    if len(nts) != len(g.nonterminals) or len(ts) != len(g.terminals):
        out.append(Violation("duplicate-declaration", "alphabet declares a symbol twice"))
    clash = {s.name for s in g.nonterminals} & {s.name for s in g.terminals}
    for name in sorted(clash):
        out.append(Violation("alphabet-overlap", f"{name} declared as both terminal and nonterminal"))

    if g.start not in nts:
        out.append(Violation("start-undeclared", f"start symbol {g.start.name} is not a declared nonterminal",
                             symbol=g.start))

    seen: set[Rule] = set()
    for r in g.rules:
        if r in seen:
            out.append(Violation("duplicate-rule", f"duplicate rule {r}", rule=r))
        seen.add(r)
        if not r.lhs.is_nonterminal:
            out.append(Violation("lhs-terminal", f"rule {r} has a terminal on the left", rule=r, symbol=r.lhs))
        elif r.lhs not in nts:
            out.append(Violation("undeclared-symbol", f"nonterminal {r.lhs.name} in rule {r} is not declared",
                                 rule=r, symbol=r.lhs))
        for s in r.rhs:
            if s.is_nonterminal and s not in nts:
                out.append(Violation("undeclared-symbol", f"nonterminal {s.name} in rule {r} is not declared",
                                     rule=r, symbol=s))
            elif s.is_terminal and s not in ts:
                out.append(Violation("undeclared-symbol", f"terminal {s.name} in rule {r} is not declared",
                                     rule=r, symbol=s))
    return out


class InvalidGrammar(ValueError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


def check(g: Grammar) -> Grammar:
    """Raise :class:`InvalidGrammar` unless ``g`` is valid."""
    problems = validate(g)
    if problems:
        raise InvalidGrammar(problems)
    return g


def max_rhs_len(g: Grammar) -> int:
    return max((len(r.rhs) for r in g.rules), default=0)


class NameCollision(ValueError):
    pass


@dataclass(frozen=True)
class LiftedAlphabet:
    """Nonterminals of a grammar plus one fresh start symbol.

    The renaming of old nonterminals is the identity on names; only the fresh
    start has to be chosen so that it collides with nothing.
    """

    nonterminals: tuple[Symbol, ...]
    terminals: tuple[Symbol, ...]
    new_start: Symbol
    renaming: dict = field(compare=False)

    def lift(self, s: Symbol) -> Symbol:
        return self.renaming[s] if s.is_nonterminal else s

    def unlift(self, s: Symbol, old_start: Symbol) -> Symbol:
        if s == self.new_start:
            return old_start
        return s


DEFAULT_FRESH_START = "S0"


def fresh_name(base: str, taken: Iterable[str]) -> str:
    taken = set(taken)
    if base not in taken:
        return base
    i = 1
    while f"{base}_{i}" in taken:
        i += 1
    return f"{base}_{i}"


def lift_alphabet(g: Grammar, fresh_start_name: str | None = None) -> LiftedAlphabet:
    """Extend the nonterminal alphabet of ``g`` with a fresh start symbol.

    With no explicit name, ``S0`` is used and suffixed (``S0_1``, ...) until it
    is unused.  An explicit name that is already taken is an error.
    """
    taken = {s.name for s in g.nonterminals} | {s.name for s in g.terminals}
    taken |= {s.name for s in g.symbols_in_rules()} | {g.start.name}
    if fresh_start_name is None:
        name = fresh_name(DEFAULT_FRESH_START, taken)
    else:
        if fresh_start_name in taken:
            raise NameCollision(f"fresh start name {fresh_start_name!r} collides with an existing symbol")
        name = fresh_start_name
    new_start = N(name)
    renaming = {s: s for s in g.nonterminals}
    return LiftedAlphabet((*g.nonterminals, new_start), g.terminals, new_start, renaming)


def symbols_of(names: Sequence[str], g: Grammar) -> tuple[Symbol, ...]:
    """Resolve whitespace-free names to symbols declared in ``g``."""
    lookup = {s.name: s for s in g.terminals}
    lookup.update({s.name: s for s in g.nonterminals})
    out = []
    for n in names:
        if n not in lookup:
            raise KeyError(f"undeclared symbol {n!r}")
        out.append(lookup[n])
    return tuple(out)
