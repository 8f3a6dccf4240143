"""Symbol analyses and the grammar predicates built on them.

Each analysis is a least fixpoint that sweeps the rules in stored order until
nothing changes; ``rounds`` counts the sweeps that changed something.
"""

from __future__ import annotations

from dataclasses import dataclass, fields

from .grammar import Grammar, Symbol


@dataclass(frozen=True)
class NullableSet:
    members: frozenset
    rounds: int

    def __contains__(self, s):
        return s in self.members


@dataclass(frozen=True)
class UnitPairs:
    pairs: frozenset
    rounds: int

    def __contains__(self, pair):
        return pair in self.pairs

    def targets(self, a: Symbol) -> set:
        return {b for x, b in self.pairs if x == a}


@dataclass(frozen=True)
class UsefulSet:
    members: frozenset
    rounds: int

    def __contains__(self, s):
        return s in self.members


@dataclass(frozen=True)
class AccessibleSet:
    members: frozenset
    rounds: int

    def __contains__(self, s):
        return s in self.members


def nullable_set(g: Grammar) -> NullableSet:
    found: set[Symbol] = set()
    rounds = 0
    while True:
        grew = False
        for r in g.rules:
            if r.lhs not in found and all(s in found for s in r.rhs):
                found.add(r.lhs)
                grew = True
        if not grew:
            break
        rounds += 1
    return NullableSet(frozenset(found), rounds)


def unit_pairs(g: Grammar) -> UnitPairs:
    """Pairs ``(a, b)`` such that ``[a]`` rewrites to ``[b]`` by one or more unit rules.

    ``(a, a)`` is only present when ``a`` lies on a unit cycle.
    """
    step: dict[Symbol, set] = {}
    for r in g.rules:
        if r.is_unit:
            step.setdefault(r.lhs, set()).add(r.rhs[0])
    pairs = {(a, b) for a, bs in step.items() for b in bs}
    rounds = 0
    while True:
        new = {(a, c) for a, b in pairs for c in step.get(b, ())} - pairs
        if not new:
            break
        pairs |= new
        rounds += 1
    return UnitPairs(frozenset(pairs), rounds)


def useful_set(g: Grammar) -> UsefulSet:
    found: set[Symbol] = set(g.terminals)
    found.update(s for r in g.rules for s in r.rhs if s.is_terminal)
    rounds = 0
    while True:
        grew = False
        for r in g.rules:
            if r.lhs not in found and all(s in found for s in r.rhs):
                found.add(r.lhs)
                grew = True
        if not grew:
            break
        rounds += 1
    return UsefulSet(frozenset(found), rounds)


def accessible_set(g: Grammar) -> AccessibleSet:
    found = {g.start}
    rounds = 0
    while True:
        grew = False
        for r in g.rules:
            if r.lhs in found:
                for s in r.rhs:
                    if s not in found:
                        found.add(s)
                        grew = True
        if not grew:
            break
        rounds += 1
    return AccessibleSet(frozenset(found), rounds)


@dataclass(frozen=True)
class PredicateReport:
    has_no_empty_rules: bool
    has_one_empty_rule: bool
    has_no_unit_rules: bool
    has_no_useless_symbols: bool
    has_no_inaccessible_symbols: bool
    start_symbol_not_in_rhs: bool
    non_empty: bool
    generates_empty: bool

    def as_dict(self) -> dict[str, bool]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


def predicates(g: Grammar) -> PredicateReport:
    empties = [r for r in g.rules if r.is_empty]
    useful = useful_set(g)
    accessible = accessible_set(g)
    # occurrence-based: declared symbols that no rule mentions are ignored
    occurring = set(g.symbols_in_rules()) | {g.start}
    return PredicateReport(
        has_no_empty_rules=not empties,
        has_one_empty_rule=len(empties) == 1 and empties[0].lhs == g.start,
        has_no_unit_rules=not any(r.is_unit for r in g.rules),
        has_no_useless_symbols=all(s in useful for s in occurring),
        has_no_inaccessible_symbols=all(s in accessible for s in occurring),
        start_symbol_not_in_rhs=not any(g.start in r.rhs for r in g.rules),
        non_empty=g.start in useful,
        generates_empty=g.start in nullable_set(g),
    )


def simplification_holds(g_out: Grammar, generates_empty: bool) -> dict[str, bool]:
    """The six structural conjuncts expected of a fully simplified grammar."""
    p = predicates(g_out)
    return {
        "has_no_inaccessible_symbols": p.has_no_inaccessible_symbols,
        "has_no_useless_symbols": p.has_no_useless_symbols,
        "generates_empty -> has_one_empty_rule": not generates_empty or p.has_one_empty_rule,
        "not generates_empty -> has_no_empty_rules": generates_empty or p.has_no_empty_rules,
        "has_no_unit_rules": p.has_no_unit_rules,
        "start_symbol_not_in_rhs": p.start_symbol_not_in_rhs,
    }
