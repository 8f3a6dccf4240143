"""Grammar-to-grammar simplification passes and the pipeline that chains them."""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .analysis import accessible_set, nullable_set, unit_pairs, useful_set
from .grammar import Grammar, Rule, Symbol, dedupe, lift_alphabet

MAX_NULLABLE_OCCURRENCES = 16


class Pass(enum.Enum):
    EMPTY = "empty"
    UNIT = "unit"
    USELESS = "useless"
    INACCESSIBLE = "inaccessible"


SAFE_ORDER = (Pass.EMPTY, Pass.UNIT, Pass.USELESS, Pass.INACCESSIBLE)


class EmptyLanguageError(ValueError):
    def __init__(self):
        super().__init__("language is empty; useless-symbol elimination undefined")


class TooManyNullables(ValueError):
    pass


@dataclass(frozen=True)
class PassReport:
    pass_: Pass
    rules_in: int
    rules_out: int
    added: tuple[Rule, ...]
    removed: tuple[Rule, ...]
    fresh_start: Symbol | None = None

    def as_dict(self) -> dict:
        return {
            "pass": self.pass_.value,
            "rules_in": self.rules_in,
            "rules_out": self.rules_out,
            "added": [str(r) for r in self.added],
            "removed": [str(r) for r in self.removed],
            "fresh_start": self.fresh_start.name if self.fresh_start else None,
        }


def _report(kind: Pass, before: Grammar, after: Grammar, fresh=None) -> PassReport:
    old, new = set(before.rules), set(after.rules)
    return PassReport(
        kind,
        len(before.rules),
        len(after.rules),
        tuple(r for r in after.rules if r not in old),
        tuple(r for r in before.rules if r not in new),
        fresh,
    )


def deletion_variants(rhs: Sequence[Symbol], nullable) -> list[tuple[Symbol, ...]]:
    """Every nonempty rhs obtained by deleting any subset of nullable occurrences.

    The untouched rhs comes first; the rest follow in a fixed order.
    """
    spots = [i for i, s in enumerate(rhs) if s.is_nonterminal and s in nullable]
    if len(spots) > MAX_NULLABLE_OCCURRENCES:
        raise TooManyNullables(
            f"rhs has {len(spots)} nullable occurrences (limit {MAX_NULLABLE_OCCURRENCES})"
        )
    out = []
    for keep in itertools.product((True, False), repeat=len(spots)):
        dropped = {i for i, k in zip(spots, keep) if not k}
        variant = tuple(s for i, s in enumerate(rhs) if i not in dropped)
        if variant:
            out.append(variant)
    return list(dedupe(out))


def eliminate_empty(g: Grammar, fresh_start_name: str | None = None) -> tuple[Grammar, PassReport]:
    """Remove empty rules behind a fresh start symbol.

    The result keeps at most one empty rule, ``new_start ->``, present exactly
    when the old start is nullable; the new start never occurs on a right side.
    """
    nullable = nullable_set(g)
    alpha = lift_alphabet(g, fresh_start_name)
    lift = alpha.lift
    new_start = alpha.new_start

    rules = [Rule(new_start, (lift(g.start),))]
    if g.start in nullable:
        rules.append(Rule(new_start, ()))
    for r in g.rules:
        for variant in deletion_variants(r.rhs, nullable):
            rules.append(Rule(lift(r.lhs), tuple(lift(s) for s in variant)))

    out = Grammar(new_start, alpha.nonterminals, alpha.terminals, dedupe(rules))
    return out, _report(Pass.EMPTY, g, out, new_start)


def eliminate_unit(g: Grammar) -> tuple[Grammar, PassReport]:
    """Replace unit rules by copying the non-unit rules they lead to."""
    pairs = unit_pairs(g)
    kept = [r for r in g.rules if not r.is_unit]
    rules = list(kept)
    order = {a: i for i, a in enumerate(g.nonterminals)}
    ordered = sorted(pairs.pairs, key=lambda p: (order.get(p[0], len(order)), p[0].name,
                                                   order.get(p[1], len(order)), p[1].name))
    for a, b in ordered:
        rules.extend(Rule(a, r.rhs) for r in g.rules_for(b) if not r.is_unit)
    out = g.with_rules(rules)
    return out, _report(Pass.UNIT, g, out)


def eliminate_useless(g: Grammar) -> tuple[Grammar, PassReport]:
    useful = useful_set(g)
    if g.start not in useful:
        raise EmptyLanguageError()
    out = g.with_rules(r for r in g.rules if r.lhs in useful and all(s in useful for s in r.rhs))
    return out, _report(Pass.USELESS, g, out)


def eliminate_inaccessible(g: Grammar) -> tuple[Grammar, PassReport]:
    accessible = accessible_set(g)
    out = g.with_rules(r for r in g.rules if r.lhs in accessible)
    return out, _report(Pass.INACCESSIBLE, g, out)


PASSES = {
    Pass.EMPTY: eliminate_empty,
    Pass.UNIT: eliminate_unit,
    Pass.USELESS: eliminate_useless,
    Pass.INACCESSIBLE: eliminate_inaccessible,
}


def is_safe_order(passes: Sequence[Pass]) -> bool:
    """True when ``passes`` is a subsequence of the safe order with no repeats."""
    positions = [SAFE_ORDER.index(p) for p in passes]
    return positions == sorted(set(positions))


def run_passes(g: Grammar, passes: Iterable[Pass | str]) -> tuple[Grammar, list[PassReport]]:
    passes = [Pass(p) for p in passes]
    if Pass.USELESS in passes and g.start not in useful_set(g):
        raise EmptyLanguageError()
    reports = []
    for p in passes:
        g, rep = PASSES[p](g)
        reports.append(rep)
    return g, reports


def simplify_pipeline(g: Grammar) -> tuple[Grammar, list[PassReport]]:
    """Empty, unit, useless then inaccessible elimination.

    Raises :class:`EmptyLanguageError` before any pass when ``g`` produces
    nothing at all.
    """
    return run_passes(g, SAFE_ORDER)
