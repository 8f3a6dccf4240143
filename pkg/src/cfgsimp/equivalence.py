"""Bounded language equivalence between two grammars over the same terminals."""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace

from .derivation import Answer, DerivationTrace, SearchCaps, enumerate_language, produces, word_key
from .grammar import Grammar, Symbol


class Status(enum.Enum):
    EQUIVALENT_UP_TO_BOUND = "equivalent-up-to-bound"
    INEQUIVALENT = "inequivalent"
    INCONCLUSIVE = "inconclusive"


class AlphabetMismatch(ValueError):
    pass


@dataclass(frozen=True)
class EquivVerdict:
    status: Status
    bound: int
    counterexample: tuple[Symbol, ...] | None = None
    produced_by: int | None = None  # 1 or 2: the side that produces the counterexample
    trace: DerivationTrace | None = None
    complete: tuple[bool, bool] = (False, False)

    def __str__(self):
        text = f"{self.status.value} (max_len {self.bound})"
        if self.counterexample is not None:
            word = " ".join(s.name for s in self.counterexample) or "<eps>"
            text += f": '{word}' produced only by grammar {self.produced_by}"
        return text


def bounded_equiv(g1: Grammar, g2: Grammar, max_len: int, caps: SearchCaps | None = None) -> EquivVerdict:
    """Compare the languages of ``g1`` and ``g2`` on words up to ``max_len``.

    A word counts as a counterexample only if the other side's search for it
    was exhaustive; when that cannot be established the verdict is
    INCONCLUSIVE rather than INEQUIVALENT.
    """
    t1 = {t.name for t in g1.terminals}
    t2 = {t.name for t in g2.terminals}
    if t1 != t2:
        raise AlphabetMismatch(f"terminal alphabets differ: {sorted(t1 ^ t2)}")

    grammars = (g1, g2)
    results = (enumerate_language(g1, max_len, caps), enumerate_language(g2, max_len, caps))
    complete = (results[0].complete, results[1].complete)
    names = [{tuple(s.name for s in w): w for w in r.words} for r in results]

    candidates = []
    for side in (0, 1):
        other = 1 - side
        for key, word in names[side].items():
            if key not in names[other]:
                candidates.append((word_key(word), side, word))
    candidates.sort(key=lambda c: (c[0], c[1]))

    # targeted searches on an incomplete side share one visited-forms budget
    budget = (caps or SearchCaps()).resolve(max_len).max_visited
    for _, side, word in candidates:
        other = 1 - side
        if complete[other]:
            absent = True
        elif budget <= 0:
            continue
        else:
            probe_caps = replace(caps or SearchCaps(), max_visited=budget)
            probe = produces(grammars[other], [s.name for s in word], probe_caps)
            budget -= probe.stats.visited
            absent = probe.answer is Answer.NO
        if absent:
            witness = produces(grammars[side], [s.name for s in word], caps)
            if witness.trace is None:
                continue
            return EquivVerdict(Status.INEQUIVALENT, max_len, word, side + 1, witness.trace, complete)

    if not candidates and all(complete):
        return EquivVerdict(Status.EQUIVALENT_UP_TO_BOUND, max_len, complete=complete)
    return EquivVerdict(Status.INCONCLUSIVE, max_len, complete=complete)
