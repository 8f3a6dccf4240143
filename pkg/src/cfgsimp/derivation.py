"""Derivations: single steps, replayable traces and bounded search.

All searches here only ever look at a finite window of a language.  Every
result carries a ``complete`` flag; a negative answer is trustworthy only when
the search ran to exhaustion without hitting one of the :class:`SearchCaps`.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Sequence

from .grammar import Grammar, Rule, Symbol


class DerivationError(ValueError):
    """A derivation step could not be applied."""

    def __init__(self, message, index=None):
        self.index = index
        super().__init__(message if index is None else f"step {index}: {message}")


class CutOutOfRange(DerivationError):
    pass


class SymbolMismatch(DerivationError):
    pass


class RuleNotInGrammar(DerivationError):
    pass


@dataclass(frozen=True)
class DerivationStep:
    cut: int
    rule: Rule

    def __str__(self):
        return f"@{self.cut}: {self.rule}"


@dataclass(frozen=True)
class DerivationTrace:
    origin: tuple[Symbol, ...]
    steps: tuple[DerivationStep, ...] = ()

    def __len__(self):
        return len(self.steps)


def apply_step(g: Grammar, form: Sequence[Symbol], step: DerivationStep) -> tuple[Symbol, ...]:
    form = tuple(form)
    rule = step.rule
    if rule not in g.rules_for(rule.lhs):
        raise RuleNotInGrammar(f"rule {rule} is not a rule of the grammar")
    if not 0 <= step.cut < len(form):
        raise CutOutOfRange(f"cut {step.cut} outside form of length {len(form)}")
    if form[step.cut] != rule.lhs:
        raise SymbolMismatch(f"symbol at {step.cut} is {form[step.cut].name}, rule rewrites {rule.lhs.name}")
    return form[: step.cut] + rule.rhs + form[step.cut + 1 :]


def replay(g: Grammar, trace: DerivationTrace) -> tuple[Symbol, ...]:
    form = tuple(trace.origin)
    for i, step in enumerate(trace.steps):
        try:
            form = apply_step(g, form, step)
        except DerivationError as exc:
            raise type(exc)(str(exc), index=i) from None
    return form


def min_yield(g: Grammar) -> dict[Symbol, float]:
    """Length of the shortest terminal string derivable from each nonterminal.

    Nonterminals with no terminating derivation map to ``math.inf``.
    """
    best: dict[Symbol, float] = {a: math.inf for a in g.nonterminals}
    for r in g.rules:
        best.setdefault(r.lhs, math.inf)

    def cost(s):
        return 1 if s.is_terminal else best.get(s, math.inf)

    changed = True
    while changed:
        changed = False
        for r in g.rules:
            c = sum(cost(s) for s in r.rhs)
            if c < best[r.lhs]:
                best[r.lhs] = c
                changed = True
    return best


@dataclass(frozen=True)
class SearchCaps:
    """Bounds on a derivation search; ``None`` means the default for the bound.

    Defaults for a target length ``n``: forms up to ``2n + 4`` symbols,
    200,000 visited forms and ``10 (n + 1)`` derivation steps.
    """

    max_form_len: int | None = None
    max_visited: int | None = None
    max_depth: int | None = None

    def resolve(self, max_len: int) -> "SearchCaps":
        return SearchCaps(
            self.max_form_len if self.max_form_len is not None else 2 * max_len + 4,
            self.max_visited if self.max_visited is not None else 200_000,
            self.max_depth if self.max_depth is not None else 10 * (max_len + 1),
        )


@dataclass
class SearchStats:
    explored: int = 0
    pruned: int = 0
    visited: int = 0
    cap_hits: dict = field(default_factory=dict)
    method: str = "leftmost"
    bfs_cap_hits: dict = field(default_factory=dict)

    def hit(self, cap: str):
        self.cap_hits[cap] = self.cap_hits.get(cap, 0) + 1

    @property
    def complete(self) -> bool:
        return not self.cap_hits


def word_key(word: Sequence[Symbol]):
    return (len(word), tuple(s.name for s in word))


@dataclass(frozen=True)
class EnumerationResult:
    words: tuple[tuple[Symbol, ...], ...]
    complete: bool
    stats: SearchStats

    def names(self) -> list[tuple[str, ...]]:
        return [tuple(s.name for s in w) for w in self.words]


class _Encoded:
    """Integer encoding of a grammar for the hot search loops.

    Nonterminal ``i`` is ``i``; terminals are negative.
    """

    def __init__(self, g: Grammar):
        syms = list(g.nonterminals)
        for r in g.rules:
            if r.lhs not in syms:
                syms.append(r.lhs)
            syms.extend(s for s in r.rhs if s.is_nonterminal and s not in syms)
        self.nts = syms
        self.code = {s: i for i, s in enumerate(syms)}
        terms = list(g.terminals)
        for r in g.rules:
            terms.extend(s for s in r.rhs if s.is_terminal and s not in terms)
        self.terms = terms
        for j, t in enumerate(terms):
            self.code[t] = -(j + 1)
        my = min_yield(g)
        self.yield_of = [my.get(s, math.inf) for s in syms]
        self.by_lhs: list[list] = [[] for _ in syms]
        for r in g.rules:
            rhs = tuple(self.code[s] for s in r.rhs)
            y = sum(1 if c < 0 else self.yield_of[c] for c in rhs)
            self.by_lhs[self.code[r.lhs]].append((rhs, y, r))

    def encode(self, form):
        return tuple(self.code[s] for s in form)

    def decode(self, form):
        return tuple(self.nts[c] if c >= 0 else self.terms[-c - 1] for c in form)

    def form_yield(self, form):
        return sum(1 if c < 0 else self.yield_of[c] for c in form)


def enumerate_language(
    g: Grammar, max_len: int, caps: SearchCaps | None = None, fallback: bool = True
) -> EnumerationResult:
    """All sentences of length ``<= max_len`` produced by ``g``.

    Breadth-first over leftmost derivations from the start symbol, pruning
    forms whose minimal yield exceeds ``max_len`` and forms already seen.
    Grammars with erasable cycles (``A -> A A | ``) have unboundedly long
    forms at a fixed yield and always hit a cap; for those, unless
    ``fallback`` is off, the words are recomputed as the least fixpoint of
    per-nonterminal word sets truncated at ``max_len``, which is exhaustive
    and bounded by ``max_visited`` stored words.
    """
    caps = (caps or SearchCaps()).resolve(max_len)
    stats = SearchStats()
    if g.start not in g.nonterminals and not g.rules_for(g.start):
        return EnumerationResult((), True, stats)
    enc = _Encoded(g)
    words = _leftmost_words(enc, enc.code[g.start], max_len, caps, stats)
    if not stats.complete and fallback:
        exact = _fixpoint_words(enc, max_len, caps.max_visited)
        if exact is not None:
            stats.method = "fixpoint"
            stats.bfs_cap_hits, stats.cap_hits = stats.cap_hits, {}
            words = exact[enc.code[g.start]]
        else:
            stats.hit("max_visited")
    decoded = sorted((enc.decode(w) for w in words), key=word_key)
    return EnumerationResult(tuple(decoded), stats.complete, stats)


def _leftmost_words(enc: _Encoded, start_code: int, max_len: int, caps: SearchCaps, stats: SearchStats):
    start = (start_code,)
    if enc.form_yield(start) > max_len:
        stats.pruned += 1
        return []

    by_lhs, yield_of = enc.by_lhs, enc.yield_of
    visited = {start: enc.form_yield(start)}
    words = []
    frontier = [start]
    depth = 0
    stopped = False
    while frontier and not stopped:
        nxt = []
        for form in frontier:
            lead = next((i for i, c in enumerate(form) if c >= 0), None)
            if lead is None:
                words.append(form)
                continue
            if depth >= caps.max_depth:
                stats.hit("max_depth")
                continue
            stats.explored += 1
            base = visited[form] - yield_of[form[lead]]
            head, tail = form[:lead], form[lead + 1 :]
            for rhs, y, _ in by_lhs[form[lead]]:
                total = base + y
                if total > max_len:
                    stats.pruned += 1
                    continue
                new = head + rhs + tail
                if new in visited:
                    continue
                if len(new) > caps.max_form_len:
                    stats.hit("max_form_len")
                    continue
                if len(visited) >= caps.max_visited:
                    stats.hit("max_visited")
                    stopped = True
                    break
                visited[new] = total
                nxt.append(new)
            if stopped:
                break
        frontier = nxt
        depth += 1
    stats.visited = len(visited)
    return words


def _fixpoint_words(enc: _Encoded, max_len: int, max_words: int):
    """Exact words of length <= max_len per nonterminal, or None past max_words."""
    lang: list[set] = [set() for _ in enc.nts]
    yield_of = enc.yield_of
    total = 0
    changed = True
    while changed:
        changed = False
        by_len = []
        for words in lang:
            buckets: dict[int, list] = {}
            for w in words:
                buckets.setdefault(len(w), []).append(w)
            by_len.append(buckets)
        for lhs, rules in enumerate(enc.by_lhs):
            for rhs, y, _ in rules:
                if y > max_len:
                    continue
                # shortest possible remainder after each position
                rest = [0] * (len(rhs) + 1)
                for k in range(len(rhs) - 1, -1, -1):
                    c = rhs[k]
                    rest[k] = rest[k + 1] + (1 if c < 0 else yield_of[c])
                partial = {()}
                for k, c in enumerate(rhs):
                    room = max_len - rest[k + 1]
                    if c < 0:
                        partial = {u + (c,) for u in partial if len(u) < room}
                    else:
                        partial = {
                            u + w
                            for u in partial
                            for size, ws in by_len[c].items()
                            if len(u) + size <= room
                            for w in ws
                        }
                    if not partial:
                        break
                new = partial - lang[lhs]
                if new:
                    lang[lhs] |= new
                    total += len(new)
                    changed = True
                    if total > max_words:
                        return None
    return lang


def search_derivation(
    g: Grammar,
    source: Sequence[Symbol],
    target: Sequence[Symbol],
    depth_cap: int | None = None,
    caps: SearchCaps | None = None,
) -> tuple[DerivationTrace | None, SearchStats]:
    """Breadth-first search for a derivation ``source =>* target``.

    Only derivations whose rewrite positions never move left are explored;
    every derivation has such a reordering, so nothing is lost.  When the
    target is a sentence this is exactly leftmost derivation.
    """
    source, target = tuple(source), tuple(target)
    caps = (caps or SearchCaps()).resolve(len(target))
    if depth_cap is None:
        depth_cap = caps.max_depth
    stats = SearchStats()
    if source == target:
        return DerivationTrace(source), stats

    enc = _Encoded(g)
    try:
        src, dst = enc.encode(source), enc.encode(target)
    except KeyError:
        return None, stats
    sentence = all(c < 0 for c in dst)
    if sentence:
        bound = enc.form_yield
    else:
        def bound(form):
            return sum(1 if c < 0 or enc.yield_of[c] > 0 else 0 for c in form)

    if bound(src) > len(dst):
        stats.pruned += 1
        return None, stats

    by_lhs = enc.by_lhs
    n = len(dst)
    first = (src, 0)
    parent = {first: None}
    frontier = [first]
    depth = 0
    while frontier:
        if depth >= depth_cap:
            stats.hit("max_depth")
            break
        nxt = []
        for state in frontier:
            form, cut = state
            stats.explored += 1
            positions = [i for i in range(cut, len(form)) if form[i] >= 0]
            if sentence:
                positions = positions[:1]
            for i in positions:
                if i > n or form[:i] != dst[:i]:
                    break
                head, tail = form[:i], form[i + 1 :]
                for rhs, _, rule in by_lhs[form[i]]:
                    new = head + rhs + tail
                    key = (new, 0 if sentence else i)
                    if key in parent:
                        continue
                    if bound(new) > n:
                        stats.pruned += 1
                        continue
                    if len(new) > caps.max_form_len:
                        stats.hit("max_form_len")
                        continue
                    if len(parent) >= caps.max_visited:
                        stats.hit("max_visited")
                        stats.visited = len(parent)
                        return None, stats
                    parent[key] = (state, DerivationStep(i, rule))
                    if new == dst:
                        stats.visited = len(parent)
                        return _unwind(source, parent, key), stats
                    nxt.append(key)
        frontier = nxt
        depth += 1
    stats.visited = len(parent)
    return None, stats


def _unwind(origin, parent, key) -> DerivationTrace:
    steps = []
    while parent[key] is not None:
        key, step = parent[key]
        steps.append(step)
    return DerivationTrace(origin, tuple(reversed(steps)))


def derives_witness(
    g: Grammar,
    source: Sequence[Symbol],
    target: Sequence[Symbol],
    depth_cap: int,
    caps: SearchCaps | None = None,
) -> DerivationTrace | None:
    trace, _ = search_derivation(g, source, target, depth_cap, caps)
    return trace


class Answer(enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Production:
    answer: Answer
    trace: DerivationTrace | None
    stats: SearchStats

    def __bool__(self):
        return self.answer is Answer.YES


class UndeclaredTerminal(ValueError):
    pass


def produces(g: Grammar, word: Sequence, caps: SearchCaps | None = None) -> Production:
    """Decide, within ``caps``, whether ``g`` produces ``word``.

    ``word`` may hold terminal symbols or terminal names.
    """
    declared = {t.name: t for t in g.terminals}
    resolved = []
    for w in word:
        name = w.name if isinstance(w, Symbol) else w
        if name not in declared or (isinstance(w, Symbol) and not w.is_terminal):
            raise UndeclaredTerminal(f"undeclared terminal {name!r}")
        resolved.append(declared[name])
    trace, stats = search_derivation(g, (g.start,), resolved, None, caps)
    if trace is not None:
        return Production(Answer.YES, trace, stats)
    return Production(Answer.NO if stats.complete else Answer.UNKNOWN, None, stats)
